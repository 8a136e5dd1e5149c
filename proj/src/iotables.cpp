#include "firmnet/iotables.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "firmnet/error.hpp"

namespace firmnet {

const std::array<std::string_view, kIndustryCount> kIndustryNames = {
    "Agriculture, forestry and fishery",
    "Mining",
    "Foods",
    "Textile products",
    "Pulp, paper and wooden products",
    "Chemical products",
    "Petroleum and coal products",
    "Ceramic, stone and clay products",
    "Iron and steel",
    "Non-ferrous metals",
    "Metal products",
    "General machinery",
    "Electrical machinery",
    "Information and communication machinery",
    "Electrical equipment",
    "Transportation equipment",
    "Precision instruments",
    "Miscellaneous manufacturing products",
    "Construction",
    "Electricity, gas and heat supply",
    "Water supply and waste management services",
    "Commerce",
    "Financial and insurance",
    "Real estate",
    "Transport",
    "Communication and broadcasting",
    "Public administration",
    "Education and research",
    "Medical service, health and social security and nursing care",
    "Other public services",
    "Business services",
    "Personal services",
    "Office supplies",
    "Activities not elsewhere classified",
};

namespace {

int check_code(int code) {
    if (code < 1 || code > kIndustryCount) {
        throw DomainError("industry code " + std::to_string(code) + " outside 1.." +
                          std::to_string(kIndustryCount));
    }
    return code - 1;
}

}  // namespace

IndustryMatrix::IndustryMatrix(MatrixKind kind)
    : kind_(kind), cells_(static_cast<std::size_t>(kIndustryCount) * kIndustryCount, 0.0) {}

double IndustryMatrix::cell(int row_code, int col_code) const {
    return cells_[static_cast<std::size_t>(check_code(row_code)) * kIndustryCount +
                  check_code(col_code)];
}

void IndustryMatrix::set_cell(int row_code, int col_code, double value) {
    cells_[static_cast<std::size_t>(check_code(row_code)) * kIndustryCount + check_code(col_code)] =
        value;
}

void IndustryMatrix::add_cell(int row_code, int col_code, double value) {
    cells_[static_cast<std::size_t>(check_code(row_code)) * kIndustryCount + check_code(col_code)] +=
        value;
}

IndustryMatrix load_money_matrix(std::istream& in) {
    IndustryMatrix m(MatrixKind::Money);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (row >= kIndustryCount) {
            throw ShapeError("money matrix: more than " + std::to_string(kIndustryCount) +
                             " rows");
        }
        std::stringstream fields(line);
        std::string field;
        int col = 0;
        while (std::getline(fields, field, ',')) {
            if (col >= kIndustryCount) {
                throw ShapeError("money matrix: row " + std::to_string(row + 1) +
                                 " has more than " + std::to_string(kIndustryCount) + " columns");
            }
            double value = 0.0;
            try {
                std::size_t used = 0;
                value = std::stod(field, &used);
                while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) {
                    ++used;
                }
                if (used != field.size()) {
                    throw std::invalid_argument(field);
                }
            } catch (const std::exception&) {
                throw ValueError("money matrix: row " + std::to_string(row + 1) + ", column " +
                                 std::to_string(col + 1) + ": bad number `" + field + "`");
            }
            if (value < 0.0) {
                throw ValueError("money matrix: row " + std::to_string(row + 1) + ", column " +
                                 std::to_string(col + 1) + ": negative cell");
            }
            m.set_cell(row + 1, col + 1, value);
            ++col;
        }
        if (col != kIndustryCount) {
            throw ShapeError("money matrix: row " + std::to_string(row + 1) + " has " +
                             std::to_string(col) + " columns, expected " +
                             std::to_string(kIndustryCount));
        }
        ++row;
    }
    if (row != kIndustryCount) {
        throw ShapeError("money matrix: got " + std::to_string(row) + " rows, expected " +
                         std::to_string(kIndustryCount));
    }
    return m;
}

IndustryMatrix build_transaction_matrix(const MultiLayerNetwork& net, std::size_t* skipped_arcs) {
    IndustryMatrix m(MatrixKind::TransactionCount);
    std::size_t skipped = 0;
    for (FirmId i = 0; i < net.node_count(); ++i) {
        const int a = net.industry_of(i);
        for (FirmId j : net.out_arcs(i)) {
            const int b = net.industry_of(j);
            if (a == 0 || b == 0) {
                ++skipped;
            } else {
                m.add_cell(a, b, 1.0);
            }
        }
    }
    if (skipped_arcs != nullptr) {
        *skipped_arcs = skipped;
    }
    return m;
}

IndustryMatrix build_patent_matrix(const MultiLayerNetwork& net, std::size_t* skipped_edges) {
    IndustryMatrix m(MatrixKind::PatentCount);
    std::size_t skipped = 0;
    for (const auto& [i, j] : net.patent_edges()) {
        const int a = net.industry_of(i);
        const int b = net.industry_of(j);
        if (a == 0 || b == 0) {
            ++skipped;
        } else if (a == b) {
            m.add_cell(a, a, 1.0);
        } else {
            m.add_cell(a, b, 1.0);
            m.add_cell(b, a, 1.0);
        }
    }
    if (skipped_edges != nullptr) {
        *skipped_edges = skipped;
    }
    return m;
}

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mean_x += x[k];
        mean_y += y[k];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mean_x;
        const double dy = y[k] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateVarianceError("matrix_correlation: constant matrix");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double matrix_correlation(const IndustryMatrix& a, const IndustryMatrix& b) {
    return pearson(a.flat(), b.flat());
}

double matrix_correlation_loglog(const IndustryMatrix& a, const IndustryMatrix& b,
                                 std::size_t* cells_used) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t k = 0; k < a.flat().size(); ++k) {
        if (a.flat()[k] > 0.0 && b.flat()[k] > 0.0) {
            x.push_back(std::log(a.flat()[k]));
            y.push_back(std::log(b.flat()[k]));
        }
    }
    if (cells_used != nullptr) {
        *cells_used = x.size();
    }
    if (x.size() < 2) {
        throw DegenerateVarianceError("matrix_correlation_loglog: fewer than 2 positive cells");
    }
    return pearson(x, y);
}

}  // namespace firmnet
