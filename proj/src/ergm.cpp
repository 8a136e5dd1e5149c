#include "firmnet/ergm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "firmnet/error.hpp"

namespace firmnet {

std::string_view config_kind_name(ConfigKind kind) {
    switch (kind) {
        case ConfigKind::ChoiceTrans: return "choice_trans";
        case ConfigKind::ChoicePatent: return "choice_patent";
        case ConfigKind::Multiplicity: return "multiplicity";
        case ConfigKind::Reciprocity: return "reciprocity";
        case ConfigKind::MultiReciprocity: return "multi_reciprocity";
        case ConfigKind::Transitivity: return "transitivity";
    }
    return "?";
}

namespace {

std::size_t sorted_intersection_size(const std::vector<FirmId>& a, const std::vector<FirmId>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

}  // namespace

std::int64_t count_statistic(const MultiLayerNetwork& net, ConfigKind kind) {
    const std::size_t n = net.node_count();
    std::int64_t count = 0;
    switch (kind) {
        case ConfigKind::ChoiceTrans:
            return static_cast<std::int64_t>(net.arc_count());
        case ConfigKind::ChoicePatent:
            return static_cast<std::int64_t>(net.patent_edge_count());
        case ConfigKind::Reciprocity:
            for (FirmId i = 0; i < n; ++i) {
                for (FirmId j : net.out_arcs(i)) {
                    if (i < j && net.has_arc(j, i)) {
                        ++count;
                    }
                }
            }
            return count;
        case ConfigKind::Multiplicity:
            // Per ordered arc: a reciprocated pair with a patent edge
            // contributes twice.
            for (FirmId i = 0; i < n; ++i) {
                for (FirmId j : net.out_arcs(i)) {
                    if (net.has_patent_edge(i, j)) {
                        ++count;
                    }
                }
            }
            return count;
        case ConfigKind::MultiReciprocity:
            for (FirmId i = 0; i < n; ++i) {
                for (FirmId j : net.out_arcs(i)) {
                    if (i < j && net.has_arc(j, i) && net.has_patent_edge(i, j)) {
                        ++count;
                    }
                }
            }
            return count;
        case ConfigKind::Transitivity:
            // (A;{B,C}): A the common source. Sum |in(B) ∩ in(C)| over
            // patent edges; in-lists never contain their own node, so the
            // intersection is exactly the admissible A set.
            for (FirmId b = 0; b < n; ++b) {
                for (FirmId c : net.patent_adj(b)) {
                    if (b < c) {
                        count += static_cast<std::int64_t>(
                            sorted_intersection_size(net.in_arcs(b), net.in_arcs(c)));
                    }
                }
            }
            return count;
    }
    throw DomainError("count_statistic: unknown configuration kind");
}

std::int64_t change_statistic(const MultiLayerNetwork& net, const LinkSlot& slot, ConfigKind kind) {
    const FirmId i = slot.i;
    const FirmId j = slot.j;
    if (slot.m == Layer::Transaction) {
        switch (kind) {
            case ConfigKind::ChoiceTrans:
                return 1;
            case ConfigKind::ChoicePatent:
                return 0;
            case ConfigKind::Reciprocity:
                return net.has_arc(j, i) ? 1 : 0;
            case ConfigKind::Multiplicity:
                return net.has_patent_edge(i, j) ? 1 : 0;
            case ConfigKind::MultiReciprocity:
                return (net.has_arc(j, i) && net.has_patent_edge(i, j)) ? 1 : 0;
            case ConfigKind::Transitivity: {
                // Arc i->j: completes (i;{j,c}) for every c with arc i->c
                // and patent {j,c}. Scan the shorter side.
                std::int64_t count = 0;
                const auto& patent_j = net.patent_adj(j);
                const auto& out_i = net.out_arcs(i);
                if (patent_j.size() <= out_i.size()) {
                    for (FirmId c : patent_j) {
                        if (c != i && net.has_arc(i, c)) {
                            ++count;
                        }
                    }
                } else {
                    for (FirmId c : out_i) {
                        if (c != j && net.has_patent_edge(j, c)) {
                            ++count;
                        }
                    }
                }
                return count;
            }
        }
    } else {
        switch (kind) {
            case ConfigKind::ChoiceTrans:
                return 0;
            case ConfigKind::ChoicePatent:
                return 1;
            case ConfigKind::Reciprocity:
                return 0;
            case ConfigKind::Multiplicity:
                return (net.has_arc(i, j) ? 1 : 0) + (net.has_arc(j, i) ? 1 : 0);
            case ConfigKind::MultiReciprocity:
                return (net.has_arc(i, j) && net.has_arc(j, i)) ? 1 : 0;
            case ConfigKind::Transitivity:
                return static_cast<std::int64_t>(
                    sorted_intersection_size(net.in_arcs(i), net.in_arcs(j)));
        }
    }
    throw DomainError("change_statistic: unknown configuration kind");
}

std::vector<LinkSlot> slot_universe(const MultiLayerNetwork& net) {
    const std::size_t n = net.node_count();
    std::vector<LinkSlot> slots;
    slots.reserve(n * (n > 0 ? n - 1 : 0) * 3 / 2);
    for (FirmId i = 0; i < n; ++i) {
        for (FirmId j = 0; j < n; ++j) {
            if (i != j) {
                slots.push_back(LinkSlot{i, j, Layer::Transaction});
            }
        }
    }
    for (FirmId i = 0; i < n; ++i) {
        for (FirmId j = i + 1; j < n; ++j) {
            slots.push_back(LinkSlot{i, j, Layer::Patent});
        }
    }
    return slots;
}

DesignTable build_design(const MultiLayerNetwork& net, const std::vector<ConfigKind>& kinds) {
    if (kinds.empty()) {
        throw DomainError("build_design: kinds must be non-empty");
    }
    const bool has_ct = std::find(kinds.begin(), kinds.end(), ConfigKind::ChoiceTrans) != kinds.end();
    const bool has_cp =
        std::find(kinds.begin(), kinds.end(), ConfigKind::ChoicePatent) != kinds.end();
    if (!has_ct || !has_cp) {
        throw DomainError("build_design: base model requires ChoiceTrans and ChoicePatent");
    }
    DesignTable table;
    table.kinds = kinds;
    const auto slots = slot_universe(net);
    table.response.reserve(slots.size());
    table.features.reserve(slots.size() * kinds.size());
    for (const LinkSlot& slot : slots) {
        const bool present = slot.m == Layer::Transaction ? net.has_arc(slot.i, slot.j)
                                                          : net.has_patent_edge(slot.i, slot.j);
        table.response.push_back(present ? 1 : 0);
        for (ConfigKind kind : kinds) {
            table.features.push_back(static_cast<double>(change_statistic(net, slot, kind)));
        }
    }
    return table;
}

namespace {

constexpr double kGradientTolerance = 1e-8;
constexpr double kLambdaCap = 30.0;
constexpr int kMaxIterations = 100;

double softplus(double z) {
    if (z > 30.0) {
        return z;
    }
    return std::log1p(std::exp(z));
}

// log PL(lambda) = sum_rows y*eta - softplus(eta)
double log_pl(const DesignTable& design, const std::vector<std::size_t>& cols,
              const std::vector<double>& beta) {
    double ll = 0.0;
    for (std::size_t row = 0; row < design.rows(); ++row) {
        double eta = 0.0;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            eta += beta[c] * design.feature(row, cols[c]);
        }
        ll += design.response[row] * eta - softplus(eta);
    }
    return ll;
}

// Gaussian elimination with partial pivoting; throws on rank deficiency.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> rhs) {
    const std::size_t k = rhs.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(a[r * k + col]) > std::abs(a[pivot * k + col])) {
                pivot = r;
            }
        }
        if (std::abs(a[pivot * k + col]) < 1e-12) {
            throw SingularError("fit_logistic: weighted normal system is rank-deficient");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < k; ++c) {
                std::swap(a[col * k + c], a[pivot * k + c]);
            }
            std::swap(rhs[col], rhs[pivot]);
        }
        for (std::size_t r = col + 1; r < k; ++r) {
            const double factor = a[r * k + col] / a[col * k + col];
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = col; c < k; ++c) {
                a[r * k + c] -= factor * a[col * k + c];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> x(k, 0.0);
    for (std::size_t r = k; r-- > 0;) {
        double sum = rhs[r];
        for (std::size_t c = r + 1; c < k; ++c) {
            sum -= a[r * k + c] * x[c];
        }
        x[r] = sum / a[r * k + r];
    }
    return x;
}

}  // namespace

ErgmFit fit_logistic(const DesignTable& design) {
    if (design.rows() == 0) {
        throw DomainError("fit_logistic: empty design");
    }
    const std::size_t k_all = design.kinds.size();

    ErgmFit fit;
    fit.kinds = design.kinds;
    fit.lambdas.assign(k_all, std::numeric_limits<double>::quiet_NaN());
    fit.dropped.assign(k_all, false);

    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < k_all; ++c) {
        bool any = false;
        for (std::size_t row = 0; row < design.rows() && !any; ++row) {
            any = design.feature(row, c) != 0.0;
        }
        if (any) {
            cols.push_back(c);
        } else {
            fit.dropped[c] = true;
        }
    }
    if (cols.empty()) {
        throw SingularError("fit_logistic: all feature columns are zero");
    }

    const std::size_t k = cols.size();
    std::vector<double> beta(k, 0.0);
    std::vector<double> grad(k);
    double ll = log_pl(design, cols, beta);

    while (fit.iterations < kMaxIterations) {
        ++fit.iterations;

        std::vector<double> mu(design.rows());
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t row = 0; row < design.rows(); ++row) {
            double eta = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                eta += beta[c] * design.feature(row, cols[c]);
            }
            mu[row] = 1.0 / (1.0 + std::exp(-eta));
            const double resid = design.response[row] - mu[row];
            for (std::size_t c = 0; c < k; ++c) {
                grad[c] += design.feature(row, cols[c]) * resid;
            }
        }
        double grad_max = 0.0;
        for (double g : grad) {
            grad_max = std::max(grad_max, std::abs(g));
        }
        if (grad_max < kGradientTolerance) {
            fit.converged = true;
            break;
        }
        bool capped = false;
        for (double b : beta) {
            capped = capped || std::abs(b) >= kLambdaCap;
        }
        if (capped) {
            fit.separation = true;
            break;
        }

        std::vector<double> hess(k * k, 0.0);
        for (std::size_t row = 0; row < design.rows(); ++row) {
            const double w = mu[row] * (1.0 - mu[row]);
            if (w == 0.0) {
                continue;
            }
            for (std::size_t c1 = 0; c1 < k; ++c1) {
                const double x1 = design.feature(row, cols[c1]);
                if (x1 == 0.0) {
                    continue;
                }
                for (std::size_t c2 = c1; c2 < k; ++c2) {
                    hess[c1 * k + c2] += w * x1 * design.feature(row, cols[c2]);
                }
            }
        }
        for (std::size_t c1 = 0; c1 < k; ++c1) {
            for (std::size_t c2 = 0; c2 < c1; ++c2) {
                hess[c1 * k + c2] = hess[c2 * k + c1];
            }
        }

        std::vector<double> step = solve_dense(std::move(hess), grad);

        // Halve the Newton step until the pseudolikelihood stops getting
        // materially worse; the tolerance is relative because LL
        // differences below eps*|LL| are not representable.
        double scale = 1.0;
        std::vector<double> candidate(k);
        double new_ll = -std::numeric_limits<double>::infinity();
        for (int half = 0; half < 30; ++half) {
            for (std::size_t c = 0; c < k; ++c) {
                candidate[c] =
                    std::clamp(beta[c] + scale * step[c], -kLambdaCap, kLambdaCap);
            }
            new_ll = log_pl(design, cols, candidate);
            if (new_ll >= ll - 1e-9 * (1.0 + std::abs(ll))) {
                break;
            }
            scale *= 0.5;
        }
        beta = candidate;
        ll = new_ll;
    }

    fit.g2pl = -2.0 * ll;
    for (std::size_t c = 0; c < k; ++c) {
        fit.lambdas[cols[c]] = beta[c];
    }
    return fit;
}

double deviance_threshold(std::int64_t n, int r, double delta) {
    if (n < 2) {
        throw DomainError("deviance_threshold: n must be >= 2");
    }
    if (r < 1) {
        throw DomainError("deviance_threshold: r must be >= 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("deviance_threshold: delta must be in (0, 1)");
    }
    return -2.0 * static_cast<double>(n) * static_cast<double>(n - 1) * static_cast<double>(r) *
           std::log10(1.0 - delta);
}

SignificanceReport significance_report(const MultiLayerNetwork& net, std::string label,
                                       double delta) {
    if (net.node_count() < 10) {
        throw TooSmallError("significance_report: fewer than 10 nodes (" +
                            std::to_string(net.node_count()) + ")");
    }
    SignificanceReport report;
    report.label = std::move(label);
    report.nodes = net.node_count();
    report.alpha_threshold =
        deviance_threshold(static_cast<std::int64_t>(net.node_count()), 2, delta);

    const std::vector<ConfigKind> base{ConfigKind::ChoiceTrans, ConfigKind::ChoicePatent};
    ErgmFit choice = fit_logistic(build_design(net, base));
    report.g2_choice = choice.g2pl;
    report.choice_separation = choice.separation;

    const std::array<ConfigKind, 4> extras{ConfigKind::Multiplicity, ConfigKind::Reciprocity,
                                           ConfigKind::MultiReciprocity, ConfigKind::Transitivity};
    for (std::size_t k = 0; k < extras.size(); ++k) {
        std::vector<ConfigKind> kinds = base;
        kinds.push_back(extras[k]);
        ErgmFit fit = fit_logistic(build_design(net, kinds));
        report.models[k] = SignificanceReport::ModelRow{
            extras[k], fit.g2pl, (report.g2_choice - fit.g2pl) > report.alpha_threshold,
            fit.separation};
    }
    return report;
}

}  // namespace firmnet
