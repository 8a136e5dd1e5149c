#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "firmnet/netcore.hpp"

namespace firmnet {

// Names of the 34 consolidated industries, indexed by code - 1.
extern const std::array<std::string_view, kIndustryCount> kIndustryNames;

enum class MatrixKind { Money, TransactionCount, PatentCount };

// 34x34 industry matrix: rows are output industries, columns are input
// industries. Cells are addressed by industry code (1..34).
class IndustryMatrix {
  public:
    explicit IndustryMatrix(MatrixKind kind);

    static constexpr int dim() { return kIndustryCount; }
    MatrixKind kind() const { return kind_; }

    double cell(int row_code, int col_code) const;
    void set_cell(int row_code, int col_code, double value);
    void add_cell(int row_code, int col_code, double value);

    const std::vector<double>& flat() const { return cells_; }  // row-major

  private:
    MatrixKind kind_;
    std::vector<double> cells_;
};

// CSV loader for the money table: 34 rows of 34 comma-separated
// non-negative reals, row order = industry codes 1..34, units billions of
// yen. ShapeError on wrong dimensions, ValueError on negative cells.
IndustryMatrix load_money_matrix(std::istream& in);

// cell(a, b) = number of transaction arcs i->j with industry(i)=a and
// industry(j)=b. Arcs with an unlabeled endpoint are skipped and counted.
IndustryMatrix build_transaction_matrix(const MultiLayerNetwork& net,
                                        std::size_t* skipped_arcs = nullptr);

// Each patent edge {i,j} adds 1 to both (a,b) and (b,a) when the
// industries differ, and 1 to (a,a) when they match, keeping the matrix
// symmetric. Edges with an unlabeled endpoint are skipped and counted.
IndustryMatrix build_patent_matrix(const MultiLayerNetwork& net,
                                   std::size_t* skipped_edges = nullptr);

// Pearson r over all dim*dim aligned cell pairs.
double matrix_correlation(const IndustryMatrix& a, const IndustryMatrix& b);

// Pearson r over log(cell) pairs restricted to cells strictly positive in
// both matrices; companion diagnostic to the raw-value correlation.
// Returns the number of cells used through `cells_used`.
double matrix_correlation_loglog(const IndustryMatrix& a, const IndustryMatrix& b,
                                 std::size_t* cells_used = nullptr);

}  // namespace firmnet
