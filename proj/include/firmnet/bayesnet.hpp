#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "firmnet/netcore.hpp"

namespace firmnet {

// One sampled firm pair: the industries of the two roles, whether a
// transaction arc runs A -> B, and whether a patent edge joins them.
struct PairRecord {
    int industry_a;        // 1..34
    int industry_b;        // 1..34
    int transaction_link;  // {0,1}
    int patent_link;       // {0,1}

    bool operator==(const PairRecord&) const = default;
};

enum class PairVar : int { IndustryA = 0, IndustryB = 1, TransactionLink = 2, PatentLink = 3 };

inline constexpr std::array<int, 4> kPairVarCard = {kIndustryCount, kIndustryCount, 2, 2};

std::string_view pair_var_name(PairVar v);

// Directed acyclic graph over the four pair variables, stored as parent
// bitmasks (bit p of parents[c] set when p -> c).
struct Dag4 {
    std::array<std::uint8_t, 4> parents{};

    bool has_edge(int from, int to) const { return (parents[to] >> from) & 1; }
    void add_edge(int from, int to) { parents[to] |= static_cast<std::uint8_t>(1u << from); }
    std::size_t edge_count() const;
    bool acyclic() const;
    std::vector<int> topological_order() const;  // throws DomainError on a cycle
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Dag4&) const = default;
};

// All 543 DAGs on the four labeled variables, in a fixed canonical order.
const std::vector<Dag4>& all_dags4();

// Pair harvesting: repeatedly pick a random start node, take its 1-step
// neighborhood across both layers (start node included), and add every
// unordered pair of that set, until `target` distinct pairs are collected.
// Deterministic per seed; StalledError after 10,000 consecutive rounds
// without a new pair.
std::vector<std::pair<FirmId, FirmId>> sample_pairs(const MultiLayerNetwork& net,
                                                    std::size_t target, std::uint64_t seed);

// Role orientation: when exactly one transaction direction exists between
// the endpoints, the arc source is A; otherwise the smaller FirmId is A.
// Pairs with an unlabeled endpoint are skipped and counted.
struct BuildRecordsResult {
    std::vector<PairRecord> records;
    std::size_t skipped_unlabeled = 0;
};
BuildRecordsResult build_records(const std::vector<std::pair<FirmId, FirmId>>& pairs,
                                 const MultiLayerNetwork& net);

// Log marginal likelihood of one node given its parent set under the
// Dirichlet-multinomial with uniform prior ess / (states * parent
// configurations); bde_score sums these over the four families.
double family_score(const std::vector<PairRecord>& records, PairVar node,
                    std::uint8_t parent_mask, double ess);
double bde_score(const std::vector<PairRecord>& records, const Dag4& dag, double ess);

struct StructureResult {
    Dag4 best_dag;
    double best_score = 0.0;
    std::vector<double> score_table;       // aligned with all_dags4()
    std::vector<Dag4> equivalence_class;   // score within 1e-9 of best
};

// Exhaustive search over all 543 DAGs.
StructureResult learn_structure(const std::vector<PairRecord>& records, double ess = 4.0);

// Conditional likelihood-ratio (G) test of x independent of y given a
// conditioning set. Empty conditioning strata are omitted and degrees of
// freedom adjusted; InsufficientDataError when every stratum is
// degenerate.
struct CiResult {
    double g = 0.0;
    int df = 0;
    double p_value = 1.0;
};
CiResult ci_test(const std::vector<PairRecord>& records, PairVar x, PairVar y,
                 const std::vector<PairVar>& given = {});

// Chi-squared upper tail probability P(X >= x) with df degrees of freedom.
double chi_squared_upper_tail(double x, double df);

// PairRecord TSV: header `ind_a<TAB>ind_b<TAB>trans<TAB>patent`.
void write_records(std::ostream& out, const std::vector<PairRecord>& records);
std::vector<PairRecord> read_records(std::istream& in);

}  // namespace firmnet
