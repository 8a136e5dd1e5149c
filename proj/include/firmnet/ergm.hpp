#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "firmnet/netcore.hpp"

namespace firmnet {

// Isomorphism-reduced configuration classes of the two-layer p* model.
// ChoiceTrans/ChoicePatent form the base model (one density parameter per
// layer); the other four each add a single parameter.
enum class ConfigKind {
    ChoiceTrans,
    ChoicePatent,
    Multiplicity,
    Reciprocity,
    MultiReciprocity,
    Transitivity,
};

std::string_view config_kind_name(ConfigKind kind);

// One binary link variable: an ordered node pair on the transaction layer
// or an unordered pair (i < j) on the patent layer. The slot universe has
// n(n-1) transaction slots and n(n-1)/2 patent slots.
struct LinkSlot {
    FirmId i;
    FirmId j;
    Layer m;
};

// Configuration counts over the whole network:
//   ChoiceTrans      one per transaction arc
//   ChoicePatent     one per patent edge
//   Reciprocity      unordered pairs with arcs both ways
//   Multiplicity     (ordered arc, patent edge) coincidences, counted per arc
//   MultiReciprocity unordered pairs with arcs both ways plus a patent edge
//   Transitivity     triples (A;{B,C}), arcs A->B and A->C, patent {B,C}
std::int64_t count_statistic(const MultiLayerNetwork& net, ConfigKind kind);

// Difference in count_statistic when only `slot` toggles and every other
// link keeps its observed value. Local computation, O(degree).
std::int64_t change_statistic(const MultiLayerNetwork& net, const LinkSlot& slot, ConfigKind kind);

// All slots of the universe in canonical order: transaction slots by
// (i, j), then patent slots by (i, j) with i < j.
std::vector<LinkSlot> slot_universe(const MultiLayerNetwork& net);

// Pseudolikelihood design: one row per slot, response = observed link,
// features = change statistics of each configuration kind.
struct DesignTable {
    std::vector<ConfigKind> kinds;
    std::vector<std::uint8_t> response;
    std::vector<double> features;  // row-major, rows() x kinds.size()
    std::size_t rows() const { return response.size(); }
    double feature(std::size_t row, std::size_t col) const {
        return features[row * kinds.size() + col];
    }
};

// Kinds must include ChoiceTrans and ChoicePatent (the base model).
DesignTable build_design(const MultiLayerNetwork& net, const std::vector<ConfigKind>& kinds);

struct ErgmFit {
    std::vector<ConfigKind> kinds;
    std::vector<double> lambdas;      // NaN for dropped all-zero columns
    double g2pl = 0.0;                // deviance, -2 * max log pseudolikelihood
    bool converged = false;
    bool separation = false;          // |lambda| ran to the cap with gradient left
    int iterations = 0;
    std::vector<bool> dropped;        // all-zero feature columns
};

// Maximum pseudolikelihood by iteratively reweighted least squares.
// Converges when the score gradient max-norm drops below 1e-8 (at most 100
// iterations); coefficients are capped at |lambda| = 30 and a fit that
// reaches the cap with gradient remaining is flagged as separation.
ErgmFit fit_logistic(const DesignTable& design);

// Minimum deviance drop for one extra parameter to count as significant:
// -2 n (n-1) r log10(1 - delta).
double deviance_threshold(std::int64_t n, int r, double delta);

// One row of the per-industry analysis: base-model deviance, the four
// single-addition models, and their significance at the threshold.
struct SignificanceReport {
    struct ModelRow {
        ConfigKind kind;
        double g2pl;
        bool significant;
        bool separation;
    };

    std::string label;
    std::size_t nodes = 0;
    double alpha_threshold = 0.0;
    double g2_choice = 0.0;
    bool choice_separation = false;
    std::array<ModelRow, 4> models;  // Multiplicity, Reciprocity, MultiReciprocity, Transitivity
};

// Networks below 10 nodes are not analyzed (TooSmallError).
SignificanceReport significance_report(const MultiLayerNetwork& net, std::string label,
                                       double delta = 0.001);

}  // namespace firmnet
