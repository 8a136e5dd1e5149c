#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "firmnet/error.hpp"

namespace firmnet {

// Dense node index, contiguous 0..n-1 within one network.
using FirmId = std::uint32_t;

// The two link layers of the merged firm network. Transaction arcs are
// ordered pairs: arc (i, j) means money flows from i to j. Patent edges
// are unordered. Neither layer carries self-loops or parallel links.
enum class Layer { Transaction, Patent };

enum class DegreeMode { In, Out, Total, Undirected };

constexpr int kIndustryCount = 34;

// One node set carrying a directed transaction layer and an undirected
// joint-patent layer, with optional industry labels (codes 1..34).
//
// Adjacency is kept as sorted per-node vectors; membership queries are
// binary searches. Links are binary: inserting a duplicate is a no-op.
// Networks are built single-writer and treated as immutable afterwards;
// the mutating interface stays public so samplers can own and edit their
// working copy.
class MultiLayerNetwork {
  public:
    MultiLayerNetwork() = default;
    explicit MultiLayerNetwork(std::size_t node_count);

    std::size_t node_count() const { return n_; }
    std::size_t arc_count() const { return arc_count_; }
    std::size_t patent_edge_count() const { return patent_count_; }

    // Insert/remove return whether the network changed. Self-loops are
    // dropped at insertion and reported as "no change".
    bool add_arc(FirmId src, FirmId dst);
    bool remove_arc(FirmId src, FirmId dst);
    bool add_patent_edge(FirmId a, FirmId b);
    bool remove_patent_edge(FirmId a, FirmId b);

    bool has_arc(FirmId src, FirmId dst) const;
    bool has_patent_edge(FirmId a, FirmId b) const;

    // Sorted adjacency. out_arcs(i) holds j for every arc i->j.
    const std::vector<FirmId>& out_arcs(FirmId v) const;
    const std::vector<FirmId>& in_arcs(FirmId v) const;
    const std::vector<FirmId>& patent_adj(FirmId v) const;

    // Canonically ordered link lists: arcs by (src, dst), patent edges by
    // (min, max) with min < max.
    std::vector<std::pair<FirmId, FirmId>> arcs() const;
    std::vector<std::pair<FirmId, FirmId>> patent_edges() const;

    // Industry labels, 1..34; 0 means unlabeled.
    void set_industry(FirmId v, int code);
    int industry_of(FirmId v) const;
    bool has_industry(FirmId v) const { return industry_of(v) != 0; }
    bool fully_labeled() const;
    std::size_t labeled_count() const;

  private:
    void check_node(FirmId v) const;

    std::size_t n_ = 0;
    std::size_t arc_count_ = 0;
    std::size_t patent_count_ = 0;
    std::vector<std::vector<FirmId>> out_;
    std::vector<std::vector<FirmId>> in_;
    std::vector<std::vector<FirmId>> patent_;
    std::vector<int> industry_;
};

// Per-node degrees for one layer. Transaction accepts In/Out/Total,
// Patent accepts Undirected/Total (identical there); anything else is an
// InvalidModeError. Sum identities: In and Out sum to arc_count, and
// Undirected sums to twice patent_edge_count.
std::vector<std::int64_t> degree_sequence(const MultiLayerNetwork& net, Layer layer,
                                          DegreeMode mode);

// Sub-network on `keep` with relabeled contiguous ids (ascending original
// order). A link survives iff both endpoints are kept; industry labels
// carry over.
MultiLayerNetwork induced_subgraph(const MultiLayerNetwork& net, std::span<const FirmId> keep);

// All u with a patent edge {v, u}; sorted, never contains v.
std::vector<FirmId> patent_neighbors(const MultiLayerNetwork& net, FirmId v);

}  // namespace firmnet
