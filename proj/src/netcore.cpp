#include "firmnet/netcore.hpp"

#include <algorithm>

namespace firmnet {

namespace {

bool sorted_contains(const std::vector<FirmId>& v, FirmId x) {
    return std::binary_search(v.begin(), v.end(), x);
}

// Returns true if x was absent and has been inserted.
bool sorted_insert(std::vector<FirmId>& v, FirmId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) {
        return false;
    }
    v.insert(it, x);
    return true;
}

bool sorted_erase(std::vector<FirmId>& v, FirmId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) {
        return false;
    }
    v.erase(it);
    return true;
}

}  // namespace

MultiLayerNetwork::MultiLayerNetwork(std::size_t node_count)
    : n_(node_count), out_(node_count), in_(node_count), patent_(node_count),
      industry_(node_count, 0) {}

void MultiLayerNetwork::check_node(FirmId v) const {
    if (v >= n_) {
        throw UnknownNodeError("node id " + std::to_string(v) + " out of range (n=" +
                               std::to_string(n_) + ")");
    }
}

bool MultiLayerNetwork::add_arc(FirmId src, FirmId dst) {
    check_node(src);
    check_node(dst);
    if (src == dst) {
        return false;
    }
    if (!sorted_insert(out_[src], dst)) {
        return false;
    }
    sorted_insert(in_[dst], src);
    ++arc_count_;
    return true;
}

bool MultiLayerNetwork::remove_arc(FirmId src, FirmId dst) {
    check_node(src);
    check_node(dst);
    if (!sorted_erase(out_[src], dst)) {
        return false;
    }
    sorted_erase(in_[dst], src);
    --arc_count_;
    return true;
}

bool MultiLayerNetwork::add_patent_edge(FirmId a, FirmId b) {
    check_node(a);
    check_node(b);
    if (a == b) {
        return false;
    }
    if (!sorted_insert(patent_[a], b)) {
        return false;
    }
    sorted_insert(patent_[b], a);
    ++patent_count_;
    return true;
}

bool MultiLayerNetwork::remove_patent_edge(FirmId a, FirmId b) {
    check_node(a);
    check_node(b);
    if (!sorted_erase(patent_[a], b)) {
        return false;
    }
    sorted_erase(patent_[b], a);
    --patent_count_;
    return true;
}

bool MultiLayerNetwork::has_arc(FirmId src, FirmId dst) const {
    check_node(src);
    check_node(dst);
    return sorted_contains(out_[src], dst);
}

bool MultiLayerNetwork::has_patent_edge(FirmId a, FirmId b) const {
    check_node(a);
    check_node(b);
    return sorted_contains(patent_[a], b);
}

const std::vector<FirmId>& MultiLayerNetwork::out_arcs(FirmId v) const {
    check_node(v);
    return out_[v];
}

const std::vector<FirmId>& MultiLayerNetwork::in_arcs(FirmId v) const {
    check_node(v);
    return in_[v];
}

const std::vector<FirmId>& MultiLayerNetwork::patent_adj(FirmId v) const {
    check_node(v);
    return patent_[v];
}

std::vector<std::pair<FirmId, FirmId>> MultiLayerNetwork::arcs() const {
    std::vector<std::pair<FirmId, FirmId>> result;
    result.reserve(arc_count_);
    for (FirmId i = 0; i < n_; ++i) {
        for (FirmId j : out_[i]) {
            result.emplace_back(i, j);
        }
    }
    return result;
}

std::vector<std::pair<FirmId, FirmId>> MultiLayerNetwork::patent_edges() const {
    std::vector<std::pair<FirmId, FirmId>> result;
    result.reserve(patent_count_);
    for (FirmId a = 0; a < n_; ++a) {
        for (FirmId b : patent_[a]) {
            if (a < b) {
                result.emplace_back(a, b);
            }
        }
    }
    return result;
}

void MultiLayerNetwork::set_industry(FirmId v, int code) {
    check_node(v);
    if (code < 1 || code > kIndustryCount) {
        throw DomainError("industry code " + std::to_string(code) + " outside 1.." +
                          std::to_string(kIndustryCount));
    }
    industry_[v] = code;
}

int MultiLayerNetwork::industry_of(FirmId v) const {
    check_node(v);
    return industry_[v];
}

bool MultiLayerNetwork::fully_labeled() const {
    return labeled_count() == n_;
}

std::size_t MultiLayerNetwork::labeled_count() const {
    std::size_t count = 0;
    for (int code : industry_) {
        count += (code != 0);
    }
    return count;
}

std::vector<std::int64_t> degree_sequence(const MultiLayerNetwork& net, Layer layer,
                                          DegreeMode mode) {
    const std::size_t n = net.node_count();
    std::vector<std::int64_t> degrees(n, 0);
    if (layer == Layer::Transaction) {
        switch (mode) {
            case DegreeMode::In:
                for (FirmId v = 0; v < n; ++v) {
                    degrees[v] = static_cast<std::int64_t>(net.in_arcs(v).size());
                }
                return degrees;
            case DegreeMode::Out:
                for (FirmId v = 0; v < n; ++v) {
                    degrees[v] = static_cast<std::int64_t>(net.out_arcs(v).size());
                }
                return degrees;
            case DegreeMode::Total:
                for (FirmId v = 0; v < n; ++v) {
                    degrees[v] = static_cast<std::int64_t>(net.in_arcs(v).size() +
                                                           net.out_arcs(v).size());
                }
                return degrees;
            case DegreeMode::Undirected:
                throw InvalidModeError("Undirected degree is not defined on the transaction layer");
        }
    } else {
        switch (mode) {
            case DegreeMode::Undirected:
            case DegreeMode::Total:
                for (FirmId v = 0; v < n; ++v) {
                    degrees[v] = static_cast<std::int64_t>(net.patent_adj(v).size());
                }
                return degrees;
            case DegreeMode::In:
            case DegreeMode::Out:
                throw InvalidModeError("In/Out degrees are not defined on the patent layer");
        }
    }
    throw InvalidModeError("unreachable degree mode");
}

MultiLayerNetwork induced_subgraph(const MultiLayerNetwork& net, std::span<const FirmId> keep) {
    std::vector<FirmId> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (FirmId v : kept) {
        if (v >= net.node_count()) {
            throw UnknownNodeError("induced_subgraph: node id " + std::to_string(v) +
                                   " out of range (n=" + std::to_string(net.node_count()) + ")");
        }
    }

    // old id -> new id; n_ marks "not kept"
    const FirmId absent = static_cast<FirmId>(net.node_count());
    std::vector<FirmId> relabel(net.node_count(), absent);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        relabel[kept[k]] = static_cast<FirmId>(k);
    }

    MultiLayerNetwork sub(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const FirmId old_id = kept[k];
        if (net.industry_of(old_id) != 0) {
            sub.set_industry(static_cast<FirmId>(k), net.industry_of(old_id));
        }
        for (FirmId j : net.out_arcs(old_id)) {
            if (relabel[j] != absent) {
                sub.add_arc(static_cast<FirmId>(k), relabel[j]);
            }
        }
        for (FirmId j : net.patent_adj(old_id)) {
            if (old_id < j && relabel[j] != absent) {
                sub.add_patent_edge(static_cast<FirmId>(k), relabel[j]);
            }
        }
    }
    return sub;
}

std::vector<FirmId> patent_neighbors(const MultiLayerNetwork& net, FirmId v) {
    return net.patent_adj(v);
}

}  // namespace firmnet
