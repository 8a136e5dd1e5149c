#include "firmnet/subnet.hpp"

#include <algorithm>

#include "firmnet/error.hpp"
#include "firmnet/rng.hpp"

namespace firmnet {

std::map<int, MultiLayerNetwork> split_by_industry(const MultiLayerNetwork& net) {
    if (!net.fully_labeled()) {
        throw DomainError("split_by_industry: every node needs an industry label");
    }
    std::vector<std::vector<FirmId>> members(kIndustryCount + 1);
    for (FirmId v = 0; v < net.node_count(); ++v) {
        members[net.industry_of(v)].push_back(v);
    }
    std::map<int, MultiLayerNetwork> result;
    for (int code = 1; code <= kIndustryCount; ++code) {
        result.emplace(code, induced_subgraph(net, members[code]));
    }
    return result;
}

MultiLayerNetwork extract_connected(const MultiLayerNetwork& net, std::size_t cap,
                                    std::uint64_t seed) {
    const std::size_t n = net.node_count();
    if (n == 0) {
        throw EmptyNetworkError("extract_connected: empty network");
    }

    std::size_t max_degree = 0;
    for (FirmId v = 0; v < n; ++v) {
        max_degree = std::max(max_degree, net.patent_adj(v).size());
    }
    std::vector<FirmId> candidates;
    for (FirmId v = 0; v < n; ++v) {
        if (net.patent_adj(v).size() == max_degree) {
            candidates.push_back(v);
        }
    }
    std::mt19937_64 rng(seed);
    const FirmId start = candidates[uniform_below(rng, candidates.size())];

    std::vector<char> visited(n, 0);
    std::vector<FirmId> collected{start};
    visited[start] = 1;
    std::vector<FirmId> frontier{start};
    while (!frontier.empty() && collected.size() <= cap) {
        std::vector<FirmId> next;
        for (FirmId v : frontier) {
            for (FirmId u : net.patent_adj(v)) {
                if (!visited[u]) {
                    visited[u] = 1;
                    next.push_back(u);
                }
            }
        }
        collected.insert(collected.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return induced_subgraph(net, collected);
}

std::map<int, MultiLayerNetwork> analyzable(const std::map<int, MultiLayerNetwork>& nets,
                                            std::vector<int>* dropped) {
    std::map<int, MultiLayerNetwork> kept;
    for (const auto& [code, net] : nets) {
        if (net.node_count() >= 10) {
            kept.emplace(code, net);
        } else if (dropped != nullptr) {
            dropped->push_back(code);
        }
    }
    return kept;
}

}  // namespace firmnet
