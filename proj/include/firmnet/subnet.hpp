#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "firmnet/netcore.hpp"

namespace firmnet {

// One sub-network per industry code 1..34 (possibly empty): nodes of that
// code with intra-industry links only. Requires every node labeled.
std::map<int, MultiLayerNetwork> split_by_industry(const MultiLayerNetwork& net);

// Bounded connected extraction around the maximum-patent-degree node:
// breadth-first over patent links, whole levels added atomically, stopping
// once the frontier is empty or the total has passed `cap` (the final
// level is kept, so the result may exceed the cap). Degree ties are broken
// uniformly at random with `seed`. Transaction arcs are carried along in
// the induced output.
MultiLayerNetwork extract_connected(const MultiLayerNetwork& net, std::size_t cap = 1000,
                                    std::uint64_t seed = 0);

// Keep only networks with at least 10 nodes; dropped codes are reported.
std::map<int, MultiLayerNetwork> analyzable(const std::map<int, MultiLayerNetwork>& nets,
                                            std::vector<int>* dropped = nullptr);

}  // namespace firmnet
