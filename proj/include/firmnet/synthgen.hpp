#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "firmnet/bayesnet.hpp"
#include "firmnet/ergm.hpp"
#include "firmnet/netcore.hpp"

namespace firmnet {

// i.i.d. draws from the discrete power law (alpha, x_min) by inverse-CDF
// on the survival function: doubling search then bisection. Deterministic
// per seed.
std::vector<std::int64_t> sample_power_law(std::size_t count, double alpha, std::int64_t x_min,
                                           std::uint64_t seed);

// Gibbs sampling from the two-layer p* distribution: starting from an
// empty network, each sweep visits every link slot in randomized order and
// resamples it from its exact full conditional, the logistic of
// lambda . change-statistics. Returns the state after `sweeps` passes.
MultiLayerNetwork gibbs_sample_ergm(std::size_t n, const std::vector<ConfigKind>& kinds,
                                    const std::vector<double>& lambdas, int sweeps,
                                    std::uint64_t seed);

// Conditional probability table of one variable: one row per parent
// configuration (mixed-radix over parents in variable order), each row a
// distribution over the variable's states.
struct Cpt {
    std::vector<std::vector<double>> rows;
};
using CptSet = std::array<Cpt, 4>;

// Ancestral sampling of pair records in topological order.
std::vector<PairRecord> forward_sample_bn(const Dag4& dag, const CptSet& cpts, std::size_t count,
                                          std::uint64_t seed);

// Canned generators for the CLI and tests.
//
// trans_driven_structure: industries feed the transaction link and the
// transaction link feeds the patent link; industries uniform, and the
// documented link probabilities below.
struct BnScenario {
    Dag4 dag;
    CptSet cpts;
};
BnScenario trans_driven_scenario();   // industries drive trans, trans drives patent
BnScenario independent_scenario();    // empty graph, everything uniform

}  // namespace firmnet
