#include "firmnet/synthgen.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "firmnet/error.hpp"
#include "firmnet/powerlaw.hpp"
#include "firmnet/rng.hpp"

namespace firmnet {

std::vector<std::int64_t> sample_power_law(std::size_t count, double alpha, std::int64_t x_min,
                                           std::uint64_t seed) {
    if (!(alpha > 1.0)) {
        throw DomainError("sample_power_law: alpha must be > 1");
    }
    if (x_min < 1) {
        throw DomainError("sample_power_law: x_min must be >= 1");
    }
    std::mt19937_64 rng(seed);
    // ccdf(x) = zeta(alpha, x)/zeta(alpha, x_min); cache the numerators,
    // the same x values recur across draws.
    const double z_min = hurwitz_zeta(alpha, x_min);
    std::unordered_map<std::int64_t, double> ccdf_cache;
    auto ccdf = [&](std::int64_t x) {
        auto it = ccdf_cache.find(x);
        if (it == ccdf_cache.end()) {
            it = ccdf_cache.emplace(x, hurwitz_zeta(alpha, x) / z_min).first;
        }
        return it->second;
    };

    std::vector<std::int64_t> draws;
    draws.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double u = uniform_unit(rng);
        // Smallest x with ccdf(x+1) <= u, so that P(X = x) = pmf(x).
        std::int64_t lo = x_min;
        std::int64_t hi = x_min;
        while (ccdf(hi + 1) > u) {
            lo = hi + 1;
            hi *= 2;
        }
        while (lo < hi) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            if (ccdf(mid + 1) <= u) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        draws.push_back(lo);
    }
    return draws;
}

MultiLayerNetwork gibbs_sample_ergm(std::size_t n, const std::vector<ConfigKind>& kinds,
                                    const std::vector<double>& lambdas, int sweeps,
                                    std::uint64_t seed) {
    if (kinds.size() != lambdas.size()) {
        throw DomainError("gibbs_sample_ergm: kinds and lambdas must have equal length");
    }
    if (sweeps < 1) {
        throw DomainError("gibbs_sample_ergm: sweeps must be >= 1");
    }
    std::mt19937_64 rng(seed);
    MultiLayerNetwork net(n);
    std::vector<LinkSlot> slots = slot_universe(net);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        shuffle_vector(slots, rng);
        for (const LinkSlot& slot : slots) {
            double eta = 0.0;
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                eta += lambdas[k] * static_cast<double>(change_statistic(net, slot, kinds[k]));
            }
            const double p = 1.0 / (1.0 + std::exp(-eta));
            const bool want = uniform_unit(rng) < p;
            if (slot.m == Layer::Transaction) {
                if (want) {
                    net.add_arc(slot.i, slot.j);
                } else {
                    net.remove_arc(slot.i, slot.j);
                }
            } else {
                if (want) {
                    net.add_patent_edge(slot.i, slot.j);
                } else {
                    net.remove_patent_edge(slot.i, slot.j);
                }
            }
        }
    }
    return net;
}

namespace {

void validate_cpts(const Dag4& dag, const CptSet& cpts) {
    for (int v = 0; v < 4; ++v) {
        std::size_t q = 1;
        for (int p = 0; p < 4; ++p) {
            if (dag.has_edge(p, v)) {
                q *= static_cast<std::size_t>(kPairVarCard[p]);
            }
        }
        if (cpts[v].rows.size() != q) {
            throw InvalidCptError("forward_sample_bn: variable " +
                                  std::string(pair_var_name(static_cast<PairVar>(v))) + " needs " +
                                  std::to_string(q) + " rows, got " +
                                  std::to_string(cpts[v].rows.size()));
        }
        for (const auto& row : cpts[v].rows) {
            if (row.size() != static_cast<std::size_t>(kPairVarCard[v])) {
                throw InvalidCptError("forward_sample_bn: row width mismatch for " +
                                      std::string(pair_var_name(static_cast<PairVar>(v))));
            }
            double sum = 0.0;
            for (double p : row) {
                if (p < 0.0) {
                    throw InvalidCptError("forward_sample_bn: negative probability");
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-9) {
                throw InvalidCptError("forward_sample_bn: row sums to " + std::to_string(sum));
            }
        }
    }
}

}  // namespace

std::vector<PairRecord> forward_sample_bn(const Dag4& dag, const CptSet& cpts, std::size_t count,
                                          std::uint64_t seed) {
    validate_cpts(dag, cpts);
    const std::vector<int> order = dag.topological_order();
    std::mt19937_64 rng(seed);
    std::vector<PairRecord> records;
    records.reserve(count);
    std::array<int, 4> value{};
    for (std::size_t k = 0; k < count; ++k) {
        for (int v : order) {
            std::size_t config = 0;
            for (int p = 0; p < 4; ++p) {
                if (dag.has_edge(p, v)) {
                    config = config * static_cast<std::size_t>(kPairVarCard[p]) +
                             static_cast<std::size_t>(value[p]);
                }
            }
            const auto& row = cpts[v].rows[config];
            const double u = uniform_unit(rng);
            double cum = 0.0;
            int state = static_cast<int>(row.size()) - 1;
            for (std::size_t s = 0; s < row.size(); ++s) {
                cum += row[s];
                if (u < cum) {
                    state = static_cast<int>(s);
                    break;
                }
            }
            value[v] = state;
        }
        records.push_back(PairRecord{value[0] + 1, value[1] + 1, value[2], value[3]});
    }
    return records;
}

BnScenario trans_driven_scenario() {
    BnScenario s;
    constexpr int a = static_cast<int>(PairVar::IndustryA);
    constexpr int b = static_cast<int>(PairVar::IndustryB);
    constexpr int t = static_cast<int>(PairVar::TransactionLink);
    constexpr int p = static_cast<int>(PairVar::PatentLink);
    s.dag.add_edge(a, t);
    s.dag.add_edge(b, t);
    s.dag.add_edge(t, p);

    // Industry mass concentrates on two dominant codes, one per half of
    // the code range, so the dominant parent configurations see thousands
    // of records each; that is what lets the two-parent family at the
    // transaction node pay for its table size under the BDe prior.
    std::vector<double> industry_marginal(kIndustryCount, 0.16 / (kIndustryCount - 2));
    industry_marginal[4] = 0.42;   // code 5
    industry_marginal[19] = 0.42;  // code 20
    s.cpts[a].rows = {industry_marginal};
    s.cpts[b].rows = {industry_marginal};
    // Transaction probability peaks when the two industries fall in the
    // same half of the code range; the interaction keeps the industry
    // parents jointly informative at the common child.
    s.cpts[t].rows.reserve(static_cast<std::size_t>(kIndustryCount) * kIndustryCount);
    for (int ia = 0; ia < kIndustryCount; ++ia) {
        for (int ib = 0; ib < kIndustryCount; ++ib) {
            const bool ha = ia < kIndustryCount / 2;
            const bool hb = ib < kIndustryCount / 2;
            double p1 = ha == hb ? 0.85 : 0.08;
            p1 += ha ? 0.04 : -0.02;
            s.cpts[t].rows.push_back({1.0 - p1, p1});
        }
    }
    s.cpts[p].rows = {{0.75, 0.25}, {0.45, 0.55}};  // indexed by trans value
    return s;
}

BnScenario independent_scenario() {
    BnScenario s;
    const std::vector<double> uniform_industry(kIndustryCount, 1.0 / kIndustryCount);
    s.cpts[static_cast<int>(PairVar::IndustryA)].rows = {uniform_industry};
    s.cpts[static_cast<int>(PairVar::IndustryB)].rows = {uniform_industry};
    s.cpts[static_cast<int>(PairVar::TransactionLink)].rows = {{0.5, 0.5}};
    s.cpts[static_cast<int>(PairVar::PatentLink)].rows = {{0.5, 0.5}};
    return s;
}

}  // namespace firmnet
