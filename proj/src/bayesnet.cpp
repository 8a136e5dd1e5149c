#include "firmnet/bayesnet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "firmnet/error.hpp"
#include "firmnet/rng.hpp"

namespace firmnet {

std::string_view pair_var_name(PairVar v) {
    switch (v) {
        case PairVar::IndustryA: return "IndustryA";
        case PairVar::IndustryB: return "IndustryB";
        case PairVar::TransactionLink: return "TransactionLink";
        case PairVar::PatentLink: return "PatentLink";
    }
    return "?";
}

std::size_t Dag4::edge_count() const {
    std::size_t count = 0;
    for (int c = 0; c < 4; ++c) {
        count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(parents[c])));
    }
    return count;
}

bool Dag4::acyclic() const {
    // Peel nodes with no remaining parents.
    std::array<std::uint8_t, 4> p = parents;
    std::uint8_t removed = 0;
    for (int pass = 0; pass < 4; ++pass) {
        bool progress = false;
        for (int c = 0; c < 4; ++c) {
            if ((removed >> c) & 1) {
                continue;
            }
            if ((p[c] & ~removed) == 0) {
                removed |= static_cast<std::uint8_t>(1u << c);
                progress = true;
            }
        }
        if (!progress) {
            break;
        }
    }
    return removed == 0x0F;
}

std::vector<int> Dag4::topological_order() const {
    std::vector<int> order;
    std::uint8_t placed = 0;
    while (order.size() < 4) {
        bool progress = false;
        for (int c = 0; c < 4; ++c) {
            if (((placed >> c) & 1) == 0 && (parents[c] & ~placed) == 0) {
                order.push_back(c);
                placed |= static_cast<std::uint8_t>(1u << c);
                progress = true;
            }
        }
        if (!progress) {
            throw DomainError("Dag4: graph has a cycle");
        }
    }
    return order;
}

std::vector<std::pair<int, int>> Dag4::edges() const {
    std::vector<std::pair<int, int>> result;
    for (int from = 0; from < 4; ++from) {
        for (int to = 0; to < 4; ++to) {
            if (has_edge(from, to)) {
                result.emplace_back(from, to);
            }
        }
    }
    return result;
}

const std::vector<Dag4>& all_dags4() {
    static const std::vector<Dag4> dags = [] {
        std::vector<Dag4> result;
        // 12 possible directed edges; enumerate every subset and keep the
        // acyclic ones. 4096 candidates, 543 survivors.
        std::vector<std::pair<int, int>> slots;
        for (int from = 0; from < 4; ++from) {
            for (int to = 0; to < 4; ++to) {
                if (from != to) {
                    slots.emplace_back(from, to);
                }
            }
        }
        for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
            Dag4 dag;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if ((mask >> s) & 1) {
                    dag.add_edge(slots[s].first, slots[s].second);
                }
            }
            if (dag.acyclic()) {
                result.push_back(dag);
            }
        }
        return result;
    }();
    return dags;
}

std::vector<std::pair<FirmId, FirmId>> sample_pairs(const MultiLayerNetwork& net,
                                                    std::size_t target, std::uint64_t seed) {
    const std::size_t n = net.node_count();
    if (n == 0) {
        throw EmptyNetworkError("sample_pairs: empty network");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::pair<FirmId, FirmId>> pairs;
    std::unordered_set<std::uint64_t> seen;
    std::size_t stalled_rounds = 0;
    std::vector<FirmId> chosen;
    while (pairs.size() < target) {
        if (stalled_rounds >= 10000) {
            throw StalledError("sample_pairs: 10000 rounds without a new pair (collected " +
                               std::to_string(pairs.size()) + " of " + std::to_string(target) +
                               ")");
        }
        const FirmId start = static_cast<FirmId>(uniform_below(rng, n));
        chosen.clear();
        chosen.push_back(start);
        chosen.insert(chosen.end(), net.out_arcs(start).begin(), net.out_arcs(start).end());
        chosen.insert(chosen.end(), net.in_arcs(start).begin(), net.in_arcs(start).end());
        chosen.insert(chosen.end(), net.patent_adj(start).begin(), net.patent_adj(start).end());
        std::sort(chosen.begin(), chosen.end());
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

        bool added = false;
        for (std::size_t a = 0; a < chosen.size() && pairs.size() < target; ++a) {
            for (std::size_t b = a + 1; b < chosen.size() && pairs.size() < target; ++b) {
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(chosen[a]) << 32) | chosen[b];
                if (seen.insert(key).second) {
                    pairs.emplace_back(chosen[a], chosen[b]);
                    added = true;
                }
            }
        }
        stalled_rounds = added ? 0 : stalled_rounds + 1;
    }
    return pairs;
}

BuildRecordsResult build_records(const std::vector<std::pair<FirmId, FirmId>>& pairs,
                                 const MultiLayerNetwork& net) {
    BuildRecordsResult result;
    result.records.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
        const int ind_u = net.industry_of(u);
        const int ind_v = net.industry_of(v);
        if (ind_u == 0 || ind_v == 0) {
            ++result.skipped_unlabeled;
            continue;
        }
        const bool uv = net.has_arc(u, v);
        const bool vu = net.has_arc(v, u);
        FirmId a = u;
        FirmId b = v;
        if (uv != vu) {
            // Exactly one direction: the source plays role A.
            a = uv ? u : v;
            b = uv ? v : u;
        } else if (u > v) {
            a = v;
            b = u;
        }
        result.records.push_back(PairRecord{net.industry_of(a), net.industry_of(b),
                                            net.has_arc(a, b) ? 1 : 0,
                                            net.has_patent_edge(a, b) ? 1 : 0});
    }
    return result;
}

namespace {

// Value of one variable as a dense state index.
int state_of(const PairRecord& rec, int var) {
    switch (static_cast<PairVar>(var)) {
        case PairVar::IndustryA:
            if (rec.industry_a < 1 || rec.industry_a > kIndustryCount) {
                throw DomainError("PairRecord: industry_a outside 1..34");
            }
            return rec.industry_a - 1;
        case PairVar::IndustryB:
            if (rec.industry_b < 1 || rec.industry_b > kIndustryCount) {
                throw DomainError("PairRecord: industry_b outside 1..34");
            }
            return rec.industry_b - 1;
        case PairVar::TransactionLink:
            if (rec.transaction_link != 0 && rec.transaction_link != 1) {
                throw DomainError("PairRecord: transaction_link outside {0,1}");
            }
            return rec.transaction_link;
        case PairVar::PatentLink:
            if (rec.patent_link != 0 && rec.patent_link != 1) {
                throw DomainError("PairRecord: patent_link outside {0,1}");
            }
            return rec.patent_link;
    }
    throw DomainError("PairRecord: unknown variable");
}

}  // namespace

double family_score(const std::vector<PairRecord>& records, PairVar node,
                    std::uint8_t parent_mask, double ess) {
    if (records.empty()) {
        throw DomainError("family_score: records must be non-empty");
    }
    if (!(ess > 0.0)) {
        throw DomainError("family_score: ess must be > 0");
    }
    const int v = static_cast<int>(node);
    if ((parent_mask >> v) & 1) {
        throw DomainError("family_score: node cannot be its own parent");
    }
    std::vector<int> parents;
    double q = 1.0;
    for (int p = 0; p < 4; ++p) {
        if ((parent_mask >> p) & 1) {
            parents.push_back(p);
            q *= kPairVarCard[p];
        }
    }
    const int r = kPairVarCard[v];
    const double alpha_jk = ess / (static_cast<double>(r) * q);
    const double alpha_j = ess / q;

    // Counts per observed parent configuration; unobserved configurations
    // contribute zero to the score.
    std::unordered_map<std::uint32_t, std::vector<std::int64_t>> counts;
    for (const PairRecord& rec : records) {
        std::uint32_t config = 0;
        for (int p : parents) {
            config = config * static_cast<std::uint32_t>(kPairVarCard[p]) +
                     static_cast<std::uint32_t>(state_of(rec, p));
        }
        auto [it, inserted] = counts.try_emplace(config);
        if (inserted) {
            it->second.assign(r, 0);
        }
        ++it->second[state_of(rec, v)];
    }

    double score = 0.0;
    for (const auto& [config, state_counts] : counts) {
        std::int64_t n_j = 0;
        for (int k = 0; k < r; ++k) {
            const std::int64_t n_jk = state_counts[k];
            n_j += n_jk;
            if (n_jk > 0) {
                score += std::lgamma(alpha_jk + static_cast<double>(n_jk)) - std::lgamma(alpha_jk);
            }
        }
        score += std::lgamma(alpha_j) - std::lgamma(alpha_j + static_cast<double>(n_j));
    }
    return score;
}

double bde_score(const std::vector<PairRecord>& records, const Dag4& dag, double ess) {
    if (!dag.acyclic()) {
        throw DomainError("bde_score: graph has a cycle");
    }
    double total = 0.0;
    for (int v = 0; v < 4; ++v) {
        total += family_score(records, static_cast<PairVar>(v), dag.parents[v], ess);
    }
    return total;
}

StructureResult learn_structure(const std::vector<PairRecord>& records, double ess) {
    if (records.empty()) {
        throw DomainError("learn_structure: records must be non-empty");
    }
    // 4 nodes x 8 admissible parent sets; each family is scored once and
    // shared across the 543 candidate graphs.
    std::array<std::array<double, 16>, 4> family{};
    for (int v = 0; v < 4; ++v) {
        for (std::uint8_t mask = 0; mask < 16; ++mask) {
            if (((mask >> v) & 1) == 0) {
                family[v][mask] = family_score(records, static_cast<PairVar>(v), mask, ess);
            }
        }
    }

    const std::vector<Dag4>& dags = all_dags4();
    StructureResult result;
    result.score_table.reserve(dags.size());
    for (const Dag4& dag : dags) {
        double score = 0.0;
        for (int v = 0; v < 4; ++v) {
            score += family[v][dag.parents[v]];
        }
        result.score_table.push_back(score);
    }
    const std::size_t best_index = static_cast<std::size_t>(
        std::max_element(result.score_table.begin(), result.score_table.end()) -
        result.score_table.begin());
    result.best_dag = dags[best_index];
    result.best_score = result.score_table[best_index];
    for (std::size_t d = 0; d < dags.size(); ++d) {
        if (std::abs(result.score_table[d] - result.best_score) < 1e-9) {
            result.equivalence_class.push_back(dags[d]);
        }
    }
    return result;
}

namespace {

// Regularized incomplete gamma functions; series expansion below s+1,
// continued fraction above.
double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double sp = s;
    for (int k = 0; k < 1000; ++k) {
        sp += 1.0;
        term *= x / sp;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) {
            break;
        }
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double gamma_q_contfrac(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k <= 1000; ++k) {
        const double an = -static_cast<double>(k) * (static_cast<double>(k) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) {
            break;
        }
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double chi_squared_upper_tail(double x, double df) {
    if (df <= 0.0) {
        throw DomainError("chi_squared_upper_tail: df must be > 0");
    }
    if (x <= 0.0) {
        return 1.0;
    }
    const double s = df / 2.0;
    const double half_x = x / 2.0;
    if (half_x < s + 1.0) {
        return 1.0 - gamma_p_series(s, half_x);
    }
    return gamma_q_contfrac(s, half_x);
}

CiResult ci_test(const std::vector<PairRecord>& records, PairVar x, PairVar y,
                 const std::vector<PairVar>& given) {
    if (records.empty()) {
        throw DomainError("ci_test: records must be non-empty");
    }
    if (x == y) {
        throw DomainError("ci_test: x and y must differ");
    }
    for (PairVar z : given) {
        if (z == x || z == y) {
            throw DomainError("ci_test: conditioning set overlaps the tested pair");
        }
    }
    const int card_x = kPairVarCard[static_cast<int>(x)];
    const int card_y = kPairVarCard[static_cast<int>(y)];

    // Contingency table per observed conditioning stratum.
    std::unordered_map<std::uint32_t, std::vector<std::int64_t>> strata;
    for (const PairRecord& rec : records) {
        std::uint32_t stratum = 0;
        for (PairVar z : given) {
            stratum = stratum * static_cast<std::uint32_t>(kPairVarCard[static_cast<int>(z)]) +
                      static_cast<std::uint32_t>(state_of(rec, static_cast<int>(z)));
        }
        auto [it, inserted] = strata.try_emplace(stratum);
        if (inserted) {
            it->second.assign(static_cast<std::size_t>(card_x) * card_y, 0);
        }
        ++it->second[static_cast<std::size_t>(state_of(rec, static_cast<int>(x))) * card_y +
                     state_of(rec, static_cast<int>(y))];
    }

    CiResult result;
    for (const auto& [stratum, table] : strata) {
        std::vector<std::int64_t> row_sum(card_x, 0);
        std::vector<std::int64_t> col_sum(card_y, 0);
        std::int64_t total = 0;
        for (int a = 0; a < card_x; ++a) {
            for (int b = 0; b < card_y; ++b) {
                const std::int64_t o = table[static_cast<std::size_t>(a) * card_y + b];
                row_sum[a] += o;
                col_sum[b] += o;
                total += o;
            }
        }
        const int rows_used = static_cast<int>(std::count_if(
            row_sum.begin(), row_sum.end(), [](std::int64_t s) { return s > 0; }));
        const int cols_used = static_cast<int>(std::count_if(
            col_sum.begin(), col_sum.end(), [](std::int64_t s) { return s > 0; }));
        if (rows_used < 2 || cols_used < 2) {
            continue;  // degenerate stratum carries no information
        }
        for (int a = 0; a < card_x; ++a) {
            for (int b = 0; b < card_y; ++b) {
                const std::int64_t o = table[static_cast<std::size_t>(a) * card_y + b];
                if (o > 0) {
                    const double expected = static_cast<double>(row_sum[a]) *
                                            static_cast<double>(col_sum[b]) /
                                            static_cast<double>(total);
                    result.g += 2.0 * static_cast<double>(o) *
                                std::log(static_cast<double>(o) / expected);
                }
            }
        }
        result.df += (rows_used - 1) * (cols_used - 1);
    }
    if (result.df == 0) {
        throw InsufficientDataError("ci_test: every conditioning stratum is degenerate");
    }
    result.p_value = chi_squared_upper_tail(result.g, static_cast<double>(result.df));
    return result;
}

void write_records(std::ostream& out, const std::vector<PairRecord>& records) {
    out << "ind_a\tind_b\ttrans\tpatent\n";
    for (const PairRecord& rec : records) {
        out << rec.industry_a << '\t' << rec.industry_b << '\t' << rec.transaction_link << '\t'
            << rec.patent_link << '\n';
    }
}

std::vector<PairRecord> read_records(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("records: empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "ind_a\tind_b\ttrans\tpatent") {
        throw ParseError("records: line 1: expected header `ind_a\tind_b\ttrans\tpatent`");
    }
    std::vector<PairRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        PairRecord rec{};
        int fields = std::sscanf(line.c_str(), "%d\t%d\t%d\t%d", &rec.industry_a, &rec.industry_b,
                                 &rec.transaction_link, &rec.patent_link);
        if (fields != 4) {
            throw ParseError("records: line " + std::to_string(line_no) + ": expected 4 fields");
        }
        records.push_back(rec);
    }
    return records;
}

}  // namespace firmnet
