#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "firmnet/netcore.hpp"

namespace firmnet {

// Normalized (name, address) identity key. Two source records refer to the
// same firm iff their keys are equal. Normalization is trim + collapse of
// internal whitespace + ASCII case-fold, nothing fuzzier.
struct EntityKey {
    std::string name;
    std::string address;

    bool operator==(const EntityKey&) const = default;
    bool operator<(const EntityKey& other) const {
        return name != other.name ? name < other.name : address < other.address;
    }
};

struct EntityKeyHash {
    std::size_t operator()(const EntityKey& key) const;
};

std::string normalize_field(const std::string& raw);
EntityKey make_entity_key(const std::string& name, const std::string& address);

// One patent with its firm applicants, deduplicated within the record.
struct PatentRecord {
    std::string patent_id;
    std::vector<EntityKey> applicants;
};

// Corporate-status token list used to keep only firm applicants. A name
// qualifies when it contains any token (match on the normalized name). An
// empty list disables filtering so desk-scale fixtures pass through.
class CorporateTokens {
  public:
    CorporateTokens() = default;
    explicit CorporateTokens(std::vector<std::string> tokens);
    static CorporateTokens load(std::istream& in);

    bool empty() const { return tokens_.empty(); }
    bool is_firm(const EntityKey& key) const;

  private:
    std::vector<std::string> tokens_;
};

// Counters for every lossy or noteworthy step of the merge.
struct IngestReport {
    std::size_t transaction_rows = 0;
    std::size_t patent_rows = 0;
    std::size_t patent_records = 0;
    std::size_t non_firm_applicants_dropped = 0;
    std::size_t duplicate_arcs_collapsed = 0;
    std::size_t duplicate_patent_edges_collapsed = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t firms_in_both_layers = 0;
    std::size_t nodes = 0;
    std::size_t arcs = 0;
    std::size_t patent_edges = 0;
    std::size_t industry_rows = 0;
    std::size_t industry_rows_unmatched = 0;
    std::size_t labeled_nodes = 0;
};

// Transaction TSV: header `src_name<TAB>src_addr<TAB>dst_name<TAB>dst_addr`,
// one ordered pair per data row, source first. Self-pairs are kept here;
// the merge drops them with a counted diagnostic.
std::vector<std::pair<EntityKey, EntityKey>> parse_transactions(std::istream& in,
                                                                std::size_t* rows = nullptr);

// Patent TSV: header `patent_id<TAB>applicant_name<TAB>applicant_addr`, one
// applicant per row, aggregated by patent id (grouping not required). When a
// token filter is given, applicants whose name lacks every token are dropped
// and counted.
std::vector<PatentRecord> parse_patents(std::istream& in,
                                        const CorporateTokens* firm_filter = nullptr,
                                        std::size_t* rows = nullptr,
                                        std::size_t* dropped_applicants = nullptr);

// Industry map TSV: header `name<TAB>addr<TAB>industry_code`, code in 1..34.
std::vector<std::pair<EntityKey, int>> parse_industries(std::istream& in);

// All C(k,2) unordered applicant pairs of one patent (complete graph).
std::vector<std::pair<EntityKey, EntityKey>> expand_patent_clique(const PatentRecord& record);

struct MergeResult {
    MultiLayerNetwork net;
    std::vector<EntityKey> firms;  // index == FirmId
    IngestReport report;
};

// Resolve identities across both sources into one id space, expand patents
// to cliques, and build the merged two-layer network. FirmIds are assigned
// in first-appearance order (transactions first, then patents).
MergeResult merge(const std::vector<std::pair<EntityKey, EntityKey>>& transactions,
                  const std::vector<PatentRecord>& patents);

// Attach industry labels to merged firms; unmatched rows are counted in the
// report, as are labeled nodes.
void apply_industries(MergeResult& merged, const std::vector<std::pair<EntityKey, int>>& rows);

// Network directory serialization: nodes.tsv (id, name, addr, industry),
// arcs.tsv (src, dst), edges.tsv (a, b with a < b). Deterministic output.
void write_network(const std::string& dir, const MultiLayerNetwork& net,
                   const std::vector<EntityKey>& firms);
MergeResult read_network(const std::string& dir);

void write_report(std::ostream& out, const IngestReport& report);

}  // namespace firmnet
