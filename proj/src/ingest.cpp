#include "firmnet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace firmnet {

namespace {

std::vector<std::string> split_tsv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

// Reads one line, tolerating a trailing CR. Returns false at EOF.
bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) {
        return false;
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return true;
}

void expect_header(std::istream& in, const std::string& expected, const char* what) {
    std::string line;
    if (!read_line(in, line)) {
        throw ParseError(std::string(what) + ": empty input, expected header `" + expected + "`");
    }
    if (line != expected) {
        throw ParseError(std::string(what) + ": line 1: expected header `" + expected + "`, got `" +
                         line + "`");
    }
}

[[noreturn]] void bad_field_count(const char* what, std::size_t line_no, std::size_t expected,
                                  std::size_t got) {
    throw ParseError(std::string(what) + ": line " + std::to_string(line_no) + ": expected " +
                     std::to_string(expected) + " fields, got " + std::to_string(got));
}

}  // namespace

std::size_t EntityKeyHash::operator()(const EntityKey& key) const {
    std::size_t h = std::hash<std::string>{}(key.name);
    std::size_t h2 = std::hash<std::string>{}(key.address);
    return h ^ (h2 + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::string normalize_field(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

EntityKey make_entity_key(const std::string& name, const std::string& address) {
    return EntityKey{normalize_field(name), normalize_field(address)};
}

CorporateTokens::CorporateTokens(std::vector<std::string> tokens) {
    for (auto& t : tokens) {
        std::string norm = normalize_field(t);
        if (!norm.empty()) {
            tokens_.push_back(std::move(norm));
        }
    }
}

CorporateTokens CorporateTokens::load(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (read_line(in, line)) {
        if (!line.empty() && line[0] != '#') {
            tokens.push_back(line);
        }
    }
    return CorporateTokens(std::move(tokens));
}

bool CorporateTokens::is_firm(const EntityKey& key) const {
    if (tokens_.empty()) {
        return true;
    }
    for (const auto& token : tokens_) {
        if (key.name.find(token) != std::string::npos) {
            return true;
        }
    }
    return false;
}

std::vector<std::pair<EntityKey, EntityKey>> parse_transactions(std::istream& in,
                                                                std::size_t* rows) {
    expect_header(in, "src_name\tsrc_addr\tdst_name\tdst_addr", "transactions");
    std::vector<std::pair<EntityKey, EntityKey>> pairs;
    std::string line;
    std::size_t line_no = 1;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto fields = split_tsv(line);
        if (fields.size() != 4) {
            bad_field_count("transactions", line_no, 4, fields.size());
        }
        pairs.emplace_back(make_entity_key(fields[0], fields[1]),
                           make_entity_key(fields[2], fields[3]));
    }
    if (rows != nullptr) {
        *rows = pairs.size();
    }
    return pairs;
}

std::vector<PatentRecord> parse_patents(std::istream& in, const CorporateTokens* firm_filter,
                                        std::size_t* rows, std::size_t* dropped_applicants) {
    expect_header(in, "patent_id\tapplicant_name\tapplicant_addr", "patents");
    // Aggregate rows by patent id, preserving first-appearance order.
    std::vector<PatentRecord> records;
    std::unordered_map<std::string, std::size_t> index;
    std::size_t row_count = 0;
    std::size_t dropped = 0;
    std::string line;
    std::size_t line_no = 1;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto fields = split_tsv(line);
        if (fields.size() != 3) {
            bad_field_count("patents", line_no, 3, fields.size());
        }
        ++row_count;
        EntityKey key = make_entity_key(fields[1], fields[2]);
        if (firm_filter != nullptr && !firm_filter->is_firm(key)) {
            ++dropped;
            continue;
        }
        auto [it, inserted] = index.try_emplace(fields[0], records.size());
        if (inserted) {
            records.push_back(PatentRecord{fields[0], {}});
        }
        auto& applicants = records[it->second].applicants;
        if (std::find(applicants.begin(), applicants.end(), key) == applicants.end()) {
            applicants.push_back(std::move(key));
        }
    }
    if (rows != nullptr) {
        *rows = row_count;
    }
    if (dropped_applicants != nullptr) {
        *dropped_applicants = dropped;
    }
    return records;
}

std::vector<std::pair<EntityKey, int>> parse_industries(std::istream& in) {
    expect_header(in, "name\taddr\tindustry_code", "industries");
    std::vector<std::pair<EntityKey, int>> result;
    std::string line;
    std::size_t line_no = 1;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto fields = split_tsv(line);
        if (fields.size() != 3) {
            bad_field_count("industries", line_no, 3, fields.size());
        }
        int code = 0;
        try {
            std::size_t used = 0;
            code = std::stoi(fields[2], &used);
            if (used != fields[2].size()) {
                code = 0;
            }
        } catch (const std::exception&) {
            code = 0;
        }
        if (code < 1 || code > kIndustryCount) {
            throw ParseError("industries: line " + std::to_string(line_no) +
                             ": industry_code must be 1.." + std::to_string(kIndustryCount) +
                             ", got `" + fields[2] + "`");
        }
        result.emplace_back(make_entity_key(fields[0], fields[1]), code);
    }
    return result;
}

std::vector<std::pair<EntityKey, EntityKey>> expand_patent_clique(const PatentRecord& record) {
    std::vector<std::pair<EntityKey, EntityKey>> pairs;
    const auto& a = record.applicants;
    if (a.size() < 2) {
        return pairs;
    }
    pairs.reserve(a.size() * (a.size() - 1) / 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            pairs.emplace_back(a[i], a[j]);
        }
    }
    return pairs;
}

MergeResult merge(const std::vector<std::pair<EntityKey, EntityKey>>& transactions,
                  const std::vector<PatentRecord>& patents) {
    MergeResult result;
    IngestReport& report = result.report;
    report.transaction_rows = transactions.size();
    report.patent_records = patents.size();

    std::unordered_map<EntityKey, FirmId, EntityKeyHash> registry;
    std::vector<char> in_trans_layer;
    std::vector<char> in_patent_layer;
    auto resolve = [&](const EntityKey& key, bool trans_layer) {
        auto [it, inserted] = registry.try_emplace(key, static_cast<FirmId>(result.firms.size()));
        if (inserted) {
            result.firms.push_back(key);
            in_trans_layer.push_back(0);
            in_patent_layer.push_back(0);
        }
        (trans_layer ? in_trans_layer : in_patent_layer)[it->second] = 1;
        return it->second;
    };

    std::vector<std::pair<FirmId, FirmId>> arc_list;
    arc_list.reserve(transactions.size());
    for (const auto& [src, dst] : transactions) {
        arc_list.emplace_back(resolve(src, true), resolve(dst, true));
    }
    std::vector<std::pair<FirmId, FirmId>> edge_list;
    for (const auto& record : patents) {
        for (const auto& [a, b] : expand_patent_clique(record)) {
            edge_list.emplace_back(resolve(a, false), resolve(b, false));
        }
    }

    result.net = MultiLayerNetwork(result.firms.size());
    for (const auto& [src, dst] : arc_list) {
        if (src == dst) {
            ++report.self_loops_dropped;
        } else if (!result.net.add_arc(src, dst)) {
            ++report.duplicate_arcs_collapsed;
        }
    }
    for (const auto& [a, b] : edge_list) {
        // Clique expansion of deduplicated applicants cannot self-loop, but
        // distinct raw applicants can normalize to the same firm.
        if (a == b) {
            ++report.self_loops_dropped;
        } else if (!result.net.add_patent_edge(a, b)) {
            ++report.duplicate_patent_edges_collapsed;
        }
    }

    for (std::size_t v = 0; v < result.firms.size(); ++v) {
        report.firms_in_both_layers += (in_trans_layer[v] && in_patent_layer[v]);
    }
    report.nodes = result.net.node_count();
    report.arcs = result.net.arc_count();
    report.patent_edges = result.net.patent_edge_count();
    return result;
}

void apply_industries(MergeResult& merged, const std::vector<std::pair<EntityKey, int>>& rows) {
    std::unordered_map<EntityKey, FirmId, EntityKeyHash> registry;
    for (std::size_t v = 0; v < merged.firms.size(); ++v) {
        registry.emplace(merged.firms[v], static_cast<FirmId>(v));
    }
    merged.report.industry_rows += rows.size();
    for (const auto& [key, code] : rows) {
        auto it = registry.find(key);
        if (it == registry.end()) {
            ++merged.report.industry_rows_unmatched;
        } else {
            merged.net.set_industry(it->second, code);
        }
    }
    merged.report.labeled_nodes = merged.net.labeled_count();
}

void write_network(const std::string& dir, const MultiLayerNetwork& net,
                   const std::vector<EntityKey>& firms) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream out(fs::path(dir) / "nodes.tsv");
        out << "id\tname\taddr\tindustry\n";
        for (FirmId v = 0; v < net.node_count(); ++v) {
            const bool named = v < firms.size();
            out << v << '\t' << (named ? firms[v].name : "firm" + std::to_string(v)) << '\t'
                << (named ? firms[v].address : "addr" + std::to_string(v)) << '\t'
                << net.industry_of(v) << '\n';
        }
    }
    {
        std::ofstream out(fs::path(dir) / "arcs.tsv");
        out << "src\tdst\n";
        for (const auto& [i, j] : net.arcs()) {
            out << i << '\t' << j << '\n';
        }
    }
    {
        std::ofstream out(fs::path(dir) / "edges.tsv");
        out << "a\tb\n";
        for (const auto& [a, b] : net.patent_edges()) {
            out << a << '\t' << b << '\n';
        }
    }
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return in;
}

FirmId parse_id(const std::string& field, const char* what, std::size_t line_no) {
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(field, &used);
        if (used != field.size()) {
            throw std::invalid_argument(field);
        }
        return static_cast<FirmId>(v);
    } catch (const std::exception&) {
        throw ParseError(std::string(what) + ": line " + std::to_string(line_no) +
                         ": bad node id `" + field + "`");
    }
}

}  // namespace

MergeResult read_network(const std::string& dir) {
    namespace fs = std::filesystem;
    MergeResult result;

    std::vector<std::tuple<FirmId, EntityKey, int>> nodes;
    {
        auto in = open_or_throw(fs::path(dir) / "nodes.tsv");
        expect_header(in, "id\tname\taddr\tindustry", "nodes");
        std::string line;
        std::size_t line_no = 1;
        while (read_line(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            auto fields = split_tsv(line);
            if (fields.size() != 4) {
                bad_field_count("nodes", line_no, 4, fields.size());
            }
            FirmId id = parse_id(fields[0], "nodes", line_no);
            int code = std::stoi(fields[3]);
            nodes.emplace_back(id, EntityKey{fields[1], fields[2]}, code);
        }
    }
    result.net = MultiLayerNetwork(nodes.size());
    result.firms.resize(nodes.size());
    for (const auto& [id, key, code] : nodes) {
        if (id >= nodes.size()) {
            throw ParseError("nodes: id " + std::to_string(id) + " not contiguous");
        }
        result.firms[id] = key;
        if (code != 0) {
            result.net.set_industry(id, code);
        }
    }
    {
        auto in = open_or_throw(fs::path(dir) / "arcs.tsv");
        expect_header(in, "src\tdst", "arcs");
        std::string line;
        std::size_t line_no = 1;
        while (read_line(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            auto fields = split_tsv(line);
            if (fields.size() != 2) {
                bad_field_count("arcs", line_no, 2, fields.size());
            }
            result.net.add_arc(parse_id(fields[0], "arcs", line_no),
                               parse_id(fields[1], "arcs", line_no));
        }
    }
    {
        auto in = open_or_throw(fs::path(dir) / "edges.tsv");
        expect_header(in, "a\tb", "edges");
        std::string line;
        std::size_t line_no = 1;
        while (read_line(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            auto fields = split_tsv(line);
            if (fields.size() != 2) {
                bad_field_count("edges", line_no, 2, fields.size());
            }
            result.net.add_patent_edge(parse_id(fields[0], "edges", line_no),
                                       parse_id(fields[1], "edges", line_no));
        }
    }
    result.report.nodes = result.net.node_count();
    result.report.arcs = result.net.arc_count();
    result.report.patent_edges = result.net.patent_edge_count();
    result.report.labeled_nodes = result.net.labeled_count();
    return result;
}

void write_report(std::ostream& out, const IngestReport& r) {
    out << "key\tvalue\n";
    out << "transaction_rows\t" << r.transaction_rows << '\n';
    out << "patent_rows\t" << r.patent_rows << '\n';
    out << "patent_records\t" << r.patent_records << '\n';
    out << "non_firm_applicants_dropped\t" << r.non_firm_applicants_dropped << '\n';
    out << "duplicate_arcs_collapsed\t" << r.duplicate_arcs_collapsed << '\n';
    out << "duplicate_patent_edges_collapsed\t" << r.duplicate_patent_edges_collapsed << '\n';
    out << "self_loops_dropped\t" << r.self_loops_dropped << '\n';
    out << "firms_in_both_layers\t" << r.firms_in_both_layers << '\n';
    out << "nodes\t" << r.nodes << '\n';
    out << "arcs\t" << r.arcs << '\n';
    out << "patent_edges\t" << r.patent_edges << '\n';
    out << "industry_rows\t" << r.industry_rows << '\n';
    out << "industry_rows_unmatched\t" << r.industry_rows_unmatched << '\n';
    out << "labeled_nodes\t" << r.labeled_nodes << '\n';
}

}  // namespace firmnet
