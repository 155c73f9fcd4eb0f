#include "skald/schema.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "skald/errors.hpp"

namespace skald {

const char* to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::DirectIdentifier: return "direct_identifier";
        case AttributeKind::CategoricalQid: return "categorical_qid";
        case AttributeKind::NumericalQid: return "numerical_qid";
        case AttributeKind::Sensitive: return "sensitive";
        case AttributeKind::Insensitive: return "insensitive";
    }
    return "?";
}

std::optional<AttributeKind> attribute_kind_from_string(std::string_view s) {
    if (s == "direct_identifier") return AttributeKind::DirectIdentifier;
    if (s == "categorical_qid") return AttributeKind::CategoricalQid;
    if (s == "numerical_qid") return AttributeKind::NumericalQid;
    if (s == "sensitive") return AttributeKind::Sensitive;
    if (s == "insensitive") return AttributeKind::Insensitive;
    return std::nullopt;
}

void CategoricalHierarchy::compile() {
    compiled.clear();
    compiled.reserve(levels.size());
    for (const auto& level : levels) {
        CompiledLevel cl;
        std::set<std::string> distinct;
        for (const auto& [value, label] : level) distinct.insert(label);
        cl.labels.assign(distinct.begin(), distinct.end());
        for (const auto& [value, label] : level) {
            auto it = std::lower_bound(cl.labels.begin(), cl.labels.end(), label);
            cl.value_to_label_id.emplace(value,
                static_cast<std::uint32_t>(it - cl.labels.begin()));
        }
        compiled.push_back(std::move(cl));
    }
}

std::size_t CategoricalHierarchy::label_count(int level) const {
    return level_table(level).labels.size();
}

const CategoricalHierarchy::CompiledLevel& CategoricalHierarchy::level_table(int level) const {
    if (level < 1 || level > num_levels())
        throw LevelOutOfRange("categorical level " + std::to_string(level) + " out of range");
    if (compiled.size() != levels.size())
        throw Error("CategoricalHierarchy::compile() not called");
    return compiled[static_cast<std::size_t>(level - 1)];
}

int QidSpec::num_levels() const {
    if (kind == AttributeKind::CategoricalQid && hierarchy) return hierarchy->num_levels();
    if (kind == AttributeKind::NumericalQid && ladder) return ladder->num_levels();
    return 0;
}

std::vector<std::size_t> DatasetSchema::qid_columns() const {
    std::vector<std::size_t> out;
    out.reserve(qids.size());
    for (const auto& q : qids) {
        std::size_t idx = columns.size();
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].first == q.name) { idx = c; break; }
        }
        if (idx == columns.size())
            throw ConfigError("QID '" + q.name + "' not found among schema columns");
        out.push_back(idx);
    }
    return out;
}

std::vector<std::size_t> DatasetSchema::importance_order() const {
    std::vector<std::size_t> order(qids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return qids[a].importance_rank < qids[b].importance_rank;
    });
    return order;
}

std::string GeneralisationNode::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i) os << ',';
        os << levels[i];
    }
    os << ')';
    return os.str();
}

NodeOrder node_compare(const GeneralisationNode& a, const GeneralisationNode& b) {
    if (a.levels.size() != b.levels.size())
        throw Error("node_compare: length mismatch");
    bool le = true, ge = true;
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        if (a.levels[i] > b.levels[i]) le = false;
        if (a.levels[i] < b.levels[i]) ge = false;
    }
    if (le && ge) return NodeOrder::Equal;
    if (le) return NodeOrder::Less;
    if (ge) return NodeOrder::Greater;
    return NodeOrder::Incomparable;
}

namespace {

void validate_hierarchy(const std::string& qid, const CategoricalHierarchy& h,
                        std::vector<std::string>& out) {
    if (h.levels.empty()) {
        out.push_back(qid + ": hierarchy has no levels");
        return;
    }
    const auto& level1 = h.levels.front();
    for (const auto& [value, label] : level1) {
        if (value != label)
            out.push_back(qid + ": level 1 is not the identity ('" + value + "' -> '" + label + "')");
    }
    // every level must be total over the level-1 domain
    for (std::size_t l = 1; l < h.levels.size(); ++l) {
        for (const auto& [value, _] : level1) {
            if (!h.levels[l].count(value))
                out.push_back(qid + ": level " + std::to_string(l + 1) +
                              " missing domain value '" + value + "'");
        }
    }
    // coarsening: same label at level l implies same label at level l+1
    for (std::size_t l = 0; l + 1 < h.levels.size(); ++l) {
        std::map<std::string, std::string> seen; // label@l -> label@l+1
        for (const auto& [value, label] : h.levels[l]) {
            auto next = h.levels[l + 1].find(value);
            if (next == h.levels[l + 1].end()) continue; // already reported
            auto [it, inserted] = seen.emplace(label, next->second);
            if (!inserted && it->second != next->second)
                out.push_back(qid + ": level " + std::to_string(l + 2) +
                              " not a coarsening of level " + std::to_string(l + 1) +
                              " (label '" + label + "' splits)");
        }
    }
    for (const auto& [value, label] : h.levels.back()) {
        if (label != "*")
            out.push_back(qid + ": top level maps '" + value + "' to '" + label + "', expected '*'");
    }
}

void validate_ladder(const std::string& qid, const NumericalLadder& l,
                     std::vector<std::string>& out) {
    if (l.unit_scale <= 0) out.push_back(qid + ": unit_scale must be positive");
    if (l.domain_min > l.domain_max) out.push_back(qid + ": domain_min > domain_max");
    if (l.widths.empty()) {
        out.push_back(qid + ": ladder has no levels");
        return;
    }
    for (std::size_t i = 0; i < l.widths.size(); ++i) {
        if (l.widths[i] <= 0)
            out.push_back(qid + ": widths[" + std::to_string(i) + "]=" +
                          std::to_string(l.widths[i]) + " must be positive");
    }
    for (std::size_t i = 0; i + 1 < l.widths.size(); ++i) {
        if (l.widths[i] >= l.widths[i + 1])
            out.push_back(qid + ": widths not strictly increasing at index " + std::to_string(i));
    }
    // divisibility is required between consecutive non-final levels only;
    // the final level spans the whole domain whatever its width says
    for (std::size_t i = 0; i + 2 < l.widths.size(); ++i) {
        if (l.widths[i] > 0 && l.widths[i + 1] > 0 && l.widths[i + 1] % l.widths[i] != 0)
            out.push_back(qid + ": widths[" + std::to_string(i) + "]=" + std::to_string(l.widths[i]) +
                          " does not divide widths[" + std::to_string(i + 1) + "]=" +
                          std::to_string(l.widths[i + 1]));
    }
}

} // namespace

std::vector<std::string> validate_schema(const DatasetSchema& schema) {
    std::vector<std::string> out;
    if (schema.qids.empty()) out.push_back("schema has no QIDs");
    if (schema.record_bytes < 0) out.push_back("record_bytes must be >= 0");
    if (schema.chunk_rows <= 0) out.push_back("chunk_rows must be positive");

    std::set<std::string> colnames;
    for (const auto& [name, _] : schema.columns) {
        if (!colnames.insert(name).second)
            out.push_back("duplicate column name '" + name + "'");
    }

    bool seen_numerical = false;
    std::set<int> ranks;
    for (const auto& q : schema.qids) {
        if (!colnames.count(q.name))
            out.push_back("QID '" + q.name + "' is not a schema column");
        if (!ranks.insert(q.importance_rank).second)
            out.push_back("duplicate importance_rank " + std::to_string(q.importance_rank));
        switch (q.kind) {
            case AttributeKind::CategoricalQid:
                if (seen_numerical)
                    out.push_back("QID '" + q.name + "': categorical QIDs must precede numerical ones");
                if (!q.hierarchy) out.push_back("QID '" + q.name + "': missing hierarchy");
                else validate_hierarchy(q.name, *q.hierarchy, out);
                break;
            case AttributeKind::NumericalQid:
                seen_numerical = true;
                if (!q.ladder) out.push_back("QID '" + q.name + "': missing ladder");
                else validate_ladder(q.name, *q.ladder, out);
                break;
            default:
                out.push_back("QID '" + q.name + "' has non-QID kind");
        }
    }
    if (!ranks.empty()) {
        int expect = 1;
        for (int r : ranks) {
            if (r != expect)
                out.push_back("importance_rank values must be a permutation of 1.." +
                              std::to_string(schema.qids.size()));
            ++expect;
        }
    }
    return out;
}

} // namespace skald
