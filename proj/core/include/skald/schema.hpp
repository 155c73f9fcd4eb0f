#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace skald {

enum class AttributeKind {
    DirectIdentifier,
    CategoricalQid,
    NumericalQid,
    Sensitive,
    Insensitive,
};

const char* to_string(AttributeKind kind);
std::optional<AttributeKind> attribute_kind_from_string(std::string_view s);

/// Per-level value->label tables for one categorical QID. Level 1 is the
/// identity on the domain; the top level maps everything to "*".
struct CategoricalHierarchy {
    std::vector<std::map<std::string, std::string>> levels; // levels[0] = level 1

    struct CompiledLevel {
        std::vector<std::string> labels; // sorted, distinct
        std::unordered_map<std::string, std::uint32_t> value_to_label_id;
    };
    std::vector<CompiledLevel> compiled;

    int num_levels() const { return static_cast<int>(levels.size()); }

    /// Builds the per-level label tables. Call once after the level maps are
    /// final; lookups below require it.
    void compile();

    std::size_t label_count(int level) const;
    const CompiledLevel& level_table(int level) const;

    bool operator==(const CategoricalHierarchy& o) const { return levels == o.levels; }
};

/// Bin-width ladder for one numerical QID, in integer units.
/// `unit_scale` converts raw values to units (10 means raw 23.8 -> 238).
/// The final level always spans the whole domain regardless of its width.
struct NumericalLadder {
    std::int64_t unit_scale = 1;
    std::int64_t domain_min = 0;
    std::int64_t domain_max = 0;
    std::vector<std::int64_t> widths; // 1-indexed levels; widths[0] = level 1
    std::int64_t anchor = 0;

    int num_levels() const { return static_cast<int>(widths.size()); }

    bool operator==(const NumericalLadder& o) const {
        return unit_scale == o.unit_scale && domain_min == o.domain_min &&
               domain_max == o.domain_max && widths == o.widths && anchor == o.anchor;
    }
};

struct QidSpec {
    std::string name;
    AttributeKind kind = AttributeKind::CategoricalQid;
    std::optional<CategoricalHierarchy> hierarchy; // kind == CategoricalQid
    std::optional<NumericalLadder> ladder;         // kind == NumericalQid
    bool encode = false;      // force sparse re-encoding
    int importance_rank = 0;  // unique per schema; lower = more important

    int num_levels() const;

    bool operator==(const QidSpec& o) const {
        return name == o.name && kind == o.kind && hierarchy == o.hierarchy &&
               ladder == o.ladder && encode == o.encode && importance_rank == o.importance_rank;
    }
};

struct DatasetSchema {
    std::vector<std::pair<std::string, AttributeKind>> columns;
    std::vector<QidSpec> qids; // categorical first, then numerical
    std::int64_t record_bytes = 0; // d; 0 = resolve from data ("auto")
    std::int64_t chunk_rows = 0;   // n

    std::size_t num_qids() const { return qids.size(); }

    /// Column index in `columns` for each QID, in QID order.
    std::vector<std::size_t> qid_columns() const;

    /// QID indices sorted by importance_rank ascending (most important first).
    std::vector<std::size_t> importance_order() const;

    bool operator==(const DatasetSchema& o) const {
        return columns == o.columns && qids == o.qids &&
               record_bytes == o.record_bytes && chunk_rows == o.chunk_rows;
    }
};

/// One lattice coordinate: a 1-based generalisation level per QID.
struct GeneralisationNode {
    std::vector<int> levels;

    bool operator==(const GeneralisationNode& o) const { return levels == o.levels; }
    bool operator!=(const GeneralisationNode& o) const { return !(*this == o); }

    std::string to_string() const;
};

enum class NodeOrder { Less, Greater, Equal, Incomparable };

/// Componentwise partial order over level vectors. Throws on length mismatch.
NodeOrder node_compare(const GeneralisationNode& a, const GeneralisationNode& b);

inline bool node_leq(const GeneralisationNode& a, const GeneralisationNode& b) {
    auto c = node_compare(a, b);
    return c == NodeOrder::Less || c == NodeOrder::Equal;
}

/// Returns every violated invariant, each naming the QID and level involved.
/// An empty list means the schema is valid.
std::vector<std::string> validate_schema(const DatasetSchema& schema);

} // namespace skald
