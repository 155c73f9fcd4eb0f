// Shared fixtures and independent oracles for the test suite.
//
// The oracles deliberately avoid the histogram/lattice machinery under test:
// they materialise generalised tuples record by record, group them with plain
// maps, and score by direct substitution into the loss formula.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skald/effective_schema.hpp"
#include "skald/hierarchy.hpp"
#include "skald/lattice.hpp"
#include "skald/schema.hpp"

namespace support {

using namespace skald;

// ---------------------------------------------------------------------------
// schema builders

inline NumericalLadder ladder(std::int64_t lo, std::int64_t hi, std::vector<std::int64_t> widths,
                              std::int64_t scale = 1, std::int64_t anchor = 0) {
    NumericalLadder l;
    l.unit_scale = scale;
    l.domain_min = lo;
    l.domain_max = hi;
    l.widths = std::move(widths);
    l.anchor = anchor;
    return l;
}

/// Hierarchy over string values "v0".."v{n-1}" that pairs values at each level
/// (v0,v1 -> "g0" ...), topping out at "*". Produces ceil(log2(n))+1 levels.
inline CategoricalHierarchy paired_hierarchy(int n) {
    CategoricalHierarchy h;
    std::vector<std::string> values;
    for (int i = 0; i < n; ++i) values.push_back("v" + std::to_string(i));

    std::map<std::string, std::string> level;
    for (const auto& v : values) level[v] = v;
    h.levels.push_back(level);

    int group = 2;
    while (group < n) {
        level.clear();
        for (int i = 0; i < n; ++i) level[values[i]] = "g" + std::to_string(i / group);
        h.levels.push_back(level);
        group *= 2;
    }
    level.clear();
    for (const auto& v : values) level[v] = "*";
    h.levels.push_back(level);
    h.compile();
    return h;
}

/// A small schema: one paired categorical QID and one numerical QID, plus a
/// passthrough sensitive column. Columns: Cat, Num, Note.
inline DatasetSchema small_schema(int cat_values, std::int64_t num_lo, std::int64_t num_hi,
                                  std::vector<std::int64_t> num_widths) {
    DatasetSchema s;
    s.columns = {{"Cat", AttributeKind::CategoricalQid},
                 {"Num", AttributeKind::NumericalQid},
                 {"Note", AttributeKind::Sensitive}};
    QidSpec cat;
    cat.name = "Cat";
    cat.kind = AttributeKind::CategoricalQid;
    cat.hierarchy = paired_hierarchy(cat_values);
    cat.importance_rank = 1;
    QidSpec num;
    num.name = "Num";
    num.kind = AttributeKind::NumericalQid;
    num.ladder = ladder(num_lo, num_hi, std::move(num_widths));
    num.importance_rank = 2;
    s.qids = {std::move(cat), std::move(num)};
    s.record_bytes = 32;
    s.chunk_rows = 1000;
    return s;
}

// ---------------------------------------------------------------------------
// deterministic rng (splitmix64, independent of the library under test)

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

// ---------------------------------------------------------------------------
// monotone predicates and the brute-force minimal-passing oracle

/// A random monotone predicate: the up-set of a random set of seed nodes.
struct UpSetPredicate {
    std::vector<GeneralisationNode> seeds;

    bool operator()(const GeneralisationNode& n) const {
        for (const auto& s : seeds)
            if (node_leq(s, n)) return true;
        return false;
    }
};

inline UpSetPredicate random_upset(const Lattice& lattice, Rng& rng, std::size_t num_seeds) {
    UpSetPredicate p;
    auto nodes = lattice.all_nodes();
    for (std::size_t i = 0; i < num_seeds; ++i)
        p.seeds.push_back(nodes[rng.below(nodes.size())]);
    return p;
}

/// Evaluates the predicate on every node and keeps the passing nodes with no
/// passing predecessor.
template <typename Pred>
std::vector<GeneralisationNode> brute_force_minimal(const Lattice& lattice, const Pred& pred) {
    auto nodes = lattice.all_nodes();
    std::vector<GeneralisationNode> minimal;
    for (const auto& n : nodes) {
        if (!pred(n)) continue;
        bool has_passing_pred = false;
        for (const auto& p : lattice.predecessors(n)) {
            if (pred(p)) {
                has_passing_pred = true;
                break;
            }
        }
        if (!has_passing_pred) minimal.push_back(n);
    }
    return minimal;
}

inline std::set<std::vector<int>> node_set(const std::vector<GeneralisationNode>& nodes) {
    std::set<std::vector<int>> out;
    for (const auto& n : nodes) out.insert(n.levels);
    return out;
}

// ---------------------------------------------------------------------------
// materialisation oracle: generalise rows to string tuples, group, and score

/// The generalised QID tuple of one row at `node`, or nullopt when any QID
/// cell is missing, unparseable, or out of domain (the suppressed bin).
inline std::optional<std::vector<std::string>> oracle_tuple(const std::vector<std::string>& row,
                                                            const GeneralisationNode& node,
                                                            const EffectiveSchema& eff) {
    std::vector<std::string> tuple;
    for (std::size_t q = 0; q < eff.num_qids(); ++q) {
        const EffectiveQid& eq = eff.qids[q];
        const std::string& cell = row.at(eq.column);
        if (cell.empty()) return std::nullopt;
        if (eq.spec->kind == AttributeKind::CategoricalQid) {
            const auto& table = eq.spec->hierarchy->level_table(node.levels[q]);
            auto it = table.value_to_label_id.find(cell);
            if (it == table.value_to_label_id.end()) return std::nullopt;
            tuple.push_back(table.labels[it->second]);
        } else {
            auto units = parse_units(cell, eq.ladder->unit_scale);
            if (!units) return std::nullopt;
            std::int64_t v = *units;
            if (eq.codebook) {
                auto fwd = eq.codebook->forward.find(v);
                if (fwd == eq.codebook->forward.end()) return std::nullopt;
                v = fwd->second;
            }
            if (v < eq.ladder->domain_min || v > eq.ladder->domain_max) return std::nullopt;
            tuple.push_back(generalise_numerical(v, *eq.ladder, node.levels[q]).display);
        }
    }
    return tuple;
}

struct OracleScore {
    std::uint64_t dm_star = 0;
    std::uint64_t suppressed = 0;
    std::uint64_t total = 0;
    bool k_anonymous = false; // within the suppression limit
};

/// Direct evaluation of one node on materialised data: group generalised
/// tuples, suppress classes below k, apply the loss formula.
inline OracleScore oracle_evaluate(const std::vector<std::vector<std::string>>& rows,
                                   const GeneralisationNode& node, const EffectiveSchema& eff,
                                   std::uint64_t k, double suppression_limit) {
    std::map<std::vector<std::string>, std::uint64_t> groups;
    OracleScore score;
    score.total = rows.size();
    for (const auto& row : rows) {
        auto tuple = oracle_tuple(row, node, eff);
        if (tuple)
            ++groups[*tuple];
        else
            ++score.suppressed;
    }
    for (const auto& [tuple, count] : groups) {
        if (count >= k)
            score.dm_star += count * count;
        else
            score.suppressed += count;
    }
    score.dm_star += score.suppressed * score.suppressed;
    score.k_anonymous =
        static_cast<double>(score.suppressed) <= suppression_limit * static_cast<double>(score.total);
    return score;
}

struct OracleBest {
    GeneralisationNode node;
    OracleScore score;
    bool found = false;
};

/// Exhaustive search oracle: evaluates every lattice node on materialised
/// data and picks the lowest-DM* k-anonymous node, breaking ties by the
/// importance-rank lexicographic order (finest first).
inline OracleBest oracle_best_node(const std::vector<std::vector<std::string>>& rows,
                                   const Lattice& lattice, const EffectiveSchema& eff,
                                   std::uint64_t k, double suppression_limit) {
    OracleBest best;
    for (const auto& n : lattice.all_nodes()) {
        OracleScore s = oracle_evaluate(rows, n, eff, k, suppression_limit);
        if (!s.k_anonymous) continue;
        if (!best.found || s.dm_star < best.score.dm_star ||
            (s.dm_star == best.score.dm_star && lattice.rank_lex_less(n, best.node))) {
            best.node = n;
            best.score = s;
            best.found = true;
        }
    }
    return best;
}

} // namespace support
