#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "skald/errors.hpp"
#include "skald/schema.hpp"

namespace skald {

/// Generalisation lattice between `root` (finest) and `top` (coarsest).
/// Nodes are generated on demand from level vectors; nothing is materialised
/// except tag storage during a search.
struct Lattice {
    GeneralisationNode root;
    GeneralisationNode top;
    std::vector<std::size_t> importance_order; // QID indices, most important first

    Lattice(GeneralisationNode root_, GeneralisationNode top_,
            std::vector<std::size_t> importance_order_);

    std::size_t num_qids() const { return root.levels.size(); }
    std::uint64_t node_count() const;
    bool contains(const GeneralisationNode& n) const;

    std::vector<GeneralisationNode> successors(const GeneralisationNode& n) const;
    std::vector<GeneralisationNode> predecessors(const GeneralisationNode& n) const;

    int height(const GeneralisationNode& n) const; // sum of levels above root
    int max_height() const;

    GeneralisationNode middle_node() const;

    std::vector<GeneralisationNode> all_nodes() const;

    /// Lexicographic comparison of level vectors in importance-rank order;
    /// the deterministic tie-break everywhere.
    bool rank_lex_less(const GeneralisationNode& a, const GeneralisationNode& b) const;
};

enum class Tag { Untagged, Pass, Fail };

struct TagState {
    std::map<std::vector<int>, Tag> tags;
    std::uint64_t evaluated_count = 0;

    Tag get(const GeneralisationNode& n) const {
        auto it = tags.find(n.levels);
        return it == tags.end() ? Tag::Untagged : it->second;
    }
};

struct SearchResult {
    std::vector<GeneralisationNode> minimal_passing; // the k-minimal set
    TagState tags;
};

/// Binary-search-on-height lattice search for a predicate that is monotone
/// non-decreasing along generalisation edges. Every node ends up tagged;
/// the predicate runs on a subset (predictive tagging fills in the rest).
SearchResult ola_search(const Lattice& lattice,
                        const std::function<bool(const GeneralisationNode&)>& predicate);

/// Picks the candidate optimising `scorer`; ties broken by keeping the most
/// important QIDs finest (rank-ordered lexicographic minimum).
template <typename Score>
GeneralisationNode select_best(const std::vector<GeneralisationNode>& candidates,
                               const std::function<Score(const GeneralisationNode&)>& scorer,
                               bool minimise, const Lattice& lattice) {
    if (candidates.empty()) throw NoFeasibleNode("select_best: empty candidate set");
    const GeneralisationNode* best = &candidates.front();
    Score best_score = scorer(candidates.front());
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        Score s = scorer(candidates[i]);
        bool better = minimise ? s < best_score : best_score < s;
        bool tie = !(s < best_score) && !(best_score < s);
        if (better || (tie && lattice.rank_lex_less(candidates[i], *best))) {
            best = &candidates[i];
            best_score = s;
        }
    }
    return *best;
}

/// One line per node: level vector, tag, score if evaluated. Consumed by the
/// `lattice` CLI subcommand.
std::string dump_lattice(const Lattice& lattice, const TagState& tags,
                         const std::map<std::vector<int>, std::string>& scores);

} // namespace skald
