#include <doctest.h>

#include <set>

#include "skald/lattice.hpp"
#include "support.hpp"

using namespace skald;

namespace {

Lattice small_lattice() {
    // max levels (2,3,4): 24 nodes, as in the worked example
    return Lattice({{1, 1, 1}}, {{2, 3, 4}}, {0, 1, 2});
}

} // namespace

TEST_CASE("node count, membership, and neighbours") {
    Lattice l = small_lattice();
    CHECK(l.node_count() == 24);
    CHECK(l.all_nodes().size() == 24);
    CHECK(l.contains({{1, 1, 1}}));
    CHECK(l.contains({{2, 3, 4}}));
    CHECK(!l.contains({{0, 1, 1}}));
    CHECK(!l.contains({{2, 4, 4}}));

    auto succ = l.successors({{1, 1, 1}});
    CHECK(succ.size() == 3); // one step up per QID
    CHECK(support::node_set(succ) ==
          std::set<std::vector<int>>{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
    CHECK(l.successors({{2, 3, 4}}).empty());
    CHECK(l.predecessors({{1, 1, 1}}).empty());
    CHECK(support::node_set(l.predecessors({{2, 3, 4}})) ==
          std::set<std::vector<int>>{{1, 3, 4}, {2, 2, 4}, {2, 3, 3}});
}

TEST_CASE("height and middle node") {
    Lattice l = small_lattice();
    CHECK(l.height({{1, 1, 1}}) == 0);
    CHECK(l.height({{2, 3, 4}}) == 6);
    CHECK(l.height({{2, 1, 2}}) == 2);
    CHECK(l.max_height() == 6);
    CHECK(l.height(l.middle_node()) == 3);

    Lattice point({{1, 1}}, {{1, 1}}, {0, 1});
    CHECK(point.node_count() == 1);
    CHECK(point.middle_node() == GeneralisationNode{{1, 1}});
}

TEST_CASE("all_nodes enumerates each node exactly once") {
    Lattice l = small_lattice();
    auto nodes = l.all_nodes();
    std::set<std::vector<int>> seen;
    for (const auto& n : nodes) {
        CHECK(l.contains(n));
        seen.insert(n.levels);
    }
    CHECK(seen.size() == nodes.size());
}

TEST_CASE("rank_lex_less follows the importance order") {
    // QID 1 most important, then QID 0
    Lattice l({{1, 1}}, {{3, 3}}, {1, 0});
    CHECK(l.rank_lex_less({{3, 1}}, {{1, 2}}));  // compares QID 1 first
    CHECK(!l.rank_lex_less({{1, 2}}, {{3, 1}}));
    CHECK(l.rank_lex_less({{1, 2}}, {{2, 2}}));  // QID 1 ties, QID 0 decides
    CHECK(!l.rank_lex_less({{1, 1}}, {{1, 1}}));
}

TEST_CASE("search degenerate predicates") {
    Lattice l = small_lattice();

    SearchResult all_pass = ola_search(l, [](const GeneralisationNode&) { return true; });
    REQUIRE(all_pass.minimal_passing.size() == 1);
    CHECK(all_pass.minimal_passing[0] == l.root);

    SearchResult all_fail = ola_search(l, [](const GeneralisationNode&) { return false; });
    CHECK(all_fail.minimal_passing.empty());
    CHECK(all_fail.tags.get(l.top) == Tag::Fail);
}

TEST_CASE("search leaves every node tagged consistently") {
    Lattice l = small_lattice();
    support::Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto pred = support::random_upset(l, rng, 1 + rng.below(3));
        SearchResult r = ola_search(l, pred);
        for (const auto& n : l.all_nodes()) {
            Tag t = r.tags.get(n);
            CHECK(t != Tag::Untagged);
            CHECK((t == Tag::Pass) == pred(n)); // predictive tags must agree
        }
    }
}

TEST_CASE("search matches the brute-force minimal set on random monotone predicates") {
    support::Rng rng(2024);
    // a spread of lattice shapes, all <= 200 nodes
    std::vector<std::pair<std::vector<int>, std::vector<int>>> shapes = {
        {{1, 1, 1}, {2, 3, 4}},       {{1, 1}, {10, 10}},
        {{1, 1, 1, 1}, {3, 3, 3, 2}}, {{1}, {37}},
        {{2, 1, 3}, {4, 4, 5}},       {{1, 1, 1, 1, 1}, {2, 2, 2, 2, 2}},
    };
    int trials = 0;
    for (const auto& [root, top] : shapes) {
        std::vector<std::size_t> order(root.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Lattice l({root}, {top}, order);
        for (int t = 0; t < 20; ++t, ++trials) {
            auto pred = support::random_upset(l, rng, 1 + rng.below(4));
            SearchResult r = ola_search(l, pred);
            CHECK(support::node_set(r.minimal_passing) ==
                  support::node_set(support::brute_force_minimal(l, pred)));
        }
    }
    CHECK(trials >= 100);
}

TEST_CASE("search evaluates fewer nodes than it tags") {
    Lattice l = small_lattice();
    std::set<std::vector<int>> evaluated;
    SearchResult r = ola_search(l, [&](const GeneralisationNode& n) {
        evaluated.insert(n.levels);
        return n.levels[0] + n.levels[1] + n.levels[2] >= 6; // monotone
    });
    CHECK(r.tags.evaluated_count == evaluated.size());
    CHECK(r.tags.evaluated_count < l.node_count()); // predictive tagging pruned
    CHECK(!r.minimal_passing.empty());
}

TEST_CASE("select_best minimises with rank-lex tie-break") {
    Lattice l({{1, 1}}, {{3, 3}}, {1, 0});
    std::vector<GeneralisationNode> cands = {{{3, 1}}, {{1, 2}}, {{2, 2}}};
    std::function<int(const GeneralisationNode&)> equal_score =
        [](const GeneralisationNode&) { return 7; };
    CHECK(select_best<int>(cands, equal_score, true, l) == GeneralisationNode{{3, 1}});

    std::function<int(const GeneralisationNode&)> sum_score =
        [](const GeneralisationNode& n) { return n.levels[0] + n.levels[1]; };
    CHECK(select_best<int>(cands, sum_score, true, l) == GeneralisationNode{{1, 2}});
    // maximise: (3,1) and (2,2) tie at 4; rank-lex (QID 1 first) keeps (3,1)
    CHECK(select_best<int>(cands, sum_score, false, l) == GeneralisationNode{{3, 1}});

    CHECK_THROWS_AS((void)select_best<int>({}, equal_score, true, l), NoFeasibleNode);
}

TEST_CASE("invalid lattice bounds are rejected") {
    CHECK_THROWS_AS(Lattice({{2, 1}}, {{1, 3}}, {0, 1}), Error);
    CHECK_THROWS_AS(Lattice({{1, 1}}, {{2, 2, 2}}, {0, 1}), Error);
}
