#include "skald/lattice.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace skald {

Lattice::Lattice(GeneralisationNode root_, GeneralisationNode top_,
                 std::vector<std::size_t> importance_order_)
    : root(std::move(root_)), top(std::move(top_)), importance_order(std::move(importance_order_)) {
    if (root.levels.size() != top.levels.size())
        throw Error("lattice root/top arity mismatch");
    if (importance_order.size() != root.levels.size())
        throw Error("lattice importance order arity mismatch");
    for (std::size_t i = 0; i < root.levels.size(); ++i)
        if (root.levels[i] > top.levels[i])
            throw Error("lattice root above top in coordinate " + std::to_string(i));
}

std::uint64_t Lattice::node_count() const {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < root.levels.size(); ++i)
        count *= static_cast<std::uint64_t>(top.levels[i] - root.levels[i] + 1);
    return count;
}

bool Lattice::contains(const GeneralisationNode& n) const {
    if (n.levels.size() != root.levels.size()) return false;
    for (std::size_t i = 0; i < n.levels.size(); ++i)
        if (n.levels[i] < root.levels[i] || n.levels[i] > top.levels[i]) return false;
    return true;
}

std::vector<GeneralisationNode> Lattice::successors(const GeneralisationNode& n) const {
    if (!contains(n)) throw Error("successors: node outside lattice");
    std::vector<GeneralisationNode> out;
    for (std::size_t i = 0; i < n.levels.size(); ++i) {
        if (n.levels[i] < top.levels[i]) {
            GeneralisationNode s = n;
            ++s.levels[i];
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<GeneralisationNode> Lattice::predecessors(const GeneralisationNode& n) const {
    if (!contains(n)) throw Error("predecessors: node outside lattice");
    std::vector<GeneralisationNode> out;
    for (std::size_t i = 0; i < n.levels.size(); ++i) {
        if (n.levels[i] > root.levels[i]) {
            GeneralisationNode p = n;
            --p.levels[i];
            out.push_back(std::move(p));
        }
    }
    return out;
}

int Lattice::height(const GeneralisationNode& n) const {
    int h = 0;
    for (std::size_t i = 0; i < n.levels.size(); ++i) h += n.levels[i] - root.levels[i];
    return h;
}

int Lattice::max_height() const { return height(top); }

std::vector<GeneralisationNode> Lattice::all_nodes() const {
    std::vector<GeneralisationNode> out;
    out.reserve(static_cast<std::size_t>(node_count()));
    GeneralisationNode cur = root;
    while (true) {
        out.push_back(cur);
        std::size_t i = cur.levels.size();
        while (i > 0) {
            --i;
            if (cur.levels[i] < top.levels[i]) {
                ++cur.levels[i];
                break;
            }
            cur.levels[i] = root.levels[i];
            if (i == 0) return out;
        }
    }
}

bool Lattice::rank_lex_less(const GeneralisationNode& a, const GeneralisationNode& b) const {
    for (std::size_t qi : importance_order) {
        if (a.levels[qi] != b.levels[qi]) return a.levels[qi] < b.levels[qi];
    }
    return false;
}

namespace {

GeneralisationNode median_node(const Lattice& lattice, std::vector<GeneralisationNode> nodes) {
    std::sort(nodes.begin(), nodes.end(),
              [&](const GeneralisationNode& a, const GeneralisationNode& b) {
                  return lattice.rank_lex_less(a, b);
              });
    return nodes[nodes.size() / 2];
}

} // namespace

GeneralisationNode Lattice::middle_node() const {
    int mid = max_height() / 2;
    std::vector<GeneralisationNode> at_level;
    for (const auto& n : all_nodes())
        if (height(n) == mid) at_level.push_back(n);
    return median_node(*this, std::move(at_level));
}

SearchResult ola_search(const Lattice& lattice,
                        const std::function<bool(const GeneralisationNode&)>& predicate) {
    const std::vector<GeneralisationNode> nodes = lattice.all_nodes();
    const std::size_t count = nodes.size();
    std::vector<Tag> tag(count, Tag::Untagged);
    std::vector<int> height(count);
    for (std::size_t i = 0; i < count; ++i) height[i] = lattice.height(nodes[i]);

    SearchResult result;
    std::size_t open_count = count;

    while (open_count > 0) {
        // bisect the height range still open, then take the median untagged
        // node of the level nearest the midpoint
        int hmin = std::numeric_limits<int>::max(), hmax = 0;
        for (std::size_t i = 0; i < count; ++i) {
            if (tag[i] != Tag::Untagged) continue;
            hmin = std::min(hmin, height[i]);
            hmax = std::max(hmax, height[i]);
        }
        int target = (hmin + hmax) / 2;
        int best_dist = std::numeric_limits<int>::max();
        int chosen_h = hmin;
        for (std::size_t i = 0; i < count; ++i) {
            if (tag[i] != Tag::Untagged) continue;
            int dist = std::abs(height[i] - target);
            if (dist < best_dist || (dist == best_dist && height[i] < chosen_h)) {
                best_dist = dist;
                chosen_h = height[i];
            }
        }
        std::vector<GeneralisationNode> level_nodes;
        for (std::size_t i = 0; i < count; ++i)
            if (tag[i] == Tag::Untagged && height[i] == chosen_h) level_nodes.push_back(nodes[i]);
        GeneralisationNode pick = median_node(lattice, std::move(level_nodes));

        bool pass = predicate(pick);
        ++result.tags.evaluated_count;

        // predictive tagging: Pass closes upward, Fail closes downward
        for (std::size_t i = 0; i < count; ++i) {
            if (tag[i] != Tag::Untagged) continue;
            NodeOrder ord = node_compare(pick, nodes[i]);
            if (pass && (ord == NodeOrder::Less || ord == NodeOrder::Equal)) {
                tag[i] = Tag::Pass;
                --open_count;
            } else if (!pass && (ord == NodeOrder::Greater || ord == NodeOrder::Equal)) {
                tag[i] = Tag::Fail;
                --open_count;
            }
        }
    }

    for (std::size_t i = 0; i < count; ++i) result.tags.tags[nodes[i].levels] = tag[i];

    for (std::size_t i = 0; i < count; ++i) {
        if (tag[i] != Tag::Pass) continue;
        bool minimal = true;
        for (const auto& p : lattice.predecessors(nodes[i])) {
            if (result.tags.get(p) == Tag::Pass) {
                minimal = false;
                break;
            }
        }
        if (minimal) result.minimal_passing.push_back(nodes[i]);
    }
    return result;
}

std::string dump_lattice(const Lattice& lattice, const TagState& tags,
                         const std::map<std::vector<int>, std::string>& scores) {
    std::ostringstream os;
    for (const auto& n : lattice.all_nodes()) {
        os << n.to_string() << ' ';
        switch (tags.get(n)) {
            case Tag::Pass: os << "pass"; break;
            case Tag::Fail: os << "fail"; break;
            case Tag::Untagged: os << "untagged"; break;
        }
        auto it = scores.find(n.levels);
        if (it != scores.end()) os << ' ' << it->second;
        os << '\n';
    }
    return os.str();
}

} // namespace skald
