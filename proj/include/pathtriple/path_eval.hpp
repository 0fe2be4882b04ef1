#pragma once
// Property-path evaluation: the pattern compiles to a small NFA (inverse
// pushed down to the links), and a BFS explores the implicit product of
// graph x automaton. A visited set over (node, state) pairs caps each edge
// at one expansion per state, which keeps a single-source, single-state
// evaluation within |V_EE| node visits and |E_EE| edge expansions.
//
// Zero-length semantics: a nullable pattern matches (x, x) for every bound
// endpoint x, and for every graph node when the endpoint is unbounded.
// Results are endpoint pairs with set semantics.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pathtriple/dictionary.hpp"
#include "pathtriple/path_pattern.hpp"
#include "pathtriple/topo_graph.hpp"

namespace pathtriple {

// An endpoint of a path evaluation: a concrete id set, or unbounded.
struct NodeSpec {
    bool is_bound = false;
    std::vector<TermId> ids;  // sorted, unique; meaningful only when bound

    static NodeSpec unbound() { return {}; }
    static NodeSpec bound(std::vector<TermId> ids) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return NodeSpec{true, std::move(ids)};
    }
    static NodeSpec bound_single(TermId id) { return NodeSpec{true, {id}}; }

    bool contains(TermId id) const {
        return std::binary_search(ids.begin(), ids.end(), id);
    }
};

struct ReachResult {
    std::vector<std::pair<TermId, TermId>> pairs;  // sorted, unique
};

struct TraversalStats {
    uint64_t nodes_visited = 0;   // (node, state) dequeues across all sources
    uint64_t edges_expanded = 0;  // adjacency entries scanned
};

namespace detail {

struct PathAutomaton {
    struct Edge {
        TermId predicate;  // kInvalidTermId = provably-empty link
        bool backward = false;
        uint32_t to = 0;
    };
    std::vector<std::vector<Edge>> edges;
    std::vector<std::vector<uint32_t>> eps;
    uint32_t start = 0;
    uint32_t accept = 0;

    uint32_t add_state() {
        edges.emplace_back();
        eps.emplace_back();
        return static_cast<uint32_t>(edges.size() - 1);
    }
    size_t state_count() const { return edges.size(); }
};

class PathCompiler {
public:
    explicit PathCompiler(const Dictionary& dict) : dict_(dict) {}

    PathAutomaton compile(const PathPattern& pattern) {
        nfa_.start = nfa_.add_state();
        nfa_.accept = nfa_.add_state();
        build(pattern, nfa_.start, nfa_.accept, /*inverted=*/false);
        return std::move(nfa_);
    }

private:
    // Thompson construction from `from` to `to`. `inverted` flips link
    // direction and swaps sequence order, so ^(a/b) becomes ^b / ^a.
    void build(const PathPattern& p, uint32_t from, uint32_t to, bool inverted) {
        using Kind = PathPattern::Kind;
        switch (p.kind) {
            case Kind::Link: {
                auto id = dict_.lookup(p.predicate);
                nfa_.edges[from].push_back({id.value_or(kInvalidTermId), inverted, to});
                break;
            }
            case Kind::Inverse:
                build(p.children[0], from, to, !inverted);
                break;
            case Kind::Sequence: {
                uint32_t mid = nfa_.add_state();
                const auto& first = inverted ? p.children[1] : p.children[0];
                const auto& second = inverted ? p.children[0] : p.children[1];
                build(first, from, mid, inverted);
                build(second, mid, to, inverted);
                break;
            }
            case Kind::Alternation:
                build(p.children[0], from, to, inverted);
                build(p.children[1], from, to, inverted);
                break;
            case Kind::ZeroOrMore: {
                uint32_t hub = nfa_.add_state();
                nfa_.eps[from].push_back(hub);
                nfa_.eps[hub].push_back(to);
                build(p.children[0], hub, hub, inverted);
                break;
            }
            case Kind::OneOrMore: {
                uint32_t hub = nfa_.add_state();
                build(p.children[0], from, hub, inverted);
                nfa_.eps[hub].push_back(to);
                build(p.children[0], hub, hub, inverted);
                break;
            }
            case Kind::ZeroOrOne:
                nfa_.eps[from].push_back(to);
                build(p.children[0], from, to, inverted);
                break;
        }
    }

    const Dictionary& dict_;
    PathAutomaton nfa_;
};

struct NodeStateHash {
    size_t operator()(const std::pair<TermId, uint32_t>& key) const {
        return std::hash<uint64_t>{}(key.first.value * 0x9e3779b97f4a7c15ull ^ key.second);
    }
};

// BFS over graph x NFA from one source. Appends (source, n) for every n
// reached in the accept state (subject to the target filter).
// nodes_visited counts distinct graph nodes touched by this run, not product
// states, so a single-state closure stays within |V_EE|.
inline void bfs_from(const TopologyGraph& graph, const PathAutomaton& nfa, TermId source,
                     const NodeSpec& targets, std::vector<std::pair<TermId, TermId>>& out,
                     TraversalStats& stats) {
    std::unordered_set<std::pair<TermId, uint32_t>, NodeStateHash> visited;
    std::unordered_set<TermId> seen_nodes;
    std::deque<std::pair<TermId, uint32_t>> queue;

    auto push = [&](TermId node, uint32_t state) {
        if (visited.insert({node, state}).second) queue.push_back({node, state});
    };
    push(source, nfa.start);

    while (!queue.empty()) {
        auto [node, state] = queue.front();
        queue.pop_front();
        if (graph.contains_node(node) && seen_nodes.insert(node).second)
            ++stats.nodes_visited;

        if (state == nfa.accept && (!targets.is_bound || targets.contains(node)))
            out.emplace_back(source, node);

        for (uint32_t next : nfa.eps[state]) push(node, next);
        for (const auto& edge : nfa.edges[state]) {
            if (!edge.predicate.valid()) continue;  // provably-empty link
            const auto& neighbors = edge.backward ? graph.predecessors(node, edge.predicate)
                                                  : graph.successors(node, edge.predicate);
            stats.edges_expanded += neighbors.size();
            for (TermId v : neighbors) push(v, edge.to);
        }
    }
}

inline PathPattern flip_pattern(const PathPattern& p) {
    return PathPattern::inverse(p);
}

inline TraversalStats& last_stats_slot() {
    thread_local TraversalStats stats;
    return stats;
}

}  // namespace detail

// Counters from the most recent eval_path on this thread.
inline const TraversalStats& last_traversal_stats() { return detail::last_stats_slot(); }

inline ReachResult eval_path(const TopologyGraph& graph, const NodeSpec& sources,
                             const NodeSpec& targets, const PathPattern& pattern,
                             const Dictionary& dict, TraversalStats* stats_out = nullptr) {
    if (!graph.sealed()) throw StateError("topology graph not sealed");

    TraversalStats stats;
    ReachResult result;

    if (!sources.is_bound && targets.is_bound) {
        // Backward evaluation: BFS from the targets over the inverted pattern.
        detail::PathCompiler compiler(dict);
        auto nfa = compiler.compile(detail::flip_pattern(pattern));
        for (TermId t : targets.ids)
            detail::bfs_from(graph, nfa, t, NodeSpec::unbound(), result.pairs, stats);
        for (auto& pr : result.pairs) std::swap(pr.first, pr.second);
    } else {
        detail::PathCompiler compiler(dict);
        auto nfa = compiler.compile(pattern);
        if (sources.is_bound) {
            for (TermId s : sources.ids)
                detail::bfs_from(graph, nfa, s, targets, result.pairs, stats);
        } else {
            // Both unbounded: every graph node is a source.
            for (TermId s : graph.nodes())
                detail::bfs_from(graph, nfa, s, targets, result.pairs, stats);
        }
    }

    std::sort(result.pairs.begin(), result.pairs.end());
    result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()), result.pairs.end());

    detail::last_stats_slot() = stats;
    if (stats_out) *stats_out = stats;
    return result;
}

}  // namespace pathtriple
