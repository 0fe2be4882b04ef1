#pragma once
// In-memory topology graph: predicate-keyed forward (PSO) and backward (POS)
// adjacency. Forward answers successors(), backward answers predecessors();
// the two always encode the same edge set.
//
// Single writer until seal(); immutable and freely shared afterwards.

#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "pathtriple/errors.hpp"
#include "pathtriple/term.hpp"

namespace pathtriple {

class TopologyGraph {
public:
    using AdjacencyList = std::vector<TermId>;  // sorted, no duplicates

    // Inserts into both directions. Returns false for duplicate edges.
    bool add_edge(TermId s, TermId p, TermId o) {
        if (sealed_) throw StateError("topology graph is sealed");
        if (!s.valid() || !p.valid() || !o.valid())
            throw StateError("edge with invalid term id");
        if (!sorted_insert(forward_[p][s], o)) return false;
        sorted_insert(backward_[p][o], s);
        nodes_.insert(s);
        nodes_.insert(o);
        ++edge_count_;
        return true;
    }

    void seal() { sealed_ = true; }
    bool sealed() const { return sealed_; }

    const AdjacencyList& successors(TermId node, TermId p) const {
        require_sealed();
        return adjacent(forward_, p, node);
    }

    const AdjacencyList& predecessors(TermId node, TermId p) const {
        require_sealed();
        return adjacent(backward_, p, node);
    }

    bool has_edge(TermId s, TermId p, TermId o) const {
        const auto& succ = adjacent(forward_, p, s);
        return std::binary_search(succ.begin(), succ.end(), o);
    }

    // V_EE: every id incident to at least one edge. Ordered for determinism.
    const std::set<TermId>& nodes() const { return nodes_; }
    bool contains_node(TermId id) const { return nodes_.count(id) != 0; }
    uint64_t edge_count() const { return edge_count_; }
    uint64_t node_count() const { return nodes_.size(); }

    std::vector<TermId> predicates() const {
        std::vector<TermId> out;
        out.reserve(forward_.size());
        for (const auto& [p, _] : forward_) out.push_back(p);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    using PredicateAdjacency = std::unordered_map<TermId, AdjacencyList>;

    static bool sorted_insert(AdjacencyList& list, TermId id) {
        auto it = std::lower_bound(list.begin(), list.end(), id);
        if (it != list.end() && *it == id) return false;
        list.insert(it, id);
        return true;
    }

    const AdjacencyList& adjacent(const std::unordered_map<TermId, PredicateAdjacency>& side,
                                  TermId p, TermId node) const {
        static const AdjacencyList kEmpty;
        auto pit = side.find(p);
        if (pit == side.end()) return kEmpty;
        auto nit = pit->second.find(node);
        return nit == pit->second.end() ? kEmpty : nit->second;
    }

    void require_sealed() const {
        if (!sealed_) throw StateError("topology graph not sealed yet");
    }

    std::unordered_map<TermId, PredicateAdjacency> forward_;   // p -> s -> [o]
    std::unordered_map<TermId, PredicateAdjacency> backward_;  // p -> o -> [s]
    std::set<TermId> nodes_;
    uint64_t edge_count_ = 0;
    bool sealed_ = false;
};

}  // namespace pathtriple
