#pragma once
// Join-based path evaluation baseline: builds the full endpoint-pair relation
// of a path pattern by relational composition over disk-store scans, the way
// a join-only engine evaluates property paths. Closures iterate composition
// to a fixpoint. Every materialized row (scan output, composition output,
// union and identity rows) increments the intermediate-row counter; that
// counter is what the benchmark compares against BFS edge expansions.
//
// A row budget guards against closure blow-up on large graphs; exceeding it
// throws, and the benchmark marks the run failed.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pathtriple/dictionary.hpp"
#include "pathtriple/disk_store.hpp"
#include "pathtriple/path_eval.hpp"
#include "pathtriple/path_pattern.hpp"
#include "pathtriple/topo_graph.hpp"

namespace pathtriple {

struct ExpandBudgetExceeded : StoreError {
    ExpandBudgetExceeded() : StoreError("join expansion exceeded its row budget") {}
};

class JoinPathExpander {
public:
    using Pairs = std::vector<std::pair<TermId, TermId>>;  // sorted, unique

    JoinPathExpander(const TripleStore& store, const TopologyGraph& graph,
                     const Dictionary& dict, uint64_t row_budget = 20'000'000)
        : store_(store), graph_(graph), dict_(dict), row_budget_(row_budget) {}

    uint64_t intermediate_rows() const { return intermediate_rows_; }

    // Full relation of the pattern, including the zero-length identity over
    // graph nodes for nullable patterns.
    Pairs relation(const PathPattern& pattern) {
        using Kind = PathPattern::Kind;
        switch (pattern.kind) {
            case Kind::Link: return link_relation(pattern.predicate);
            case Kind::Inverse: {
                Pairs inner = relation(pattern.children[0]);
                for (auto& pr : inner) std::swap(pr.first, pr.second);
                charge(inner.size());
                return normalize(std::move(inner));
            }
            case Kind::Sequence: {
                Pairs left = relation(pattern.children[0]);
                Pairs right = relation(pattern.children[1]);
                return compose(left, right);
            }
            case Kind::Alternation: {
                Pairs left = relation(pattern.children[0]);
                Pairs right = relation(pattern.children[1]);
                charge(left.size() + right.size());
                left.insert(left.end(), right.begin(), right.end());
                return normalize(std::move(left));
            }
            case Kind::ZeroOrMore: {
                Pairs closure = transitive_closure(relation(pattern.children[0]));
                return unite(std::move(closure), identity());
            }
            case Kind::OneOrMore: {
                Pairs base = relation(pattern.children[0]);
                bool nullable = pattern.children[0].nullable();
                Pairs closure = transitive_closure(std::move(base));
                return nullable ? unite(std::move(closure), identity()) : closure;
            }
            case Kind::ZeroOrOne:
                return unite(relation(pattern.children[0]), identity());
        }
        return {};
    }

private:
    Pairs link_relation(const Term& predicate) {
        auto id = dict_.lookup(predicate);
        if (!id) return {};
        TriplePattern pattern{PatternSlot::variable("s"), PatternSlot::bound(*id),
                              PatternSlot::variable("o")};
        Pairs out;
        for (const Triple& t : store_.match(pattern)) {
            charge(1);
            // Only edges that made it into the topology graph count; the rest
            // of the matches are attribute triples under the same predicate.
            if (graph_.has_edge(t.s, t.p, t.o)) out.emplace_back(t.s, t.o);
        }
        return normalize(std::move(out));
    }

    Pairs identity() {
        Pairs out;
        out.reserve(graph_.node_count());
        for (TermId n : graph_.nodes()) out.emplace_back(n, n);
        charge(out.size());
        return out;
    }

    Pairs compose(const Pairs& left, const Pairs& right) {
        std::unordered_multimap<TermId, TermId> by_source;
        by_source.reserve(right.size());
        for (const auto& [a, b] : right) by_source.emplace(a, b);
        Pairs out;
        for (const auto& [a, b] : left) {
            auto [lo, hi] = by_source.equal_range(b);
            for (auto it = lo; it != hi; ++it) {
                charge(1);
                out.emplace_back(a, it->second);
            }
        }
        return normalize(std::move(out));
    }

    Pairs unite(Pairs a, const Pairs& b) {
        charge(b.size());
        a.insert(a.end(), b.begin(), b.end());
        return normalize(std::move(a));
    }

    // Iterated self-join to fixpoint; terminates because the pair universe is
    // finite and every round only adds pairs.
    Pairs transitive_closure(Pairs base) {
        Pairs result = base;
        Pairs frontier = base;
        while (!frontier.empty()) {
            Pairs next = compose(frontier, base);
            Pairs fresh;
            for (const auto& pr : next)
                if (!std::binary_search(result.begin(), result.end(), pr)) fresh.push_back(pr);
            if (fresh.empty()) break;
            result.insert(result.end(), fresh.begin(), fresh.end());
            result = normalize(std::move(result));
            frontier = std::move(fresh);
        }
        return result;
    }

    Pairs normalize(Pairs pairs) {
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        return pairs;
    }

    void charge(uint64_t rows) {
        intermediate_rows_ += rows;
        if (intermediate_rows_ > row_budget_) throw ExpandBudgetExceeded();
    }

    const TripleStore& store_;
    const TopologyGraph& graph_;
    const Dictionary& dict_;
    uint64_t row_budget_;
    uint64_t intermediate_rows_ = 0;
};

// Path evaluation through the expander, with NodeSpec semantics identical to
// eval_path: nullable patterns contribute (x, x) for every bound endpoint.
inline ReachResult expand_path(const TripleStore& store, const TopologyGraph& graph,
                               const Dictionary& dict, const NodeSpec& sources,
                               const NodeSpec& targets, const PathPattern& pattern,
                               uint64_t& intermediate_rows, uint64_t row_budget = 20'000'000) {
    JoinPathExpander expander(store, graph, dict, row_budget);
    auto all = expander.relation(pattern);

    ReachResult result;
    for (const auto& pr : all) {
        if (sources.is_bound && !sources.contains(pr.first)) continue;
        if (targets.is_bound && !targets.contains(pr.second)) continue;
        result.pairs.push_back(pr);
    }
    if (pattern.nullable()) {
        // Bound endpoints match themselves even off-graph; the relation only
        // carries the identity over graph nodes.
        if (sources.is_bound) {
            for (TermId u : sources.ids)
                if (!targets.is_bound || targets.contains(u)) result.pairs.emplace_back(u, u);
        } else if (targets.is_bound) {
            for (TermId u : targets.ids) result.pairs.emplace_back(u, u);
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()), result.pairs.end());

    intermediate_rows += expander.intermediate_rows();
    return result;
}

}  // namespace pathtriple
