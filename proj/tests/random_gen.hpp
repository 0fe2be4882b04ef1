#pragma once
// Deterministic random generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "pathtriple/dictionary.hpp"
#include "pathtriple/path_pattern.hpp"
#include "pathtriple/term.hpp"
#include "pathtriple/topo_graph.hpp"
#include "pathtriple/triple.hpp"

namespace testgen {

using namespace pathtriple;

inline uint64_t pick(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

inline Term random_term(std::mt19937_64& rng) {
    std::string body = "t" + std::to_string(pick(rng, 5000));
    switch (pick(rng, 6)) {
        case 0: return Term::iri("http://rnd.example/" + body);
        case 1: return Term::iri("urn:x:" + body);
        case 2: return Term::blank(body);
        case 3: return Term::literal(body);
        case 4: return Term::typed_literal(body, "http://www.w3.org/2001/XMLSchema#string");
        default: return Term::lang_literal(body, pick(rng, 2) ? "en" : "de");
    }
}

inline Term random_entity(std::mt19937_64& rng, uint64_t universe) {
    return Term::iri("http://rnd.example/node/" + std::to_string(pick(rng, universe)));
}

// A random edge set over `n_nodes` nodes and `n_preds` predicates, loaded
// into a sealed graph. Returns the edge list as id triples.
struct RandomGraph {
    TopologyGraph graph;
    Dictionary dict;
    std::vector<TermId> nodes;       // all node ids, including isolated ones
    std::vector<TermId> predicates;  // interned predicate ids
    std::vector<Triple> edges;
};

inline RandomGraph random_graph(std::mt19937_64& rng, uint64_t n_nodes, uint64_t n_edges,
                                int n_preds) {
    RandomGraph g;
    for (uint64_t i = 0; i < n_nodes; ++i)
        g.nodes.push_back(g.dict.intern(Term::iri("http://rnd.example/node/" + std::to_string(i))));
    for (int k = 0; k < n_preds; ++k)
        g.predicates.push_back(g.dict.intern(Term::iri("http://rnd.example/rel/" + std::to_string(k))));
    for (uint64_t e = 0; e < n_edges; ++e) {
        TermId s = g.nodes[pick(rng, n_nodes)];
        TermId o = g.nodes[pick(rng, n_nodes)];
        TermId p = g.predicates[pick(rng, static_cast<uint64_t>(n_preds))];
        if (g.graph.add_edge(s, p, o)) g.edges.push_back({s, p, o});
    }
    g.graph.seal();
    return g;
}

// Random path pattern of bounded depth over the given predicates.
inline PathPattern random_pattern(std::mt19937_64& rng, const Dictionary& dict,
                                  const std::vector<TermId>& predicates, int depth) {
    auto link = [&]() {
        // Occasionally an unknown predicate: a provably-empty link.
        if (pick(rng, 10) == 0) return PathPattern::link(Term::iri("http://rnd.example/absent"));
        return PathPattern::link(dict.resolve(predicates[pick(rng, predicates.size())]));
    };
    if (depth <= 0) return link();
    switch (pick(rng, 8)) {
        case 0: return link();
        case 1: return PathPattern::inverse(random_pattern(rng, dict, predicates, depth - 1));
        case 2: return PathPattern::sequence(random_pattern(rng, dict, predicates, depth - 1),
                                             random_pattern(rng, dict, predicates, depth - 1));
        case 3: return PathPattern::alternation(random_pattern(rng, dict, predicates, depth - 1),
                                                random_pattern(rng, dict, predicates, depth - 1));
        case 4: return PathPattern::zero_or_more(random_pattern(rng, dict, predicates, depth - 1));
        case 5: return PathPattern::one_or_more(random_pattern(rng, dict, predicates, depth - 1));
        case 6: return PathPattern::zero_or_one(random_pattern(rng, dict, predicates, depth - 1));
        default: return link();
    }
}

}  // namespace testgen
