#pragma once
// Deterministic synthetic social-graph generator: entity nodes with uniform
// random relation edges around a target out-degree, plus attribute triples
// per entity. Bounded draws come straight off the engine output (not
// std::uniform_int_distribution) so identical seeds give byte-identical
// files everywhere.

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <unordered_set>

#include "pathtriple/errors.hpp"

namespace pathtriple {

struct SynthGraphSpec {
    uint64_t n_nodes = 100;
    double target_out_degree = 3.0;
    int n_topology_predicates = 1;
    double attribute_triples_per_entity = 9.0;
    uint64_t seed = 42;

    void check() const {
        if (n_nodes < 1) throw ConfigError("generator needs at least one node");
        if (target_out_degree < 0 || attribute_triples_per_entity < 0)
            throw ConfigError("generator rates must be non-negative");
        if (n_topology_predicates < 1) throw ConfigError("need at least one relation predicate");
    }
};

namespace detail {

inline uint64_t bounded(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

// Integer share of a fractional per-entity rate: floor(r*(i+1)) - floor(r*i),
// so totals track n * r without per-entity rounding drift.
inline uint64_t rate_share(double rate, uint64_t i) {
    return static_cast<uint64_t>(rate * static_cast<double>(i + 1)) -
           static_cast<uint64_t>(rate * static_cast<double>(i));
}

}  // namespace detail

inline const char* kSynthNamespace = "http://synth.example/";

inline void generate_ntriples(const SynthGraphSpec& spec, std::ostream& out) {
    spec.check();
    std::mt19937_64 rng(spec.seed);

    out << "# synthetic social graph\n";
    out << "# nodes=" << spec.n_nodes << " outDegree=" << spec.target_out_degree
        << " relationPredicates=" << spec.n_topology_predicates
        << " attributesPerEntity=" << spec.attribute_triples_per_entity
        << " seed=" << spec.seed << "\n";

    auto node_iri = [&](uint64_t i) {
        return "<" + std::string(kSynthNamespace) + "node/" + std::to_string(i) + ">";
    };
    auto rel_iri = [&](int k) {
        return "<" + std::string(kSynthNamespace) + "rel/" + std::to_string(k) + ">";
    };
    auto attr_iri = [&](uint64_t k) {
        return "<" + std::string(kSynthNamespace) + "attr/" + std::to_string(k % 3) + ">";
    };

    for (uint64_t i = 0; i < spec.n_nodes; ++i) {
        uint64_t edges = spec.n_nodes > 1 ? detail::rate_share(spec.target_out_degree, i) : 0;
        std::unordered_set<uint64_t> picked;
        for (uint64_t e = 0; e < edges; ++e) {
            uint64_t target = detail::bounded(rng, spec.n_nodes);
            for (int attempt = 0; attempt < 8 && (target == i || picked.count(target)); ++attempt)
                target = detail::bounded(rng, spec.n_nodes);
            if (target == i || picked.count(target)) continue;  // degree dips slightly, fine
            picked.insert(target);
            int rel = static_cast<int>(detail::bounded(rng, static_cast<uint64_t>(spec.n_topology_predicates)));
            out << node_iri(i) << " " << rel_iri(rel) << " " << node_iri(target) << " .\n";
        }
        uint64_t attrs = detail::rate_share(spec.attribute_triples_per_entity, i);
        for (uint64_t a = 0; a < attrs; ++a)
            out << node_iri(i) << " " << attr_iri(a) << " \"v" << i << "_" << a << "\" .\n";
    }
}

}  // namespace pathtriple
