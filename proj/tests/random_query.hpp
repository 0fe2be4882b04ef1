#pragma once
// Random dataset + query generation for the whole-query oracle tests.
// Datasets are small N-Triples graphs over a fixed vocabulary; queries are
// conjunctions of triple/path patterns (plus optional hop-shaped UNIONs)
// with at least one path pattern.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pathtriple/sparql.hpp"

namespace testgen {

inline std::string random_dataset(std::mt19937_64& rng, int n_entities, int n_topo_triples,
                                  int n_attr_triples) {
    std::ostringstream out;
    auto entity = [&](int i) { return "<http://q.example/e" + std::to_string(i) + ">"; };
    for (int i = 0; i < n_topo_triples; ++i) {
        int p = static_cast<int>(rng() % 3);
        out << entity(static_cast<int>(rng() % n_entities)) << " <http://q.example/rel"
            << p << "> " << entity(static_cast<int>(rng() % n_entities)) << " .\n";
    }
    for (int i = 0; i < n_attr_triples; ++i) {
        out << entity(static_cast<int>(rng() % n_entities)) << " <http://q.example/attr"
            << rng() % 2 << "> \"v" << rng() % 6 << "\" .\n";
    }
    return out.str();
}

struct QueryGenConfig {
    int n_entities = 10;
    int max_patterns = 4;
    int max_path_depth = 2;
    bool allow_union = true;
};

namespace detail_rq {

inline std::string var(std::mt19937_64& rng, int pool) {
    static const char* names[] = {"x", "y", "z", "w"};
    return names[rng() % pool];
}

inline std::string endpoint(std::mt19937_64& rng, const QueryGenConfig& cfg, int var_pool) {
    if (rng() % 4 == 0)
        return "<http://q.example/e" + std::to_string(rng() % cfg.n_entities) + ">";
    return "?" + var(rng, var_pool);
}

inline std::string path_expr(std::mt19937_64& rng, int depth) {
    auto link = [&]() { return "<http://q.example/rel" + std::to_string(rng() % 3) + ">"; };
    if (depth <= 0) return link();
    switch (rng() % 6) {
        case 0: return "(" + path_expr(rng, depth - 1) + ")*";
        case 1: return "(" + path_expr(rng, depth - 1) + ")+";
        case 2: return "(" + path_expr(rng, depth - 1) + ")?";
        case 3: return "^(" + path_expr(rng, depth - 1) + ")";
        case 4: return "(" + path_expr(rng, depth - 1) + "/" + path_expr(rng, depth - 1) + ")";
        default: return "(" + path_expr(rng, depth - 1) + "|" + path_expr(rng, depth - 1) + ")";
    }
}

inline std::string triple_pattern(std::mt19937_64& rng, const QueryGenConfig& cfg, int var_pool) {
    std::string s = endpoint(rng, cfg, var_pool);
    if (rng() % 3 == 0) {  // attribute pattern
        std::string o = rng() % 2 ? "\"v" + std::to_string(rng() % 6) + "\""
                                  : "?" + var(rng, var_pool);
        return s + " <http://q.example/attr" + std::to_string(rng() % 2) + "> " + o;
    }
    return s + " <http://q.example/rel" + std::to_string(rng() % 3) + "> " +
           endpoint(rng, cfg, var_pool);
}

inline std::string path_pattern(std::mt19937_64& rng, const QueryGenConfig& cfg, int var_pool) {
    std::string expr = path_expr(rng, 1 + static_cast<int>(rng() % cfg.max_path_depth));
    return endpoint(rng, cfg, var_pool) + " " + expr + " " + endpoint(rng, cfg, var_pool);
}

}  // namespace detail_rq

// A SELECT DISTINCT over 2 projection vars with >= 1 path pattern.
inline std::string random_query(std::mt19937_64& rng, const QueryGenConfig& cfg = {}) {
    using namespace detail_rq;
    int var_pool = 2 + static_cast<int>(rng() % 3);  // x..z/w
    int n_patterns = 1 + static_cast<int>(rng() % cfg.max_patterns);

    std::vector<std::string> patterns;
    patterns.push_back(path_pattern(rng, cfg, var_pool));  // guaranteed path pattern
    for (int i = 1; i < n_patterns; ++i) {
        if (cfg.allow_union && rng() % 6 == 0) {
            // Hop-shaped union: both branches bind ?ua/?ub, the 2-hop branch
            // uses a branch-local midpoint.
            std::string rel = "<http://q.example/rel" + std::to_string(rng() % 3) + ">";
            patterns.push_back("{ ?ua " + rel + " ?ub } UNION { ?ua " + rel + " ?um . ?um " +
                               rel + " ?ub }");
        } else if (rng() % 3 == 0) {
            patterns.push_back(path_pattern(rng, cfg, var_pool));
        } else {
            patterns.push_back(triple_pattern(rng, cfg, var_pool));
        }
    }

    std::ostringstream q;
    q << "SELECT DISTINCT ?x ?y WHERE {";
    for (size_t i = 0; i < patterns.size(); ++i) {
        q << " " << patterns[i];
        if (i + 1 < patterns.size()) q << " .";
    }
    q << " }";
    return q.str();
}

}  // namespace testgen
