#pragma once
// Closed-form path-cardinality model and per-operator cost estimates.
//
// For a path pattern between endpoint sets of sizes s and o, evaluated to
// length horizon l over a graph with V = |V_EE| nodes and E = |E_EE| edges:
//
//   card = s * o * sum_{i=1..l} [ V^((1 - ln c) * i) * B(l, p) ]
//   B(l, p) = sum_{j=1..l} C(l, j) * p^j * (1 - p)^(l - j)
//   p = (E - V) / V, clamped into [0, 1] by policy
//
// V^(1 - ln c) is the expected out-degree under a densification model with
// constant c in (1, 2]; B treats the chance that a node extends the path as
// binomial. Raw p routinely lands outside [0, 1] on real graphs, hence the
// clamp policy: exactly 1 (B collapses to 1) or 0.99. Estimates are capped
// at V^2, the number of distinct endpoint pairs that can exist at all.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "pathtriple/catalog.hpp"
#include "pathtriple/errors.hpp"
#include "pathtriple/path_pattern.hpp"

namespace pathtriple {

enum class PClampPolicy : uint8_t { ClampToOne = 0, ClampTo99 = 1 };

inline const char* to_string(PClampPolicy p) {
    return p == PClampPolicy::ClampToOne ? "clamp-to-one" : "clamp-to-0.99";
}

struct CostModelParams {
    double densification_c = 1.75;  // (1, 2]
    int path_length_horizon = 6;    // l substituted for unbounded closures
    PClampPolicy p_policy = PClampPolicy::ClampToOne;

    void check() const {
        if (!(densification_c > 1.0 && densification_c <= 2.0))
            throw ConfigError("densification constant must satisfy 1 < c <= 2");
        if (path_length_horizon < 1)
            throw ConfigError("path length horizon must be >= 1");
    }
};

namespace detail {

inline double binomial_coefficient(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// pow with the 0^0 = 1 convention, matching the reference evaluation.
inline double pow0(double base, int exp) {
    if (exp == 0) return 1.0;
    return std::pow(base, exp);
}

inline double extension_probability(const StoreCatalog& stats, PClampPolicy policy) {
    const double v = static_cast<double>(stats.entity_nodes);
    if (v < 1.0) return 0.0;
    const double raw = (static_cast<double>(stats.topology_edges) - v) / v;
    const double hi = policy == PClampPolicy::ClampToOne ? 1.0 : 0.99;
    return std::clamp(raw, 0.0, hi);
}

inline double binomial_tail(int l, double p) {
    double sum = 0.0;
    for (int j = 1; j <= l; ++j)
        sum += binomial_coefficient(l, j) * pow0(p, j) * pow0(1.0 - p, l - j);
    return sum;
}

}  // namespace detail

// Estimated number of endpoint pairs for a path of length horizon l between
// endpoint sets of sizes s and o. Throws on l < 1; an empty endpoint set
// annihilates the estimate.
inline double estimate_path_cardinality(double s, double o, int l, const StoreCatalog& stats,
                                        const CostModelParams& params) {
    if (l < 1) throw ConfigError("path length must be >= 1");
    params.check();
    if (s <= 0.0 || o <= 0.0) return 0.0;

    const double v = static_cast<double>(stats.entity_nodes);
    if (v < 1.0) return 0.0;

    const double p_eff = detail::extension_probability(stats, params.p_policy);
    const double b = detail::binomial_tail(l, p_eff);
    const double alpha = 1.0 - std::log(params.densification_c);

    double sum = 0.0;
    for (int i = 1; i <= l; ++i) sum += std::exp(alpha * static_cast<double>(i) * std::log(v)) * b;

    const double cap = v * v;
    return std::min(s * o * sum, cap);
}

// Length horizon of a path pattern: links count 1, sequences add, the better
// alternation branch dominates, closures take the configured horizon.
inline int path_length_of(const PathPattern& pattern, const CostModelParams& params) {
    using Kind = PathPattern::Kind;
    switch (pattern.kind) {
        case Kind::Link: return 1;
        case Kind::Inverse: return path_length_of(pattern.children[0], params);
        case Kind::Sequence:
            return path_length_of(pattern.children[0], params) +
                   path_length_of(pattern.children[1], params);
        case Kind::Alternation:
            return std::max(path_length_of(pattern.children[0], params),
                            path_length_of(pattern.children[1], params));
        case Kind::ZeroOrOne: return path_length_of(pattern.children[0], params);
        case Kind::ZeroOrMore:
        case Kind::OneOrMore: return params.path_length_horizon;
    }
    return 1;
}

}  // namespace pathtriple
