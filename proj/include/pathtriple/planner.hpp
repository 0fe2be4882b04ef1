#pragma once
// Cost annotation, greedy join ordering, and plan explain.
//
// Ordering is greedy left-deep: start from the cheapest leaf, then repeatedly
// attach the leaf with the smallest estimated join cardinality, restricted to
// leaves sharing a variable with the tree built so far (cartesian products
// only when nothing connects). NoCE mode runs the same algorithm with every
// path leaf's cardinality overridden to infinity, so paths sort last.
//
// If the greedy order would cost more than the incoming syntax order under
// the model, the input order is kept: the optimizer never degrades its own
// objective.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pathtriple/algebra.hpp"
#include "pathtriple/cost_model.hpp"
#include "pathtriple/disk_store.hpp"

namespace pathtriple {

enum class PlanMode : uint8_t { CostBased = 0, NoCE = 1 };

inline const char* to_string(PlanMode m) {
    return m == PlanMode::CostBased ? "cost" : "noce";
}

namespace detail {

// Distinct-value estimate for a variable inside a subtree: how many different
// ids the variable can take. Leaf-level knowledge comes from the predicate
// histogram; anything composite is bounded by its own cardinality.
inline double distinct_estimate(const Plan& plan, const std::string& var,
                                const StoreCatalog& stats) {
    const double nodes = std::max<double>(1.0, static_cast<double>(stats.entity_nodes));
    if (const auto* t = std::get_if<OpTriple>(&plan.node)) {
        if (t->pattern.p.is_var() && t->pattern.p.var == var)
            return std::max<double>(1.0, static_cast<double>(stats.per_predicate.size()));
        if (t->pattern.p.is_bound()) {
            auto it = stats.per_predicate.find(*t->pattern.p.term);
            double pc = it == stats.per_predicate.end() ? 1.0 : static_cast<double>(it->second);
            return std::max(1.0, std::min(pc, nodes));
        }
        return nodes;
    }
    if (plan.is<OpPath>()) return nodes;
    double best = nodes;
    for (const auto& c : plan.children)
        if (c.variables().count(var)) best = std::min(best, distinct_estimate(c, var, stats));
    return std::max(1.0, std::min(best, plan.est.cardinality));
}

inline double join_cardinality(const Plan& left, const Plan& right, const StoreCatalog& stats) {
    auto lv = left.variables();
    auto rv = right.variables();
    double divisor = 1.0;
    for (const auto& v : lv) {
        if (!rv.count(v)) continue;
        divisor = std::max(divisor, std::max(distinct_estimate(left, v, stats),
                                             distinct_estimate(right, v, stats)));
    }
    double card = left.est.cardinality * right.est.cardinality / divisor;
    return std::max(1.0, card);
}

inline bool shares_variable(const Plan& a, const Plan& b) {
    auto av = a.variables();
    for (const auto& v : b.variables())
        if (av.count(v)) return true;
    return false;
}

}  // namespace detail

// Fills est (cardinality + per-node cpu) bottom-up. In NoCE mode every
// OpPath leaf gets infinite cardinality and the overridden flag.
inline void annotate_costs(Plan& plan, const StoreCatalog& stats, const TripleStore& store,
                           const CostModelParams& params, PlanMode mode) {
    for (auto& c : plan.children) annotate_costs(c, stats, store, params, mode);

    const double nodes = static_cast<double>(stats.entity_nodes);
    const double edges = static_cast<double>(stats.topology_edges);

    if (auto* t = std::get_if<OpTriple>(&plan.node)) {
        plan.est.cardinality = t->provably_empty ? 0.0 : store.cardinality_of(t->pattern);
        plan.est.cpu = plan.est.cardinality;
    } else if (auto* p = std::get_if<OpPath>(&plan.node)) {
        double s = p->subject.is_bound() ? 1.0 : nodes;
        double o = p->object.is_bound() ? 1.0 : nodes;
        if (p->provably_empty) s = 0.0;
        int l = path_length_of(p->path, params);
        plan.est.cardinality = estimate_path_cardinality(s, o, l, stats, params);
        plan.est.cpu = s * (nodes + edges);
        if (mode == PlanMode::NoCE) {
            plan.est.cardinality = std::numeric_limits<double>::infinity();
            plan.cost_overridden = true;
        }
    } else if (plan.is<OpJoin>()) {
        plan.est.cardinality = detail::join_cardinality(plan.children[0], plan.children[1], stats);
        plan.est.cpu = plan.children[0].est.cardinality + plan.children[1].est.cardinality +
                       plan.est.cardinality;
    } else if (plan.is<OpUnion>()) {
        plan.est.cardinality = 0.0;
        for (const auto& c : plan.children) plan.est.cardinality += c.est.cardinality;
        plan.est.cpu = plan.est.cardinality;
    } else {  // OpDistinct / OpProject: pass-through cardinality
        plan.est.cardinality = plan.children[0].est.cardinality;
        plan.est.cpu = plan.est.cardinality;
    }
}

inline double total_cpu(const Plan& plan) {
    double sum = plan.est.cpu;
    for (const auto& c : plan.children) sum += total_cpu(c);
    return sum;
}

namespace detail {

inline double subtree_cpu(const Plan& plan) { return total_cpu(plan); }

inline Plan build_left_deep(std::vector<Plan> leaves, const StoreCatalog& stats) {
    Plan current = std::move(leaves.front());
    for (size_t i = 1; i < leaves.size(); ++i) {
        Plan join;
        join.node = OpJoin{};
        join.children.push_back(std::move(current));
        join.children.push_back(std::move(leaves[i]));
        join.est.cardinality = join_cardinality(join.children[0], join.children[1], stats);
        join.est.cpu = join.children[0].est.cardinality + join.children[1].est.cardinality +
                       join.est.cardinality;
        current = std::move(join);
    }
    return current;
}

// Greedy ordering of one conjunction's leaves.
inline std::vector<Plan> greedy_order(std::vector<Plan> leaves, const StoreCatalog& stats) {
    std::vector<Plan> ordered;
    std::vector<bool> used(leaves.size(), false);

    // Seed: smallest estimated cardinality, ties by original position.
    size_t seed = 0;
    for (size_t i = 1; i < leaves.size(); ++i)
        if (leaves[i].est.cardinality < leaves[seed].est.cardinality) seed = i;
    used[seed] = true;
    ordered.push_back(std::move(leaves[seed]));

    Plan tree = ordered.back();  // running copy for variable/cardinality tracking
    for (size_t step = 1; step < leaves.size(); ++step) {
        size_t best = leaves.size();
        double best_card = std::numeric_limits<double>::infinity();
        bool best_shares = false;
        for (size_t i = 0; i < leaves.size(); ++i) {
            if (used[i]) continue;
            bool shares = shares_variable(tree, leaves[i]);
            double card = join_cardinality(tree, leaves[i], stats);
            // Connected candidates strictly beat cartesian ones.
            bool better = best == leaves.size() ||
                          (shares && !best_shares) ||
                          (shares == best_shares && card < best_card);
            if (better) {
                best = i;
                best_card = card;
                best_shares = shares;
            }
        }
        used[best] = true;
        Plan join;
        join.node = OpJoin{};
        join.children.push_back(std::move(tree));
        join.children.push_back(leaves[best]);
        join.est.cardinality = best_card;
        join.est.cpu = join.children[0].est.cardinality + join.children[1].est.cardinality +
                       best_card;
        tree = std::move(join);
        ordered.push_back(std::move(leaves[best]));
    }
    return ordered;
}

inline void flatten_joins(Plan&& plan, std::vector<Plan>& leaves) {
    if (plan.is<OpJoin>()) {
        for (auto& c : plan.children) flatten_joins(std::move(c), leaves);
    } else {
        leaves.push_back(std::move(plan));
    }
}

inline Plan order_subtree(Plan plan, const StoreCatalog& stats) {
    if (plan.is<OpJoin>()) {
        std::vector<Plan> leaves;
        flatten_joins(std::move(plan), leaves);
        for (auto& leaf : leaves)
            if (leaf.is<OpUnion>() || leaf.is<OpDistinct>() || leaf.is<OpProject>())
                leaf = order_subtree(std::move(leaf), stats);

        std::vector<Plan> syntax_order = leaves;  // fallback candidate
        std::vector<Plan> greedy = greedy_order(std::move(leaves), stats);
        Plan greedy_tree = build_left_deep(std::move(greedy), stats);
        Plan syntax_tree = build_left_deep(std::move(syntax_order), stats);
        return subtree_cpu(greedy_tree) <= subtree_cpu(syntax_tree) ? std::move(greedy_tree)
                                                                    : std::move(syntax_tree);
    }
    for (auto& c : plan.children) c = order_subtree(std::move(c), stats);
    return plan;
}

}  // namespace detail

namespace detail {

// Rebuilding joins leaves pass-through wrappers (project/distinct/union)
// carrying estimates from the pre-reorder tree; refresh them bottom-up.
inline void refresh_passthrough(Plan& plan) {
    for (auto& c : plan.children) refresh_passthrough(c);
    if (plan.is<OpDistinct>() || plan.is<OpProject>()) {
        plan.est.cardinality = plan.children[0].est.cardinality;
        plan.est.cpu = plan.est.cardinality;
    } else if (plan.is<OpUnion>()) {
        plan.est.cardinality = 0.0;
        for (const auto& c : plan.children) plan.est.cardinality += c.est.cardinality;
        plan.est.cpu = plan.est.cardinality;
    }
}

}  // namespace detail

// Reorders every conjunction in the plan; estimates come out consistent with
// the final tree.
inline Plan order_joins(Plan plan, const StoreCatalog& stats, const TripleStore& store,
                        const CostModelParams& params, PlanMode mode) {
    annotate_costs(plan, stats, store, params, mode);
    Plan ordered = detail::order_subtree(std::move(plan), stats);
    detail::refresh_passthrough(ordered);
    return ordered;
}

namespace detail {

inline std::string format_estimate(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

inline void explain_node(const Plan& plan, const Dictionary& dict, int depth, std::string& out) {
    out.append(static_cast<size_t>(depth) * 2, ' ');
    if (const auto* t = std::get_if<OpTriple>(&plan.node)) {
        out += "OpTriple [card=" + format_estimate(plan.est.cardinality) +
               " cpu=" + format_estimate(plan.est.cpu) + "] " + t->pattern.to_string(dict);
        if (t->provably_empty) out += " (provably empty)";
    } else if (const auto* p = std::get_if<OpPath>(&plan.node)) {
        auto slot = [&](const PatternSlot& sl) {
            return sl.is_bound() ? (sl.term->valid() ? dict.resolve(*sl.term).to_string()
                                                     : std::string("<unknown>"))
                                 : "?" + sl.var;
        };
        out += "OpPath [card=" + format_estimate(plan.est.cardinality) +
               " cpu=" + format_estimate(plan.est.cpu) + "] " + slot(p->subject) + " " +
               p->path.to_string() + " " + slot(p->object);
        if (plan.cost_overridden) out += " (cost-overridden)";
        if (p->provably_empty) out += " (provably empty)";
    } else {
        const char* name = plan.is<OpJoin>()       ? "OpJoin"
                           : plan.is<OpUnion>()    ? "OpUnion"
                           : plan.is<OpDistinct>() ? "OpDistinct"
                                                   : "OpProject";
        out += std::string(name) + " [card=" + format_estimate(plan.est.cardinality) +
               " cpu=" + format_estimate(plan.est.cpu) + "]";
        if (const auto* pr = std::get_if<OpProject>(&plan.node)) {
            for (const auto& v : pr->vars) out += " ?" + v;
        }
    }
    out += "\n";
    for (const auto& c : plan.children) explain_node(c, dict, depth + 1, out);
}

}  // namespace detail

// Deterministic plan rendering: one node per line, children indented 2 spaces.
inline std::string explain(const Plan& ordered, const Dictionary& dict) {
    std::string out;
    detail::explain_node(ordered, dict, 0, out);
    return out;
}

}  // namespace pathtriple
