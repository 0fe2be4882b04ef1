#pragma once
// Algebra operators and the syntax -> plan lowering. Triple patterns become
// OpTriple leaves, path patterns become OpPath leaves, UNION blocks become
// OpUnion, conjunctions a left-deep OpJoin chain (reordered later), and
// projection/DISTINCT wrap the root.
//
// A leaf whose bound term is absent from the dictionary is marked provably
// empty: still a valid plan, guaranteed empty result.

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pathtriple/dictionary.hpp"
#include "pathtriple/path_pattern.hpp"
#include "pathtriple/sparql.hpp"
#include "pathtriple/triple.hpp"

namespace pathtriple {

struct OpTriple {
    TriplePattern pattern;
    bool provably_empty = false;
};

struct OpPath {
    PatternSlot subject;
    PathPattern path;
    PatternSlot object;
    bool provably_empty = false;  // a bound endpoint term is unknown
};

struct OpJoin {};
struct OpUnion {};
struct OpDistinct {};
struct OpProject {
    std::vector<std::string> vars;
};

struct CostEstimate {
    double cardinality = 0.0;
    double cpu = 0.0;
};

struct Plan {
    std::variant<OpTriple, OpPath, OpJoin, OpUnion, OpDistinct, OpProject> node;
    std::vector<Plan> children;

    // Filled in by the planner; not part of plan identity.
    CostEstimate est;
    bool cost_overridden = false;

    template <typename T>
    bool is() const { return std::holds_alternative<T>(node); }
    template <typename T>
    const T& as() const { return std::get<T>(node); }
    template <typename T>
    T& as() { return std::get<T>(node); }

    bool is_leaf() const { return is<OpTriple>() || is<OpPath>(); }

    std::set<std::string> variables() const {
        std::set<std::string> out;
        collect_variables(out);
        return out;
    }

    void collect_variables(std::set<std::string>& out) const {
        if (const auto* t = std::get_if<OpTriple>(&node)) {
            for (const auto* slot : {&t->pattern.s, &t->pattern.p, &t->pattern.o})
                if (slot->is_var()) out.insert(slot->var);
        } else if (const auto* p = std::get_if<OpPath>(&node)) {
            if (p->subject.is_var()) out.insert(p->subject.var);
            if (p->object.is_var()) out.insert(p->object.var);
        }
        for (const auto& c : children) c.collect_variables(out);
    }
};

namespace detail {

inline PatternSlot lower_endpoint(const TermOrVar& tv, const Dictionary& dict, bool& missing) {
    if (tv.is_var) return PatternSlot::variable(tv.var);
    auto id = dict.lookup(tv.term);
    if (!id) {
        missing = true;
        return PatternSlot::bound(kInvalidTermId);
    }
    return PatternSlot::bound(*id);
}

inline Plan lower_leaf(const PatternSyntax& pattern, const Dictionary& dict);

inline Plan lower_conjunction(const std::vector<PatternSyntax>& patterns, const Dictionary& dict) {
    Plan current;
    bool first = true;
    for (const auto& pattern : patterns) {
        Plan leaf = lower_leaf(pattern, dict);
        if (first) {
            current = std::move(leaf);
            first = false;
        } else {
            Plan join;
            join.node = OpJoin{};
            join.children.push_back(std::move(current));
            join.children.push_back(std::move(leaf));
            current = std::move(join);
        }
    }
    return current;
}

inline Plan lower_leaf(const PatternSyntax& pattern, const Dictionary& dict) {
    Plan plan;
    if (const auto* t = std::get_if<TriplePatternSyntax>(&pattern)) {
        bool missing = false;
        OpTriple op;
        op.pattern.s = lower_endpoint(t->s, dict, missing);
        op.pattern.p = lower_endpoint(t->p, dict, missing);
        op.pattern.o = lower_endpoint(t->o, dict, missing);
        op.provably_empty = missing;
        plan.node = std::move(op);
    } else if (const auto* p = std::get_if<PathPatternSyntax>(&pattern)) {
        bool missing = false;
        OpPath op;
        op.subject = lower_endpoint(p->subject, dict, missing);
        op.object = lower_endpoint(p->object, dict, missing);
        op.path = p->path;
        op.provably_empty = missing;  // unresolvable link IRIs stay legal: they
                                      // compile to dead transitions instead
        plan.node = std::move(op);
    } else if (const auto* u = std::get_if<UnionBlock>(&pattern)) {
        plan.node = OpUnion{};
        for (const auto& branch : u->branches)
            plan.children.push_back(lower_conjunction(branch, dict));
    }
    return plan;
}

}  // namespace detail

inline Plan lower_to_algebra(const Query& query, const Dictionary& dict) {
    if (query.where.empty()) throw ParseError("query has an empty WHERE clause");
    Plan root = detail::lower_conjunction(query.where, dict);

    Plan project;
    project.node = OpProject{query.projection};
    project.children.push_back(std::move(root));
    if (!query.distinct) return project;

    Plan distinct;
    distinct.node = OpDistinct{};
    distinct.children.push_back(std::move(project));
    return distinct;
}

}  // namespace pathtriple
