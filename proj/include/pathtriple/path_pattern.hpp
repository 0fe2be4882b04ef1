#pragma once
// Regular expression over predicates: the path part of a property-path
// pattern. Links carry predicate IRIs as terms; resolution against a
// dictionary happens when the pattern is compiled for evaluation.

#include <string>
#include <vector>

#include "pathtriple/term.hpp"

namespace pathtriple {

struct PathPattern {
    enum class Kind : uint8_t {
        Link,         // a single predicate edge
        Inverse,      // ^p
        Sequence,     // a / b
        Alternation,  // a | b
        ZeroOrMore,   // a*
        OneOrMore,    // a+
        ZeroOrOne,    // a?
    };

    Kind kind = Kind::Link;
    Term predicate;                      // Link only
    std::vector<PathPattern> children;   // 1 for unary, 2 for binary

    static PathPattern link(Term iri) {
        PathPattern p;
        p.kind = Kind::Link;
        p.predicate = std::move(iri);
        return p;
    }
    static PathPattern inverse(PathPattern inner) { return unary(Kind::Inverse, std::move(inner)); }
    static PathPattern sequence(PathPattern a, PathPattern b) { return binary(Kind::Sequence, std::move(a), std::move(b)); }
    static PathPattern alternation(PathPattern a, PathPattern b) { return binary(Kind::Alternation, std::move(a), std::move(b)); }
    static PathPattern zero_or_more(PathPattern inner) { return unary(Kind::ZeroOrMore, std::move(inner)); }
    static PathPattern one_or_more(PathPattern inner) { return unary(Kind::OneOrMore, std::move(inner)); }
    static PathPattern zero_or_one(PathPattern inner) { return unary(Kind::ZeroOrOne, std::move(inner)); }

    bool is_plain_link() const { return kind == Kind::Link; }

    // Whether the pattern matches the empty path (x, x).
    bool nullable() const {
        switch (kind) {
            case Kind::Link: return false;
            case Kind::Inverse: return children[0].nullable();
            case Kind::Sequence: return children[0].nullable() && children[1].nullable();
            case Kind::Alternation: return children[0].nullable() || children[1].nullable();
            case Kind::ZeroOrMore: return true;
            case Kind::OneOrMore: return children[0].nullable();
            case Kind::ZeroOrOne: return true;
        }
        return false;
    }

    // Count of Link leaves; a cheap size measure used by tests and planning.
    size_t link_count() const {
        if (kind == Kind::Link) return 1;
        size_t n = 0;
        for (const auto& c : children) n += c.link_count();
        return n;
    }

    // SPARQL property-path syntax, fully parenthesized below the top level.
    std::string to_string() const {
        switch (kind) {
            case Kind::Link: return "<" + predicate.lexical + ">";
            case Kind::Inverse: return "^" + wrap(children[0]);
            case Kind::Sequence: return wrap(children[0]) + "/" + wrap(children[1]);
            case Kind::Alternation: return wrap(children[0]) + "|" + wrap(children[1]);
            case Kind::ZeroOrMore: return wrap(children[0]) + "*";
            case Kind::OneOrMore: return wrap(children[0]) + "+";
            case Kind::ZeroOrOne: return wrap(children[0]) + "?";
        }
        return {};
    }

    bool operator==(const PathPattern&) const = default;

private:
    static PathPattern unary(Kind kind, PathPattern inner) {
        PathPattern p;
        p.kind = kind;
        p.children.push_back(std::move(inner));
        return p;
    }
    static PathPattern binary(Kind kind, PathPattern a, PathPattern b) {
        PathPattern p;
        p.kind = kind;
        p.children.push_back(std::move(a));
        p.children.push_back(std::move(b));
        return p;
    }
    static std::string wrap(const PathPattern& p) {
        return p.kind == Kind::Link ? p.to_string() : "(" + p.to_string() + ")";
    }
};

}  // namespace pathtriple
