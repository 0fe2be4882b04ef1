#pragma once
// Dictionary-encoded triples, the topology/attribute classification tag, and
// triple patterns (each position either bound to a TermId or a named variable).

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "pathtriple/dictionary.hpp"
#include "pathtriple/term.hpp"

namespace pathtriple {

struct Triple {
    TermId s;
    TermId p;
    TermId o;

    bool operator==(const Triple&) const = default;
    auto operator<=>(const Triple&) const = default;
};

struct TripleHash {
    size_t operator()(const Triple& t) const {
        uint64_t h = t.s.value * 0x9e3779b97f4a7c15ull;
        h ^= t.p.value + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= t.o.value + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

enum class TripleClass : uint8_t { Topology = 0, Attribute = 1 };

inline const char* to_string(TripleClass c) {
    return c == TripleClass::Topology ? "topology" : "attribute";
}

// One position of a triple pattern.
struct PatternSlot {
    std::optional<TermId> term;  // set when bound
    std::string var;             // set when a variable

    static PatternSlot bound(TermId id) { return PatternSlot{id, {}}; }
    static PatternSlot variable(std::string name) { return PatternSlot{std::nullopt, std::move(name)}; }

    bool is_bound() const { return term.has_value(); }
    bool is_var() const { return !term.has_value(); }

    bool operator==(const PatternSlot&) const = default;
};

struct TriplePattern {
    PatternSlot s;
    PatternSlot p;
    PatternSlot o;

    int bound_count() const {
        return (s.is_bound() ? 1 : 0) + (p.is_bound() ? 1 : 0) + (o.is_bound() ? 1 : 0);
    }

    bool matches(const Triple& t) const {
        if (s.is_bound() && *s.term != t.s) return false;
        if (p.is_bound() && *p.term != t.p) return false;
        if (o.is_bound() && *o.term != t.o) return false;
        // Repeated variables must bind to equal ids.
        if (s.is_var() && p.is_var() && s.var == p.var && t.s != t.p) return false;
        if (s.is_var() && o.is_var() && s.var == o.var && t.s != t.o) return false;
        if (p.is_var() && o.is_var() && p.var == o.var && t.p != t.o) return false;
        return true;
    }

    std::string to_string(const Dictionary& dict) const {
        auto slot = [&](const PatternSlot& sl) {
            return sl.is_bound() ? dict.resolve(*sl.term).to_string() : "?" + sl.var;
        };
        return slot(s) + " " + slot(p) + " " + slot(o);
    }

    bool operator==(const TriplePattern&) const = default;
};

}  // namespace pathtriple
