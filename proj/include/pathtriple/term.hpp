#pragma once
// RDF term model: IRIs, literals (with optional datatype IRI or language tag)
// and blank nodes, plus the fixed-width integer ids handed out by Dictionary.
//
// Literals compare by exact (lexical, datatype, language) equality; there is
// no value-space canonicalization, so "1" and "01" are distinct terms.

#include <cstdint>
#include <functional>
#include <string>

#include "pathtriple/errors.hpp"

namespace pathtriple {

enum class TermKind : uint8_t { Iri = 0, Literal = 1, BlankNode = 2 };

struct Term {
    TermKind kind = TermKind::Iri;
    std::string lexical;
    std::string datatype;  // literals only; empty = plain
    std::string language;  // literals only; empty = no tag

    static Term iri(std::string value) {
        return Term{TermKind::Iri, std::move(value), {}, {}};
    }
    static Term literal(std::string value) {
        return Term{TermKind::Literal, std::move(value), {}, {}};
    }
    static Term typed_literal(std::string value, std::string datatype_iri) {
        return Term{TermKind::Literal, std::move(value), std::move(datatype_iri), {}};
    }
    static Term lang_literal(std::string value, std::string lang) {
        return Term{TermKind::Literal, std::move(value), {}, std::move(lang)};
    }
    static Term blank(std::string label) {
        return Term{TermKind::BlankNode, std::move(label), {}, {}};
    }

    bool is_iri() const { return kind == TermKind::Iri; }
    bool is_literal() const { return kind == TermKind::Literal; }
    bool is_blank() const { return kind == TermKind::BlankNode; }

    // A term usable as a graph node (subject/object of a topology edge).
    bool is_entity() const { return kind != TermKind::Literal; }

    bool well_formed() const {
        if (kind == TermKind::Iri && lexical.empty()) return false;
        if (kind != TermKind::Literal && (!datatype.empty() || !language.empty())) return false;
        if (!datatype.empty() && !language.empty()) return false;
        return true;
    }

    void check() const {
        if (!well_formed()) throw ParseError("malformed term: " + lexical);
    }

    bool operator==(const Term& other) const = default;
    auto operator<=>(const Term& other) const = default;

    // N-Triples style rendering; the canonical display form everywhere.
    std::string to_string() const {
        switch (kind) {
            case TermKind::Iri:
                return "<" + lexical + ">";
            case TermKind::BlankNode:
                return "_:" + lexical;
            case TermKind::Literal: {
                std::string out = "\"";
                for (char c : lexical) {
                    switch (c) {
                        case '"': out += "\\\""; break;
                        case '\\': out += "\\\\"; break;
                        case '\n': out += "\\n"; break;
                        case '\r': out += "\\r"; break;
                        case '\t': out += "\\t"; break;
                        default: out += c;
                    }
                }
                out += "\"";
                if (!language.empty()) out += "@" + language;
                else if (!datatype.empty()) out += "^^<" + datatype + ">";
                return out;
            }
        }
        return {};
    }
};

struct TermHash {
    size_t operator()(const Term& t) const {
        size_t h = std::hash<std::string>{}(t.lexical);
        h = h * 31 + std::hash<std::string>{}(t.datatype);
        h = h * 31 + std::hash<std::string>{}(t.language);
        h = h * 31 + static_cast<size_t>(t.kind);
        return h;
    }
};

// Dense id assigned by a Dictionary. Id 0 is reserved and never issued;
// it doubles as the "no such term" marker on compiled path links.
struct TermId {
    uint64_t value = 0;

    bool valid() const { return value != 0; }
    bool operator==(const TermId&) const = default;
    auto operator<=>(const TermId&) const = default;
};

inline constexpr TermId kInvalidTermId{0};

struct TermIdHash {
    size_t operator()(TermId id) const { return std::hash<uint64_t>{}(id.value); }
};

}  // namespace pathtriple

template <>
struct std::hash<pathtriple::TermId> {
    size_t operator()(pathtriple::TermId id) const { return std::hash<uint64_t>{}(id.value); }
};
