#pragma once
// Streaming N-Triples reader. One statement per line, UTF-8, '#' comments.
// Escape handling covers ECHAR (\t \b \n \r \f \" \' \\) in literals and
// \uXXXX / \UXXXXXXXX in both literals and IRIs.
//
// Two failure modes: strict (throw ParseError with the line number) and
// lenient (skip the offending line and count it).

#include <cstdint>
#include <istream>
#include <string>

#include "pathtriple/errors.hpp"
#include "pathtriple/term.hpp"

namespace pathtriple {

// A parsed statement, still at the term level (no dictionary involved).
struct RawStatement {
    Term subject;
    Term predicate;
    Term object;
    uint64_t line = 0;
};

class NTriplesReader {
public:
    explicit NTriplesReader(std::istream& in, bool strict = false)
        : in_(in), strict_(strict) {}

    // Reads the next well-formed statement. Returns false at end of input.
    bool next(RawStatement& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            pos_ = 0;
            text_ = &line;
            skip_ws();
            if (at_end() || peek() == '#') continue;  // blank or comment line
            try {
                out.subject = parse_subject();
                out.predicate = parse_predicate();
                out.object = parse_object();
                skip_ws();
                expect('.');
                skip_ws();
                if (!at_end() && peek() != '#') fail("trailing content after '.'");
                out.line = line_no_;
                return true;
            } catch (const ParseError&) {
                if (strict_) throw;
                ++skipped_;
            }
        }
        return false;
    }

    uint64_t skipped() const { return skipped_; }
    uint64_t line() const { return line_no_; }

private:
    bool at_end() const { return pos_ >= text_->size(); }
    char peek() const { return (*text_)[pos_]; }
    char take() { return (*text_)[pos_++]; }

    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_no_, pos_ + 1);
    }

    void expect(char c) {
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Term parse_subject() {
        skip_ws();
        if (at_end()) fail("expected subject");
        if (peek() == '<') return parse_iri();
        if (peek() == '_') return parse_blank();
        fail("subject must be an IRI or blank node");
    }

    Term parse_predicate() {
        skip_ws();
        if (at_end() || peek() != '<') fail("predicate must be an IRI");
        return parse_iri();
    }

    Term parse_object() {
        skip_ws();
        if (at_end()) fail("expected object");
        if (peek() == '<') return parse_iri();
        if (peek() == '_') return parse_blank();
        if (peek() == '"') return parse_literal();
        fail("object must be an IRI, blank node or literal");
    }

    Term parse_iri() {
        expect('<');
        std::string value;
        while (true) {
            if (at_end()) fail("unterminated IRI");
            char c = take();
            if (c == '>') break;
            if (c == '\\') {
                --pos_;  // parse_unicode_escape re-reads the backslash
                value += parse_unicode_escape();
                continue;
            }
            if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
                c == '{' || c == '}' || c == '|' || c == '^' || c == '`')
                fail("illegal character in IRI");
            value += c;
        }
        if (value.empty()) fail("empty IRI");
        return Term::iri(std::move(value));
    }

    Term parse_blank() {
        expect('_');
        expect(':');
        std::string label;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                             peek() == '_' || peek() == '-' || peek() == '.'))
            label += take();
        if (label.empty()) fail("empty blank node label");
        if (label.back() == '.') {  // the statement terminator, not part of the label
            label.pop_back();
            --pos_;
            if (label.empty()) fail("empty blank node label");
        }
        return Term::blank(std::move(label));
    }

    Term parse_literal() {
        expect('"');
        std::string value;
        while (true) {
            if (at_end()) fail("unterminated literal");
            char c = take();
            if (c == '"') break;
            if (c == '\\') {
                if (at_end()) fail("dangling escape");
                char e = take();
                switch (e) {
                    case 't': value += '\t'; break;
                    case 'b': value += '\b'; break;
                    case 'n': value += '\n'; break;
                    case 'r': value += '\r'; break;
                    case 'f': value += '\f'; break;
                    case '"': value += '"'; break;
                    case '\'': value += '\''; break;
                    case '\\': value += '\\'; break;
                    case 'u':
                    case 'U':
                        pos_ -= 2;
                        value += parse_unicode_escape();
                        break;
                    default: fail("unknown escape sequence");
                }
                continue;
            }
            value += c;
        }
        // Optional language tag or datatype.
        if (!at_end() && peek() == '@') {
            ++pos_;
            std::string lang;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
                lang += take();
            if (lang.empty()) fail("empty language tag");
            return Term::lang_literal(std::move(value), std::move(lang));
        }
        if (!at_end() && peek() == '^') {
            ++pos_;
            expect('^');
            Term dt = parse_iri();
            return Term::typed_literal(std::move(value), std::move(dt.lexical));
        }
        return Term::literal(std::move(value));
    }

    // At pos_: '\' followed by uXXXX or UXXXXXXXX. Returns the UTF-8 bytes.
    std::string parse_unicode_escape() {
        expect('\\');
        if (at_end()) fail("dangling escape");
        char kind = take();
        int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
        if (digits == 0) fail("unknown escape in IRI");
        uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (at_end()) fail("truncated unicode escape");
            char c = take();
            cp <<= 4;
            if (c >= '0' && c <= '9') cp |= static_cast<uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') cp |= static_cast<uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') cp |= static_cast<uint32_t>(c - 'A' + 10);
            else fail("bad hex digit in unicode escape");
        }
        return encode_utf8(cp);
    }

    static std::string encode_utf8(uint32_t cp) {
        std::string out;
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
        return out;
    }

    std::istream& in_;
    bool strict_;
    const std::string* text_ = nullptr;
    size_t pos_ = 0;
    uint64_t line_no_ = 0;
    uint64_t skipped_ = 0;
};

}  // namespace pathtriple
