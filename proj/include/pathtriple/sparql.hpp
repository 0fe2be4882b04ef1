#pragma once
// Parser for the SPARQL subset:
//
//   PREFIX decls, SELECT [DISTINCT] ?v (, ?v)* WHERE { pattern ('.' )* }
//   patterns: triple patterns, property-path patterns, { } UNION { } blocks
//   path operators, loosest to tightest: '|'  '/'  '^'  postfix '* + ?'  '()'
//
// Bare names (no colon, no angle brackets) resolve through the empty prefix,
// which callers provide when querying vocabularies without PREFIX decls.
// A lone comma between projection variables is accepted and ignored.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pathtriple/errors.hpp"
#include "pathtriple/path_pattern.hpp"
#include "pathtriple/term.hpp"

namespace pathtriple {

// A syntax-level position: a variable name or a concrete term.
struct TermOrVar {
    bool is_var = false;
    std::string var;
    Term term;

    static TermOrVar variable(std::string name) { return {true, std::move(name), {}}; }
    static TermOrVar bound(Term t) { return {false, {}, std::move(t)}; }

    std::string to_string() const { return is_var ? "?" + var : term.to_string(); }
    bool operator==(const TermOrVar&) const = default;
};

struct TriplePatternSyntax {
    TermOrVar s;
    TermOrVar p;  // variable or IRI
    TermOrVar o;
    bool operator==(const TriplePatternSyntax&) const = default;
};

struct PathPatternSyntax {
    TermOrVar subject;
    PathPattern path;  // contains at least one path operator (plain links
                       // lower to TriplePatternSyntax at parse time)
    TermOrVar object;
    bool operator==(const PathPatternSyntax&) const = default;
};

struct UnionBlock;

using PatternSyntax = std::variant<TriplePatternSyntax, PathPatternSyntax, UnionBlock>;

struct UnionBlock {
    std::vector<std::vector<PatternSyntax>> branches;
    bool operator==(const UnionBlock&) const = default;
};

struct Query {
    bool distinct = false;
    std::vector<std::string> projection;
    std::vector<PatternSyntax> where;
    std::vector<std::string> warnings;  // non-fatal, e.g. projected var not in WHERE

    std::string to_string() const;

    bool same_structure(const Query& other) const {
        return distinct == other.distinct && projection == other.projection &&
               where == other.where;
    }
};

namespace detail {

struct SparqlToken {
    enum class Kind {
        Eof, Var, Iri, Name, PrefixedName, Literal,
        LBrace, RBrace, LParen, RParen, Dot, Comma,
        Pipe, Slash, Caret, Star, Plus, Question,
    };
    Kind kind = Kind::Eof;
    std::string text;        // var name, IRI body, literal value
    std::string prefix;      // PrefixedName only
    std::string lang;        // Literal only
    std::string datatype;    // Literal only
    uint64_t line = 1;
    uint64_t column = 1;
};

class SparqlLexer {
public:
    explicit SparqlLexer(std::string_view text) : text_(text) { advance(); }

    const SparqlToken& current() const { return current_; }

    void advance() {
        skip_ws_and_comments();
        SparqlToken t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) {
            t.kind = SparqlToken::Kind::Eof;
            current_ = t;
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '{': t.kind = SparqlToken::Kind::LBrace; take(); break;
            case '}': t.kind = SparqlToken::Kind::RBrace; take(); break;
            case '(': t.kind = SparqlToken::Kind::LParen; take(); break;
            case ')': t.kind = SparqlToken::Kind::RParen; take(); break;
            case '.': t.kind = SparqlToken::Kind::Dot; take(); break;
            case ',': t.kind = SparqlToken::Kind::Comma; take(); break;
            case '|': t.kind = SparqlToken::Kind::Pipe; take(); break;
            case '/': t.kind = SparqlToken::Kind::Slash; take(); break;
            case '^': t.kind = SparqlToken::Kind::Caret; take(); break;
            case '*': t.kind = SparqlToken::Kind::Star; take(); break;
            case '+': t.kind = SparqlToken::Kind::Plus; take(); break;
            case '?':
                take();
                if (pos_ < text_.size() && is_name_char(text_[pos_])) {
                    t.kind = SparqlToken::Kind::Var;
                    t.text = take_name();
                } else {
                    t.kind = SparqlToken::Kind::Question;
                }
                break;
            case ':':  // empty-prefix name, e.g. :knows
                take();
                t.kind = SparqlToken::Kind::PrefixedName;
                t.prefix = "";
                t.text = take_name();
                break;
            case '<': {
                take();
                t.kind = SparqlToken::Kind::Iri;
                while (pos_ < text_.size() && text_[pos_] != '>') t.text += take();
                if (pos_ >= text_.size()) fail(t, "unterminated IRI");
                take();
                if (t.text.empty()) fail(t, "empty IRI");
                break;
            }
            case '"': {
                take();
                t.kind = SparqlToken::Kind::Literal;
                while (pos_ < text_.size() && text_[pos_] != '"') {
                    char ch = take();
                    if (ch == '\\' && pos_ < text_.size()) {
                        char e = take();
                        switch (e) {
                            case 'n': t.text += '\n'; break;
                            case 't': t.text += '\t'; break;
                            case 'r': t.text += '\r'; break;
                            case '"': t.text += '"'; break;
                            case '\\': t.text += '\\'; break;
                            default: fail(t, "unknown escape in literal");
                        }
                    } else {
                        t.text += ch;
                    }
                }
                if (pos_ >= text_.size()) fail(t, "unterminated literal");
                take();
                if (pos_ < text_.size() && text_[pos_] == '@') {
                    take();
                    while (pos_ < text_.size() &&
                           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-'))
                        t.lang += take();
                    if (t.lang.empty()) fail(t, "empty language tag");
                } else if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '^') {
                    take(); take();
                    if (pos_ >= text_.size() || text_[pos_] != '<') fail(t, "expected datatype IRI");
                    take();
                    while (pos_ < text_.size() && text_[pos_] != '>') t.datatype += take();
                    if (pos_ >= text_.size()) fail(t, "unterminated datatype IRI");
                    take();
                }
                break;
            }
            default: {
                if (!is_name_start(c)) fail(t, std::string("unexpected character '") + c + "'");
                std::string name = take_name();
                if (pos_ < text_.size() && text_[pos_] == ':') {
                    take();
                    t.kind = SparqlToken::Kind::PrefixedName;
                    t.prefix = name;
                    t.text = take_name();
                } else {
                    t.kind = SparqlToken::Kind::Name;
                    t.text = name;
                }
                break;
            }
        }
        current_ = t;
    }

private:
    static bool is_name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    std::string take_name() {
        std::string out;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) out += take();
        return out;
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                take();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const SparqlToken& t, const std::string& msg) {
        throw ParseError(msg, t.line, t.column);
    }

    std::string_view text_;
    size_t pos_ = 0;
    uint64_t line_ = 1;
    uint64_t column_ = 1;
    SparqlToken current_;
};

class SparqlParser {
public:
    SparqlParser(std::string_view text, std::map<std::string, std::string> prefixes)
        : lexer_(text), prefixes_(std::move(prefixes)) {}

    Query parse() {
        parse_prologue();
        expect_keyword("SELECT");
        Query q;
        if (is_keyword("DISTINCT")) {
            q.distinct = true;
            next();
        }
        while (tok().kind == SparqlToken::Kind::Var) {
            q.projection.push_back(tok().text);
            next();
            if (tok().kind == SparqlToken::Kind::Comma) next();  // optional comma
        }
        if (q.projection.empty()) fail("expected at least one projection variable");
        expect_keyword("WHERE");
        q.where = parse_group();
        if (q.where.empty()) fail("WHERE clause needs at least one pattern");
        if (tok().kind != SparqlToken::Kind::Eof) fail("trailing content after query");

        check_projection(q);
        return q;
    }

private:
    const SparqlToken& tok() const { return lexer_.current(); }
    void next() { lexer_.advance(); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok().line, tok().column);
    }

    bool is_keyword(const char* kw) const {
        if (tok().kind != SparqlToken::Kind::Name) return false;
        const std::string& s = tok().text;
        for (size_t i = 0;; ++i) {
            if (kw[i] == '\0') return i == s.size();
            if (i >= s.size()) return false;
            if (std::toupper(static_cast<unsigned char>(s[i])) != kw[i]) return false;
        }
    }

    void expect_keyword(const char* kw) {
        if (!is_keyword(kw)) fail(std::string("expected ") + kw);
        next();
    }

    void parse_prologue() {
        while (is_keyword("PREFIX")) {
            next();
            if (tok().kind != SparqlToken::Kind::PrefixedName || !tok().text.empty())
                fail("expected prefix declaration like 'PREFIX ex: <iri>'");
            std::string name = tok().prefix;
            next();
            if (tok().kind != SparqlToken::Kind::Iri) fail("expected IRI in PREFIX declaration");
            prefixes_[name] = tok().text;
            next();
        }
    }

    std::string expand_prefix(const std::string& prefix, const std::string& local,
                              const SparqlToken& at) const {
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end())
            throw ParseError(prefix.empty() ? "bare name '" + local + "' needs a default prefix"
                                            : "unknown prefix '" + prefix + ":'",
                             at.line, at.column);
        return it->second + local;
    }

    // IRI from the current token, if it denotes one.
    std::optional<Term> try_iri() {
        if (tok().kind == SparqlToken::Kind::Iri) {
            Term t = Term::iri(tok().text);
            next();
            return t;
        }
        if (tok().kind == SparqlToken::Kind::PrefixedName) {
            Term t = Term::iri(expand_prefix(tok().prefix, tok().text, tok()));
            next();
            return t;
        }
        if (tok().kind == SparqlToken::Kind::Name && !is_keyword("UNION")) {
            Term t = Term::iri(expand_prefix("", tok().text, tok()));
            next();
            return t;
        }
        return std::nullopt;
    }

    TermOrVar parse_endpoint(const char* role) {
        if (tok().kind == SparqlToken::Kind::Var) {
            TermOrVar v = TermOrVar::variable(tok().text);
            next();
            return v;
        }
        if (tok().kind == SparqlToken::Kind::Literal) {
            Term t = !tok().lang.empty()   ? Term::lang_literal(tok().text, tok().lang)
                     : !tok().datatype.empty() ? Term::typed_literal(tok().text, tok().datatype)
                                               : Term::literal(tok().text);
            next();
            return TermOrVar::bound(t);
        }
        if (auto iri = try_iri()) return TermOrVar::bound(*iri);
        fail(std::string("expected ") + role + " (variable, IRI or literal)");
    }

    std::vector<PatternSyntax> parse_group() {
        if (tok().kind != SparqlToken::Kind::LBrace) fail("expected '{'");
        next();
        std::vector<PatternSyntax> patterns;
        while (tok().kind != SparqlToken::Kind::RBrace) {
            if (tok().kind == SparqlToken::Kind::Eof) fail("unterminated group, expected '}'");
            if (tok().kind == SparqlToken::Kind::LBrace) {
                patterns.push_back(parse_union());
            } else {
                patterns.push_back(parse_statement());
            }
            if (tok().kind == SparqlToken::Kind::Dot) next();
        }
        next();  // '}'
        return patterns;
    }

    PatternSyntax parse_union() {
        UnionBlock block;
        block.branches.push_back(parse_group());
        while (is_keyword("UNION")) {
            next();
            block.branches.push_back(parse_group());
        }
        if (block.branches.size() < 2) fail("a braced group must be part of a UNION");
        return block;
    }

    PatternSyntax parse_statement() {
        TermOrVar subject = parse_endpoint("subject");
        if (tok().kind == SparqlToken::Kind::Var) {
            // Variable predicate: always a plain triple pattern.
            TermOrVar pred = TermOrVar::variable(tok().text);
            next();
            TermOrVar object = parse_endpoint("object");
            return TriplePatternSyntax{subject, pred, object};
        }
        PathPattern path = parse_path_alternation();
        TermOrVar object = parse_endpoint("object");
        if (path.is_plain_link())  // bare IRI: joins handle it, not the path operator
            return TriplePatternSyntax{subject, TermOrVar::bound(path.predicate), object};
        return PathPatternSyntax{subject, std::move(path), object};
    }

    PathPattern parse_path_alternation() {
        PathPattern left = parse_path_sequence();
        while (tok().kind == SparqlToken::Kind::Pipe) {
            next();
            left = PathPattern::alternation(std::move(left), parse_path_sequence());
        }
        return left;
    }

    PathPattern parse_path_sequence() {
        PathPattern left = parse_path_inverse();
        while (tok().kind == SparqlToken::Kind::Slash) {
            next();
            left = PathPattern::sequence(std::move(left), parse_path_inverse());
        }
        return left;
    }

    PathPattern parse_path_inverse() {
        if (tok().kind == SparqlToken::Kind::Caret) {
            next();
            return PathPattern::inverse(parse_path_inverse());
        }
        return parse_path_postfix();
    }

    PathPattern parse_path_postfix() {
        PathPattern inner = parse_path_primary();
        while (true) {
            if (tok().kind == SparqlToken::Kind::Star) {
                inner = PathPattern::zero_or_more(std::move(inner));
                next();
            } else if (tok().kind == SparqlToken::Kind::Plus) {
                inner = PathPattern::one_or_more(std::move(inner));
                next();
            } else if (tok().kind == SparqlToken::Kind::Question) {
                inner = PathPattern::zero_or_one(std::move(inner));
                next();
            } else {
                return inner;
            }
        }
    }

    PathPattern parse_path_primary() {
        if (tok().kind == SparqlToken::Kind::LParen) {
            next();
            PathPattern inner = parse_path_alternation();
            if (tok().kind != SparqlToken::Kind::RParen) fail("expected ')'");
            next();
            return inner;
        }
        if (auto iri = try_iri()) return PathPattern::link(*iri);
        fail("expected predicate IRI or '(' in path expression");
    }

    void check_projection(Query& q) const {
        std::vector<std::string> bound;
        collect_vars(q.where, bound);
        for (const auto& v : q.projection) {
            if (std::find(bound.begin(), bound.end(), v) == bound.end())
                q.warnings.push_back("projected variable ?" + v + " does not appear in WHERE");
        }
    }

    static void collect_vars(const std::vector<PatternSyntax>& patterns,
                             std::vector<std::string>& out) {
        for (const auto& pattern : patterns) {
            if (const auto* t = std::get_if<TriplePatternSyntax>(&pattern)) {
                for (const auto* tv : {&t->s, &t->p, &t->o})
                    if (tv->is_var) out.push_back(tv->var);
            } else if (const auto* p = std::get_if<PathPatternSyntax>(&pattern)) {
                if (p->subject.is_var) out.push_back(p->subject.var);
                if (p->object.is_var) out.push_back(p->object.var);
            } else if (const auto* u = std::get_if<UnionBlock>(&pattern)) {
                for (const auto& branch : u->branches) collect_vars(branch, out);
            }
        }
    }

    SparqlLexer lexer_;
    std::map<std::string, std::string> prefixes_;
};

inline void print_patterns(std::string& out, const std::vector<PatternSyntax>& patterns);

inline void print_pattern(std::string& out, const PatternSyntax& pattern) {
    if (const auto* t = std::get_if<TriplePatternSyntax>(&pattern)) {
        out += "  " + t->s.to_string() + " " + t->p.to_string() + " " + t->o.to_string() + " .\n";
    } else if (const auto* p = std::get_if<PathPatternSyntax>(&pattern)) {
        out += "  " + p->subject.to_string() + " " + p->path.to_string() + " " +
               p->object.to_string() + " .\n";
    } else if (const auto* u = std::get_if<UnionBlock>(&pattern)) {
        out += "  ";
        for (size_t i = 0; i < u->branches.size(); ++i) {
            if (i) out += " UNION ";
            out += "{\n";
            print_patterns(out, u->branches[i]);
            out += "  }";
        }
        out += "\n";
    }
}

inline void print_patterns(std::string& out, const std::vector<PatternSyntax>& patterns) {
    for (const auto& p : patterns) print_pattern(out, p);
}

}  // namespace detail

inline std::string Query::to_string() const {
    std::string out = "SELECT ";
    if (distinct) out += "DISTINCT ";
    for (const auto& v : projection) out += "?" + v + " ";
    out += "WHERE {\n";
    detail::print_patterns(out, where);
    out += "}";
    return out;
}

inline Query parse_query(std::string_view text,
                         const std::map<std::string, std::string>& prefixes = {}) {
    detail::SparqlParser parser(text, prefixes);
    return parser.parse();
}

}  // namespace pathtriple
