#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gxrepair/error.hpp"
#include "gxrepair/expr.hpp"
#include "gxrepair/graph.hpp"

namespace gxr {

namespace detail {

enum class Tok : std::uint8_t {
    End,
    Ident,
    String,
    Number,
    Eps,
    Not,
    Data,
    Dot,
    Bar,
    Amp,
    Star,
    Plus,
    LBrace,
    RBrace,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Eq,
    Neq,
    Bang,
    Arrow,
    AndAnd,
    OrOr,
    Inv,
};

inline const char* tok_name(Tok t)
{
    switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "label";
    case Tok::String: return "string";
    case Tok::Number: return "number";
    case Tok::Eps: return "'eps'";
    case Tok::Not: return "'not'";
    case Tok::Data: return "'data'";
    case Tok::Dot: return "'.'";
    case Tok::Bar: return "'|'";
    case Tok::Amp: return "'&'";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Eq: return "'='";
    case Tok::Neq: return "'!='";
    case Tok::Bang: return "'!'";
    case Tok::Arrow: return "'=>'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Inv: return "'^-'";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    Lexer(std::string_view src, std::size_t line, std::size_t column) : src_(src), line_(line), col_(column) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_ws();
            Token t{Tok::End, {}, line_, col_};
            if (i_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[i_];
            auto word = [](unsigned char ch) {
                return ch == '_' || ch >= 0x80 || (ch >= '0' && ch <= '9') || ((ch | 0x20) >= 'a' && (ch | 0x20) <= 'z');
            };
            if (c >= '0' && c <= '9') {
                while (i_ < src_.size() && src_[i_] >= '0' && src_[i_] <= '9')
                    t.text.push_back(advance());
                t.kind = Tok::Number;
            } else if (word(static_cast<unsigned char>(c))) {
                while (i_ < src_.size() && word(static_cast<unsigned char>(src_[i_])))
                    t.text.push_back(advance());
                t.kind = t.text == "eps" ? Tok::Eps : t.text == "not" ? Tok::Not : t.text == "data" ? Tok::Data : Tok::Ident;
            } else if (c == '"') {
                advance();
                for (;;) {
                    if (i_ >= src_.size())
                        throw ParseError("unterminated string", t.line, t.column);
                    char ch = advance();
                    if (ch == '"')
                        break;
                    if (ch == '\\') {
                        if (i_ >= src_.size())
                            throw ParseError("unterminated string", t.line, t.column);
                        ch = advance();
                    }
                    t.text.push_back(ch);
                }
                t.kind = Tok::String;
            } else {
                t.kind = punct(t);
            }
            out.push_back(std::move(t));
        }
    }

private:
    char advance()
    {
        char c = src_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++col_;
        }
        return c;
    }

    void skip_ws()
    {
        while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\r' || src_[i_] == '\n'))
            advance();
    }

    bool next_is(char c) const { return i_ + 1 < src_.size() && src_[i_ + 1] == c; }

    Tok punct(const Token& t)
    {
        const char c = src_[i_];
        auto two = [&](Tok k) { advance(); advance(); return k; };
        auto one = [&](Tok k) { advance(); return k; };
        switch (c) {
        case '.': return one(Tok::Dot);
        case '|': return next_is('|') ? two(Tok::OrOr) : one(Tok::Bar);
        case '&': return next_is('&') ? two(Tok::AndAnd) : one(Tok::Amp);
        case '*': return one(Tok::Star);
        case '+': return one(Tok::Plus);
        case '{': return one(Tok::LBrace);
        case '}': return one(Tok::RBrace);
        case ',': return one(Tok::Comma);
        case '(': return one(Tok::LParen);
        case ')': return one(Tok::RParen);
        case '[': return one(Tok::LBracket);
        case ']': return one(Tok::RBracket);
        case '<': return one(Tok::Lt);
        case '>': return one(Tok::Gt);
        case '=': return next_is('>') ? two(Tok::Arrow) : one(Tok::Eq);
        case '!': return next_is('=') ? two(Tok::Neq) : one(Tok::Bang);
        case '^':
            if (next_is('-'))
                return two(Tok::Inv);
            break;
        default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }

    std::string_view src_;
    std::size_t i_ = 0;
    std::size_t line_;
    std::size_t col_;
};

// Precedence, loosest first.
//   path: p => q (right) < p | q < p & q < concatenation < postfix * + {n,m} ^-
//   node: φ => ψ (right) < φ || ψ < φ && ψ < not φ
class Parser {
public:
    Parser(std::string_view src, const Alphabet* alphabet, std::size_t line = 1, std::size_t column = 1)
        : toks_(Lexer(src, line, column).run()), alphabet_(alphabet)
    {
    }

    PathPtr whole_path()
    {
        PathPtr p = path_impl();
        expect(Tok::End);
        return p;
    }

    NodePtr whole_node()
    {
        NodePtr n = node_impl();
        expect(Tok::End);
        return n;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool at(Tok k) const { return cur().kind == k; }

    [[noreturn]] void fail(const std::string& expected) const
    {
        const Token& t = cur();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        if (t.kind != Tok::End && t.text.empty())
            found = tok_name(t.kind);
        throw ParseError("expected " + expected + ", found " + found, t.line, t.column);
    }

    const Token& expect(Tok k)
    {
        if (!at(k))
            fail(tok_name(k));
        return toks_[pos_++];
    }

    bool accept(Tok k)
    {
        if (!at(k))
            return false;
        ++pos_;
        return true;
    }

    bool starts_primary() const
    {
        switch (cur().kind) {
        case Tok::Ident:
        case Tok::Eps:
        case Tok::LParen:
        case Tok::LBracket:
        case Tok::Bang: return true;
        default: return false;
        }
    }

    PathPtr path_impl()
    {
        PathPtr lhs = path_union();
        if (accept(Tok::Arrow))
            return path::implies(lhs, path_impl());
        return lhs;
    }

    PathPtr path_union()
    {
        PathPtr lhs = path_meet();
        while (accept(Tok::Bar))
            lhs = path::alt(lhs, path_meet());
        return lhs;
    }

    PathPtr path_meet()
    {
        PathPtr lhs = path_concat();
        while (accept(Tok::Amp))
            lhs = path::meet(lhs, path_concat());
        return lhs;
    }

    PathPtr path_concat()
    {
        PathPtr lhs = path_postfix();
        for (;;) {
            if (accept(Tok::Dot))
                lhs = path::concat(lhs, path_postfix());
            else if (starts_primary())
                lhs = path::concat(lhs, path_postfix());
            else
                return lhs;
        }
    }

    std::uint32_t number()
    {
        const Token& t = expect(Tok::Number);
        if (t.text.size() > 9)
            throw ParseError("counter bound too large", t.line, t.column);
        return static_cast<std::uint32_t>(std::stoul(t.text));
    }

    PathPtr path_postfix()
    {
        PathPtr p = path_primary();
        for (;;) {
            if (accept(Tok::Star)) {
                p = path::star(p);
            } else if (accept(Tok::Plus)) {
                p = path::plus(p);
            } else if (at(Tok::LBrace)) {
                const Token open = cur();
                ++pos_;
                std::uint32_t n = number();
                expect(Tok::Comma);
                std::uint32_t m = number();
                expect(Tok::RBrace);
                if (n > m)
                    throw ParseError("counter {" + std::to_string(n) + "," + std::to_string(m) + "} has n > m", open.line,
                                     open.column);
                p = path::counter(p, n, m);
            } else {
                return p;
            }
        }
    }

    void check_label(const Token& t) const
    {
        if (alphabet_ && !alphabet_->has_label(t.text))
            throw ParseError("unknown edge label '" + t.text + "'", t.line, t.column);
    }

    PathPtr path_primary()
    {
        const Token& t = cur();
        switch (t.kind) {
        case Tok::Eps: ++pos_; return path::eps();
        case Tok::Ident:
            ++pos_;
            if (t.text == "_")
                return accept(Tok::Inv) ? path::any_inverse() : path::any();
            check_label(t);
            return accept(Tok::Inv) ? path::inverse(t.text) : path::label(t.text);
        case Tok::LParen: {
            ++pos_;
            PathPtr p = path_impl();
            expect(Tok::RParen);
            return p;
        }
        case Tok::LBracket: {
            ++pos_;
            NodePtr n = node_impl();
            expect(Tok::RBracket);
            return path::test(n);
        }
        case Tok::Bang: ++pos_; return path::complement(path_primary());
        default: fail("path expression");
        }
    }

    NodePtr node_impl()
    {
        NodePtr lhs = node_or();
        if (accept(Tok::Arrow))
            return node::implies(lhs, node_impl());
        return lhs;
    }

    NodePtr node_or()
    {
        NodePtr lhs = node_and();
        while (accept(Tok::OrOr))
            lhs = node::either(lhs, node_and());
        return lhs;
    }

    NodePtr node_and()
    {
        NodePtr lhs = node_unary();
        while (accept(Tok::AndAnd))
            lhs = node::both(lhs, node_unary());
        return lhs;
    }

    NodePtr node_unary()
    {
        if (accept(Tok::Not))
            return node::negate(node_unary());
        return node_atom();
    }

    std::string data_value()
    {
        const Token& t = expect(Tok::String);
        if (alphabet_ && !alphabet_->has_value(t.text))
            throw ParseError("unknown data value \"" + t.text + "\"", t.line, t.column);
        return t.text;
    }

    NodePtr node_atom()
    {
        if (accept(Tok::LParen)) {
            NodePtr n = node_impl();
            expect(Tok::RParen);
            return n;
        }
        if (accept(Tok::Lt)) {
            PathPtr p = path_impl();
            if (accept(Tok::Gt))
                return node::exists(p);
            if (accept(Tok::Eq)) {
                PathPtr q = path_impl();
                expect(Tok::Gt);
                return node::path_eq(p, q);
            }
            if (accept(Tok::Neq)) {
                PathPtr q = path_impl();
                expect(Tok::Gt);
                return node::path_neq(p, q);
            }
            fail("'>', '=' or '!='");
        }
        if (accept(Tok::Data)) {
            if (accept(Tok::Eq))
                return node::data_eq(data_value());
            if (accept(Tok::Neq))
                return node::data_neq(data_value());
            fail("'=' or '!='");
        }
        fail("node expression ('not', '(', '<' or 'data')");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Alphabet* alphabet_;
};

inline std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

// Printer levels mirror the parser: higher binds tighter.
inline int path_level(const PathExpr& p)
{
    switch (p.kind) {
    case PathKind::Implies: return 0;
    case PathKind::Union: return 1;
    case PathKind::Intersect: return 2;
    case PathKind::Concat: return 3;
    case PathKind::Star:
    case PathKind::Plus:
    case PathKind::Counter: return 4;
    default: return 5;
    }
}

inline int node_level(const NodeExpr& n)
{
    switch (n.kind) {
    case NodeKind::Implies: return 0;
    case NodeKind::Or: return 1;
    case NodeKind::And: return 2;
    case NodeKind::Not: return 3;
    default: return 4;
    }
}

inline std::string print_node(const NodeExpr& n);

inline std::string print_path_at(const PathExpr& p, int min_level);

inline std::string print_path(const PathExpr& p)
{
    auto bin = [&](const char* op, int lv, bool right_assoc) {
        return print_path_at(*p.lhs, right_assoc ? lv + 1 : lv) + op + print_path_at(*p.rhs, right_assoc ? lv : lv + 1);
    };
    switch (p.kind) {
    case PathKind::Epsilon: return "eps";
    case PathKind::Wildcard: return "_";
    case PathKind::WildcardInverse: return "_^-";
    case PathKind::Label: return p.label;
    case PathKind::Inverse: return p.label + "^-";
    case PathKind::Test: return "[" + print_node(*p.test) + "]";
    case PathKind::Concat: return bin(" . ", 3, false);
    case PathKind::Union: return bin(" | ", 1, false);
    case PathKind::Intersect: return bin(" & ", 2, false);
    case PathKind::Implies: return bin(" => ", 0, true);
    case PathKind::Star: return print_path_at(*p.lhs, 4) + "*";
    case PathKind::Plus: return print_path_at(*p.lhs, 4) + "+";
    case PathKind::Counter:
        return print_path_at(*p.lhs, 4) + "{" + std::to_string(p.min) + "," + std::to_string(p.max) + "}";
    case PathKind::Complement: return "!(" + print_path(*p.lhs) + ")";
    }
    return {};
}

inline std::string print_path_at(const PathExpr& p, int min_level)
{
    std::string s = print_path(p);
    return path_level(p) < min_level ? "(" + s + ")" : s;
}

inline std::string print_node_at(const NodeExpr& n, int min_level)
{
    std::string s = print_node(n);
    return node_level(n) < min_level ? "(" + s + ")" : s;
}

inline std::string print_node(const NodeExpr& n)
{
    switch (n.kind) {
    case NodeKind::Not: return "not " + print_node_at(*n.lhs, 3);
    case NodeKind::And: return print_node_at(*n.lhs, 2) + " && " + print_node_at(*n.rhs, 3);
    case NodeKind::Or: return print_node_at(*n.lhs, 1) + " || " + print_node_at(*n.rhs, 2);
    case NodeKind::Implies: return print_node_at(*n.lhs, 1) + " => " + print_node_at(*n.rhs, 0);
    case NodeKind::Exists: return "<" + print_path(*n.path) + ">";
    case NodeKind::PathEq: return "<" + print_path(*n.path) + " = " + print_path(*n.path2) + ">";
    case NodeKind::PathNeq: return "<" + print_path(*n.path) + " != " + print_path(*n.path2) + ">";
    case NodeKind::DataEq: return "data=" + quote(n.value);
    case NodeKind::DataNeq: return "data!=" + quote(n.value);
    }
    return {};
}

} // namespace detail

// Parse without alphabet checks; the result may contain sugar.
inline PathPtr parse_path(std::string_view text, const Alphabet* alphabet = nullptr)
{
    return detail::Parser(text, alphabet).whole_path();
}

inline NodePtr parse_node(std::string_view text, const Alphabet* alphabet = nullptr)
{
    return detail::Parser(text, alphabet).whole_node();
}

inline std::string to_string(const PathPtr& p) { return detail::print_path(*p); }
inline std::string to_string(const NodePtr& n) { return detail::print_node(*n); }

inline std::string to_string(const Constraint& c)
{
    return c.kind == ConstraintKind::Path ? "path: " + to_string(c.path) : "node: " + to_string(c.node);
}

} // namespace gxr
