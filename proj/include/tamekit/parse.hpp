#ifndef TAMEKIT_PARSE_HPP
#define TAMEKIT_PARSE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "tamekit/errors.hpp"
#include "tamekit/coeff.hpp"

namespace tame {

// Tokenizer shared by every expression grammar in the workbench:
// integers, names, + - * / ^ ( ).
struct Token {
    enum Kind { Int, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Int, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Name, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '/': k = Token::Slash; break;
            case '^': k = Token::Caret; break;
            case '(': k = Token::LParen; break;
            case ')': k = Token::RParen; break;
            default: throw parse_error(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

// Recursive-descent expression parser over an algebra adapter.  The adapter
// supplies constants, named atoms (with their exponent, so rings with
// Laurent-style generators can accept negative powers), and division by
// invertible constants.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '(' expr ')' ['^' int] | int ['/' int]? ['^' int] | name ['^' int]
template <class Adapter>
class ExprParser {
  public:
    using Value = typename Adapter::Value;

    ExprParser(const std::string& text, Adapter adapter)
        : toks_(tokenize(text)), a_(std::move(adapter)) {}

    Value parse() {
        Value v = expr();
        expect(Token::End, "end of input");
        return v;
    }

  private:
    const Token& peek() const { return toks_[k_]; }
    Token take() { return toks_[k_++]; }
    void expect(Token::Kind kind, const std::string& what) {
        if (peek().kind != kind) throw parse_error("expected " + what, peek().pos);
        ++k_;
    }

    Value expr() {
        bool neg = false;
        if (peek().kind == Token::Plus)
            ++k_;
        else if (peek().kind == Token::Minus) {
            neg = true;
            ++k_;
        }
        Value v = term();
        if (neg) v = a_.negate(v);
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool sub = take().kind == Token::Minus;
            Value r = term();
            v = sub ? a_.sub(v, r) : a_.add(v, r);
        }
        return v;
    }

    Value term() {
        Value v = factor();
        while (peek().kind == Token::Star || peek().kind == Token::Slash) {
            bool div = take().kind == Token::Slash;
            Value r = factor();
            v = div ? a_.divide(v, r) : a_.mul(v, r);
        }
        return v;
    }

    long exponent() {
        bool neg = false;
        if (peek().kind == Token::Minus) {
            neg = true;
            ++k_;
        }
        if (peek().kind != Token::Int) throw parse_error("expected integer exponent", peek().pos);
        long e = std::stol(take().text);
        return neg ? -e : e;
    }

    Value factor() {
        const Token& t = peek();
        if (t.kind == Token::LParen) {
            ++k_;
            Value v = expr();
            expect(Token::RParen, "')'");
            if (peek().kind == Token::Caret) {
                ++k_;
                long e = exponent();
                if (e < 0) throw parse_error("negative power of a compound expression", t.pos);
                v = a_.power(v, e);
            }
            return v;
        }
        if (t.kind == Token::Int) {
            Rational q(take().text);
            if (peek().kind == Token::Caret) {
                ++k_;
                long e = exponent();
                Rational r = 1;
                Rational base = q;
                bool inv = e < 0;
                for (long i = 0; i < (inv ? -e : e); ++i) r *= base;
                if (inv) {
                    if (r.is_zero()) throw parse_error("zero to a negative power", t.pos);
                    r = Rational(1) / r;
                }
                return a_.constant(r);
            }
            return a_.constant(q);
        }
        if (t.kind == Token::Name) {
            Token name = take();
            long e = 1;
            if (peek().kind == Token::Caret) {
                ++k_;
                e = exponent();
            }
            return a_.atom_pow(name.text, e, name.pos);
        }
        if (t.kind == Token::Minus) {
            // unary minus inside a product: -x
            ++k_;
            return a_.negate(factor());
        }
        throw parse_error("expected a factor", t.pos);
    }

    std::vector<Token> toks_;
    Adapter a_;
    std::size_t k_ = 0;
};

} // namespace tame

#endif
