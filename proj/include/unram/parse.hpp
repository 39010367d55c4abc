#pragma once

// Recursive-descent parser for field expressions over a fixed variable list.
//
// Grammar (whitespace between tokens is ignored):
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' integer)?
//   primary := identifier | integer | '(' expr ')'
//
// Identifiers match [a-z][a-z0-9_]* and must name a declared variable;
// integer literals are nonnegative; there is no implicit multiplication.
// parse_ratfunc and the canonical printers are mutually inverse on canonical
// forms, which the round-trip tests pin down.

#include <string>
#include <vector>

#include "unram/errors.hpp"
#include "unram/mpoly.hpp"
#include "unram/ratfunc.hpp"

namespace unram {

struct NotAPolynomial : Error {
    explicit NotAPolynomial(const std::string& expr)
        : Error("expression is not a polynomial: " + expr) {}
};

namespace detail {

class Parser {
public:
    Parser(const std::string& input, const std::vector<std::string>& vars)
        : in_(input), vars_(vars) {}

    RatFunc parse() {
        RatFunc out = expr();
        skip_ws();
        if (pos_ != in_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return out;
    }

private:
    RatFunc expr() {
        RatFunc out = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                out += term();
            } else if (peek() == '-') {
                ++pos_;
                out -= term();
            } else {
                return out;
            }
        }
    }

    RatFunc term() {
        RatFunc out = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                out *= factor();
            } else if (peek() == '/') {
                ++pos_;
                RatFunc d = factor();
                if (d.is_zero()) throw DivisionByZeroPolynomial();
                out /= d;
            } else {
                return out;
            }
        }
    }

    RatFunc factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -factor();
        }
        return power();
    }

    RatFunc power() {
        RatFunc base = primary();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        if (!is_digit(peek())) throw SyntaxError("expected a nonnegative integer exponent", pos_);
        unsigned long long e = 0;
        while (is_digit(peek())) {
            e = e * 10 + static_cast<unsigned long long>(peek() - '0');
            if (e > 100000ULL) throw SyntaxError("exponent too large", at);
            ++pos_;
        }
        return base.pow(static_cast<long long>(e));
    }

    RatFunc primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc out = expr();
            skip_ws();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return out;
        }
        if (is_digit(c)) {
            Int n = 0;
            while (is_digit(peek())) {
                n = n * 10 + (peek() - '0');
                ++pos_;
            }
            return RatFunc::constant(vars_, Rat(n));
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t start = pos_;
            ++pos_;
            while ((peek() >= 'a' && peek() <= 'z') || (peek() >= '0' && peek() <= '9') ||
                   peek() == '_') {
                ++pos_;
            }
            std::string name = in_.substr(start, pos_ - start);
            for (const auto& v : vars_) {
                if (v == name) return RatFunc::variable(vars_, name);
            }
            throw UnknownVariable(name);
        }
        if (c == '\0') throw SyntaxError("unexpected end of input", pos_);
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }

    char peek() const { return pos_ < in_.size() ? in_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < in_.size() && (in_[pos_] == ' ' || in_[pos_] == '\t')) ++pos_;
    }

    const std::string& in_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc parse_ratfunc(const std::string& input, const std::vector<std::string>& vars) {
    return detail::Parser(input, vars).parse();
}

inline MPoly parse_poly(const std::string& input, const std::vector<std::string>& vars) {
    RatFunc f = parse_ratfunc(input, vars);
    if (!f.is_polynomial()) throw NotAPolynomial(input);
    return f.num();
}

}  // namespace unram
