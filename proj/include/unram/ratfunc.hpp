#pragma once

// Rational functions over Q(vars) in lowest terms, plus square-class
// computations in the rational function field.
//
// Canonical shape: gcd(num, den) = 1 and the denominator has coprime integer
// coefficients with positive leading coefficient (rational content is pushed
// into the numerator).  Equality of canonical forms is then field equality.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unram/errors.hpp"
#include "unram/mpoly.hpp"
#include "unram/rat.hpp"

namespace unram {

class RatFunc {
public:
    RatFunc() : num_(), den_(MPoly::one({})) {}

    explicit RatFunc(MPoly n) : num_(std::move(n)), den_(MPoly::one(num_.vars())) {}

    RatFunc(MPoly n, MPoly d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw DivisionByZeroPolynomial();
        normalize();
    }

    static RatFunc constant(const std::vector<std::string>& vars, const Rat& c) {
        return RatFunc(MPoly::constant(vars, c));
    }

    static RatFunc variable(const std::vector<std::string>& vars, const std::string& name) {
        return RatFunc(MPoly::variable(vars, name));
    }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == MPoly::one(num_.vars()); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFunc operator-() const {
        RatFunc out = *this;
        out.num_ = -out.num_;
        return out;
    }

    // The arithmetic below keeps every gcd argument at the scale of the
    // operands' parts: with both inputs in lowest terms only cross pairs can
    // share factors, so products of the reduced parts are again reduced.
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add(a, b, false); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add(a, b, true); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc(MPoly::zero(a.num_.vars()));
        MPoly g1 = gcd(a.num_, b.den_);
        MPoly g2 = gcd(b.num_, a.den_);
        return from_reduced(must_divide(a.num_, g1) * must_divide(b.num_, g2),
                            must_divide(a.den_, g2) * must_divide(b.den_, g1));
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZeroPolynomial();
        if (a.is_zero()) return a;
        MPoly g1 = gcd(a.num_, b.num_);
        MPoly g2 = gcd(b.den_, a.den_);
        return from_reduced(must_divide(a.num_, g1) * must_divide(b.den_, g2),
                            must_divide(a.den_, g2) * must_divide(b.num_, g1));
    }

    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
    RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc pow(long long e) const {
        if (e < 0) {
            if (is_zero()) throw DivisionByZeroPolynomial();
            return from_reduced(den_, num_).pow(-e);
        }
        if (e == 0) return RatFunc(MPoly::one(num_.vars()));
        if (is_zero()) return *this;
        // Powers of a fraction in lowest terms are in lowest terms.
        const auto ue = static_cast<unsigned long long>(e);
        return from_reduced(num_.pow(ue), den_.pow(ue));
    }

    // Substitute rational functions for a subset of the variables.  The
    // result lives over the same variable list; unmentioned variables map to
    // themselves.  Throws DenominatorVanishes if the substituted denominator
    // is identically zero.
    RatFunc substitute(const std::map<std::string, RatFunc>& assign) const {
        RatFunc n = substitute_poly(num_, assign);
        RatFunc d = substitute_poly(den_, assign);
        if (d.is_zero()) throw DenominatorVanishes();
        return n / d;
    }

    // Print as num/den with the fewest parentheses that still round-trip
    // under the left-associative grammar: a sum needs wrapping on either
    // side, and the denominator additionally needs it unless it is a bare
    // power of one variable (a single grammar factor).
    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        std::string n =
            num_.nterms() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
        bool den_atomic = false;
        if (den_.nterms() == 1 && den_.leading_coefficient() == 1) {
            std::size_t used = 0;
            for (std::uint32_t e : den_.terms().begin()->first)
                if (e != 0) ++used;
            den_atomic = used == 1;
        }
        std::string d =
            den_atomic ? den_.to_string() : "(" + den_.to_string() + ")";
        return n + "/" + d;
    }

private:
    // Build from a pair already known to be coprime; only the denominator
    // conventions (coprime integer coefficients, positive lead) are applied.
    static RatFunc from_reduced(MPoly n, MPoly d) {
        RatFunc out;
        out.num_ = std::move(n);
        out.den_ = std::move(d);
        if (out.num_.is_zero()) {
            out.den_ = MPoly::one(out.num_.vars());
            return out;
        }
        Rat c = out.den_.rational_content();
        out.num_ /= c;
        out.den_ /= c;
        return out;
    }

    // a/b +- c/d via the common-factor split of the denominators: with
    // g = gcd(b, d), b = g*b', d = g*d', the sum is (a*d' +- c*b')/(b'*d'*g)
    // and only the numerator's factor shared with g needs removing.
    static RatFunc add(const RatFunc& a, const RatFunc& b, bool negate) {
        if (a.is_zero()) return negate ? -b : b;
        if (b.is_zero()) return a;
        MPoly g = gcd(a.den_, b.den_);
        MPoly da = must_divide(a.den_, g);
        MPoly db = must_divide(b.den_, g);
        MPoly t = negate ? a.num_ * db - b.num_ * da : a.num_ * db + b.num_ * da;
        if (t.is_zero()) return RatFunc(MPoly::zero(a.num_.vars()));
        MPoly g2 = gcd(t, g);
        return from_reduced(must_divide(t, g2), da * db * must_divide(g, g2));
    }

    static RatFunc substitute_poly(const MPoly& p, const std::map<std::string, RatFunc>& assign) {
        const auto& vars = p.vars();
        std::vector<RatFunc> images(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto it = assign.find(vars[i]);
            images[i] = it != assign.end() ? it->second : RatFunc::variable(vars, vars[i]);
        }
        RatFunc out = RatFunc::constant(vars, 0);
        for (const auto& [m, c] : p.terms()) {
            RatFunc t = RatFunc::constant(vars, c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] != 0) t *= images[i].pow(m[i]);
            }
            out += t;
        }
        return out;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = MPoly::one(num_.vars());
            return;
        }
        MPoly g = gcd(num_, den_);
        num_ = must_divide(num_, g);
        den_ = must_divide(den_, g);
        Rat c = den_.rational_content();
        num_ /= c;
        den_ /= c;
    }

    MPoly num_, den_;
};

inline int ratfunc_cmp(const RatFunc& a, const RatFunc& b) {
    if (int c = poly_cmp(a.num(), b.num()); c != 0) return c;
    return poly_cmp(a.den(), b.den());
}

inline bool ratfunc_less(const RatFunc& a, const RatFunc& b) { return ratfunc_cmp(a, b) < 0; }

// Canonical representative of the square class of f in K* / (K*)^2 for
// K = Q(vars): the product of the odd-multiplicity squarefree factors of
// num*den, times (in exact mode) the signed squarefree integer part of the
// rational content.  In SymbolicClosed mode constants are squares, so the
// content is dropped.  Two elements lie in the same square class iff their
// representatives coincide.
inline RatFunc square_class_rep(const RatFunc& f, GroundMode mode) {
    if (f.is_zero()) throw ZeroElement();
    const auto& vars = f.vars();
    MPoly prod = f.num() * f.den();
    SquarefreeDecomposition d = squarefree_decomposition(prod, 0);
    MPoly rep = MPoly::one(vars);
    for (const auto& [fac, m] : d.factors) {
        if (m % 2 == 1) rep *= fac;
    }
    if (mode == GroundMode::ExactRational) rep *= rat_square_class_rep(d.content);
    return RatFunc(rep);
}

inline bool is_square_ratfunc(const RatFunc& f, GroundMode mode) {
    if (f.is_zero()) return false;
    return square_class_rep(f, mode) == RatFunc::constant(f.vars(), 1);
}

// Exact square root in K = Q(vars): with num/den in lowest terms, f is a
// square iff both are squares in Q[vars].
inline std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
    auto n = polynomial_square_root(f.num());
    if (!n) return std::nullopt;
    auto d = polynomial_square_root(f.den());
    if (!d) return std::nullopt;
    return RatFunc(*n, *d);
}

}  // namespace unram
