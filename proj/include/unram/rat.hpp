#pragma once

// Ground-field arithmetic: arbitrary-precision rationals, square detection,
// integer factorization (trial division + deterministic Miller-Rabin), and
// canonical square-class representatives of rational constants.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unram/errors.hpp"

namespace unram {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// How squares of ground-field constants are decided.
//   ExactRational:  a constant is a square iff it is a square in Q.
//   SymbolicClosed: every nonzero constant is declared a square (the ground
//                   field is treated as quadratically closed).
enum class GroundMode { ExactRational, SymbolicClosed };

// Three-valued answer for questions that may be undecidable in a given model.
enum class Decision { Yes, No, Unknown };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::Yes: return "yes";
        case Decision::No: return "no";
        default: return "unknown";
    }
}

inline const char* to_string(GroundMode m) {
    return m == GroundMode::ExactRational ? "exact" : "closed";
}

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

// Floor of the integer square root; n must be >= 0.
inline Int int_sqrt_floor(const Int& n) { return boost::multiprecision::sqrt(n); }

inline bool int_is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = int_sqrt_floor(n);
    return r * r == n;
}

// A rational is a square in Q iff numerator and denominator (in lowest terms)
// are both perfect squares.
inline bool rat_is_perfect_square(const Rat& r) {
    return r >= 0 && int_is_perfect_square(numerator(r)) &&
           int_is_perfect_square(denominator(r));
}

// Exact square root of a perfect-square rational (>= 0).
inline std::optional<Rat> rat_sqrt(const Rat& r) {
    if (!rat_is_perfect_square(r)) return std::nullopt;
    return Rat(int_sqrt_floor(numerator(r)), int_sqrt_floor(denominator(r)));
}

// Squareness of a nonzero ground-field constant under the chosen mode.
inline bool is_square_constant(const Rat& c, GroundMode mode) {
    if (c == 0) return false;
    if (mode == GroundMode::SymbolicClosed) return true;
    return rat_is_perfect_square(c);
}

inline Rat rat_pow(const Rat& base, long long e) {
    if (e < 0) {
        if (base == 0) throw DivisionByZeroPolynomial();
        return Rat(1) / rat_pow(base, -e);
    }
    Rat acc = 1, b = base;
    long long k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

// Deterministic Miller-Rabin for n < 3.3e24 using the standard witness set.
inline bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = boost::multiprecision::powm(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 0; i + 1 < r; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Factor n >= 1 into primes.  Trial division up to 10^5 clears small factors;
// any remaining cofactor must be prime, a prime square, or a prime fourth
// power (certified by Miller-Rabin), which covers every integer whose second
// smallest prime factor exceeds the trial bound only when the cofactor's
// structure is detectable.  Inputs in this library are products of small
// constants, so the limit is never reached in practice; if an undetectable
// composite cofactor survives, FactorizationLimit is thrown rather than
// returning a wrong answer.
inline std::map<Int, int> factor_integer(Int n) {
    if (n < 1) throw Error("factor_integer expects a positive integer");
    std::map<Int, int> out;
    for (Int p = 2; p * p <= n && p <= 100000; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return out;
    if (is_probable_prime(n)) {
        ++out[n];
        return out;
    }
    Int r = int_sqrt_floor(n);
    if (r * r == n) {
        if (is_probable_prime(r)) {
            out[r] += 2;
            return out;
        }
        Int s = int_sqrt_floor(r);
        if (s * s == r && is_probable_prime(s)) {
            out[s] += 4;
            return out;
        }
    }
    throw FactorizationLimit(n.str());
}

// Largest square divisor removed: returns the squarefree part of n >= 1.
inline Int int_squarefree_part(const Int& n) {
    Int out = 1;
    for (const auto& [p, e] : factor_integer(n)) {
        if (e % 2 == 1) out *= p;
    }
    return out;
}

// Canonical representative of the square class of a nonzero rational:
// sign(r) times the squarefree part of numerator*denominator.  Two rationals
// differ by a square in Q* iff their representatives are equal.
inline Rat rat_square_class_rep(const Rat& r) {
    if (r == 0) throw ZeroElement();
    Int prod = numerator(r) * denominator(r);
    int sign = prod < 0 ? -1 : 1;
    return Rat(sign * int_squarefree_part(boost::multiprecision::abs(prod)));
}

}  // namespace unram
