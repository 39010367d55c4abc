#pragma once

// Classical local Hilbert symbols (a,b)_v over Q at v in {2, odd primes,
// infinity}, the finite support set of a pair, and splitting of quaternion
// algebras over Q.  This is the exact ground-truth oracle for symbols with
// constant entries.

#include <set>
#include <string>
#include <vector>

#include "unram/errors.hpp"
#include "unram/rat.hpp"

namespace unram {

struct RationalPlace {
    bool infinity;
    Int p;  // valid prime when !infinity

    static RationalPlace infinite() { return {true, 0}; }

    static RationalPlace finite(const Int& p) {
        if (p < 2 || !is_probable_prime(p)) throw InvalidPlace(p.str() + " is not prime");
        return {false, p};
    }

    std::string to_string() const { return infinity ? "inf" : p.str(); }

    friend bool operator<(const RationalPlace& a, const RationalPlace& b) {
        if (a.infinity != b.infinity) return b.infinity;  // finite places first
        return a.p < b.p;
    }
};

namespace detail {

inline Int mod_norm(const Int& x, const Int& m) {
    Int r = x % m;
    return r < 0 ? r + m : r;
}

// p-adic valuation of a nonzero rational.
inline long long padic_valuation(const Rat& a, const Int& p) {
    long long v = 0;
    Int n = numerator(a), d = denominator(a);
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

// The unit part of a at p, as a residue mod p^k (k = 1 for odd p, 3 for p=2).
inline Int unit_residue(const Rat& a, const Int& p, const Int& pk) {
    Int n = numerator(a), d = denominator(a);
    while (n % p == 0) n /= p;
    while (d % p == 0) d /= p;
    n = mod_norm(n, pk);
    d = mod_norm(d, pk);
    // Invert d mod pk: Fermat for odd primes; odd residues are self-inverse mod 8.
    Int dinv = pk == 8 ? d : boost::multiprecision::powm(d, p - 2, p);
    return mod_norm(n * dinv, pk);
}

inline int legendre(const Int& u, const Int& p) {
    Int r = boost::multiprecision::powm(mod_norm(u, p), (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

}  // namespace detail

// Local Hilbert symbol (a,b)_v in {+1,-1}.
inline int hilbert_symbol(const Rat& a, const Rat& b, const RationalPlace& place) {
    if (a == 0 || b == 0) throw ZeroInput();
    if (place.infinity) return (a < 0 && b < 0) ? -1 : 1;
    const Int& p = place.p;
    long long alpha = detail::padic_valuation(a, p);
    long long beta = detail::padic_valuation(b, p);
    if (p == 2) {
        Int u = detail::unit_residue(a, 2, 8);
        Int w = detail::unit_residue(b, 2, 8);
        // (-1)^(eps(u)eps(w) + alpha*omega(w) + beta*omega(u)) with
        // eps(n) = (n-1)/2 mod 2, omega(n) = (n^2-1)/8 mod 2.
        Int eps_u = ((u - 1) / 2) % 2;
        Int eps_w = ((w - 1) / 2) % 2;
        Int om_u = ((u * u - 1) / 8) % 2;
        Int om_w = ((w * w - 1) / 8) % 2;
        Int ex = eps_u * eps_w + alpha * om_w + beta * om_u;
        return ex % 2 == 0 ? 1 : -1;
    }
    Int u = detail::unit_residue(a, p, p);
    Int w = detail::unit_residue(b, p, p);
    Int ex = Int(alpha) * Int(beta) * ((p - 1) / 2);
    int sign = ex % 2 == 0 ? 1 : -1;
    int lu = beta % 2 == 0 ? 1 : detail::legendre(u, p);
    int lw = alpha % 2 == 0 ? 1 : detail::legendre(w, p);
    return sign * lu * lw;
}

// The finite set of places where (a,b) can be nontrivial: infinity, 2, and
// the odd primes dividing the numerator or denominator of a or b.
inline std::vector<RationalPlace> support_places(const Rat& a, const Rat& b) {
    if (a == 0 || b == 0) throw ZeroInput();
    std::set<Int> primes{2};
    for (const Rat* r : {&a, &b}) {
        for (Int part : {numerator(*r), denominator(*r)}) {
            Int n = boost::multiprecision::abs(part);
            for (const auto& [q, e] : factor_integer(n)) primes.insert(q);
        }
    }
    std::vector<RationalPlace> out;
    for (const Int& q : primes) out.push_back(RationalPlace::finite(q));
    out.push_back(RationalPlace::infinite());
    return out;
}

inline bool hilbert_product_formula_holds(const Rat& a, const Rat& b) {
    int prod = 1;
    for (const RationalPlace& v : support_places(a, b)) prod *= hilbert_symbol(a, b, v);
    return prod == 1;
}

// (a,b) splits over Q iff it splits at every place of its support set
// (Hasse-Minkowski; symbols outside the support are +1).
inline bool is_split_over_rationals(const Rat& a, const Rat& b) {
    for (const RationalPlace& v : support_places(a, b)) {
        if (hilbert_symbol(a, b, v) != 1) return false;
    }
    return true;
}

}  // namespace unram
