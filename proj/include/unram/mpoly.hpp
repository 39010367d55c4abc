#pragma once

// Exact sparse multivariate polynomials over Q.
//
// Terms are kept in a map ordered by graded lexicographic order (total degree
// first, then lexicographic on the exponent vector), so the leading term, the
// canonical printed form, and cross-run determinism all come from one place.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unram/errors.hpp"
#include "unram/rat.hpp"

namespace unram {

using Monomial = std::vector<std::uint32_t>;

struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::uint64_t da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return a.size() < b.size();
    }
};

class MPoly {
public:
    using TermMap = std::map<Monomial, Rat, GrlexLess>;

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MPoly zero(const std::vector<std::string>& vars) { return MPoly(vars); }

    static MPoly constant(const std::vector<std::string>& vars, const Rat& c) {
        MPoly p(vars);
        if (c != 0) p.terms_[Monomial(vars.size(), 0)] = c;
        return p;
    }

    static MPoly one(const std::vector<std::string>& vars) { return constant(vars, 1); }

    static MPoly variable(const std::vector<std::string>& vars, const std::string& name) {
        MPoly p(vars);
        Monomial m(vars.size(), 0);
        m[p.var_index(name)] = 1;
        p.terms_[m] = 1;
        return p;
    }

    static MPoly term(const std::vector<std::string>& vars, const Monomial& m, const Rat& c) {
        MPoly p(vars);
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name) return i;
        }
        throw UnknownVariable(name);
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        return total_degree() == 0;
    }

    Rat constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant()) throw Error("polynomial is not constant");
        return terms_.begin()->second;
    }

    long long total_degree() const {
        if (terms_.empty()) return -1;
        const Monomial& m = terms_.rbegin()->first;
        long long d = 0;
        for (auto e : m) d += e;
        return d;
    }

    long long degree_in(std::size_t idx) const {
        long long d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long long>(m[idx]));
        return d;
    }

    bool depends_on(std::size_t idx) const { return degree_in(idx) > 0; }

    // Leading term under graded lexicographic order.
    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw ZeroPolynomial();
        return terms_.rbegin()->first;
    }

    Rat leading_coefficient() const {
        if (terms_.empty()) return 0;
        return terms_.rbegin()->second;
    }

    Rat coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    std::size_t nterms() const { return terms_.size(); }

    MPoly operator-() const {
        MPoly out(vars_);
        for (const auto& [m, c] : terms_) out.terms_[m] = -c;
        return out;
    }

    MPoly& operator+=(const MPoly& rhs) {
        check_same_vars(rhs);
        for (const auto& [m, c] : rhs.terms_) {
            Rat& slot = terms_[m];
            slot += c;
            if (slot == 0) terms_.erase(m);
        }
        return *this;
    }

    MPoly& operator-=(const MPoly& rhs) {
        check_same_vars(rhs);
        for (const auto& [m, c] : rhs.terms_) {
            Rat& slot = terms_[m];
            slot -= c;
            if (slot == 0) terms_.erase(m);
        }
        return *this;
    }

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

    friend MPoly operator+(const MPoly& a, const Rat& c) { return a + constant(a.vars(), c); }
    friend MPoly operator+(const Rat& c, const MPoly& a) { return a + c; }
    friend MPoly operator-(const MPoly& a, const Rat& c) { return a - constant(a.vars(), c); }
    friend MPoly operator-(const Rat& c, const MPoly& a) { return constant(a.vars(), c) - a; }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_same_vars(b);
        MPoly out(a.vars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                Rat& slot = out.terms_[m];
                slot += ca * cb;
                if (slot == 0) out.terms_.erase(m);
            }
        }
        return out;
    }

    MPoly& operator*=(const MPoly& rhs) { return *this = *this * rhs; }

    MPoly& operator*=(const Rat& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }

    friend MPoly operator*(MPoly p, const Rat& c) { return p *= c; }
    friend MPoly operator*(const Rat& c, MPoly p) { return p *= c; }

    MPoly& operator/=(const Rat& c) {
        if (c == 0) throw DivisionByZeroPolynomial();
        for (auto& [m, v] : terms_) v /= c;
        return *this;
    }

    friend MPoly operator/(MPoly p, const Rat& c) { return p /= c; }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly pow(unsigned long long e) const {
        MPoly acc = one(vars_);
        MPoly base = *this;
        while (e > 0) {
            if (e & 1ULL) acc *= base;
            base *= base;
            e >>= 1ULL;
        }
        return acc;
    }

    MPoly derivative(std::size_t idx) const {
        MPoly out(vars_);
        for (const auto& [m, c] : terms_) {
            if (m[idx] == 0) continue;
            Monomial d = m;
            d[idx] -= 1;
            out.terms_[d] = c * m[idx];
        }
        return out;
    }

    Rat eval(const std::vector<Rat>& point) const {
        if (point.size() != vars_.size()) throw Error("evaluation point arity mismatch");
        Rat out = 0;
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] != 0) t *= rat_pow(point[i], m[i]);
            }
            out += t;
        }
        return out;
    }

    // Substitute constants for a subset of the variables; the result lives in
    // the same variable list with those exponents collapsed to zero.
    MPoly substitute_constants(const std::map<std::string, Rat>& assign) const {
        std::vector<std::optional<Rat>> vals(vars_.size());
        for (const auto& [name, v] : assign) vals[var_index(name)] = v;
        MPoly out(vars_);
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            Monomial rest = m;
            bool dead = false;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (!vals[i] || m[i] == 0) continue;
                if (*vals[i] == 0) {
                    dead = true;
                    break;
                }
                t *= rat_pow(*vals[i], m[i]);
                rest[i] = 0;
            }
            if (dead) continue;
            Rat& slot = out.terms_[rest];
            slot += t;
            if (slot == 0) out.terms_.erase(rest);
        }
        return out;
    }

    // Signed rational content: gcd of numerators over lcm of denominators,
    // carrying the sign of the leading coefficient, so that p / content has
    // coprime integer coefficients and positive leading coefficient.
    Rat rational_content() const {
        if (terms_.empty()) return 0;
        Int g = 0, l = 1;
        for (const auto& [m, c] : terms_) {
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(numerator(c)));
            l = boost::multiprecision::lcm(l, denominator(c));
        }
        Rat content(g, l);
        return leading_coefficient() < 0 ? -content : content;
    }

    // p / rational_content(): coprime integer coefficients, positive lead.
    MPoly primitive() const {
        if (terms_.empty()) return *this;
        return *this / rational_content();
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rat c = it->second;
            const Rat a = c < 0 ? Rat(-c) : c;
            if (first) {
                if (c < 0) os << '-';
                first = false;
            } else {
                os << (c < 0 ? '-' : '+');
            }
            bool has_vars = false;
            for (auto e : it->first) has_vars = has_vars || e > 0;
            bool printed = false;
            if (a != 1 || !has_vars) {
                os << a.str();
                printed = true;
            }
            for (std::size_t i = 0; i < it->first.size(); ++i) {
                const auto e = it->first[i];
                if (e == 0) continue;
                if (printed) os << '*';
                os << vars_[i];
                if (e >= 2) os << '^' << e;
                printed = true;
            }
        }
        return os.str();
    }

private:
    void check_same_vars(const MPoly& other) const {
        if (vars_ != other.vars_) throw Error("mixing polynomials over different variable lists");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

// Total order on polynomials (used for canonical sorting of symbol entries):
// compare term streams from the leading end; the polynomial whose first
// differing monomial is larger under grlex is larger, ties broken by
// coefficient.
inline int poly_cmp(const MPoly& a, const MPoly& b) {
    auto ia = a.terms().rbegin(), ea = a.terms().rend();
    auto ib = b.terms().rbegin(), eb = b.terms().rend();
    GrlexLess less;
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (ia->first != ib->first) return less(ia->first, ib->first) ? -1 : 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia != ea) return 1;
    if (ib != eb) return -1;
    return 0;
}

inline bool poly_less(const MPoly& a, const MPoly& b) { return poly_cmp(a, b) < 0; }

// True when every term has total degree d (the zero polynomial counts).
inline bool is_homogeneous(const MPoly& p, long long d) {
    for (const auto& [m, c] : p.terms()) {
        long long t = 0;
        for (auto e : m) t += e;
        if (t != d) return false;
    }
    return true;
}

// Coefficients of p viewed as a univariate polynomial in variable idx; the
// k-th entry is the coefficient of idx^k and does not involve idx.
inline std::vector<MPoly> coeffs_in(const MPoly& p, std::size_t idx) {
    long long d = p.degree_in(idx);
    if (d < 0) return {};
    std::vector<MPoly> out(static_cast<std::size_t>(d) + 1, MPoly::zero(p.vars()));
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        std::uint32_t e = rest[idx];
        rest[idx] = 0;
        out[e] += MPoly::term(p.vars(), rest, c);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

inline MPoly from_coeffs(const std::vector<std::string>& vars, std::size_t idx,
                         const std::vector<MPoly>& coeffs) {
    MPoly x = MPoly::variable(vars, vars[idx]);
    MPoly out = MPoly::zero(vars);
    for (std::size_t k = 0; k < coeffs.size(); ++k) out += coeffs[k] * x.pow(k);
    return out;
}

// Exact multivariate division: returns a/b when b divides a, nullopt
// otherwise.  Repeatedly cancels the grlex leading term, which strictly
// decreases, so the loop terminates; when b | a every intermediate remainder
// is divisible by b so the leading-term test never misfires.
inline std::optional<MPoly> exact_divide(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw DivisionByZeroPolynomial();
    MPoly q = MPoly::zero(a.vars());
    MPoly r = a;
    const Monomial& lmb = b.leading_monomial();
    const Rat lcb = b.leading_coefficient();
    while (!r.is_zero()) {
        const Monomial& lmr = r.leading_monomial();
        Monomial m(lmr.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (lmr[i] < lmb[i]) return std::nullopt;
            m[i] = lmr[i] - lmb[i];
        }
        MPoly t = MPoly::term(a.vars(), m, r.leading_coefficient() / lcb);
        q += t;
        r -= t * b;
    }
    return q;
}

// Exact division that is known to succeed; throws if the invariant is broken.
inline MPoly must_divide(const MPoly& a, const MPoly& b) {
    auto q = exact_divide(a, b);
    if (!q) throw Error("expected exact division failed");
    return *q;
}

struct PseudoRemainder {
    MPoly rem;
    unsigned k;  // lc(b, idx)^k * a = q*b + rem with deg_idx(rem) < deg_idx(b)
};

// Pseudo-remainder of a by b with respect to variable idx.
inline PseudoRemainder pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t idx) {
    std::vector<MPoly> A = coeffs_in(a, idx);
    std::vector<MPoly> B = coeffs_in(b, idx);
    if (B.empty()) throw DivisionByZeroPolynomial();
    const MPoly lc = B.back();
    unsigned k = 0;
    while (A.size() >= B.size() && !A.empty()) {
        const std::size_t shift = A.size() - B.size();
        MPoly lead = A.back();
        for (auto& c : A) c *= lc;
        for (std::size_t j = 0; j < B.size(); ++j) A[shift + j] -= lead * B[j];
        ++k;
        while (!A.empty() && A.back().is_zero()) A.pop_back();
    }
    return {from_coeffs(a.vars(), idx, A), k};
}

inline MPoly gcd(const MPoly& a, const MPoly& b);

// Gcd of the idx-coefficients of p; the result does not involve idx.
inline MPoly content_in(const MPoly& p, std::size_t idx) {
    MPoly g = MPoly::zero(p.vars());
    for (const MPoly& c : coeffs_in(p, idx)) g = gcd(g, c);
    return g;
}

inline MPoly primitive_part_in(const MPoly& p, std::size_t idx) {
    if (p.is_zero()) return p;
    return must_divide(p, content_in(p, idx));
}

// Coefficient of the highest power of variable idx, as a polynomial in the
// remaining variables.
inline MPoly leading_coeff_in(const MPoly& p, std::size_t idx) {
    const long long d = p.degree_in(idx);
    MPoly out = MPoly::zero(p.vars());
    for (const auto& [m, c] : p.terms()) {
        if (static_cast<long long>(m[idx]) == d) {
            Monomial e = m;
            e[idx] = 0;
            out += MPoly::term(p.vars(), e, c);
        }
    }
    return out;
}

// Multivariate gcd, normalized to have coprime integer coefficients and
// positive leading coefficient.  Layered for predictable cost: monomial
// content is stripped first, mutual-divisibility fast paths catch the
// square/multiple shapes produced by rational-function arithmetic, and the
// general case runs a content/primitive split followed by a subresultant
// pseudo-remainder sequence in the first shared variable (the exact beta
// divisions bound intermediate growth without per-step recursive content
// computations).
inline MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    const auto& vars = a.vars();
    if (a.is_constant() || b.is_constant()) return MPoly::one(vars);
    if (a == b) return a.primitive();

    // gcd(x^i p, x^j q) = x^min(i,j) gcd(p, q) when x divides neither p nor q.
    const std::size_t nv = vars.size();
    Monomial ma(nv, 0), mb(nv, 0), shared(nv, 0);
    auto min_exponents = [nv](const MPoly& p, Monomial& m) {
        bool first = true;
        for (const auto& [mon, c] : p.terms()) {
            for (std::size_t i = 0; i < nv; ++i) m[i] = first ? mon[i] : std::min(m[i], mon[i]);
            first = false;
        }
    };
    min_exponents(a, ma);
    min_exponents(b, mb);
    bool strip = false;
    for (std::size_t i = 0; i < nv; ++i) {
        shared[i] = std::min(ma[i], mb[i]);
        strip = strip || ma[i] > 0 || mb[i] > 0;
    }
    if (strip) {
        MPoly g = gcd(must_divide(a, MPoly::term(vars, ma, 1)),
                      must_divide(b, MPoly::term(vars, mb, 1)));
        return (g * MPoly::term(vars, shared, 1)).primitive();
    }

    if (exact_divide(a, b)) return b.primitive();
    if (exact_divide(b, a)) return a.primitive();

    std::size_t idx = 0;
    while (idx < nv && !a.depends_on(idx) && !b.depends_on(idx)) ++idx;
    if (idx == nv) return MPoly::one(vars);
    const MPoly ca = content_in(a, idx);
    const MPoly cb = content_in(b, idx);
    const MPoly cg = gcd(ca, cb);
    MPoly u = must_divide(a, ca).primitive();
    MPoly v = must_divide(b, cb).primitive();
    if (u.degree_in(idx) < v.degree_in(idx)) std::swap(u, v);

    // Subresultant PRS in idx; beta = g*h^delta divides each scaled
    // pseudo-remainder exactly (signs are immaterial for a gcd).
    MPoly g = MPoly::one(vars), h = MPoly::one(vars);
    while (!v.is_zero() && v.degree_in(idx) > 0) {
        const unsigned delta = static_cast<unsigned>(u.degree_in(idx) - v.degree_in(idx));
        PseudoRemainder pr = pseudo_remainder(u, v, idx);
        MPoly r = pr.rem;
        if (!r.is_zero()) {
            const MPoly lcv = leading_coeff_in(v, idx);
            for (unsigned e = pr.k; e < delta + 1; ++e) r *= lcv;
            r = must_divide(r, g * h.pow(delta));
        }
        u = v;
        v = r;
        g = leading_coeff_in(u, idx);
        h = delta == 0 ? h : must_divide(g.pow(delta), h.pow(delta - 1));
    }
    if (!v.is_zero()) return cg.primitive();  // remainder free of idx: coprime parts
    return (cg * primitive_part_in(u, idx)).primitive();
}

struct SquarefreeDecomposition {
    Rat content;                                // p = content * prod f_i^m_i
    std::vector<std::pair<MPoly, int>> factors;  // primitive, positive lead,
                                                 // pairwise coprime, squarefree,
                                                 // multiplicities strictly increasing
};

namespace detail {

// Yun's algorithm on q viewed in variable idx; q must be primitive in idx.
// Returns factors with their multiplicities; the leftover rational unit is
// accumulated into `unit`.
inline std::vector<std::pair<MPoly, int>> yun_squarefree(const MPoly& q, std::size_t idx,
                                                         Rat& unit) {
    std::vector<std::pair<MPoly, int>> out;
    const MPoly f = q.primitive();
    const MPoly df = f.derivative(idx);
    MPoly g = gcd(f, df);
    MPoly bpart = must_divide(f, g);
    MPoly cpart = must_divide(df, g);
    MPoly dpart = cpart - bpart.derivative(idx);
    int i = 1;
    while (bpart.depends_on(idx)) {
        MPoly ai = gcd(bpart, dpart);
        if (!ai.is_constant()) out.emplace_back(ai, i);
        bpart = must_divide(bpart, ai);
        cpart = must_divide(dpart, ai);
        dpart = cpart - bpart.derivative(idx);
        ++i;
    }
    MPoly prod = MPoly::one(q.vars());
    for (const auto& [fac, m] : out) prod *= fac.pow(static_cast<unsigned>(m));
    auto u = exact_divide(q, prod);
    if (!u || !u->is_constant()) throw Error("squarefree factor product mismatch");
    unit *= u->constant_value();
    return out;
}

}  // namespace detail

// Full squarefree decomposition of a nonzero polynomial, starting from the
// given variable and recursing through the content so that variable-pure
// factors in the remaining variables are split out as well.
inline SquarefreeDecomposition squarefree_decomposition(const MPoly& p, std::size_t start_idx = 0) {
    if (p.is_zero()) throw ZeroPolynomial();
    if (p.is_constant()) return {p.constant_value(), {}};
    std::size_t idx = p.depends_on(start_idx) ? start_idx : 0;
    while (!p.depends_on(idx)) ++idx;
    const MPoly cont = content_in(p, idx);
    const MPoly prim = must_divide(p, cont);
    SquarefreeDecomposition rec = squarefree_decomposition(cont, start_idx);
    Rat unit = rec.content;
    std::vector<std::pair<MPoly, int>> mine = detail::yun_squarefree(prim, idx, unit);
    // Merge by multiplicity: factors from different variables are coprime.
    std::map<int, MPoly> merged;
    for (const auto& [f, m] : rec.factors) {
        auto it = merged.find(m);
        if (it == merged.end()) {
            merged.emplace(m, f);
        } else {
            it->second *= f;
        }
    }
    for (const auto& [f, m] : mine) {
        auto it = merged.find(m);
        if (it == merged.end()) {
            merged.emplace(m, f);
        } else {
            it->second *= f;
        }
    }
    SquarefreeDecomposition out;
    out.content = unit;
    for (const auto& [m, f] : merged) out.factors.emplace_back(f, m);
    return out;
}

// Exact square root: returns r with r*r == p (positive leading coefficient),
// or nullopt when p is not a square in Q[vars].
inline std::optional<MPoly> polynomial_square_root(const MPoly& p) {
    if (p.is_zero()) return p;
    SquarefreeDecomposition d = squarefree_decomposition(p, 0);
    auto c = rat_sqrt(d.content);
    if (!c) return std::nullopt;
    MPoly r = MPoly::constant(p.vars(), *c);
    for (const auto& [f, m] : d.factors) {
        if (m % 2 != 0) return std::nullopt;
        r *= f.pow(static_cast<unsigned>(m / 2));
    }
    return r;
}

// Fraction-free determinant (Bareiss) with column pivoting; every division
// is exact by the principal-minor identity.
inline MPoly determinant(std::vector<std::vector<MPoly>> m) {
    const std::size_t n = m.size();
    for (const auto& row : m) {
        if (row.size() != n) throw NonSquareMatrix();
    }
    if (n == 0) throw NonSquareMatrix();
    const std::vector<std::string>& vars = m[0][0].vars();
    MPoly prev = MPoly::one(vars);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return MPoly::zero(vars);
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                auto q = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
                if (!q) throw Error("fraction-free elimination produced an inexact division");
                m[i][j] = *q;
            }
            m[i][k] = MPoly::zero(vars);
        }
        prev = m[k][k];
    }
    return sign == 1 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace unram
