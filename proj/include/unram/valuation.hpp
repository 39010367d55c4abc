#pragma once

// Divisorial valuations on K = ground(x1,...,xn), their residue fields, unit
// reduction, and square testing in residue fields and completions.
//
// A valuation is centered on an irreducible polynomial `prime` (irreducibility
// is an asserted precondition, not checked).  Residue-field elements are kept
// as fractions of polynomials reduced modulo the prime in its main variable;
// pseudo-division scaling is compensated exactly so no leading-coefficient
// factors leak into square classes.

#include <optional>
#include <string>
#include <utility>

#include "unram/errors.hpp"
#include "unram/mpoly.hpp"
#include "unram/rat.hpp"
#include "unram/ratfunc.hpp"

namespace unram {

struct DivisorialValuation {
    MPoly prime;           // primitive, positive leading coefficient, nonconstant
    std::size_t main_var;  // first variable with positive degree in prime
    GroundMode mode;

    DivisorialValuation(const MPoly& p, GroundMode m) : prime(p.primitive()), main_var(0), mode(m) {
        if (prime.is_zero()) throw ZeroPolynomial();
        if (prime.is_constant()) throw InvalidPlace("a constant does not define a valuation");
        while (!prime.depends_on(main_var)) ++main_var;
    }
};

enum class ResidueFieldKind {
    Ground,               // prime linear, one variable total: residue field is the ground field
    SimpleTranscendental, // prime linear in main_var: residue field is ground(other vars)
    QuadraticExtension,   // prime quadratic in main_var: quadratic extension of ground(other vars)
    Abstract,             // higher degree: only syntactic square certificates
    FunctionField         // trivial valuation: the residue field is K itself
};

struct ResidueField {
    ResidueFieldKind kind;
    MPoly defining_prime;  // zero polynomial for FunctionField
    std::size_t main_var;  // meaningless for FunctionField
    GroundMode mode;
};

inline ResidueField residue_field_of(const DivisorialValuation& v) {
    long long d = v.prime.degree_in(v.main_var);
    ResidueFieldKind kind;
    if (d == 1 && v.prime.vars().size() == 1) {
        kind = ResidueFieldKind::Ground;
    } else if (d == 1) {
        kind = ResidueFieldKind::SimpleTranscendental;
    } else if (d == 2) {
        kind = ResidueFieldKind::QuadraticExtension;
    } else {
        kind = ResidueFieldKind::Abstract;
    }
    return {kind, v.prime, v.main_var, v.mode};
}

// The residue field of the trivial valuation: square classes over K itself.
inline ResidueField function_field(const std::vector<std::string>& vars, GroundMode mode) {
    return {ResidueFieldKind::FunctionField, MPoly::zero(vars), 0, mode};
}

struct ResidueElement {
    ResidueField field;
    RatFunc value;  // reduced modulo defining_prime in main_var (both num and den)

    bool is_zero() const { return value.is_zero(); }
    std::string to_string() const { return value.to_string(); }
};

// Multiplicity of `prime` in a nonzero polynomial.
inline long long prime_multiplicity(MPoly q, const MPoly& prime) {
    if (q.is_zero()) throw ZeroInput();
    long long m = 0;
    for (;;) {
        auto quo = exact_divide(q, prime);
        if (!quo) return m;
        q = *quo;
        ++m;
    }
}

inline long long valuation_of(const RatFunc& f, const DivisorialValuation& v) {
    if (f.is_zero()) throw ZeroInput();
    return prime_multiplicity(f.num(), v.prime) - prime_multiplicity(f.den(), v.prime);
}

// f with all powers of the prime removed from numerator and denominator.
inline RatFunc strip_prime(const RatFunc& f, const DivisorialValuation& v) {
    if (f.is_zero()) throw ZeroInput();
    MPoly n = f.num(), d = f.den();
    for (auto q = exact_divide(n, v.prime); q; q = exact_divide(n, v.prime)) n = *q;
    for (auto q = exact_divide(d, v.prime); q; q = exact_divide(d, v.prime)) d = *q;
    return RatFunc(n, d);
}

// Reduce a unit modulo the prime.  With lc the leading coefficient of the
// prime in its main variable and lc^k * A = q*prime + r_A, the class of A is
// [r_A] * [lc]^(-k_A); the fraction compensates the two scalings exactly:
// [A/B] = r_A * lc^(k_B) / (r_B * lc^(k_A)).
inline ResidueElement reduce_unit(const RatFunc& f, const DivisorialValuation& v) {
    if (f.is_zero()) throw ZeroInput();
    long long val = valuation_of(f, v);
    if (val != 0) throw NotAUnit(val);
    RatFunc u = strip_prime(f, v);
    PseudoRemainder ra = pseudo_remainder(u.num(), v.prime, v.main_var);
    PseudoRemainder rb = pseudo_remainder(u.den(), v.prime, v.main_var);
    // After stripping, a genuine prime divides neither part (it depends on the
    // main variable, its leading coefficient does not); a vanishing remainder
    // certifies the defining polynomial is not prime.
    if (ra.rem.is_zero() || rb.rem.is_zero())
        throw InvalidPlace("defining prime is reducible (zero divisor)");
    MPoly lc = coeffs_in(v.prime, v.main_var).back();
    RatFunc value(ra.rem * lc.pow(rb.k), rb.rem * lc.pow(ra.k));
    return {residue_field_of(v), value};
}

namespace detail {

// Split a polynomial (free of main_var beyond degree 1) as c0 + c1 * X.
inline std::pair<MPoly, MPoly> linear_parts(const MPoly& p, std::size_t main_var) {
    std::vector<MPoly> cs = coeffs_in(p, main_var);
    const auto& vars = p.vars();
    MPoly c0 = cs.size() > 0 ? cs[0] : MPoly::zero(vars);
    MPoly c1 = cs.size() > 1 ? cs[1] : MPoly::zero(vars);
    return {c0, c1};
}

// Square test for U + W*sqrt(d) over F = ground(vars \ {main}), where d is a
// polynomial that is not a square in F.  The classical criterion: the element
// is a square iff its norm N = U^2 - d.W^2 is a square n^2 in F and at least
// one of (U+n)/2, (U-n)/2 is a square in F.  For W = 0 it degenerates to:
// U a square in F or U*d a square in F.
inline Decision quadratic_ext_square(const RatFunc& U, const RatFunc& W, const RatFunc& d,
                                     GroundMode mode) {
    if (W.is_zero()) {
        if (U.is_zero()) throw ZeroElement();
        if (is_square_ratfunc(U, mode)) return Decision::Yes;
        return is_square_ratfunc(U * d, mode) ? Decision::Yes : Decision::No;
    }
    RatFunc N = U * U - d * W * W;
    if (N.is_zero()) {
        // N = 0 would make d a square in F; excluded by irreducibility.
        throw InvalidPlace("defining prime is reducible (zero norm)");
    }
    if (!is_square_ratfunc(N, mode)) return Decision::No;
    auto n = ratfunc_sqrt(N);
    if (!n) {
        // Square only up to a constant (SymbolicClosed); the criterion needs
        // the exact root, so the answer is not determined by this data.
        return Decision::Unknown;
    }
    RatFunc two = RatFunc::constant(U.vars(), 2);
    RatFunc s1 = (U + *n) / two;
    RatFunc s2 = (U - *n) / two;
    if (!s1.is_zero() && is_square_ratfunc(s1, mode)) return Decision::Yes;
    if (!s2.is_zero() && is_square_ratfunc(s2, mode)) return Decision::Yes;
    return Decision::No;
}

}  // namespace detail

// Decide whether a nonzero residue element is a square in its residue field.
// Ground, SimpleTranscendental, FunctionField and QuadraticExtension decide
// exactly (the last can return Unknown in one SymbolicClosed corner); Abstract
// fields return Yes only on a syntactic square certificate, else Unknown.
inline Decision is_square_in_residue_field(const ResidueElement& e) {
    if (e.is_zero()) throw ZeroElement();
    const ResidueField& rf = e.field;
    switch (rf.kind) {
        case ResidueFieldKind::Ground:
            return is_square_constant(e.value.constant_value(), rf.mode) ? Decision::Yes
                                                                         : Decision::No;
        case ResidueFieldKind::FunctionField:
        case ResidueFieldKind::SimpleTranscendental:
            // Reduced representatives are free of the main variable, so the
            // square test over the remaining variables is exact.
            return is_square_ratfunc(e.value, rf.mode) ? Decision::Yes : Decision::No;
        case ResidueFieldKind::QuadraticExtension: {
            // Write the prime as a*X^2 + b*X + c with X the main variable.
            std::vector<MPoly> pc = coeffs_in(rf.defining_prime, rf.main_var);
            const MPoly &a = pc[2], &b = pc[1], &c = pc[0];
            RatFunc d = RatFunc(b * b - 4 * a * c);
            // Clear X from the denominator by a conjugate of the denominator:
            // for D = d0 + d1*X the cofactor (a*d0 - b*d1) - a*d1*X makes the
            // product congruent to the X-free norm a*d0^2 - b*d0*d1 + c*d1^2.
            RatFunc value = e.value;
            auto [d0, d1] = detail::linear_parts(value.den(), rf.main_var);
            if (!d1.is_zero()) {
                MPoly x = MPoly::variable(value.vars(), value.vars()[rf.main_var]);
                MPoly cof = a * d0 - b * d1 - a * d1 * x;
                MPoly nrm = a * d0 * d0 - b * d0 * d1 + c * d1 * d1;
                // A zero conjugate norm of a nonzero denominator means the
                // quotient has zero divisors, so the place is not prime.
                if (nrm.is_zero()) throw InvalidPlace("defining prime is reducible (zero norm)");
                // The fraction (num*cof) / (den*cof) cannot go through the
                // field normalization, which would cancel the cofactor again;
                // reduce the numerator by the prime directly instead.  With
                // a^k * (num*cof) = q*prime + r, the class of num/den is
                // r / (a^k * nrm).
                PseudoRemainder pr =
                    pseudo_remainder(value.num() * cof, rf.defining_prime, rf.main_var);
                if (pr.rem.is_zero())
                    throw InvalidPlace("defining prime is reducible (zero divisor)");
                value = RatFunc(pr.rem, a.pow(pr.k) * nrm);
            }
            auto [n0, n1] = detail::linear_parts(value.num(), rf.main_var);
            auto [e0, e1] = detail::linear_parts(value.den(), rf.main_var);
            if (!e1.is_zero()) throw Error("conjugation failed to clear the main variable");
            // With theta the class of X and sqrt(d) = 2a*theta + b:
            // n0 + n1*theta = (n0 - n1*b/(2a)) + (n1/(2a)) * sqrt(d).
            RatFunc D(e0);
            RatFunc U = (RatFunc(n0) - RatFunc(n1 * b) / RatFunc(2 * a)) / D;
            RatFunc W = RatFunc(n1) / (RatFunc(2 * a) * D);
            return detail::quadratic_ext_square(U, W, d, rf.mode);
        }
        case ResidueFieldKind::Abstract:
        default:
            // A square in K maps to a square in the residue field; that is
            // the only certificate this kind can offer.
            return is_square_ratfunc(e.value, rf.mode) ? Decision::Yes : Decision::Unknown;
    }
}

// Hensel square test in the completion of K at v (residue characteristic 0):
// odd valuation is never a square; even valuation reduces to squareness of
// the unit part in the residue field, Unknown propagating.
inline Decision is_square_in_completion(const RatFunc& f, const DivisorialValuation& v) {
    if (f.is_zero()) throw ZeroInput();
    long long m = valuation_of(f, v);
    if (m % 2 != 0) return Decision::No;
    return is_square_in_residue_field(reduce_unit(strip_prime(f, v), v));
}

}  // namespace unram
