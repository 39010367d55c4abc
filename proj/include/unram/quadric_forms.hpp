#pragma once

// Diagonal quadratic forms of rank 3 and 4, their discriminants, and the
// kernel classification of Br(K) -> Br(X) for the associated smooth quadric
// surface: injective when the discriminant is a nonsquare, otherwise the
// kernel is (at most) the order-two class of a quaternion symbol read off the
// normalized form.  Nonzero-ness of that symbol is only ever asserted
// through an explicit residue witness.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unram/brauer.hpp"
#include "unram/certificate.hpp"
#include "unram/errors.hpp"
#include "unram/ratfunc.hpp"
#include "unram/valuation.hpp"

namespace unram {

struct DiagonalForm {
    std::vector<RatFunc> entries;
    GroundMode mode = GroundMode::ExactRational;

    DiagonalForm() = default;

    DiagonalForm(std::vector<RatFunc> es, GroundMode m) : entries(std::move(es)), mode(m) {
        if (entries.size() != 3 && entries.size() != 4)
            throw DegenerateForm("a diagonal form has rank 3 or 4");
        for (const RatFunc& e : entries)
            if (e.is_zero()) throw DegenerateForm("zero diagonal entry");
    }

    std::size_t rank() const { return entries.size(); }

    std::string to_string() const {
        std::string out = "<";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) out += ", ";
            out += entries[i].to_string();
        }
        return out + ">";
    }
};

enum class KernelTag { Injective, OrderTwoCandidate };

struct KernelVerdict {
    KernelTag tag = KernelTag::Injective;
    std::optional<QuaternionSymbol> generator;
    std::optional<std::pair<DivisorialValuation, SquareClass>> nonzero_witness;
    std::string note;
};

// Discriminant of a rank-4 form as a square class of the ground function
// field: the product of the entries reduced to its squarefree representative.
inline SquareClass discriminant_class(const DiagonalForm& q) {
    if (q.rank() != 4) throw DegenerateForm("discriminant_class expects rank 4");
    RatFunc prod = q.entries[0] * q.entries[1] * q.entries[2] * q.entries[3];
    ResidueField K = function_field(q.entries[0].vars(), q.mode);
    return make_square_class({K, square_class_rep(prod, q.mode)});
}

namespace detail {

// Nonconstant squarefree factors of numerator and denominator, in a
// deterministic order, for residue-witness searches.
inline std::vector<MPoly> prime_candidates(const RatFunc& f) {
    std::vector<MPoly> out;
    for (const MPoly* part : {&f.num(), &f.den()}) {
        if (part->is_constant()) continue;
        for (const auto& [fac, mult] : squarefree_decomposition(*part).factors) {
            if (fac.is_constant()) continue;
            bool seen = false;
            for (const MPoly& g : out) seen = seen || poly_cmp(g, fac) == 0;
            if (!seen) out.push_back(fac);
        }
    }
    return out;
}

}  // namespace detail

// Kernel of Br(K) -> Br(X) for the quadric X: q = 0.  The form is scaled by
// its first entry into the shape <1, -a, -b, abd>; a nonsquare discriminant
// certifies injectivity, a square discriminant yields the candidate
// generator (a, b), backed by a residue witness whenever one exists among
// the squarefree factors of the entries.
inline KernelVerdict brauer_kernel(const DiagonalForm& q) {
    if (q.rank() != 4) throw DegenerateForm("brauer_kernel expects rank 4");
    KernelVerdict out;
    RatFunc a = -(q.entries[1] / q.entries[0]);
    RatFunc b = -(q.entries[2] / q.entries[0]);
    SquareClass disc = discriminant_class(q);
    if (disc.triviality == Decision::No) {
        out.tag = KernelTag::Injective;
        out.note = "nonsquare discriminant: the base Brauer group injects into the quadric's";
        return out;
    }
    out.tag = KernelTag::OrderTwoCandidate;
    out.generator = QuaternionSymbol{a, b};
    if (disc.triviality == Decision::Unknown) {
        out.note = "discriminant squareness undecided; the generator is a candidate only";
        return out;
    }
    out.note = "square discriminant: the kernel is spanned by the recorded symbol";
    if (simplify(BrauerClass::of(*out.generator, q.mode)).first.is_zero()) {
        out.note += "; the symbol simplifies to zero, so the kernel is trivial in effect";
        return out;
    }
    std::vector<MPoly> primes = detail::prime_candidates(a);
    for (const MPoly& p : detail::prime_candidates(b)) {
        bool seen = false;
        for (const MPoly& g : primes) seen = seen || poly_cmp(g, p) == 0;
        if (!seen) primes.push_back(p);
    }
    for (const MPoly& p : primes) {
        DivisorialValuation v(p, q.mode);
        std::optional<SquareClass> r;
        try {
            r = residue(*out.generator, v);
        } catch (const InvalidPlace&) {
            // Squarefree factors need not be irreducible; a candidate with
            // zero divisors in its quotient defines no residue and is skipped.
            continue;
        }
        if (r->triviality == Decision::No) {
            out.nonzero_witness = {v, *r};
            out.note += "; a nontrivial residue certifies the generator is nonzero";
            break;
        }
    }
    return out;
}

// Certify that an isotropic diagonal relation exhibits the norm form of the
// target symbol, and hence splits it over the field where the relation has a
// nontrivial zero.  The match is up to entrywise squares, an overall
// scaling, Symmetry, and (in SymbolicClosed) constant factors.
inline CertificateStep conclude_split_from_isotropy(const DiagonalForm& relation,
                                                    const QuaternionSymbol& target) {
    if (relation.rank() != 4) throw DegenerateForm("isotropy relation must have rank 4");
    std::string diag;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) diag += ",";
        diag += relation.entries[i].to_string();
    }
    std::string vars_csv;
    for (std::size_t i = 0; i < relation.entries[0].vars().size(); ++i) {
        if (i) vars_csv += ",";
        vars_csv += relation.entries[0].vars()[i];
    }
    std::string identity = std::string("norm_form_match|") + to_string(relation.mode) + "|" +
                           vars_csv + "|" + diag + "|" + target.to_string();
    CertificateCheck check = make_check(identity);
    if (check.outcome != Decision::Yes)
        throw PatternMismatch("the relation " + relation.to_string() +
                              " does not witness the norm form of " + target.to_string());
    CertificateStep step;
    step.rule = "split-by-isotropy";
    step.inputs = {relation.to_string(), target.to_string(),
                   "conclusion: the symbol splits over any field where the relation is isotropic"};
    step.checks = {check};
    step.axioms = {"NormFormIsotropy"};
    return step;
}

}  // namespace unram
