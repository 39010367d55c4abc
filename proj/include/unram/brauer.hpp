#pragma once

// Quaternion symbols (a,b) and 2-torsion Brauer classes over K = ground(vars):
// rewrite-rule simplification with replayable traces, the residue map at a
// divisorial valuation, restriction, evaluation at rational points, and the
// decomposition of a symbol into an unramified part plus (-prime, t).
//
// Class equality is syntactic-after-simplify.  Zero-ness is only claimed when
// a rewrite trace reaches the empty class; nonzero-ness only when a residue
// certifies it.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unram/errors.hpp"
#include "unram/mpoly.hpp"
#include "unram/rat.hpp"
#include "unram/ratfunc.hpp"
#include "unram/valuation.hpp"

namespace unram {

struct QuaternionSymbol {
    RatFunc a, b;

    std::string to_string() const { return "(" + a.to_string() + ", " + b.to_string() + ")"; }

    friend bool operator==(const QuaternionSymbol& s, const QuaternionSymbol& t) {
        return s.a == t.a && s.b == t.b;
    }
};

inline int symbol_cmp(const QuaternionSymbol& s, const QuaternionSymbol& t) {
    if (int c = ratfunc_cmp(s.a, t.a); c != 0) return c;
    return ratfunc_cmp(s.b, t.b);
}

struct BrauerClass {
    std::vector<QuaternionSymbol> symbols;  // multiset mod 2; canonical after simplify
    GroundMode mode = GroundMode::ExactRational;

    static BrauerClass zero(GroundMode m) { return {{}, m}; }

    static BrauerClass of(QuaternionSymbol s, GroundMode m) { return {{std::move(s)}, m}; }

    bool is_zero() const { return symbols.empty(); }

    std::string to_string() const {
        if (symbols.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (i) out += " + ";
            out += symbols[i].to_string();
        }
        return out;
    }
};

enum class RewriteRule {
    Bilinearity,
    Symmetry,
    MinusSelf,
    OneMinusSelf,
    SquareKill,
    NormRelation,
    ConstantSquare
};

inline const char* to_string(RewriteRule r) {
    switch (r) {
        case RewriteRule::Bilinearity: return "Bilinearity";
        case RewriteRule::Symmetry: return "Symmetry";
        case RewriteRule::MinusSelf: return "MinusSelf";
        case RewriteRule::OneMinusSelf: return "OneMinusSelf";
        case RewriteRule::SquareKill: return "SquareKill";
        case RewriteRule::NormRelation: return "NormRelation";
        default: return "ConstantSquare";
    }
}

struct RewriteStep {
    RewriteRule rule;
    std::string before;
    std::string after;
    std::string note;
};

using RewriteTrace = std::vector<RewriteStep>;

// Explicit witness for the norm relation (a, x0^2 - a*y0^2) = 0.
struct NormWitness {
    RatFunc x0, y0;
};

// The residue of a class at a valuation: an element of kappa*/kappa*^2 with
// its (possibly undecided) triviality.
struct SquareClass {
    ResidueElement element;
    Decision triviality;

    std::string to_string() const { return element.to_string(); }
};

inline SquareClass make_square_class(ResidueElement e) {
    Decision d = is_square_in_residue_field(e);
    return {std::move(e), d};
}

inline SquareClass trivial_square_class(const ResidueField& rf) {
    const auto& vars = rf.defining_prime.vars();
    return {{rf, RatFunc::constant(vars, 1)}, Decision::Yes};
}

namespace detail {

inline void record(RewriteTrace& trace, RewriteRule rule, const std::string& before,
                   const std::string& after, const std::string& note) {
    trace.push_back({rule, before, after, note});
}

// Canonicalize one entry to its square-class representative, recording the
// exact-square strip (SquareKill) and, in SymbolicClosed, the constant drop
// (ConstantSquare) separately.
inline RatFunc canonical_entry(const RatFunc& e, GroundMode mode, const std::string& sym,
                               RewriteTrace& trace) {
    RatFunc exact = square_class_rep(e, GroundMode::ExactRational);
    if (exact != e) {
        record(trace, RewriteRule::SquareKill, e.to_string(), exact.to_string(),
               "entry in " + sym + " replaced by its squarefree-part representative");
    }
    if (mode == GroundMode::SymbolicClosed) {
        RatFunc closed = square_class_rep(e, GroundMode::SymbolicClosed);
        if (closed != exact) {
            record(trace, RewriteRule::ConstantSquare, exact.to_string(), closed.to_string(),
                   "constant factor is a square over the closed ground field");
        }
        return closed;
    }
    return exact;
}

}  // namespace detail

// Simplify to the canonical fixpoint: entries become square-class
// representatives, symbols killed by (a,-a), (a,1-a), unit entries, or a
// supplied norm witness are removed, pairs are ordered by Symmetry, and
// duplicates cancel mod 2.  Every step is recorded.
inline std::pair<BrauerClass, RewriteTrace> simplify(const BrauerClass& c,
                                                     const std::vector<NormWitness>& witnesses = {}) {
    RewriteTrace trace;
    std::vector<QuaternionSymbol> kept;
    for (const QuaternionSymbol& s0 : c.symbols) {
        QuaternionSymbol s = s0;
        const std::string name = s.to_string();
        RatFunc one = RatFunc::constant(s.a.vars(), 1);

        // Exact kill patterns on the incoming entries.
        if (s.b == one - s.a || s.a == one - s.b) {
            detail::record(trace, RewriteRule::OneMinusSelf, name, "0",
                           "(a, 1-a) = 0");
            continue;
        }
        if (s.b == -s.a) {
            detail::record(trace, RewriteRule::MinusSelf, name, "0", "(a, -a) = 0");
            continue;
        }

        s.a = detail::canonical_entry(s.a, c.mode, name, trace);
        s.b = detail::canonical_entry(s.b, c.mode, name, trace);

        // Re-check the kill patterns on canonical representatives.
        if (s.b == one - s.a || s.a == one - s.b) {
            detail::record(trace, RewriteRule::OneMinusSelf, s.to_string(), "0",
                           "(a, 1-a) = 0 on canonical representatives");
            continue;
        }
        if (s.b == square_class_rep(-s.a, c.mode) || s.a == square_class_rep(-s.b, c.mode)) {
            detail::record(trace, RewriteRule::MinusSelf, s.to_string(), "0",
                           "(a, -a) = 0 modulo squares");
            continue;
        }
        bool killed = false;
        for (const NormWitness& w : witnesses) {
            if (s.b == w.x0 * w.x0 - s.a * w.y0 * w.y0) {
                detail::record(trace, RewriteRule::NormRelation, s.to_string(), "0",
                               "b = x0^2 - a*y0^2 with witness (" + w.x0.to_string() + ", " +
                                   w.y0.to_string() + ")");
                killed = true;
                break;
            }
            if (s.a == w.x0 * w.x0 - s.b * w.y0 * w.y0) {
                detail::record(trace, RewriteRule::NormRelation, s.to_string(), "0",
                               "a = x0^2 - b*y0^2 with witness (" + w.x0.to_string() + ", " +
                                   w.y0.to_string() + ")");
                killed = true;
                break;
            }
        }
        if (killed) continue;
        if (s.a == one || s.b == one) {
            detail::record(trace, RewriteRule::SquareKill, s.to_string(), "0",
                           "an entry is a square, the symbol splits");
            continue;
        }
        if (ratfunc_cmp(s.a, s.b) > 0) {
            std::string before = s.to_string();
            std::swap(s.a, s.b);
            detail::record(trace, RewriteRule::Symmetry, before, s.to_string(),
                           "entries ordered canonically");
        }
        kept.push_back(std::move(s));
    }
    std::sort(kept.begin(), kept.end(),
              [](const QuaternionSymbol& s, const QuaternionSymbol& t) {
                  return symbol_cmp(s, t) < 0;
              });
    std::vector<QuaternionSymbol> out;
    for (std::size_t i = 0; i < kept.size();) {
        if (i + 1 < kept.size() && kept[i] == kept[i + 1]) {
            detail::record(trace, RewriteRule::Bilinearity, kept[i].to_string() + " + " +
                               kept[i].to_string(),
                           "(" + kept[i].a.to_string() + ", " + (kept[i].b * kept[i].b).to_string() +
                               ")",
                           "equal symbols merge by bilinearity");
            detail::record(trace, RewriteRule::SquareKill,
                           "(" + kept[i].a.to_string() + ", " + (kept[i].b * kept[i].b).to_string() +
                               ")",
                           "0", "the merged entry is a square");
            i += 2;
            continue;
        }
        out.push_back(kept[i]);
        ++i;
    }
    return {BrauerClass{std::move(out), c.mode}, std::move(trace)};
}

// Residue map at a divisorial valuation:
// residue((a,b)) = class of (-1)^(v(a)v(b)) * a^(v(b)) / b^(v(a)).
inline SquareClass residue(const QuaternionSymbol& s, const DivisorialValuation& v) {
    if (s.a.is_zero() || s.b.is_zero()) throw ZeroInput();
    long long m = valuation_of(s.a, v);
    long long n = valuation_of(s.b, v);
    RatFunc u = s.a.pow(n) / s.b.pow(m);
    if (m % 2 != 0 && n % 2 != 0) u = -u;
    return make_square_class(reduce_unit(u, v));
}

// Additivity: the residue of a sum of symbols is the product of the
// per-symbol unit expressions, reduced once.
inline SquareClass residue_class(const BrauerClass& c, const DivisorialValuation& v) {
    if (c.symbols.empty()) return trivial_square_class(residue_field_of(v));
    RatFunc u = RatFunc::constant(c.symbols[0].a.vars(), 1);
    for (const QuaternionSymbol& s : c.symbols) {
        long long m = valuation_of(s.a, v);
        long long n = valuation_of(s.b, v);
        RatFunc part = s.a.pow(n) / s.b.pow(m);
        if (m % 2 != 0 && n % 2 != 0) part = -part;
        u *= part;
    }
    return make_square_class(reduce_unit(u, v));
}

// Restriction multiplies residues by the ramification index e; on 2-torsion
// values only the parity of e matters.
inline SquareClass restrict_residue(const SquareClass& rho, long long e) {
    if (e % 2 == 0) return trivial_square_class(rho.element.field);
    return rho;
}

// Evaluate a class at a rational point (all variables assigned).  Every
// entry must specialize to a nonzero constant.  The result is a class with
// constant entries over the same variable list, simplified; in SymbolicClosed
// it is always the zero class.
inline BrauerClass evaluate_at_point(const BrauerClass& c, const std::map<std::string, Rat>& point) {
    std::vector<QuaternionSymbol> out;
    for (const QuaternionSymbol& s : c.symbols) {
        const auto& vars = s.a.vars();
        std::vector<Rat> coords(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto it = point.find(vars[i]);
            if (it == point.end()) throw EntryVanishesAtPoint("missing coordinate " + vars[i]);
            coords[i] = it->second;
        }
        Rat an = s.a.num().eval(coords), ad = s.a.den().eval(coords);
        Rat bn = s.b.num().eval(coords), bd = s.b.den().eval(coords);
        if (an == 0 || ad == 0) throw EntryVanishesAtPoint(s.a.to_string());
        if (bn == 0 || bd == 0) throw EntryVanishesAtPoint(s.b.to_string());
        out.push_back({RatFunc::constant(vars, an / ad), RatFunc::constant(vars, bn / bd)});
    }
    return simplify(BrauerClass{std::move(out), c.mode}).first;
}

// Pairing with a zero-cycle: evaluate at each point, weight mod 2.
inline BrauerClass pair_with_zero_cycle(
    const BrauerClass& c,
    const std::vector<std::pair<long long, std::map<std::string, Rat>>>& cycle) {
    std::vector<QuaternionSymbol> acc;
    for (const auto& [coeff, point] : cycle) {
        BrauerClass at = evaluate_at_point(c, point);  // also enforces definedness
        if (coeff % 2 == 0) continue;
        for (const QuaternionSymbol& s : at.symbols) acc.push_back(s);
    }
    return simplify(BrauerClass{std::move(acc), c.mode}).first;
}

struct Decomposition {
    BrauerClass unramified;                   // all entries have valuation 0 at v
    std::optional<QuaternionSymbol> ramified;  // (-prime, t) with v(t) = 0
    RewriteTrace trace;
};

// Split a symbol at v:  with a = prime^m u and b = prime^n w,
//   (a, b) = ((-1)^m u, (-1)^n w) + (-prime, t),  t = (-1)^(mn) u^n w^m.
// Both components' entries are units at v except the ramified -prime slot.
inline Decomposition decompose_at(const QuaternionSymbol& s, const DivisorialValuation& v) {
    if (s.a.is_zero() || s.b.is_zero()) throw ZeroInput();
    Decomposition out;
    RewriteTrace& trace = out.trace;
    long long m = valuation_of(s.a, v);
    long long n = valuation_of(s.b, v);
    if (m == 0 && n == 0) {
        out.unramified = simplify(BrauerClass::of(s, v.mode)).first;
        return out;
    }
    const auto& vars = s.a.vars();
    RatFunc pi(MPoly(v.prime));
    RatFunc u = s.a / pi.pow(m);
    RatFunc w = s.b / pi.pow(n);
    RatFunc mone = RatFunc::constant(vars, -1);
    RatFunc uu = m % 2 == 0 ? u : mone * u;
    RatFunc ww = n % 2 == 0 ? w : mone * w;
    RatFunc t = u.pow(n) * w.pow(m);
    if (m % 2 != 0 && n % 2 != 0) t = mone * t;
    detail::record(trace, RewriteRule::Bilinearity, s.to_string(),
                   "((-prime)^" + std::to_string(m) + " * " + uu.to_string() + ", (-prime)^" +
                       std::to_string(n) + " * " + ww.to_string() + ")",
                   "entries factored along -prime = -(" + v.prime.to_string() + ")");
    detail::record(trace, RewriteRule::Bilinearity,
                   "((-prime)^" + std::to_string(m) + " u', (-prime)^" + std::to_string(n) + " w')",
                   "(u', w') + " + std::to_string(m) + "(-prime, w') + " + std::to_string(n) +
                       "(u', -prime) + " + std::to_string(m * n) + "(-prime, -prime)",
                   "bilinear expansion");
    detail::record(trace, RewriteRule::MinusSelf, "(-prime, -prime)", "(-prime, -1)",
                   "(-prime, prime) = 0 rewrites the self pair");
    detail::record(trace, RewriteRule::SquareKill,
                   "(-prime, w'^" + std::to_string(m) + " u'^" + std::to_string(n) + " (-1)^" +
                       std::to_string(m * n) + ")",
                   "(-prime, " + t.to_string() + ")", "even powers collapse");
    out.unramified = simplify(BrauerClass{{{uu, ww}}, v.mode}).first;
    out.ramified = QuaternionSymbol{mone * pi, t};
    return out;
}

}  // namespace unram
