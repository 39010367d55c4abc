// Quaternion symbols and 2-torsion classes over a rational function field:
// residue maps at divisorial valuations (pinned values plus 500 randomized
// cross-checks against the unramified/ramified decomposition), rewrite-rule
// simplification with traces, evaluation at points, and zero-cycle pairing.

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "oracles.hpp"
#include "unram/unram.hpp"

using namespace unram;

namespace {
const std::vector<std::string> kVars{"x", "y", "z"};
RatFunc R(const std::string& s) { return parse_ratfunc(s, kVars); }
MPoly P(const std::string& s) { return parse_poly(s, kVars); }
DivisorialValuation V(const std::string& prime,
                      GroundMode mode = GroundMode::ExactRational) {
    return DivisorialValuation(P(prime), mode);
}
QuaternionSymbol S(const std::string& a, const std::string& b) { return {R(a), R(b)}; }

bool trace_uses(const RewriteTrace& t, RewriteRule r) {
    for (const RewriteStep& s : t) {
        if (s.rule == r) return true;
    }
    return false;
}
}  // namespace

TEST_CASE("residues of pinned symbols") {
    // v(a) = 1, v(b) = 0 at the prime x: the residue is the class of b.
    SquareClass r = residue(S("x", "y"), V("x"));
    CHECK(square_class_rep(r.element.value, GroundMode::ExactRational) == R("y"));
    CHECK(r.triviality == Decision::No);

    // Both entries are units at the conic prime, so the residue is trivial.
    SquareClass t = residue(S("x", "y"), V("x^2+y^2+z^2-2*x*y-2*y*z-2*x*z"));
    CHECK(t.triviality == Decision::Yes);

    // (x, x) at x carries the tame sign: class of -1.
    SquareClass m = residue(S("x", "x"), V("x"));
    CHECK(m.element.value == R("-1"));
    CHECK(m.triviality == Decision::No);

    // (x, y) at y: the residue is the class of the other coordinate.
    SquareClass s = residue(S("x", "y"), V("y"));
    CHECK(square_class_rep(s.element.value, GroundMode::ExactRational) == R("x"));

    CHECK_THROWS_AS(residue({R("0"), R("y")}, V("x")), ZeroInput);
}

TEST_CASE("residue agrees with the decomposition at 500 randomized symbols") {
    std::mt19937_64 rng(461501);
    const std::vector<std::string> primes{"x", "x-1", "x+2", "y", "y-3"};
    std::uniform_int_distribution<int> val_dist(-2, 2);
    int done = 0;
    while (done < 500) {
        const DivisorialValuation v = V(primes[done % primes.size()]);
        RatFunc pi(MPoly(v.prime));
        MPoly up = oracle::random_nonzero_poly(rng, kVars, 3, 2, 6);
        MPoly wp = oracle::random_nonzero_poly(rng, kVars, 3, 2, 6);
        RatFunc u(up), w(wp);
        if (valuation_of(u, v) != 0 || valuation_of(w, v) != 0) continue;
        long long m = val_dist(rng), n = val_dist(rng);
        QuaternionSymbol s{pi.pow(m) * u, pi.pow(n) * w};

        SquareClass direct = residue(s, v);
        Decomposition d = decompose_at(s, v);

        // Unramified component: every entry has valuation zero and the
        // residue of the component is trivial.
        for (const QuaternionSymbol& e : d.unramified.symbols) {
            CHECK(valuation_of(e.a, v) == 0);
            CHECK(valuation_of(e.b, v) == 0);
        }
        CHECK(residue_class(d.unramified, v).triviality == Decision::Yes);

        if (m == 0 && n == 0) {
            CHECK_FALSE(d.ramified.has_value());
            CHECK(direct.element.value == R("1"));
        } else {
            REQUIRE(d.ramified.has_value());
            CHECK(valuation_of(d.ramified->a, v) == 1);  // the -prime slot
            CHECK(valuation_of(d.ramified->b, v) == 0);
            // The ramified part carries the whole residue: the two unit
            // expressions are inverse up to the square w^(2m), so the
            // square classes agree.
            SquareClass via = residue(*d.ramified, v);
            CHECK(square_class_rep(direct.element.value * via.element.value,
                                   GroundMode::ExactRational) == R("1"));
            CHECK(direct.triviality == via.triviality);
        }
        ++done;
    }
}

TEST_CASE("simplification kill rules") {
    GroundMode ex = GroundMode::ExactRational;

    auto [z1, t1] = simplify(BrauerClass::of(S("x^2+y", "-x^2-y"), ex));
    CHECK(z1.is_zero());
    CHECK(trace_uses(t1, RewriteRule::MinusSelf));

    auto [z2, t2] = simplify(BrauerClass::of(S("x", "1-x"), ex));
    CHECK(z2.is_zero());
    CHECK(trace_uses(t2, RewriteRule::OneMinusSelf));

    auto [z3, t3] = simplify(BrauerClass::of(S("(x+y)^2", "z"), ex));
    CHECK(z3.is_zero());
    CHECK(trace_uses(t3, RewriteRule::SquareKill));

    // Symmetric duplicates cancel mod 2.
    auto [z4, t4] = simplify(BrauerClass{{S("x", "y"), S("y", "x")}, ex});
    CHECK(z4.is_zero());
    CHECK(trace_uses(t4, RewriteRule::Symmetry));
    CHECK(trace_uses(t4, RewriteRule::Bilinearity));

    // b = x0^2 - a*y0^2 dies against the norm witness (x0, y0) = (y, 1).
    auto [z5, t5] = simplify(BrauerClass::of(S("x", "y^2-x"), ex), {{R("y"), R("1")}});
    CHECK(z5.is_zero());
    CHECK(trace_uses(t5, RewriteRule::NormRelation));

    // Without the witness the same symbol survives.
    auto [s5, _] = simplify(BrauerClass::of(S("x", "y^2-x"), ex));
    CHECK_FALSE(s5.is_zero());
}

TEST_CASE("simplification canonicalizes and is idempotent") {
    GroundMode ex = GroundMode::ExactRational;
    BrauerClass c{{S("4*y", "x^3"), S("z", "x")}, ex};
    auto [once, trace] = simplify(c);
    REQUIRE(once.symbols.size() == 2);
    // Entries become square-class representatives and pairs are ordered
    // (ascending, with the later variable smaller: z < y < x).
    CHECK(once.symbols[0].to_string() == "(z, x)");
    CHECK(once.symbols[1].to_string() == "(y, x)");
    auto [twice, trace2] = simplify(once);
    CHECK(twice.symbols == once.symbols);
    CHECK(trace2.empty());

    std::mt19937_64 rng(88221);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<QuaternionSymbol> syms;
        for (int i = 0; i < 3; ++i) {
            syms.push_back({RatFunc(oracle::random_nonzero_poly(rng, kVars, 3, 2, 5)),
                            RatFunc(oracle::random_nonzero_poly(rng, kVars, 3, 2, 5))});
        }
        auto [first, ta] = simplify(BrauerClass{syms, ex});
        auto [second, tb] = simplify(first);
        CHECK(second.symbols == first.symbols);
        CHECK(tb.empty());
    }
}

TEST_CASE("constant symbols depend on the ground mode") {
    BrauerClass c = BrauerClass::of(S("-1", "-1"), GroundMode::ExactRational);
    auto [exact, te] = simplify(c);
    CHECK_FALSE(exact.is_zero());  // the Hamilton class survives over Q

    BrauerClass cc = BrauerClass::of(S("-1", "-1"), GroundMode::SymbolicClosed);
    auto [closed, tc] = simplify(cc);
    CHECK(closed.is_zero());  // every constant is a square over a closed field
    CHECK(trace_uses(tc, RewriteRule::ConstantSquare));
}

TEST_CASE("evaluation at rational points") {
    BrauerClass c = BrauerClass::of(S("x", "y"), GroundMode::ExactRational);
    std::map<std::string, Rat> sq{{"x", 4}, {"y", 9}, {"z", 1}};
    CHECK(evaluate_at_point(c, sq).is_zero());

    std::map<std::string, Rat> neg{{"x", -1}, {"y", -1}, {"z", 1}};
    BrauerClass at_neg = evaluate_at_point(c, neg);
    REQUIRE_FALSE(at_neg.is_zero());
    CHECK(at_neg.symbols[0].to_string() == "(-1, -1)");

    BrauerClass cc = BrauerClass::of(S("x", "y"), GroundMode::SymbolicClosed);
    CHECK(evaluate_at_point(cc, neg).is_zero());

    std::map<std::string, Rat> bad{{"x", 0}, {"y", 2}, {"z", 1}};
    CHECK_THROWS_AS(evaluate_at_point(c, bad), EntryVanishesAtPoint);
    std::map<std::string, Rat> missing{{"x", 1}};
    CHECK_THROWS_AS(evaluate_at_point(c, missing), EntryVanishesAtPoint);
}

TEST_CASE("pairing with zero-cycles uses weights mod 2") {
    BrauerClass c = BrauerClass::of(S("x", "y"), GroundMode::ExactRational);
    std::map<std::string, Rat> neg{{"x", -1}, {"y", -1}, {"z", 1}};
    std::map<std::string, Rat> pos{{"x", 1}, {"y", 1}, {"z", 1}};

    // Weight 2 contributes nothing; weight 1 contributes its evaluation.
    BrauerClass paired = pair_with_zero_cycle(c, {{2, pos}, {1, neg}});
    REQUIRE_FALSE(paired.is_zero());
    CHECK(paired.symbols[0].to_string() == "(-1, -1)");

    // Two odd points with equal evaluations cancel.
    CHECK(pair_with_zero_cycle(c, {{1, neg}, {1, neg}}).is_zero());
    CHECK(pair_with_zero_cycle(c, {{3, neg}, {1, neg}}).is_zero());

    // Definedness is enforced even at even-weight points.
    std::map<std::string, Rat> bad{{"x", 0}, {"y", 1}, {"z", 1}};
    CHECK_THROWS_AS(pair_with_zero_cycle(c, {{2, bad}}), EntryVanishesAtPoint);
}

TEST_CASE("decomposition of unit symbols has no ramified part") {
    Decomposition d = decompose_at(S("y", "y+1"), V("x"));
    CHECK_FALSE(d.ramified.has_value());
    CHECK(d.unramified.symbols == simplify(BrauerClass::of(S("y", "y+1"),
                                                           GroundMode::ExactRational))
                                      .first.symbols);
}

TEST_CASE("restriction multiplies residues by the ramification parity") {
    SquareClass rho = residue(S("x", "y"), V("x"));
    CHECK(restrict_residue(rho, 3).element.value == rho.element.value);
    CHECK(restrict_residue(rho, 2).triviality == Decision::Yes);
    CHECK(restrict_residue(rho, 2).element.value == R("1"));
}
