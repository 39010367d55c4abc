// Expression grammar and rational-function normal form: round trips, error
// positions, canonical numerator/denominator, square-class representatives.
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "oracles.hpp"
#include "unram/parse.hpp"
#include "unram/ratfunc.hpp"

using namespace unram;

namespace {
const std::vector<std::string> kVars{"x", "y", "z"};
RatFunc R(const std::string& s) { return parse_ratfunc(s, kVars); }
}  // namespace

TEST_CASE("grammar accepts the documented forms") {
    CHECK(R("x+y*z^2").to_string() == "y*z^2+x");
    CHECK(R("-x^2").to_string() == "-x^2");       // unary minus binds the power
    CHECK(R("(x+y)^2").to_string() == "x^2+2*x*y+y^2");
    CHECK(R("x/y").to_string() == "x/y");
    CHECK(R("(x+y)/(x-y)").to_string() == "(x+y)/(x-y)");
    CHECK(R("1/2").to_string() == "1/2");
    CHECK(R("x - -y").to_string() == "x+y");
    CHECK(R("x^0").to_string() == "1");
    CHECK(R("x^2/x").to_string() == "x");  // cancellation to a polynomial
}

TEST_CASE("grammar rejects malformed input with positions") {
    CHECK_THROWS_AS(R("2x"), SyntaxError);           // no implicit multiplication
    CHECK_THROWS_AS(R("x y"), SyntaxError);
    CHECK_THROWS_AS(R("X"), SyntaxError);            // uppercase is not an identifier
    CHECK_THROWS_AS(R("w"), UnknownVariable);        // not in the declared list
    CHECK_THROWS_AS(R("x^-1"), SyntaxError);         // exponents are nonnegative ints
    CHECK_THROWS_AS(R("x+"), SyntaxError);
    CHECK_THROWS_AS(R(""), SyntaxError);
    CHECK_THROWS_AS(R("(x"), SyntaxError);
    CHECK_THROWS_AS(R("x/(y-y)"), DivisionByZeroPolynomial);
    CHECK_THROWS_AS(parse_poly("x/y", kVars), NotAPolynomial);
    CHECK_NOTHROW(parse_poly("x^2/x", kVars));       // divides out exactly

    try {
        R("x+*y");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 2);
    }
}

TEST_CASE("rational functions are kept in lowest terms with a canonical denominator") {
    RatFunc f = R("(x^2-y^2)/(x+y)");
    CHECK(f.is_polynomial());
    CHECK(f.to_string() == "x-y");
    RatFunc g = R("x/y+y/x");
    CHECK(g.to_string() == "(x^2+y^2)/(x*y)");
    // Denominator sign is normalized.
    CHECK(R("x/(-y)").to_string() == "-x/y");
    CHECK(R("1/(2*y)").to_string() == "1/2/y");
    CHECK(R("0/x").is_zero());
}

TEST_CASE("printer and parser are mutually inverse on random rational functions") {
    std::mt19937_64 rng(314159);
    for (int i = 0; i < 200; ++i) {
        MPoly n = oracle::random_poly(rng, kVars, 4, 3, 7);
        MPoly d = oracle::random_nonzero_poly(rng, kVars, 3, 2, 7);
        RatFunc f = RatFunc(n) / RatFunc(d);
        RatFunc back = parse_ratfunc(f.to_string(), kVars);
        CAPTURE(f.to_string());
        CHECK(back == f);
    }
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(271828);
    for (int i = 0; i < 60; ++i) {
        RatFunc a(oracle::random_poly(rng, kVars, 3, 2, 5));
        RatFunc b(oracle::random_nonzero_poly(rng, kVars, 3, 2, 5));
        RatFunc c(oracle::random_nonzero_poly(rng, kVars, 2, 2, 5));
        CHECK(a / b * b == a);
        CHECK((a + b) / c == a / c + b / c);
        CHECK(a * b / (c * b) == a / c);
        CHECK(b.pow(-2) * b.pow(3) == b);
    }
}

TEST_CASE("square-class representative: exact mode") {
    auto rep = [](const std::string& s) {
        return square_class_rep(R(s), GroundMode::ExactRational).to_string();
    };
    CHECK(rep("x^2*y") == "y");
    CHECK(rep("4*x") == "x");
    CHECK(rep("-9") == "-1");
    CHECK(rep("18") == "2");
    CHECK(rep("x^2") == "1");
    CHECK(rep("x^3") == "x");
    CHECK(rep("1/x") == "x");                     // inverse lies in the same class
    CHECK(rep("x^2-2*x*y+y^2") == "1");           // (x-y)^2
    CHECK(rep("12*x^5*y^2/z") == "3*x*z");
}

TEST_CASE("square-class representative: closed mode collapses constants") {
    auto rep = [](const std::string& s) {
        return square_class_rep(R(s), GroundMode::SymbolicClosed).to_string();
    };
    CHECK(rep("4*x") == "x");
    CHECK(rep("3*x") == "x");
    CHECK(rep("-1") == "1");
    CHECK(rep("-x") == "x");
    CHECK(rep("2") == "1");
}

TEST_CASE("square-class representative properties on random functions") {
    std::mt19937_64 rng(161803);
    for (GroundMode mode : {GroundMode::ExactRational, GroundMode::SymbolicClosed}) {
        for (int i = 0; i < 60; ++i) {
            RatFunc f(oracle::random_nonzero_poly(rng, kVars, 3, 2, 6));
            RatFunc g(oracle::random_nonzero_poly(rng, kVars, 2, 2, 6));
            RatFunc r = square_class_rep(f, mode);
            // Idempotent, kills planted squares, and differs from f by a square.
            CHECK(square_class_rep(r, mode) == r);
            CHECK(square_class_rep(f * g * g, mode) == r);
            CHECK(is_square_ratfunc(f / r, mode));
        }
    }
}

TEST_CASE("squares are recognized and rooted") {
    CHECK(is_square_ratfunc(R("x^2/y^4"), GroundMode::ExactRational));
    CHECK_FALSE(is_square_ratfunc(R("2*x^2"), GroundMode::ExactRational));
    CHECK(is_square_ratfunc(R("2*x^2"), GroundMode::SymbolicClosed));
    CHECK_FALSE(is_square_ratfunc(R("x*y"), GroundMode::SymbolicClosed));
    CHECK(ratfunc_sqrt(R("x^2/y^2")).value() == R("x/y"));
    CHECK_FALSE(ratfunc_sqrt(R("x")).has_value());
}

TEST_CASE("canonical comparison orders rational functions totally") {
    std::mt19937_64 rng(555);
    std::vector<RatFunc> sample;
    for (int i = 0; i < 12; ++i) {
        sample.push_back(RatFunc(oracle::random_poly(rng, kVars, 3, 2, 4)) /
                         RatFunc(oracle::random_nonzero_poly(rng, kVars, 2, 2, 4)));
    }
    for (const RatFunc& a : sample)
        for (const RatFunc& b : sample) {
            CHECK(ratfunc_cmp(a, b) == -ratfunc_cmp(b, a));
            if (ratfunc_cmp(a, b) == 0) CHECK(a == b);
        }
}
