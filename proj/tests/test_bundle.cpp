// Quadric surface bundles over the plane: the diagonal construction, the
// bidegree-(2,2) associated form, the octic discriminant determinant and its
// product identity, the coordinate-line tangency report, and the rational
// section probe for degenerate diagonals.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "unram/unram.hpp"

using namespace unram;

namespace {
const std::vector<std::string> kVars{"x", "y", "z"};
MPoly P(const std::string& s) { return parse_poly(s, kVars); }

// A random nonzero homogeneous quadric in the base coordinates.
MPoly random_quadric(std::mt19937_64& rng, const std::vector<std::string>& vars) {
    static const std::vector<std::vector<std::uint32_t>> monos = {
        {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    std::uniform_int_distribution<long long> coeff(-5, 5);
    for (;;) {
        MPoly q = MPoly::zero(vars);
        for (const auto& m : monos) q += MPoly::term(vars, m, Rat(coeff(rng)));
        if (!q.is_zero()) return q;
    }
}
}  // namespace

TEST_CASE("the diagonal bundle has the expected matrix and coordinates") {
    MPoly F = hpt_conic(kVars);
    QuadricBundle b = build_bundle(F);
    CHECK(b.base_coords == kVars);
    CHECK(b.fiber_coords == std::vector<std::string>{"u", "v", "w", "t"});
    REQUIRE(b.matrix.size() == 4);
    CHECK(b.matrix[0][0] == P("y*z"));
    CHECK(b.matrix[1][1] == P("x*z"));
    CHECK(b.matrix[2][2] == P("x*y"));
    CHECK(b.matrix[3][3] == F);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) CHECK(b.matrix[i][j].is_zero());

    // Base names colliding with the fiber names get prefixed replacements.
    std::vector<std::string> uvw{"u", "v", "w"};
    QuadricBundle clash = build_bundle(hpt_conic(uvw));
    CHECK(clash.fiber_coords == std::vector<std::string>{"fu", "fv", "fw", "ft"});
    CHECK(clash.base_coords == uvw);

    CHECK_THROWS_AS(build_bundle(P("x^3")), NotHomogeneousDegree2);
    CHECK_THROWS_AS(build_bundle(P("x^2+y")), NotHomogeneousDegree2);
    CHECK_THROWS_AS(build_bundle(P("0")), NotHomogeneousDegree2);
    CHECK_THROWS_AS(build_bundle(parse_poly("x^2", {"x", "y"})), NotHomogeneousDegree2);
}

TEST_CASE("the associated form is the diagonal quadric in the fiber coordinates") {
    MPoly F = hpt_conic(kVars);
    QuadricBundle b = build_bundle(F);
    MPoly q = b.associated_form();
    std::vector<std::string> ext{"x", "y", "z", "u", "v", "w", "t"};
    MPoly expected = parse_poly("y*z*u^2+x*z*v^2+x*y*w^2", ext) +
                     parse_poly(F.to_string(), ext) * parse_poly("t^2", ext);
    CHECK(q == expected);
    CHECK(q.to_string() ==
          "x^2*t^2+x*y*w^2-2*x*y*t^2+x*z*v^2-2*x*z*t^2+y^2*t^2+y*z*u^2-2*y*z*t^2+z^2*t^2");

    // Bidegree (2,2): homogeneous of degree 2 in the base block and in the
    // fiber block separately.
    CHECK(is_homogeneous(q, 4));
    for (const auto& [mono, coeff] : q.terms()) {
        std::uint32_t base_deg = mono[0] + mono[1] + mono[2];
        std::uint32_t fiber_deg = mono[3] + mono[4] + mono[5] + mono[6];
        CHECK(base_deg == 2);
        CHECK(fiber_deg == 2);
    }
}

TEST_CASE("the octic discriminant is the determinant and factors through F") {
    MPoly F = hpt_conic(kVars);
    QuadricBundle b = build_bundle(F);
    MPoly disc = discriminant_octic(b);
    CHECK(disc == P("x^2*y^2*z^2") * F);
    CHECK(is_homogeneous(disc, 8));
    CHECK(disc == oracle::naive_determinant(b.matrix));

    // The product identity holds for every homogeneous quadric input.
    std::mt19937_64 rng(880044);
    for (int trial = 0; trial < 25; ++trial) {
        MPoly G = random_quadric(rng, kVars);
        QuadricBundle rb = build_bundle(G);
        CHECK(discriminant_octic(rb) == P("x^2*y^2*z^2") * G);
    }

    // A non-diagonal symmetric matrix agrees with the schoolbook determinant.
    QuadricBundle mixed = build_bundle(F);
    mixed.matrix[0][1] = mixed.matrix[1][0] = P("x*y");
    mixed.matrix[2][3] = mixed.matrix[3][2] = P("z^2");
    CHECK(discriminant_octic(mixed) == oracle::naive_determinant(mixed.matrix));
}

TEST_CASE("the distinguished conic is tangent to all three coordinate lines") {
    MPoly F = hpt_conic(kVars);
    CHECK(F.to_string() == "x^2-2*x*y-2*x*z+y^2-2*y*z+z^2");

    TangencyReport report = tangency_report(F);
    CHECK(report.pass);
    REQUIRE(report.checks.size() == 6);
    for (const TangencyCheck& c : report.checks) CHECK(c.ok);

    // The three restrictions are the squared coordinate differences.
    CHECK(report.checks[0].value == "y^2-2*y*z+z^2");
    CHECK(report.checks[1].value == "x^2-2*x*z+z^2");
    CHECK(report.checks[2].value == "x^2-2*x*y+y^2");
    CHECK(F.substitute_constants({{"x", Rat(0)}}) == P("(y-z)^2"));
    CHECK(F.substitute_constants({{"y", Rat(0)}}) == P("(x-z)^2"));
    CHECK(F.substitute_constants({{"z", Rat(0)}}) == P("(x-y)^2"));

    // The coordinate points all evaluate to 1.
    for (std::size_t i = 3; i < 6; ++i) CHECK(report.checks[i].value == "1");

    // The round conic fails: its line restrictions are not perfect squares.
    TangencyReport round = tangency_report(P("x^2+y^2+z^2"));
    CHECK_FALSE(round.pass);
    CHECK_FALSE(round.checks[0].ok);
    CHECK(round.checks[0].value == "y^2+z^2");
    // ... although its coordinate values are fine.
    CHECK(round.checks[3].ok);

    // A conic through a coordinate point fails the value check.
    TangencyReport through = tangency_report(P("x*y+y*z+x*z"));
    CHECK_FALSE(through.pass);
    CHECK_FALSE(through.checks[3].ok);

    CHECK_THROWS_AS(tangency_report(P("x^3")), NotHomogeneousDegree2);
    CHECK_THROWS_AS(tangency_report(P("0")), NotHomogeneousDegree2);
}

TEST_CASE("a vanishing diagonal entry yields a rational section") {
    MPoly F = hpt_conic(kVars);
    QuadricBundle b = build_bundle(F);
    CHECK_FALSE(rational_section_probe(b).has_value());

    QuadricBundle degenerate = build_bundle(F);
    degenerate.matrix[3][3] = MPoly::zero(kVars);
    auto w = rational_section_probe(degenerate);
    REQUIRE(w.has_value());
    CHECK(w->index == 3);
    CHECK(w->to_string() == "(0,0,0,1)");

    // Off-diagonal entries do not obstruct the coordinate-point section.
    QuadricBundle mixed = build_bundle(F);
    mixed.matrix[0][0] = MPoly::zero(kVars);
    mixed.matrix[0][1] = mixed.matrix[1][0] = P("x*y");
    auto w0 = rational_section_probe(mixed);
    REQUIRE(w0.has_value());
    CHECK(w0->index == 0);
    CHECK(w0->to_string() == "(1,0,0,0)");
}
