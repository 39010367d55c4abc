// Quadric and conic models over the valuation ring of a divisorial valuation:
// parity normalization into the canonical cases, recorded scaling traces and
// their replay, diagonal-move invariance of the case and the discriminant
// class, the certified case III identity, and the per-case verdicts.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "unram/unram.hpp"

using namespace unram;

namespace {
const std::vector<std::string> kVars{"x", "y", "z"};
RatFunc R(const std::string& s) { return parse_ratfunc(s, kVars); }
MPoly P(const std::string& s) { return parse_poly(s, kVars); }

DvrContext ctx_at(const std::string& prime, GroundMode mode = GroundMode::ExactRational) {
    return DvrContext(DivisorialValuation(P(prime), mode));
}

DiagonalForm form(const std::vector<std::string>& entries,
                  GroundMode mode = GroundMode::ExactRational) {
    std::vector<RatFunc> es;
    for (const std::string& e : entries) es.push_back(R(e));
    return DiagonalForm(std::move(es), mode);
}

// A random rational function that is a unit at the context's valuation.
RatFunc random_unit(std::mt19937_64& rng, const DvrContext& ctx) {
    for (;;) {
        RatFunc f(oracle::random_nonzero_poly(rng, kVars, 2, 2, 4));
        if (valuation_of(f, ctx.valuation) == 0) return f;
    }
}
}  // namespace

TEST_CASE("canonical quadric shapes classify into the three cases") {
    DvrContext ctx = ctx_at("x");

    QuadricModelCase one = normalize_quadric_model(form({"1", "-y", "-z", "y*z*(y+1)"}), ctx);
    CHECK(one.tag == QuadricCaseTag::I);
    CHECK(one.a == R("y"));
    CHECK(one.b == R("z"));
    REQUIRE(one.d.has_value());
    CHECK(*one.d == R("y+1"));
    CHECK(one.scaling_trace.empty());

    QuadricModelCase two = normalize_quadric_model(form({"1", "-y", "-z", "x*(z+2)"}), ctx);
    CHECK(two.tag == QuadricCaseTag::II);
    CHECK(two.a == R("y"));
    CHECK(two.b == R("z"));
    CHECK_FALSE(two.d.has_value());

    QuadricModelCase three =
        normalize_quadric_model(form({"1", "-y", "x*(z+1)", "-x*(z+1)*z"}), ctx);
    CHECK(three.tag == QuadricCaseTag::III);
    CHECK(three.a == R("y"));
    CHECK(three.b == R("z"));

    CHECK(std::string(to_string(QuadricCaseTag::I)) == "I");
    CHECK(std::string(to_string(QuadricCaseTag::II)) == "II");
    CHECK(std::string(to_string(QuadricCaseTag::III)) == "III");
    CHECK(ctx.uniformizer() == R("x"));
    CHECK_THROWS_AS(normalize_quadric_model(form({"1", "-y", "-z"}), ctx), DegenerateForm);
}

TEST_CASE("normalization divides out units and replays its trace") {
    DvrContext ctx = ctx_at("x");
    // Mixed powers, a negative valuation, and no unit leading entry.
    DiagonalForm messy = form({"x^3*y", "1/x^3", "4*z", "x^2*(z+1)"});
    QuadricModelCase mc = normalize_quadric_model(messy, ctx);

    // The trace maps the raw entries exactly onto the normalized ones.
    std::vector<RatFunc> replayed = replay_scaling_trace(messy.entries, mc.scaling_trace, ctx);
    REQUIRE(replayed.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(replayed[i] == mc.normalized_entries.entries[i]);

    // Normalized structure: leading entry 1, parities in {0,1}, units first.
    const std::vector<RatFunc>& es = mc.normalized_entries.entries;
    CHECK(es[0] == R("1"));
    bool seen_pi = false;
    std::size_t npi = 0;
    for (const RatFunc& e : es) {
        long long v = valuation_of(e, ctx.valuation);
        CHECK((v == 0 || v == 1));
        if (v != 0) {
            seen_pi = true;
            ++npi;
        } else {
            CHECK_FALSE(seen_pi);
        }
    }
    CHECK(npi <= 2);

    // Re-normalizing a normalized form is a no-op with an empty trace.
    QuadricModelCase again = normalize_quadric_model(mc.normalized_entries, ctx);
    CHECK(again.scaling_trace.empty());
    CHECK(again.tag == mc.tag);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(again.normalized_entries.entries[i] == mc.normalized_entries.entries[i]);

    // Every move renders as a human-readable line.
    for (const ScalingMove& mv : mc.scaling_trace) CHECK_FALSE(mv.to_string().empty());
}

TEST_CASE("diagonal moves never change the case or the discriminant class") {
    DvrContext ctx = ctx_at("x");
    RatFunc pi = ctx.uniformizer();
    const std::vector<DiagonalForm> bases = {
        form({"1", "-y", "-z", "y*z*(y+1)"}),      // case I
        form({"1", "-y", "-z", "x*(z+2)"}),        // case II
        form({"1", "-y", "x*(z+1)", "-x*(z+1)*z"})  // case III
    };
    std::vector<QuadricCaseTag> tags;
    std::vector<RatFunc> discs;
    for (const DiagonalForm& b : bases) {
        tags.push_back(normalize_quadric_model(b, ctx).tag);
        discs.push_back(discriminant_class(b).element.value);
    }
    REQUIRE(tags == std::vector<QuadricCaseTag>{QuadricCaseTag::I, QuadricCaseTag::II,
                                                QuadricCaseTag::III});

    std::mt19937_64 rng(474747);
    std::uniform_int_distribution<int> nmoves(1, 3), kindd(0, 2), k01(0, 1);
    for (int trial = 0; trial <= 200; ++trial) {
        std::size_t which = static_cast<std::size_t>(trial % 3);
        std::vector<RatFunc> entries = bases[which].entries;
        int n = nmoves(rng);
        for (int m = 0; m < n; ++m) {
            switch (kindd(rng)) {
                case 0: {  // multiply one entry by a square
                    std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
                    RatFunc s = random_unit(rng, ctx) * pi.pow(k01(rng));
                    std::size_t i = pick(rng);
                    entries[i] = entries[i] * s * s;
                    break;
                }
                case 1: {  // scale the whole form
                    RatFunc c = random_unit(rng, ctx) * pi.pow(k01(rng));
                    for (RatFunc& e : entries) e = e * c;
                    break;
                }
                default:
                    std::shuffle(entries.begin(), entries.end(), rng);
                    break;
            }
        }
        DiagonalForm moved(entries, GroundMode::ExactRational);
        QuadricModelCase mc = normalize_quadric_model(moved, ctx);
        REQUIRE(mc.tag == tags[which]);
        CHECK(discriminant_class(mc.normalized_entries).element.value == discs[which]);
        std::vector<RatFunc> replayed = replay_scaling_trace(moved.entries, mc.scaling_trace, ctx);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(replayed[i] == mc.normalized_entries.entries[i]);
    }
}

TEST_CASE("case I verdicts follow the reduced discriminant") {
    DvrContext ctx = ctx_at("x");

    // Nonsquare reduced discriminant: nothing beyond the base.
    ModelVerdict ns = quadric_model_verdict(
        normalize_quadric_model(form({"1", "-y", "-z", "y*z*(y+x)"}), ctx), ctx);
    CHECK(ns.surjective_from_base == Surjectivity::Yes);
    REQUIRE(ns.residue_data.size() == 1);
    CHECK(ns.residue_data[0].first == "special-fiber discriminant");
    CHECK(ns.residue_data[0].second.element.value == R("y"));
    CHECK(ns.residue_data[0].second.triviality == Decision::No);
    CHECK(ns.notes.find("nonsquare") != std::string::npos);

    // Square reduced discriminant: the reduced kernel symbol is recorded.
    ModelVerdict sq = quadric_model_verdict(
        normalize_quadric_model(form({"1", "-y", "-z", "y*z*(y^2+x)"}), ctx), ctx);
    CHECK(sq.surjective_from_base == Surjectivity::Yes);
    REQUIRE(sq.residue_data.size() == 3);
    CHECK(sq.residue_data[0].second.triviality == Decision::Yes);
    CHECK(sq.residue_data[1].first == "reduction of a");
    CHECK(sq.residue_data[1].second.element.value == R("y"));
    CHECK(sq.residue_data[2].first == "reduction of b");
    CHECK(sq.residue_data[2].second.element.value == R("z"));
    CHECK(sq.notes.find("spanned by the symbol") != std::string::npos);

    // At a place with only syntactic square certificates the question stays
    // open and the verdict says so.
    DvrContext abs = ctx_at("x^3+y+1");
    ModelVerdict und = quadric_model_verdict(
        normalize_quadric_model(form({"1", "-y", "-z", "y*z*y"}), abs), abs);
    CHECK(und.surjective_from_base == Surjectivity::Yes);
    CHECK(und.residue_data[0].second.triviality == Decision::Unknown);
    CHECK(und.notes.find("undecided") != std::string::npos);
}

TEST_CASE("case II always extends from the base") {
    DvrContext ctx = ctx_at("x");
    ModelVerdict v = quadric_model_verdict(
        normalize_quadric_model(form({"1", "-y", "-z", "x*(z+2)"}), ctx), ctx);
    CHECK(v.surjective_from_base == Surjectivity::Yes);
    CHECK(v.residue_data.empty());
    CHECK(v.notes.find("isomorphically") != std::string::npos);
}

TEST_CASE("case III verdicts depend on the reduced units") {
    DvrContext ctx = ctx_at("x");

    // Product of the reductions a nonsquare: the sub-cases cover everything.
    ModelVerdict gen = quadric_model_verdict(
        normalize_quadric_model(form({"1", "-y", "x*(z+1)", "-x*(z+1)*z"}), ctx), ctx);
    CHECK(gen.surjective_from_base == Surjectivity::Yes);
    REQUIRE(gen.residue_data.size() == 3);
    CHECK(gen.residue_data[2].first == "reduction of a*b");
    CHECK(gen.residue_data[2].second.triviality == Decision::No);
    CHECK(gen.notes.find("union") != std::string::npos);

    // a*b reduces to a square while a does not: one exceptional class that
    // only extends after modifying the model.
    ModelVerdict exc = quadric_model_verdict(
        normalize_quadric_model(form({"1", "-2", "x", "-2*x"}), ctx), ctx);
    CHECK(exc.surjective_from_base == Surjectivity::YesAfterResolution);
    REQUIRE(exc.exceptional_class.has_value());
    CHECK(exc.exceptional_class->a == R("2"));
    CHECK(exc.exceptional_class->b == R("x"));
    CHECK(exc.notes.find("does not itself extend") != std::string::npos);

    // The same form over a symbolically closed ground field: constants are
    // squares, so the exceptional class disappears.
    DvrContext closed = ctx_at("x", GroundMode::SymbolicClosed);
    ModelVerdict cl = quadric_model_verdict(
        normalize_quadric_model(form({"1", "-2", "x", "-2*x"}, GroundMode::SymbolicClosed),
                                closed),
        closed);
    CHECK(cl.surjective_from_base == Surjectivity::Yes);
    CHECK_FALSE(cl.exceptional_class.has_value());

    // Undecidable residue squareness yields an explicit Unknown, not a guess.
    DvrContext abs = ctx_at("x^3+y+1");
    MPoly pr = P("x^3+y+1");
    std::vector<RatFunc> es = {R("1"), R("-z"), RatFunc(pr), RatFunc(pr) * R("-z")};
    ModelVerdict und =
        quadric_model_verdict(normalize_quadric_model(DiagonalForm(es, abs.mode), abs), abs);
    CHECK(und.surjective_from_base == Surjectivity::Unknown);
    CHECK(und.notes.find("no verdict guessed") != std::string::npos);

    CHECK(std::string(to_string(Surjectivity::Yes)) == "yes");
    CHECK(std::string(to_string(Surjectivity::YesAfterResolution)) == "yes-after-resolution");
    CHECK(std::string(to_string(Surjectivity::Unknown)) == "unknown");
}

TEST_CASE("the case III identity is certified and tamper-evident") {
    DvrContext ctx = ctx_at("x");
    QuadricModelCase mc = normalize_quadric_model(form({"1", "-y", "x", "-x*z"}), ctx);
    REQUIRE(mc.tag == QuadricCaseTag::III);

    CertificateStep step = verify_case_III_identity(mc);
    CHECK(step.rule == "case-iii-identity");
    REQUIRE(step.checks.size() == 3);
    for (const CertificateCheck& c : step.checks) CHECK(c.pass());
    // Base variables collide with the quadric coordinates, so fresh prefixed
    // names are used in the recorded rewrite.
    CHECK(step.inputs[4].find("qx") != std::string::npos);

    // A two-variable base keeps the plain quadric coordinates.
    std::vector<std::string> uv{"u", "v"};
    DvrContext uvctx(DivisorialValuation(parse_poly("u", uv), GroundMode::ExactRational));
    std::vector<RatFunc> es = {parse_ratfunc("1", uv), parse_ratfunc("-v", uv),
                               parse_ratfunc("u", uv), parse_ratfunc("-u*(v+1)", uv)};
    QuadricModelCase uvmc =
        normalize_quadric_model(DiagonalForm(es, GroundMode::ExactRational), uvctx);
    CertificateStep uvstep = verify_case_III_identity(uvmc);
    CHECK(uvstep.inputs[4].find("(x, y)") != std::string::npos);
    for (const CertificateCheck& c : uvstep.checks) CHECK(c.pass());

    // Only case III carries the identity.
    QuadricModelCase one = normalize_quadric_model(form({"1", "-y", "-z", "y*z*(y+1)"}), ctx);
    CHECK_THROWS_AS(verify_case_III_identity(one), PatternMismatch);

    // Tampering with the extracted data breaks the certified identity.
    QuadricModelCase bad = mc;
    bad.b = bad.b + R("1");
    CHECK_THROWS_AS(verify_case_III_identity(bad), IdentityFails);
}

TEST_CASE("conic models normalize into two cases") {
    DvrContext ctx = ctx_at("x");

    ConicModelCase one = normalize_conic_model(form({"1", "-y", "-z"}), ctx);
    CHECK(one.tag == ConicCaseTag::I);
    CHECK(one.a == R("y"));
    REQUIRE(one.b.has_value());
    CHECK(*one.b == R("z"));

    ConicModelCase two = normalize_conic_model(form({"1", "-y", "x*(z+1)"}), ctx);
    CHECK(two.tag == ConicCaseTag::II);
    CHECK(two.a == R("y"));
    CHECK_FALSE(two.b.has_value());

    // A uniformizer in front of both unit entries: scaling moves it onto the
    // third entry, so the shape lands in case II.
    ConicModelCase swapped = normalize_conic_model(form({"x", "-x*y", "-z"}), ctx);
    CHECK(swapped.tag == ConicCaseTag::II);
    CHECK(swapped.a == R("y"));
    CHECK(swapped.normalized.entries[0] == R("1"));
    CHECK(valuation_of(swapped.normalized.entries[2], ctx.valuation) == 1);

    CHECK(std::string(to_string(ConicCaseTag::I)) == "I");
    CHECK(std::string(to_string(ConicCaseTag::II)) == "II");
    CHECK_THROWS_AS(normalize_conic_model(form({"1", "-y", "-z", "x"}), ctx), DegenerateForm);
}

TEST_CASE("conic verdicts always extend from the base") {
    DvrContext ctx = ctx_at("x");

    ModelVerdict both = conic_model_verdict(normalize_conic_model(form({"1", "-y", "-z"}), ctx),
                                            ctx);
    CHECK(both.surjective_from_base == Surjectivity::Yes);
    CHECK(both.residue_data.empty());

    ModelVerdict ns =
        conic_model_verdict(normalize_conic_model(form({"1", "-y", "x*(z+1)"}), ctx), ctx);
    CHECK(ns.surjective_from_base == Surjectivity::Yes);
    REQUIRE(ns.residue_data.size() == 1);
    CHECK(ns.residue_data[0].second.triviality == Decision::No);
    CHECK(ns.notes.find("either trivial or the class") != std::string::npos);

    ModelVerdict sq =
        conic_model_verdict(normalize_conic_model(form({"1", "-y^2", "x*(z+1)"}), ctx), ctx);
    CHECK(sq.surjective_from_base == Surjectivity::Yes);
    CHECK(sq.residue_data[0].second.triviality == Decision::Yes);
    CHECK(sq.notes.find("splits") != std::string::npos);

    DvrContext abs = ctx_at("x^3+y+1");
    ModelVerdict und =
        conic_model_verdict(normalize_conic_model(form({"1", "-z", "x^3+y+1"}), abs), abs);
    CHECK(und.surjective_from_base == Surjectivity::Yes);
    CHECK(und.residue_data[0].second.triviality == Decision::Unknown);
    CHECK(und.notes.find("undecided") != std::string::npos);

    // Across random conic inputs the verdict is always an extension verdict.
    std::mt19937_64 rng(121212);
    RatFunc pi = ctx.uniformizer();
    std::uniform_int_distribution<int> k01(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<RatFunc> es;
        for (int i = 0; i < 3; ++i) es.push_back(random_unit(rng, ctx) * pi.pow(k01(rng)));
        ModelVerdict v = conic_model_verdict(
            normalize_conic_model(DiagonalForm(es, GroundMode::ExactRational), ctx), ctx);
        CHECK(v.surjective_from_base == Surjectivity::Yes);
    }
}
