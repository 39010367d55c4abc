#pragma once

// Machine verification that the symbol (x, y) pulled back to the function
// field of the diagonal quadric bundle diag(yz, zx, xy, F) is nonzero and
// unramified on a smooth projective model.  The argument is discharged as an
// eight-step replayable certificate over the symbolically closed ground
// field; each non-symbolic ingredient is an explicitly named axiom:
//
//   1 cyclic-symmetry     the bundle form is fixed by x->y->z->x, u->v->w->u,
//                         so one coordinate line stands for all three
//                         [SymmetryReduction]
//   2 discriminant        det = x^2 y^2 z^2 F exactly and the squarefree part
//                         of F is nonconstant, so the generic fiber has
//                         nonsquare discriminant and the base Brauer group
//                         injects into the fiber's
//   3 generic-nonzero     the residue of (x, y) at the prime x is the class
//                         of y, certifiably nontrivial
//   4 good-primes         at sample primes away from xyz = 0 both entries are
//                         units, the residue is trivial, and evaluation lands
//                         in the Brauer group of a curve over a closed field
//                         [Tsen]
//   5 line-x              on x = 0 the restriction of F is a nonzero perfect
//                         square, F is a square in the completion [Hensel],
//                         and the fiber relation exhibits the norm form of
//                         (x, y) [NormFormIsotropy], killing the class
//                         locally
//   6 line-y              symmetric to step 5
//   7 closed-points       points with a nonzero coordinate are discharged by
//                         constants being squares; at x = y = 0 the value
//                         F(0,0,1) is nonzero, a square by Hensel, and the
//                         norm-form relation applies [Hensel,
//                         NormFormIsotropy]
//   8 conclusion          all previous checks passed; unramifiedness plus
//                         injectivity of the Brauer group of a smooth
//                         projective model into that of its function field
//                         yields the verdict [PurityInjectivity]
//
// ExactRational mode is rejected: the argument needs -1 and all nonzero
// constants to be squares, which only holds over the closed ground field.

#include <string>
#include <vector>

#include "unram/brauer.hpp"
#include "unram/bundle.hpp"
#include "unram/certificate.hpp"
#include "unram/errors.hpp"
#include "unram/parse.hpp"
#include "unram/quadric_forms.hpp"

namespace unram {

namespace detail {

inline std::string csv(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    return out;
}

}  // namespace detail

inline Certificate verify_unramified(const QuadricBundle& b, const MPoly& F,
                                     GroundMode mode = GroundMode::SymbolicClosed) {
    if (mode == GroundMode::ExactRational)
        throw ModeUnsupported(
            "verification works over the symbolically closed ground field; over the exact "
            "rationals the checked identities differ by classes of constants");
    const std::vector<std::string>& vars = b.base_coords;
    const std::string &x = vars[0], &y = vars[1], &z = vars[2];
    std::vector<std::string> ext = vars;
    for (const std::string& n : b.fiber_coords) ext.push_back(n);
    const std::string ext_csv = detail::csv(ext);
    const std::string base_csv = detail::csv(vars);
    const std::string chart_csv = x + "," + y;

    // Chart z = 1 of the base; the class alpha = (x, y) lives here.
    std::vector<std::string> chart = {x, y};
    MPoly f3 = F.substitute_constants({{z, Rat(1)}});
    MPoly f = parse_poly(f3.to_string(), chart);
    MPoly fx0 = parse_poly(F.substitute_constants({{x, Rat(0)}, {z, Rat(1)}}).to_string(), {y});
    MPoly fy0 = parse_poly(F.substitute_constants({{y, Rat(0)}, {z, Rat(1)}}).to_string(), {x});
    Rat f00 = F.eval({Rat(0), Rat(0), Rat(1)});
    const std::string alpha = "(" + x + ", " + y + ")";

    Certificate cert;
    cert.target = alpha;
    std::vector<CertificateStep>& steps = cert.steps;

    {
        CertificateStep s;
        s.rule = "cyclic-symmetry";
        MPoly q = b.associated_form();
        std::string perm = x + "->" + y + "," + y + "->" + z + "," + z + "->" + x + "," +
                           b.fiber_coords[0] + "->" + b.fiber_coords[1] + "," + b.fiber_coords[1] +
                           "->" + b.fiber_coords[2] + "," + b.fiber_coords[2] + "->" +
                           b.fiber_coords[0];
        s.inputs = {"bundle form " + q.to_string(),
                    "one coordinate line argument covers all three"};
        s.checks = {make_check("perm_invariant|" + ext_csv + "|" + q.to_string() + "|" + perm)};
        s.axioms = {"SymmetryReduction"};
        steps.push_back(std::move(s));
    }
    {
        CertificateStep s;
        s.rule = "discriminant";
        MPoly det = discriminant_octic(b);
        MPoly xyz2 = MPoly::variable(vars, x) * MPoly::variable(vars, y) * MPoly::variable(vars, z);
        MPoly expected = xyz2 * xyz2 * F;
        s.inputs = {"determinant " + det.to_string(), "generic fiber <" + y + ", " + x + ", " + x +
                    "*" + y + ", " + f.to_string() + "> on the chart " + z + "=1"};
        s.checks = {
            make_check("poly_eq|" + base_csv + "|" + det.to_string() + "|" + expected.to_string()),
            make_check("nonconst_class|" + chart_csv + "|" + f.to_string())};
        steps.push_back(std::move(s));
    }
    {
        CertificateStep s;
        s.rule = "generic-nonzero";
        s.inputs = {"class " + alpha, "prime " + x,
                    "a nontrivial residue certifies the class is nonzero over the function field"};
        s.checks = {
            make_check("residue_nontrivial|closed|" + chart_csv + "|" + x + "|" + alpha),
            make_check("residue_class_eq|closed|" + chart_csv + "|" + x + "|" + alpha + "|" + y)};
        steps.push_back(std::move(s));
    }
    {
        CertificateStep s;
        s.rule = "good-primes";
        MPoly line = MPoly::variable(chart, x) - MPoly::variable(chart, y);
        s.inputs = {"representative primes away from " + x + "*" + y + "*" + z + " = 0: " +
                        f.to_string() + " and " + line.to_string(),
                    "both entries of " + alpha + " are units there; residues vanish and "
                    "evaluation lands in the Brauer group of a curve over a closed field"};
        for (const MPoly& p : {f, line}) {
            s.checks.push_back(
                make_check("valuation|" + chart_csv + "|" + p.to_string() + "|" + x + "|0"));
            s.checks.push_back(
                make_check("valuation|" + chart_csv + "|" + p.to_string() + "|" + y + "|0"));
            s.checks.push_back(make_check("residue_trivial|closed|" + chart_csv + "|" +
                                          p.to_string() + "|" + alpha));
        }
        s.axioms = {"Tsen"};
        steps.push_back(std::move(s));
    }
    auto line_step = [&](const std::string& rule, const std::string& restricted_var,
                         const std::string& line_var, const MPoly& restriction,
                         const std::string& relation) {
        CertificateStep s;
        s.rule = rule;
        s.inputs = {"line " + line_var + " = 0 on the chart " + z + "=1",
                    "restriction of F: " + restriction.to_string(),
                    "fiber relation <" + relation + "> is the norm form of " + alpha,
                    "the class dies over the completion, so the residue there is trivial and "
                    "evaluation on the component vanishes"};
        s.checks = {
            make_check("poly_square|" + restricted_var + "|" + restriction.to_string()),
            make_check("hensel_square|closed|" + chart_csv + "|" + line_var + "|" + f.to_string()),
            make_check("norm_form_match|closed|" + chart_csv + "|" + relation + "|" + alpha)};
        s.axioms = {"Hensel", "NormFormIsotropy"};
        return s;
    };
    steps.push_back(line_step("line-" + x, y, x, fx0, "1," + y + "," + x + "," + x + "*" + y));
    steps.push_back(line_step("line-" + y, x, y, fy0, "1," + x + "," + y + "," + x + "*" + y));
    {
        CertificateStep s;
        s.rule = "closed-points";
        s.inputs = {"points with " + x + " or " + y + " nonzero: the symbol entries specialize "
                    "to nonzero constants, squares over the closed ground field",
                    "remaining point " + x + " = " + y + " = 0: F(0,0,1) = " + f00.str(),
                    "a nonzero constant is a square in the completed local ring, and the "
                    "norm-form relation kills the class as on the lines"};
        s.checks = {make_check("constant_square|closed|-1"),
                    make_check("poly_ne|" + chart_csv + "|" + MPoly::constant(chart, f00).to_string() +
                               "|0"),
                    make_check("constant_square|closed|" + MPoly::constant({}, f00).to_string()),
                    make_check("norm_form_match|closed|" + chart_csv + "|1," + y + "," + x + "," +
                               x + "*" + y + "|" + alpha)};
        s.axioms = {"Hensel", "NormFormIsotropy"};
        steps.push_back(std::move(s));
    }
    {
        CertificateStep s;
        s.rule = "conclusion";
        s.inputs = {"every residue of " + alpha + " on the model is trivial and the class is "
                    "nonzero over the function field",
                    "the Brauer group of a smooth projective model injects into that of its "
                    "function field, so the class is a nonzero unramified obstruction"};
        s.checks = {make_check("steps_pass|7", steps)};
        s.axioms = {"PurityInjectivity"};
        steps.push_back(std::move(s));
    }
    cert.status = compute_status(steps);
    return cert;
}

struct ObstructionVerdict {
    bool obstruction = false;
    bool undecided = false;
    std::string text;
    std::vector<std::string> flags;
};

// Translate a certificate into the stable-rationality verdict.  Anything
// short of Verified yields "no obstruction established" -- never a
// rationality claim.
inline ObstructionVerdict obstruction_verdict(const Certificate& c) {
    ObstructionVerdict v;
    if (c.status.kind == CertStatusKind::Verified) {
        v.obstruction = true;
        v.text = "nonzero unramified class vanishing on all components over the discriminant: "
                 "the very general member of the family is not stably rational";
        for (const CertificateStep& s : c.steps) v.flags.push_back(s.rule);
        return v;
    }
    v.text = "no obstruction established";
    std::size_t k = c.status.step;
    const std::string rule = k >= 1 && k <= c.steps.size() ? c.steps[k - 1].rule : "?";
    if (c.status.kind == CertStatusKind::Refuted) {
        v.flags.push_back("refuted at step " + std::to_string(k) + ": " + rule);
    } else {
        v.undecided = true;
        v.flags.push_back("incomplete at step " + std::to_string(k) + ": " + rule);
        v.flags.push_back("a squareness query returned unknown; the verdict is conservative");
    }
    return v;
}

}  // namespace unram
