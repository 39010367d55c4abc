#pragma once

// Quadric surface bundles over the projective plane: 4x4 symmetric matrices
// of homogeneous quadrics in the base coordinates, their degree-8
// discriminant determinant, the tangency report for the distinguished
// diagonal family diag(yz, zx, xy, F), and the rational-section probe for
// bundles with a vanishing diagonal entry.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unram/errors.hpp"
#include "unram/mpoly.hpp"
#include "unram/parse.hpp"
#include "unram/rat.hpp"

namespace unram {

namespace detail {

// Fiber coordinate names (quadric coordinates u,v,w,t) disjoint from the
// base names; prefixed until free.
inline std::vector<std::string> fresh_fiber_vars(const std::vector<std::string>& base) {
    std::vector<std::string> names = {"u", "v", "w", "t"};
    for (;;) {
        bool clash = false;
        for (const std::string& n : names)
            for (const std::string& v : base) clash = clash || n == v;
        if (!clash) return names;
        for (std::string& n : names) n = "f" + n;
    }
}

}  // namespace detail

struct QuadricBundle {
    std::vector<std::vector<MPoly>> matrix;  // 4x4 symmetric, entries homogeneous of degree 2
    std::vector<std::string> base_coords;
    std::vector<std::string> fiber_coords;

    // The bidegree-(2,2) form sum a_ij c_i c_j over base + fiber variables.
    MPoly associated_form() const {
        std::vector<std::string> ext = base_coords;
        for (const std::string& n : fiber_coords) ext.push_back(n);
        MPoly q = MPoly::zero(ext);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (matrix[i][j].is_zero()) continue;
                MPoly lifted = parse_poly(matrix[i][j].to_string(), ext);
                q += lifted * MPoly::variable(ext, fiber_coords[i]) *
                     MPoly::variable(ext, fiber_coords[j]);
            }
        }
        return q;
    }
};

// The diagonal bundle diag(v1*v2, v2*v0, v0*v1, F) over the plane with
// coordinates (v0, v1, v2) = F's variables.
inline QuadricBundle build_bundle(const MPoly& F) {
    const std::vector<std::string>& vars = F.vars();
    if (vars.size() != 3)
        throw NotHomogeneousDegree2("the bundle base is a plane with three coordinates");
    if (F.is_zero() || !is_homogeneous(F, 2))
        throw NotHomogeneousDegree2(F.to_string());
    QuadricBundle b;
    b.base_coords = vars;
    b.fiber_coords = detail::fresh_fiber_vars(vars);
    MPoly x = MPoly::variable(vars, vars[0]);
    MPoly y = MPoly::variable(vars, vars[1]);
    MPoly z = MPoly::variable(vars, vars[2]);
    MPoly zero = MPoly::zero(vars);
    b.matrix = {{y * z, zero, zero, zero},
                {zero, z * x, zero, zero},
                {zero, zero, x * y, zero},
                {zero, zero, zero, F}};
    for (const auto& row : b.matrix)
        for (const MPoly& e : row)
            if (!e.is_zero() && !is_homogeneous(e, 2)) throw NotHomogeneousDegree2(e.to_string());
    return b;
}

// Determinant of the symmetric matrix: the octic discriminant curve.  For
// any bundle built by build_bundle this equals v0^2 v1^2 v2^2 * F exactly.
inline MPoly discriminant_octic(const QuadricBundle& b) { return determinant(b.matrix); }

struct TangencyCheck {
    std::string description;
    std::string value;  // printed restriction or evaluation
    bool ok = false;
};

struct TangencyReport {
    std::vector<TangencyCheck> checks;
    bool pass = false;
};

// For each coordinate line: the restriction of F must be a nonzero perfect
// square (tangency); at each coordinate point F must not vanish.
inline TangencyReport tangency_report(const MPoly& F) {
    const std::vector<std::string>& vars = F.vars();
    if (vars.size() != 3 || F.is_zero() || !is_homogeneous(F, 2))
        throw NotHomogeneousDegree2(F.to_string());
    TangencyReport report;
    report.pass = true;
    for (std::size_t i = 0; i < 3; ++i) {
        MPoly restricted = F.substitute_constants({{vars[i], Rat(0)}});
        bool ok = !restricted.is_zero() && polynomial_square_root(restricted).has_value();
        report.checks.push_back({"restriction to the line " + vars[i] + "=0 is a nonzero "
                                 "perfect square",
                                 restricted.to_string(), ok});
        report.pass = report.pass && ok;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<Rat> point(3, Rat(0));
        point[i] = 1;
        Rat value = F.eval(point);
        bool ok = value != 0;
        report.checks.push_back({"value at the coordinate point of " + vars[i] + " is nonzero",
                                 value.str(), ok});
        report.pass = report.pass && ok;
    }
    return report;
}

struct SectionWitness {
    std::size_t index = 0;  // 0-based fiber coordinate whose unit point is the section

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t j = 0; j < 4; ++j) {
            if (j) out += ",";
            out += j == index ? "1" : "0";
        }
        return out + ")";
    }
};

// A vanishing diagonal entry a_ii = 0 makes the fiber coordinate point e_i a
// section: q(e_i) = a_ii vanishes identically.  First hit wins.
inline std::optional<SectionWitness> rational_section_probe(const QuadricBundle& b) {
    for (std::size_t i = 0; i < 4; ++i) {
        if (!b.matrix[i][i].is_zero()) continue;
        MPoly q = b.associated_form();
        std::map<std::string, Rat> point;
        for (std::size_t j = 0; j < 4; ++j)
            point[b.fiber_coords[j]] = j == i ? Rat(1) : Rat(0);
        if (q.substitute_constants(point).is_zero()) return SectionWitness{i};
    }
    return std::nullopt;
}

// The built-in smooth conic tangent to all three coordinate lines with value
// 1 at each coordinate point; the default input of the verify-hpt command.
inline MPoly hpt_conic(const std::vector<std::string>& vars) {
    if (vars.size() != 3) throw NotHomogeneousDegree2("expected three base coordinates");
    MPoly x = MPoly::variable(vars, vars[0]);
    MPoly y = MPoly::variable(vars, vars[1]);
    MPoly z = MPoly::variable(vars, vars[2]);
    return x * x + y * y + z * z - (x * y + y * z + z * x) * 2;
}

}  // namespace unram
