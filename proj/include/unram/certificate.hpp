#pragma once

// Replayable certificates.  A certificate is an ordered list of steps, each
// carrying named rule, printed inputs, a list of checks, and the axioms it
// leans on.  Every check is a single self-contained identity string that can
// be re-evaluated from scratch; replaying a certificate recomputes every
// identity and compares against the recorded pass bits.
//
// Check identity mini-language (fields separated by '|', which never occurs
// in a printed polynomial):
//
//   poly_eq|vars|lhs|rhs              exact equality of rational functions
//   poly_ne|vars|lhs|rhs              exact inequality
//   perm_invariant|vars|poly|x->y,... poly is fixed by the substitution
//   nonconst_class|vars|poly          odd-multiplicity part is nonconstant
//   class_eq|mode|vars|A|B            A and B simplify to the same class
//   square|mode|vars|f                f is a square in ground(vars)
//   constant_square|mode|c            c is a square in the ground field
//   poly_square|vars|p                p is a perfect square polynomially
//   valuation|vars|prime|f|k          the valuation of f at prime equals k
//   reduce_zero|vars|f|g|v            pseudo-remainder of f by g w.r.t. v is 0
//   residue_class_eq|mode|vars|prime|class|u   residue of class equals cl(u)
//   residue_trivial|mode|vars|prime|class      residue of class is a square
//   residue_nontrivial|mode|vars|prime|class   residue is certifiably not
//   hensel_square|mode|vars|prime|f   f is a square in the completion
//   norm_form_match|mode|vars|d1,d2,d3,d4|(a, b)   diagonal form is similar
//                                     to the norm form <1,-a,-b,ab>
//   steps_pass|k                      all checks of steps 1..k passed (meta)
//
// "vars" is a comma list; "mode" is "exact" or "closed".  All polynomials are
// written in the canonical printer and reparsed on replay.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "unram/brauer.hpp"
#include "unram/errors.hpp"
#include "unram/parse.hpp"
#include "unram/valuation.hpp"

namespace unram {

struct CertificateCheck {
    std::string identity;
    Decision outcome = Decision::Unknown;

    bool pass() const { return outcome == Decision::Yes; }
};

struct CertificateStep {
    std::string rule;
    std::vector<std::string> inputs;
    std::vector<CertificateCheck> checks;
    std::vector<std::string> axioms;
};

enum class CertStatusKind { Verified, Refuted, Incomplete };

struct CertificateStatus {
    CertStatusKind kind = CertStatusKind::Verified;
    std::size_t step = 0;  // 1-based index of the deciding step; 0 when Verified

    friend bool operator==(const CertificateStatus& a, const CertificateStatus& b) {
        return a.kind == b.kind && a.step == b.step;
    }
};

struct Certificate {
    int version = 1;
    std::string target;  // printed Brauer class the certificate is about
    std::vector<CertificateStep> steps;
    CertificateStatus status;
};

// First failed check decides Refuted; otherwise the first undecided check
// decides Incomplete; otherwise Verified.
inline CertificateStatus compute_status(const std::vector<CertificateStep>& steps) {
    std::size_t first_unknown = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        for (const CertificateCheck& c : steps[i].checks) {
            if (c.outcome == Decision::No) return {CertStatusKind::Refuted, i + 1};
            if (c.outcome == Decision::Unknown && first_unknown == 0) first_unknown = i + 1;
        }
    }
    if (first_unknown != 0) return {CertStatusKind::Incomplete, first_unknown};
    return {CertStatusKind::Verified, 0};
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + sep.size();
    }
}

inline std::vector<std::string> parse_var_list(const std::string& s) {
    if (s.empty()) return {};
    return split(s, ',');
}

inline GroundMode parse_mode(const std::string& s) {
    if (s == "exact") return GroundMode::ExactRational;
    if (s == "closed") return GroundMode::SymbolicClosed;
    throw Error("unknown ground mode: " + s);
}

}  // namespace detail

// Parse a printed Brauer class: "0" or "(a, b) + (c, d) + ...".
inline BrauerClass parse_brauer_class(const std::string& s, const std::vector<std::string>& vars,
                                      GroundMode mode) {
    BrauerClass out = BrauerClass::zero(mode);
    if (s == "0") return out;
    for (const std::string& part : detail::split_on(s, " + ")) {
        if (part.size() < 2 || part.front() != '(' || part.back() != ')')
            throw Error("malformed symbol in class: " + part);
        std::string body = part.substr(1, part.size() - 2);
        std::size_t comma = body.find(", ");
        if (comma == std::string::npos) throw Error("malformed symbol in class: " + part);
        out.symbols.push_back({parse_ratfunc(body.substr(0, comma), vars),
                               parse_ratfunc(body.substr(comma + 2), vars)});
    }
    return out;
}

// Does the diagonal quadratic form <d1,d2,d3,d4> agree, up to squares in each
// entry and an overall scaling, with the norm form <1,-a,-b,ab> of the symbol
// (a,b)?  Tries each entry as the scaling unit.
inline Decision norm_form_matches(const std::vector<RatFunc>& diag, const QuaternionSymbol& s,
                                  GroundMode mode) {
    if (diag.size() != 4) throw DegenerateForm("a norm form has four diagonal entries");
    for (const RatFunc& d : diag)
        if (d.is_zero()) throw DegenerateForm("zero diagonal entry");
    std::vector<RatFunc> want = {square_class_rep(-s.a, mode), square_class_rep(-s.b, mode),
                                 square_class_rep(s.a * s.b, mode)};
    std::sort(want.begin(), want.end(), ratfunc_less);
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<RatFunc> rest;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) rest.push_back(square_class_rep(diag[j] / diag[i], mode));
        std::sort(rest.begin(), rest.end(), ratfunc_less);
        if (rest == want) return Decision::Yes;
    }
    return Decision::No;
}

// Evaluate one identity.  `prior` supplies already-recomputed steps for the
// steps_pass meta-check; identities other than steps_pass ignore it.
inline Decision evaluate_check_identity(const std::string& identity,
                                        const std::vector<CertificateStep>& prior) {
    const std::vector<std::string> f = detail::split(identity, '|');
    if (f.empty()) throw Error("empty check identity");
    const std::string& op = f[0];
    auto need = [&](std::size_t n) {
        if (f.size() != n) throw Error("check " + op + ": expected " + std::to_string(n - 1) +
                                       " arguments");
    };
    auto yes_no = [](bool b) { return b ? Decision::Yes : Decision::No; };

    if (op == "poly_eq" || op == "poly_ne") {
        need(4);
        auto vars = detail::parse_var_list(f[1]);
        bool eq = parse_ratfunc(f[2], vars) == parse_ratfunc(f[3], vars);
        return yes_no(op == "poly_eq" ? eq : !eq);
    }
    if (op == "perm_invariant") {
        need(4);
        auto vars = detail::parse_var_list(f[1]);
        RatFunc p = parse_ratfunc(f[2], vars);
        std::map<std::string, RatFunc> sub;
        for (const std::string& v : vars) sub[v] = RatFunc(MPoly::variable(vars, v));
        for (const std::string& pair : detail::split(f[3], ',')) {
            std::size_t arrow = pair.find("->");
            if (arrow == std::string::npos) throw Error("malformed substitution: " + pair);
            sub[pair.substr(0, arrow)] =
                RatFunc(MPoly::variable(vars, pair.substr(arrow + 2)));
        }
        return yes_no(p.substitute(sub) == p);
    }
    if (op == "nonconst_class") {
        need(3);
        auto vars = detail::parse_var_list(f[1]);
        RatFunc rep = square_class_rep(parse_ratfunc(f[2], vars), GroundMode::ExactRational);
        return yes_no(!rep.num().is_constant() || !rep.den().is_constant());
    }
    if (op == "class_eq") {
        need(5);
        GroundMode mode = detail::parse_mode(f[1]);
        auto vars = detail::parse_var_list(f[2]);
        BrauerClass a = simplify(parse_brauer_class(f[3], vars, mode)).first;
        BrauerClass b = simplify(parse_brauer_class(f[4], vars, mode)).first;
        return yes_no(a.symbols == b.symbols);
    }
    if (op == "square") {
        need(4);
        GroundMode mode = detail::parse_mode(f[1]);
        auto vars = detail::parse_var_list(f[2]);
        ResidueField K = function_field(vars, mode);
        return is_square_in_residue_field({K, parse_ratfunc(f[3], vars)});
    }
    if (op == "constant_square") {
        need(3);
        GroundMode mode = detail::parse_mode(f[1]);
        RatFunc c = parse_ratfunc(f[2], {});
        return yes_no(
            is_square_constant(c.num().constant_value() / c.den().constant_value(), mode));
    }
    if (op == "poly_square") {
        need(3);
        auto vars = detail::parse_var_list(f[1]);
        MPoly p = parse_poly(f[2], vars);
        if (p.is_zero()) return Decision::No;
        return yes_no(polynomial_square_root(p).has_value());
    }
    if (op == "valuation") {
        need(5);
        auto vars = detail::parse_var_list(f[1]);
        DivisorialValuation v(parse_poly(f[2], vars), GroundMode::ExactRational);
        return yes_no(valuation_of(parse_ratfunc(f[3], vars), v) == std::stoll(f[4]));
    }
    if (op == "reduce_zero") {
        need(5);
        auto vars = detail::parse_var_list(f[1]);
        MPoly num = parse_poly(f[2], vars);
        MPoly den = parse_poly(f[3], vars);
        return yes_no(pseudo_remainder(num, den, num.var_index(f[4])).rem.is_zero());
    }
    if (op == "residue_class_eq" || op == "residue_trivial" || op == "residue_nontrivial") {
        need(op == "residue_class_eq" ? 6 : 5);
        GroundMode mode = detail::parse_mode(f[1]);
        auto vars = detail::parse_var_list(f[2]);
        DivisorialValuation v(parse_poly(f[3], vars), mode);
        if (op == "residue_class_eq") {
            BrauerClass c = parse_brauer_class(f[4], vars, mode);
            RatFunc expected = parse_ratfunc(f[5], vars);
            if (valuation_of(expected, v) % 2 != 0) return Decision::No;
            SquareClass rc = residue_class(c, v);
            ResidueElement quot = reduce_unit(strip_prime(expected, v), v);
            return is_square_in_residue_field({rc.element.field, rc.element.value * quot.value});
        }
        Decision t = residue_class(parse_brauer_class(f[4], vars, mode), v).triviality;
        if (op == "residue_trivial") return t;
        if (t == Decision::No) return Decision::Yes;
        if (t == Decision::Yes) return Decision::No;
        return Decision::Unknown;
    }
    if (op == "hensel_square") {
        need(5);
        GroundMode mode = detail::parse_mode(f[1]);
        auto vars = detail::parse_var_list(f[2]);
        DivisorialValuation v(parse_poly(f[3], vars), mode);
        return is_square_in_completion(parse_ratfunc(f[4], vars), v);
    }
    if (op == "norm_form_match") {
        need(5);
        GroundMode mode = detail::parse_mode(f[1]);
        auto vars = detail::parse_var_list(f[2]);
        std::vector<RatFunc> diag;
        for (const std::string& d : detail::split(f[3], ','))
            diag.push_back(parse_ratfunc(d, vars));
        BrauerClass c = parse_brauer_class(f[4], vars, mode);
        if (c.symbols.size() != 1) throw Error("norm_form_match expects a single symbol");
        return norm_form_matches(diag, c.symbols[0], mode);
    }
    if (op == "steps_pass") {
        need(2);
        std::size_t k = static_cast<std::size_t>(std::stoll(f[1]));
        if (k > prior.size()) return Decision::Unknown;
        for (std::size_t i = 0; i < k; ++i)
            for (const CertificateCheck& c : prior[i].checks)
                if (c.outcome != Decision::Yes) return Decision::No;
        return Decision::Yes;
    }
    throw Error("unknown check operation: " + op);
}

inline CertificateCheck make_check(const std::string& identity,
                                   const std::vector<CertificateStep>& prior = {}) {
    return {identity, evaluate_check_identity(identity, prior)};
}

// Recompute every check from its identity string; true iff every recomputed
// pass bit and the overall status agree with what the certificate records.
inline bool replay(const Certificate& cert) {
    std::vector<CertificateStep> redone;
    for (const CertificateStep& step : cert.steps) {
        CertificateStep r = step;
        for (CertificateCheck& c : r.checks) c.outcome = evaluate_check_identity(c.identity, redone);
        redone.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < cert.steps.size(); ++i)
        for (std::size_t j = 0; j < cert.steps[i].checks.size(); ++j)
            if (redone[i].checks[j].pass() != cert.steps[i].checks[j].pass()) return false;
    return compute_status(redone) == cert.status;
}

inline nlohmann::ordered_json to_json(const CertificateStatus& s) {
    nlohmann::ordered_json j;
    switch (s.kind) {
        case CertStatusKind::Verified: j["state"] = "verified"; break;
        case CertStatusKind::Refuted: j["state"] = "refuted"; break;
        case CertStatusKind::Incomplete: j["state"] = "incomplete"; break;
    }
    if (s.kind != CertStatusKind::Verified) j["step"] = s.step;
    return j;
}

inline nlohmann::ordered_json to_json(const Certificate& cert) {
    nlohmann::ordered_json j;
    j["version"] = cert.version;
    j["target"] = cert.target;
    j["steps"] = nlohmann::ordered_json::array();
    for (const CertificateStep& step : cert.steps) {
        nlohmann::ordered_json js;
        js["rule"] = step.rule;
        js["inputs"] = step.inputs;
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const CertificateCheck& c : step.checks)
            checks.push_back({{"identity", c.identity}, {"pass", c.pass()}});
        js["checks"] = std::move(checks);
        js["axioms"] = step.axioms;
        j["steps"].push_back(std::move(js));
    }
    j["status"] = to_json(cert.status);
    return j;
}

// Load a serialized certificate.  Recorded Unknown outcomes are projected to
// pass=false on disk; replay() re-derives the exact tri-state from the
// identities themselves.
inline Certificate certificate_from_json(const nlohmann::ordered_json& j) {
    Certificate cert;
    cert.version = j.at("version").get<int>();
    cert.target = j.at("target").get<std::string>();
    for (const auto& js : j.at("steps")) {
        CertificateStep step;
        step.rule = js.at("rule").get<std::string>();
        step.inputs = js.at("inputs").get<std::vector<std::string>>();
        for (const auto& jc : js.at("checks")) {
            CertificateCheck c;
            c.identity = jc.at("identity").get<std::string>();
            c.outcome = jc.at("pass").get<bool>() ? Decision::Yes : Decision::No;
            step.checks.push_back(std::move(c));
        }
        step.axioms = js.at("axioms").get<std::vector<std::string>>();
        cert.steps.push_back(std::move(step));
    }
    const auto& st = j.at("status");
    std::string state = st.at("state").get<std::string>();
    if (state == "verified") {
        cert.status = {CertStatusKind::Verified, 0};
    } else if (state == "refuted") {
        cert.status = {CertStatusKind::Refuted, st.at("step").get<std::size_t>()};
    } else if (state == "incomplete") {
        cert.status = {CertStatusKind::Incomplete, st.at("step").get<std::size_t>()};
    } else {
        throw Error("unknown certificate status: " + state);
    }
    return cert;
}

inline std::string to_string(const CertificateStatus& s) {
    switch (s.kind) {
        case CertStatusKind::Verified: return "verified";
        case CertStatusKind::Refuted: return "refuted at step " + std::to_string(s.step);
        default: return "incomplete at step " + std::to_string(s.step);
    }
}

}  // namespace unram
