// unram -- command-line surface for the header-only library.
//
// Subcommands: residue, classify, verify-hpt, discriminant, tangency,
// hilbert, decompose.  Shared flags: --mode {exact|closed}, --output
// {text|json}, --vars.  Every JSON document carries a "version" field.
//
// Exit codes (published contract):
//   0  success
//   2  parse or input error
//   3  undecided (a squareness query returned unknown)
//   4  degenerate form
//   5  certificate refuted
//   6  certificate incomplete
//   7  mode unsupported for the requested operation

#include <cctype>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "unram/unram.hpp"

namespace {

using namespace unram;
using nlohmann::ordered_json;

constexpr int kJsonVersion = 1;

enum ExitCode {
    kOk = 0,
    kParseError = 2,
    kUndecided = 3,
    kDegenerate = 4,
    kRefuted = 5,
    kIncomplete = 6,
    kModeError = 7,
};

struct CommonOpts {
    std::string mode;  // "", "exact" or "closed"; empty means the command default
    std::string output = "text";
    std::string vars = "x,y,z";

    GroundMode resolve(GroundMode dflt) const {
        if (mode == "exact") return GroundMode::ExactRational;
        if (mode == "closed") return GroundMode::SymbolicClosed;
        return dflt;
    }
    bool json() const { return output == "json"; }
};

void add_common(CLI::App* cmd, CommonOpts& o, const std::string& mode_default) {
    cmd->add_option("--mode", o.mode,
                    "ground mode: exact|closed (default: " + mode_default + ")")
        ->check(CLI::IsMember({"exact", "closed"}));
    cmd->add_option("--output", o.output, "output format: text|json (default: text)")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--vars", o.vars, "comma-separated variable names (default: x,y,z)");
}

std::vector<std::string> parse_var_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    for (const std::string& name : out)
        if (name.empty()) throw Error("empty variable name in --vars");
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

const char* triviality_word(Decision d) {
    switch (d) {
        case Decision::Yes: return "true";
        case Decision::No: return "false";
        default: return "unknown";
    }
}

std::string class_rep(const SquareClass& sc, GroundMode mode) {
    return square_class_rep(sc.element.value, mode).to_string();
}

ordered_json square_class_json(const std::string& label, const SquareClass& sc, GroundMode mode) {
    ordered_json j;
    j["divisor"] = label;
    j["class"] = class_rep(sc, mode);
    j["trivial"] = triviality_word(sc.triviality);
    return j;
}

ordered_json step_json(const CertificateStep& s) {
    ordered_json js;
    js["rule"] = s.rule;
    js["inputs"] = s.inputs;
    ordered_json checks = ordered_json::array();
    for (const CertificateCheck& c : s.checks)
        checks.push_back(ordered_json{{"identity", c.identity}, {"pass", c.pass()}});
    js["checks"] = checks;
    js["axioms"] = s.axioms;
    return js;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

// --------------------------------------------------------------------------
// residue
// --------------------------------------------------------------------------

struct ResidueOpts {
    CommonOpts common;
    std::string a, b, p;
};

int run_residue(const ResidueOpts& o) {
    std::vector<std::string> vars = parse_var_csv(o.common.vars);
    GroundMode mode = o.common.resolve(GroundMode::ExactRational);
    DivisorialValuation v(parse_poly(o.p, vars), mode);
    QuaternionSymbol s{parse_ratfunc(o.a, vars), parse_ratfunc(o.b, vars)};
    SquareClass r = residue(s, v);
    std::string rep = class_rep(r, mode);
    if (o.common.json()) {
        ordered_json j;
        j["version"] = kJsonVersion;
        j["command"] = "residue";
        j["mode"] = to_string(mode);
        j["symbol"] = s.to_string();
        j["prime"] = v.prime.to_string();
        j["class"] = rep;
        j["trivial"] = triviality_word(r.triviality);
        emit(j);
    } else {
        std::cout << "class: " << rep << ", trivial: " << triviality_word(r.triviality) << '\n';
    }
    return r.triviality == Decision::Unknown ? kUndecided : kOk;
}

// --------------------------------------------------------------------------
// classify
// --------------------------------------------------------------------------

struct ClassifyOpts {
    CommonOpts common;
    std::string entries, uniformizer;
};

void print_verdict_text(const ModelVerdict& verdict, GroundMode mode) {
    std::cout << "surjective from base: " << to_string(verdict.surjective_from_base) << '\n';
    if (verdict.exceptional_class)
        std::cout << "exceptional class: " << verdict.exceptional_class->to_string() << '\n';
    if (!verdict.residue_data.empty()) {
        std::cout << "residue data:\n";
        for (const auto& [label, sc] : verdict.residue_data)
            std::cout << "  - " << label << ": class " << class_rep(sc, mode) << ", trivial: "
                      << triviality_word(sc.triviality) << '\n';
    }
    if (!verdict.notes.empty()) std::cout << "notes: " << verdict.notes << '\n';
}

ordered_json verdict_json(const ModelVerdict& verdict, GroundMode mode) {
    ordered_json jv;
    jv["surjective_from_base"] = to_string(verdict.surjective_from_base);
    if (verdict.exceptional_class)
        jv["exceptional_class"] = verdict.exceptional_class->to_string();
    ordered_json rd = ordered_json::array();
    for (const auto& [label, sc] : verdict.residue_data)
        rd.push_back(square_class_json(label, sc, mode));
    jv["residue_data"] = rd;
    jv["notes"] = verdict.notes;
    return jv;
}

void print_trace_text(const ScalingTrace& trace) {
    std::cout << "trace:\n";
    if (trace.empty()) {
        std::cout << "  (none)\n";
        return;
    }
    for (const ScalingMove& m : trace) std::cout << "  - " << m.to_string() << '\n';
}

int run_classify(const ClassifyOpts& o) {
    std::vector<std::string> vars = parse_var_csv(o.common.vars);
    GroundMode mode = o.common.resolve(GroundMode::ExactRational);
    std::vector<RatFunc> entries;
    for (const std::string& part : split_csv(o.entries))
        entries.push_back(parse_ratfunc(part, vars));
    if (entries.size() != 3 && entries.size() != 4)
        throw DegenerateForm("expected 3 or 4 diagonal entries, got " +
                             std::to_string(entries.size()));
    DiagonalForm form(entries, mode);
    DvrContext ctx(DivisorialValuation(parse_poly(o.uniformizer, vars), mode));

    ordered_json j;
    j["version"] = kJsonVersion;
    j["command"] = "classify";
    j["mode"] = to_string(mode);
    j["uniformizer"] = ctx.uniformizer().to_string();

    if (form.rank() == 4) {
        QuadricModelCase mc = normalize_quadric_model(form, ctx);
        ModelVerdict verdict = quadric_model_verdict(mc, ctx);
        std::optional<CertificateStep> identity;
        if (mc.tag == QuadricCaseTag::III) identity = verify_case_III_identity(mc);
        if (o.common.json()) {
            j["kind"] = "quadric";
            j["case"] = to_string(mc.tag);
            ordered_json norm = ordered_json::array();
            for (const RatFunc& e : mc.normalized_entries.entries) norm.push_back(e.to_string());
            j["normalized"] = norm;
            j["a"] = mc.a.to_string();
            j["b"] = mc.b.to_string();
            if (mc.d) j["d"] = mc.d->to_string();
            ordered_json tr = ordered_json::array();
            for (const ScalingMove& m : mc.scaling_trace) tr.push_back(m.to_string());
            j["trace"] = tr;
            j["verdict"] = verdict_json(verdict, mode);
            if (identity) j["identity"] = step_json(*identity);
            emit(j);
        } else {
            std::cout << "case " << to_string(mc.tag) << '\n';
            std::cout << "normalized: " << mc.normalized_entries.to_string() << '\n';
            std::cout << "a: " << mc.a.to_string() << '\n';
            std::cout << "b: " << mc.b.to_string() << '\n';
            if (mc.d) std::cout << "d: " << mc.d->to_string() << '\n';
            print_trace_text(mc.scaling_trace);
            print_verdict_text(verdict, mode);
            if (identity) std::cout << "identity: verified\n";
        }
    } else {
        ConicModelCase cc = normalize_conic_model(form, ctx);
        ModelVerdict verdict = conic_model_verdict(cc, ctx);
        if (o.common.json()) {
            j["kind"] = "conic";
            j["case"] = to_string(cc.tag);
            ordered_json norm = ordered_json::array();
            for (const RatFunc& e : cc.normalized.entries) norm.push_back(e.to_string());
            j["normalized"] = norm;
            j["a"] = cc.a.to_string();
            if (cc.b) j["b"] = cc.b->to_string();
            ordered_json tr = ordered_json::array();
            for (const ScalingMove& m : cc.scaling_trace) tr.push_back(m.to_string());
            j["trace"] = tr;
            j["verdict"] = verdict_json(verdict, mode);
            emit(j);
        } else {
            std::cout << "conic case " << to_string(cc.tag) << '\n';
            std::cout << "normalized: " << cc.normalized.to_string() << '\n';
            std::cout << "a: " << cc.a.to_string() << '\n';
            if (cc.b) std::cout << "b: " << cc.b->to_string() << '\n';
            print_trace_text(cc.scaling_trace);
            print_verdict_text(verdict, mode);
        }
    }
    return kOk;
}

// --------------------------------------------------------------------------
// verify-hpt
// --------------------------------------------------------------------------

struct VerifyOpts {
    CommonOpts common;
    std::string F;
};

int run_verify(const VerifyOpts& o) {
    std::vector<std::string> vars = parse_var_csv(o.common.vars);
    GroundMode mode = o.common.resolve(GroundMode::SymbolicClosed);
    MPoly F = o.F.empty() ? hpt_conic(vars) : parse_poly(o.F, vars);
    QuadricBundle bundle = build_bundle(F);
    Certificate cert = verify_unramified(bundle, F, mode);
    ObstructionVerdict verdict = obstruction_verdict(cert);

    if (o.common.json()) {
        emit(to_json(cert));
    } else {
        switch (cert.status.kind) {
            case CertStatusKind::Verified: std::cout << "status: verified\n"; break;
            case CertStatusKind::Refuted:
                std::cout << "status: refuted (step " << cert.status.step << ": "
                          << cert.steps[cert.status.step - 1].rule << ")\n";
                break;
            case CertStatusKind::Incomplete:
                std::cout << "status: incomplete (step " << cert.status.step << ": "
                          << cert.steps[cert.status.step - 1].rule << ")\n";
                break;
        }
        std::cout << "target: " << cert.target << '\n';
        std::set<std::string> axioms;
        for (std::size_t i = 0; i < cert.steps.size(); ++i) {
            const CertificateStep& s = cert.steps[i];
            bool ok = true;
            for (const CertificateCheck& c : s.checks) ok = ok && c.pass();
            std::cout << "step " << (i + 1) << " [" << s.rule << "]: "
                      << (ok ? "pass" : "FAIL") << " (" << s.checks.size()
                      << (s.checks.size() == 1 ? " check)" : " checks)") << '\n';
            if (!ok)
                for (const CertificateCheck& c : s.checks)
                    if (!c.pass()) std::cout << "  failed: " << c.identity << '\n';
            for (const std::string& ax : s.axioms) axioms.insert(ax);
        }
        std::cout << "axioms used:";
        if (axioms.empty()) std::cout << " (none)";
        for (const std::string& ax : axioms) std::cout << ' ' << ax;
        std::cout << '\n';
        std::cout << "obstruction: "
                  << (verdict.obstruction ? "yes" : (verdict.undecided ? "undecided" : "no"))
                  << '\n';
        std::cout << "verdict: " << verdict.text << '\n';
        for (const std::string& flag : verdict.flags) std::cout << "  - " << flag << '\n';
    }
    switch (cert.status.kind) {
        case CertStatusKind::Refuted: return kRefuted;
        case CertStatusKind::Incomplete: return kIncomplete;
        default: return kOk;
    }
}

// --------------------------------------------------------------------------
// discriminant
// --------------------------------------------------------------------------

struct DiscriminantOpts {
    CommonOpts common;
    std::string F;
};

int run_discriminant(const DiscriminantOpts& o) {
    std::vector<std::string> vars = parse_var_csv(o.common.vars);
    MPoly F = o.F.empty() ? hpt_conic(vars) : parse_poly(o.F, vars);
    QuadricBundle bundle = build_bundle(F);
    MPoly det = discriminant_octic(bundle);
    MPoly coords = MPoly::one(F.vars());
    std::string label;
    for (const std::string& name : F.vars()) {
        coords *= MPoly::variable(F.vars(), name);
        label += name + "^2*";
    }
    label += "F";
    bool matches = det == coords * coords * F;
    if (o.common.json()) {
        ordered_json j;
        j["version"] = kJsonVersion;
        j["command"] = "discriminant";
        j["F"] = F.to_string();
        j["discriminant"] = det.to_string();
        j["product_identity"] = matches;
        emit(j);
    } else {
        std::cout << "discriminant: " << det.to_string() << '\n';
        std::cout << "product identity (" << label << "): " << (matches ? "true" : "false")
                  << '\n';
    }
    return kOk;
}

// --------------------------------------------------------------------------
// tangency
// --------------------------------------------------------------------------

struct TangencyOpts {
    CommonOpts common;
    std::string F;
};

int run_tangency(const TangencyOpts& o) {
    std::vector<std::string> vars = parse_var_csv(o.common.vars);
    MPoly F = o.F.empty() ? hpt_conic(vars) : parse_poly(o.F, vars);
    TangencyReport report = tangency_report(F);
    if (o.common.json()) {
        ordered_json j;
        j["version"] = kJsonVersion;
        j["command"] = "tangency";
        j["F"] = F.to_string();
        ordered_json checks = ordered_json::array();
        for (const TangencyCheck& c : report.checks)
            checks.push_back(ordered_json{
                {"description", c.description}, {"value", c.value}, {"ok", c.ok}});
        j["checks"] = checks;
        j["pass"] = report.pass;
        emit(j);
    } else {
        for (const TangencyCheck& c : report.checks)
            std::cout << (c.ok ? "[ ok ] " : "[fail] ") << c.description << ": " << c.value
                      << '\n';
        std::cout << "overall: " << (report.pass ? "pass" : "fail") << '\n';
    }
    return kOk;
}

// --------------------------------------------------------------------------
// hilbert
// --------------------------------------------------------------------------

struct HilbertOpts {
    CommonOpts common;
    std::string a, b;
    std::string place;  // prime number, or empty
    bool infinity = false;
};

int run_hilbert(const HilbertOpts& o) {
    Rat a(o.a), b(o.b);
    std::string pair = "(" + a.str() + ", " + b.str() + ")";
    if (!o.place.empty() || o.infinity) {
        RationalPlace place =
            o.infinity ? RationalPlace::infinite() : RationalPlace::finite(Int(o.place));
        int s = hilbert_symbol(a, b, place);
        if (o.common.json()) {
            ordered_json j;
            j["version"] = kJsonVersion;
            j["command"] = "hilbert";
            j["a"] = a.str();
            j["b"] = b.str();
            j["place"] = place.to_string();
            j["symbol"] = s;
            emit(j);
        } else {
            std::cout << pair << " at " << place.to_string() << ": " << s << '\n';
        }
        return kOk;
    }
    std::vector<RationalPlace> places = support_places(a, b);
    int product = 1;
    ordered_json symbols = ordered_json::array();
    for (const RationalPlace& place : places) {
        int s = hilbert_symbol(a, b, place);
        product *= s;
        if (o.common.json())
            symbols.push_back(ordered_json{{"place", place.to_string()}, {"symbol", s}});
        else
            std::cout << pair << " at " << place.to_string() << ": " << s << '\n';
    }
    bool split = is_split_over_rationals(a, b);
    if (o.common.json()) {
        ordered_json j;
        j["version"] = kJsonVersion;
        j["command"] = "hilbert";
        j["a"] = a.str();
        j["b"] = b.str();
        j["symbols"] = symbols;
        j["product"] = product;
        j["split"] = split;
        emit(j);
    } else {
        std::cout << "product: " << product << '\n';
        std::cout << "split over the rationals: " << (split ? "true" : "false") << '\n';
    }
    return kOk;
}

// --------------------------------------------------------------------------
// decompose
// --------------------------------------------------------------------------

struct DecomposeOpts {
    CommonOpts common;
    std::string a, b, p;
};

int run_decompose(const DecomposeOpts& o) {
    std::vector<std::string> vars = parse_var_csv(o.common.vars);
    GroundMode mode = o.common.resolve(GroundMode::ExactRational);
    DivisorialValuation v(parse_poly(o.p, vars), mode);
    QuaternionSymbol s{parse_ratfunc(o.a, vars), parse_ratfunc(o.b, vars)};
    Decomposition d = decompose_at(s, v);
    std::optional<SquareClass> r;
    if (d.ramified) r = residue(*d.ramified, v);
    if (o.common.json()) {
        ordered_json j;
        j["version"] = kJsonVersion;
        j["command"] = "decompose";
        j["mode"] = to_string(mode);
        j["symbol"] = s.to_string();
        j["prime"] = v.prime.to_string();
        j["unramified"] = d.unramified.to_string();
        j["ramified"] = d.ramified ? ordered_json(d.ramified->to_string()) : ordered_json(nullptr);
        if (r) {
            j["residue"] = ordered_json{{"class", class_rep(*r, mode)},
                                        {"trivial", triviality_word(r->triviality)}};
        }
        ordered_json tr = ordered_json::array();
        for (const RewriteStep& step : d.trace)
            tr.push_back(ordered_json{{"rule", to_string(step.rule)},
                                      {"before", step.before},
                                      {"after", step.after},
                                      {"note", step.note}});
        j["trace"] = tr;
        emit(j);
    } else {
        std::cout << "unramified: " << d.unramified.to_string() << '\n';
        std::cout << "ramified: " << (d.ramified ? d.ramified->to_string() : "(none)") << '\n';
        if (r)
            std::cout << "residue of ramified part: class " << class_rep(*r, mode)
                      << ", trivial: " << triviality_word(r->triviality) << '\n';
        std::cout << "trace:\n";
        if (d.trace.empty()) std::cout << "  (none)\n";
        for (const RewriteStep& step : d.trace) {
            std::cout << "  - [" << to_string(step.rule) << "] ";
            if (!step.note.empty())
                std::cout << step.note << '\n';
            else
                std::cout << step.before << " -> " << step.after << '\n';
        }
    }
    return kOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ModeUnsupported& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kModeError;
    } catch (const DegenerateForm& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDegenerate;
    } catch (const FactorizationLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUndecided;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParseError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "unram -- exact residues of quaternion classes over rational function fields,\n"
        "quadric and conic models over discrete valuation rings, and a replayable\n"
        "verifier for the unramified class on the built-in quadric bundle.\n"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "unram 1.0.0");
    app.footer(
        "Exit codes:\n"
        "  0  success\n"
        "  2  parse or input error\n"
        "  3  undecided (a squareness query returned unknown)\n"
        "  4  degenerate form\n"
        "  5  certificate refuted\n"
        "  6  certificate incomplete\n"
        "  7  mode unsupported for the requested operation\n"
        "\n"
        "Modes: 'exact' treats ground constants exactly over the rationals; 'closed'\n"
        "treats every nonzero constant as a square. Default: closed for verify-hpt,\n"
        "exact for every other command.");

    ResidueOpts res_opts;
    auto* c_res = app.add_subcommand(
        "residue", "residue class of a quaternion symbol (a, b) at a prime divisor");
    c_res->fallthrough();
    c_res->add_option("-a,--first", res_opts.a, "first symbol entry")->required();
    c_res->add_option("-b,--second", res_opts.b, "second symbol entry")->required();
    c_res->add_option("-p,--prime", res_opts.p, "prime polynomial defining the divisor")
        ->required();
    add_common(c_res, res_opts.common, "exact");

    ClassifyOpts cls_opts;
    auto* c_cls = app.add_subcommand(
        "classify", "classify a diagonal quadric or conic model over a discrete valuation ring");
    c_cls->fallthrough();
    c_cls->add_option("entries", cls_opts.entries,
                      "comma-separated diagonal entries (3 for a conic, 4 for a quadric)")
        ->required();
    c_cls->add_option("-p,--uniformizer", cls_opts.uniformizer,
                      "uniformizer polynomial of the valuation")
        ->required();
    add_common(c_cls, cls_opts.common, "exact");

    VerifyOpts ver_opts;
    auto* c_ver = app.add_subcommand(
        "verify-hpt",
        "verify the unramified class computation on the built-in quadric bundle");
    c_ver->fallthrough();
    c_ver->add_option("-F,--form", ver_opts.F,
                      "homogeneous degree-2 base form (default: the built-in conic form)");
    add_common(c_ver, ver_opts.common, "closed");

    DiscriminantOpts dis_opts;
    auto* c_dis = app.add_subcommand(
        "discriminant", "discriminant of the quadric bundle attached to a plane form");
    c_dis->fallthrough();
    c_dis->add_option("-F,--form", dis_opts.F,
                      "homogeneous degree-2 base form (default: the built-in conic form)");
    add_common(c_dis, dis_opts.common, "exact");

    TangencyOpts tan_opts;
    auto* c_tan = app.add_subcommand(
        "tangency", "line restrictions and coordinate-point values of a plane form");
    c_tan->fallthrough();
    c_tan->add_option("-F,--form", tan_opts.F,
                      "homogeneous degree-2 base form (default: the built-in conic form)");
    add_common(c_tan, tan_opts.common, "exact");

    HilbertOpts hil_opts;
    auto* c_hil =
        app.add_subcommand("hilbert", "Hilbert symbols of a nonzero rational pair (a, b)");
    c_hil->fallthrough();
    c_hil->add_option("-a,--first", hil_opts.a, "first entry (nonzero rational)")->required();
    c_hil->add_option("-b,--second", hil_opts.b, "second entry (nonzero rational)")->required();
    auto* opt_p = c_hil->add_option("-p,--place", hil_opts.place, "finite place (prime number)");
    auto* opt_inf = c_hil->add_flag("--infinity", hil_opts.infinity, "use the real place");
    opt_p->excludes(opt_inf);
    add_common(c_hil, hil_opts.common, "exact");

    DecomposeOpts dec_opts;
    auto* c_dec = app.add_subcommand(
        "decompose", "split a quaternion symbol at a divisor into unramified and ramified parts");
    c_dec->fallthrough();
    c_dec->add_option("-a,--first", dec_opts.a, "first symbol entry")->required();
    c_dec->add_option("-b,--second", dec_opts.b, "second symbol entry")->required();
    c_dec->add_option("-p,--prime", dec_opts.p, "prime polynomial defining the divisor")
        ->required();
    add_common(c_dec, dec_opts.common, "exact");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    }

    if (app.got_subcommand(c_res)) return guarded([&] { return run_residue(res_opts); });
    if (app.got_subcommand(c_cls)) return guarded([&] { return run_classify(cls_opts); });
    if (app.got_subcommand(c_ver)) return guarded([&] { return run_verify(ver_opts); });
    if (app.got_subcommand(c_dis)) return guarded([&] { return run_discriminant(dis_opts); });
    if (app.got_subcommand(c_tan)) return guarded([&] { return run_tangency(tan_opts); });
    if (app.got_subcommand(c_hil)) return guarded([&] { return run_hilbert(hil_opts); });
    if (app.got_subcommand(c_dec)) return guarded([&] { return run_decompose(dec_opts); });
    return kParseError;
}
