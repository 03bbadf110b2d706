#pragma once

// JSON job configuration, dispatch, and machine-readable reports.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "family.hpp"
#include "pq_core.hpp"
#include "render.hpp"
#include "series.hpp"
#include "verify.hpp"

namespace pqs {

using Json = nlohmann::json;

enum class Action { Check, Bounds, Extremal, Verify, Render, Bracket };

inline std::string_view to_string(Action a) {
    switch (a) {
    case Action::Check: return "check";
    case Action::Bounds: return "bounds";
    case Action::Extremal: return "extremal";
    case Action::Verify: return "verify";
    case Action::Render: return "render";
    case Action::Bracket: return "bracket";
    }
    return "check";
}

/// Explicit coefficients: a starts at k = 2, b at k = 1; signed values.
struct CoefficientSource {
    std::vector<Complex> a;
    std::vector<Complex> b;
    friend bool operator==(const CoefficientSource&, const CoefficientSource&) = default;
};

struct ExtremeSource {
    char kind = 'h'; // 'h' or 'g'
    std::size_t k = 1;
    friend bool operator==(const ExtremeSource&, const ExtremeSource&) = default;
};

using FunctionSource = std::variant<std::monostate, CoefficientSource, WeightVector, ExtremeSource>;

struct JobConfig {
    FamilySpec family;
    FunctionSource function;
    Action action = Action::Check;
    GridSpec grid = GridSpec::uniform(12, 360, 0.999);
    double tol = kMembershipTol;
    DistortionMode mode = DistortionMode::Proof;
    std::string output;
    std::optional<ImageFormat> format;
    RenderOptions render;
    int bracket_k = 1;
    int bracket_m = 1;
    std::size_t k_max = 8;
    std::vector<std::string> warnings;

    friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

namespace detail {

inline Json complex_to_json(Complex c) {
    if (c.imag() == 0.0) return c.real();
    return Json::array({c.real(), c.imag()});
}

inline Complex complex_from_json(const Json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ValidationError(path, "expected a number or a [re, im] pair");
}

inline std::vector<Complex> complex_list(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ValidationError(path, "expected an array");
    std::vector<Complex> out;
    for (std::size_t t = 0; t < j.size(); ++t) out.push_back(complex_from_json(j[t], path + "/" + std::to_string(t)));
    return out;
}

inline std::vector<double> real_list(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ValidationError(path, "expected an array");
    std::vector<double> out;
    for (std::size_t t = 0; t < j.size(); ++t) {
        if (!j[t].is_number()) throw ValidationError(path + "/" + std::to_string(t), "expected a number");
        out.push_back(j[t].get<double>());
    }
    return out;
}

template <class T>
T get_as(const Json& obj, const char* key, const std::string& path) {
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(path + "/" + key, "missing or wrongly typed");
    }
}

template <class T>
std::optional<T> maybe(const Json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    return get_as<T>(obj, key, path);
}

inline Json seq_to_json(const CoeffSeq& s) {
    switch (s.kind()) {
    case CoeffSeq::Kind::One: return "1";
    case CoeffSeq::Kind::K: return "k";
    case CoeffSeq::Kind::KSquared: return "k^2";
    case CoeffSeq::Kind::Explicit: return s.values();
    }
    return "1";
}

inline CoeffSeq seq_from_json(const Json& j, std::size_t first, const std::string& path) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "1") return CoeffSeq::one();
        if (s == "k") return CoeffSeq::k();
        if (s == "k^2") return CoeffSeq::k_squared();
        throw ValidationError(path, "symbolic weights must be \"1\", \"k\" or \"k^2\"");
    }
    if (j.is_array()) {
        try {
            return CoeffSeq::explicit_values(real_list(j, path), first);
        } catch (const InvalidArgument& e) {
            throw ValidationError(path, e.what());
        }
    }
    throw ValidationError(path, "expected a symbolic name or an array");
}

inline FamilySpec family_from_json(const Json& j, std::vector<std::string>& warnings) {
    const std::string path = "/family";
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    const double alpha = maybe<double>(j, "alpha", path).value_or(0.0);
    FamilySpec spec;
    if (j.contains("preset")) {
        const auto name = get_as<std::string>(j, "preset", path);
        PresetOptions opt;
        opt.m = maybe<int>(j, "m", path).value_or(opt.m);
        opt.n = maybe<int>(j, "n", path).value_or(opt.n);
        opt.q = maybe<double>(j, "q", path).value_or(opt.q);
        opt.i = maybe<int>(j, "i", path).value_or(opt.i);
        opt.j = maybe<int>(j, "j", path).value_or(opt.j);
        opt.trunc = maybe<std::size_t>(j, "trunc", path).value_or(opt.trunc);
        if (j.contains("lambda")) opt.lambda = seq_from_json(j["lambda"], 2, path + "/lambda");
        if (j.contains("u")) opt.u = seq_from_json(j["u"], 2, path + "/u");
        if (j.contains("mu")) opt.mu = seq_from_json(j["mu"], 1, path + "/mu");
        if (j.contains("v")) opt.v = seq_from_json(j["v"], 1, path + "/v");
        try {
            spec = preset(name, alpha, opt);
        } catch (const InvalidArgument& e) {
            throw ValidationError(path, e.what());
        }
    } else {
        for (const char* key : {"m", "n", "i", "j", "lambda", "mu", "u", "v"}) {
            if (!j.contains(key)) throw ValidationError(path + "/" + key, "required without a preset");
        }
        spec.alpha = alpha;
        spec.trunc = maybe<std::size_t>(j, "trunc", path).value_or(kDefaultTruncation);
        spec.label.clear();
    }
    // Explicit fields override whatever the preset chose.
    if (auto v = maybe<int>(j, "m", path)) spec.m = *v;
    if (auto v = maybe<int>(j, "n", path)) spec.n = *v;
    if (auto v = maybe<int>(j, "i", path)) spec.i = *v;
    if (auto v = maybe<int>(j, "j", path)) spec.j = *v;
    if (j.contains("lambda")) spec.lambda = seq_from_json(j["lambda"], 2, path + "/lambda");
    if (j.contains("u")) spec.u = seq_from_json(j["u"], 2, path + "/u");
    if (j.contains("mu")) spec.mu = seq_from_json(j["mu"], 1, path + "/mu");
    if (j.contains("v")) spec.v = seq_from_json(j["v"], 1, path + "/v");
    if (j.contains("p") || (!j.contains("preset") && j.contains("q"))) {
        const double p = maybe<double>(j, "p", path).value_or(1.0);
        const double q = maybe<double>(j, "q", path).value_or(spec.pq.q());
        try {
            spec.pq = PQParams(p, q);
        } catch (const InvalidArgument& e) {
            throw ValidationError(path + "/q", e.what());
        }
    }
    const auto w = spec.validate();
    warnings.insert(warnings.end(), w.begin(), w.end());
    return spec;
}

inline Json family_to_json(const FamilySpec& s) {
    Json j = {{"m", s.m},
              {"n", s.n},
              {"i", s.i},
              {"j", s.j},
              {"alpha", s.alpha},
              {"p", s.pq.p()},
              {"q", s.pq.q()},
              {"lambda", seq_to_json(s.lambda)},
              {"mu", seq_to_json(s.mu)},
              {"u", seq_to_json(s.u)},
              {"v", seq_to_json(s.v)},
              {"trunc", s.trunc}};
    if (!s.label.empty()) j["preset"] = s.label;
    return j;
}

inline FunctionSource function_from_json(const Json& j) {
    const std::string path = "/function";
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    const bool coeffs = j.contains("a") || j.contains("b");
    const int sources = int(coeffs) + int(j.contains("weights")) + int(j.contains("extreme"));
    if (sources != 1) throw ValidationError(path, "exactly one of {a,b}, weights or extreme is required");
    if (coeffs) {
        CoefficientSource c;
        if (j.contains("a")) c.a = complex_list(j["a"], path + "/a");
        if (j.contains("b")) c.b = complex_list(j["b"], path + "/b");
        return c;
    }
    if (j.contains("weights")) {
        const Json& w = j["weights"];
        if (!w.is_object()) throw ValidationError(path + "/weights", "expected an object");
        WeightVector out;
        if (w.contains("x")) out.x = real_list(w["x"], path + "/weights/x");
        if (w.contains("y")) out.y = real_list(w["y"], path + "/weights/y");
        return out;
    }
    const Json& e = j["extreme"];
    const auto kind = get_as<std::string>(e, "kind", path + "/extreme");
    if (kind != "h" && kind != "g") throw ValidationError(path + "/extreme/kind", "must be \"h\" or \"g\"");
    const auto k = get_as<std::size_t>(e, "k", path + "/extreme");
    if (k < 1) throw ValidationError(path + "/extreme/k", "must be >= 1");
    return ExtremeSource{kind[0], k};
}

inline Json function_to_json(const FunctionSource& src) {
    if (const auto* c = std::get_if<CoefficientSource>(&src)) {
        Json a = Json::array(), b = Json::array();
        for (auto v : c->a) a.push_back(complex_to_json(v));
        for (auto v : c->b) b.push_back(complex_to_json(v));
        return {{"a", a}, {"b", b}};
    }
    if (const auto* w = std::get_if<WeightVector>(&src)) return {{"weights", {{"x", w->x}, {"y", w->y}}}};
    if (const auto* e = std::get_if<ExtremeSource>(&src)) {
        return {{"extreme", {{"kind", std::string(1, e->kind)}, {"k", e->k}}}};
    }
    return nullptr;
}

inline Action action_from_string(const std::string& s) {
    for (Action a : {Action::Check, Action::Bounds, Action::Extremal, Action::Verify, Action::Render, Action::Bracket}) {
        if (to_string(a) == s) return a;
    }
    throw ValidationError("/action", "unknown action '" + s + "'");
}

inline GridSpec grid_from_json(const Json& j) {
    const std::string path = "/grid";
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    const int angles = maybe<int>(j, "angles", path).value_or(360);
    const double r_max = maybe<double>(j, "r_max", path).value_or(0.999);
    GridSpec g;
    if (j.contains("radii")) {
        g.radii = real_list(j["radii"], path + "/radii");
        g.angles_per_circle = angles;
        g.r_max = r_max;
    } else {
        g = GridSpec::uniform(maybe<int>(j, "count", path).value_or(12), angles, r_max);
    }
    try {
        g.validate();
    } catch (const InvalidArgument& e) {
        throw ValidationError(path, e.what());
    }
    return g;
}

} // namespace detail

/// Parses and validates a job. Throws ParseError for malformed JSON and
/// ValidationError (with a field path) for invariant breaches; tolerated
/// deviations end up in `warnings`.
inline JobConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ValidationError("", "configuration must be a JSON object");
    JobConfig c;
    c.action = detail::action_from_string(detail::get_as<std::string>(j, "action", ""));
    if (!j.contains("family")) throw ValidationError("/family", "required");
    c.family = detail::family_from_json(j["family"], c.warnings);
    if (j.contains("function")) c.function = detail::function_from_json(j["function"]);
    if (std::holds_alternative<std::monostate>(c.function) && c.action != Action::Bracket) {
        throw ValidationError("/function", "required for action " + std::string(to_string(c.action)));
    }
    if (j.contains("grid")) c.grid = detail::grid_from_json(j["grid"]);
    c.tol = detail::maybe<double>(j, "tol", "").value_or(kMembershipTol);
    if (!(c.tol > 0.0)) throw ValidationError("/tol", "must be > 0");
    if (auto m = detail::maybe<std::string>(j, "mode", "")) {
        try {
            c.mode = parse_distortion_mode(*m);
        } catch (const InvalidArgument& e) {
            throw ValidationError("/mode", e.what());
        }
    }
    c.output = detail::maybe<std::string>(j, "output", "").value_or("");
    if (j.contains("render")) {
        const Json& r = j["render"];
        const std::string path = "/render";
        c.render.circles = detail::maybe<int>(r, "circles", path).value_or(c.render.circles);
        c.render.rays = detail::maybe<int>(r, "rays", path).value_or(c.render.rays);
        c.render.samples = detail::maybe<int>(r, "samples", path).value_or(c.render.samples);
        c.render.size = detail::maybe<int>(r, "size", path).value_or(c.render.size);
        c.render.r_max = detail::maybe<double>(r, "r_max", path).value_or(c.render.r_max);
        if (auto fmt = detail::maybe<std::string>(r, "format", path)) {
            try {
                c.format = parse_image_format(*fmt);
            } catch (const InvalidArgument& e) {
                throw ValidationError("/render/format", e.what());
            }
        }
        if (c.render.circles < 8 || c.render.rays < 8) throw ValidationError(path, "need >= 8 circles and >= 8 rays");
    }
    if (j.contains("bracket")) {
        c.bracket_k = detail::maybe<int>(j["bracket"], "k", "/bracket").value_or(1);
        c.bracket_m = detail::maybe<int>(j["bracket"], "m", "/bracket").value_or(1);
        if (c.bracket_k < 0 || c.bracket_m < 0) throw ValidationError("/bracket", "k and m must be >= 0");
    }
    c.k_max = detail::maybe<std::size_t>(j, "k_max", "").value_or(std::min<std::size_t>(8, c.family.trunc));
    if (c.k_max < 1 || c.k_max > c.family.trunc) throw ValidationError("/k_max", "must lie in 1..trunc");
    if (c.action == Action::Render && c.output.empty()) throw ValidationError("/output", "render needs an output path");
    return c;
}

inline JobConfig parse_config(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

inline JobConfig parse_config(const char* text) { return parse_config(std::string_view(text)); }
inline JobConfig parse_config(const std::string& text) { return parse_config(std::string_view(text)); }

/// Inverse of parse_config (warnings are not serialized; parsing regenerates them).
inline Json serialize_config(const JobConfig& c) {
    Json j = {{"action", std::string(to_string(c.action))},
              {"family", detail::family_to_json(c.family)},
              {"grid", {{"radii", c.grid.radii}, {"angles", c.grid.angles_per_circle}, {"r_max", c.grid.r_max}}},
              {"tol", c.tol},
              {"mode", std::string(to_string(c.mode))},
              {"output", c.output},
              {"render",
               {{"circles", c.render.circles},
                {"rays", c.render.rays},
                {"samples", c.render.samples},
                {"size", c.render.size},
                {"r_max", c.render.r_max}}},
              {"bracket", {{"k", c.bracket_k}, {"m", c.bracket_m}}},
              {"k_max", c.k_max}};
    if (c.format) j["render"]["format"] = std::string(to_string(*c.format));
    if (!std::holds_alternative<std::monostate>(c.function)) j["function"] = detail::function_to_json(c.function);
    return j;
}

/// The function a job refers to, materialized at the family truncation.
inline HarmonicFunction materialize(const JobConfig& c) {
    const FamilySpec& s = c.family;
    if (const auto* src = std::get_if<CoefficientSource>(&c.function)) {
        if (src->a.size() + 1 > s.trunc || src->b.size() > s.trunc) {
            throw ValidationError("/function", "more coefficients than the truncation order");
        }
        return HarmonicFunction::from_tails(src->a, src->b, s.trunc);
    }
    if (const auto* w = std::get_if<WeightVector>(&c.function)) return combine(s, *w);
    if (const auto* e = std::get_if<ExtremeSource>(&c.function)) {
        if (e->k > s.trunc) throw ValidationError("/function/extreme/k", "exceeds truncation");
        return e->kind == 'h' ? extreme_h(s, e->k) : extreme_g(s, e->k);
    }
    return HarmonicFunction(s.trunc);
}

inline Json report_to_json(const VerificationReport& r) {
    Json j = {{"passed", r.passed},
              {"min_margin", std::isfinite(r.min_margin) ? Json(r.min_margin) : Json(nullptr)},
              {"checks_run", r.checks_run},
              {"notes", r.notes}};
    j["witness"] = r.witness ? Json::array({r.witness->real(), r.witness->imag()}) : Json(nullptr);
    return j;
}

struct RunResult {
    Json report;
    int exit_code = 0;
};

namespace detail {

inline Json run_check(const JobConfig& c, const HarmonicFunction& f, int& exit_code) {
    const double fn = coefficient_functional(f, c.family);
    const bool suff = is_member_sufficient(f, c.family, c.tol);
    if (!suff) exit_code = 1;
    return {{"functional", fn},
            {"member_sufficient", suff},
            {"sign_patterned", has_t_sign_pattern(f, c.family)},
            {"member_T", is_member_T(f, c.family, c.tol)},
            {"b1_abs", std::abs(f.b(1))}};
}

inline Json run_bounds(const JobConfig& c, const HarmonicFunction& f, std::vector<std::string>& warnings) {
    const FamilySpec& s = c.family;
    const double b1 = std::abs(f.b(1));
    Json coeffs = Json::array();
    for (std::size_t k = 1; k <= c.k_max; ++k) {
        try {
            const CoeffBound cb = coeff_bounds(s, k);
            coeffs.push_back({{"k", k}, {"a_max", cb.a_max ? Json(*cb.a_max) : Json(nullptr)}, {"b_max", cb.b_max}});
        } catch (const NonpositiveDenominator& e) {
            warnings.emplace_back(e.what());
            coeffs.push_back({{"k", k}, {"a_max", nullptr}, {"b_max", nullptr}});
        }
    }
    const bool hyp = check_thm3_hypothesis(s);
    Json out = {{"beta", beta(s)},
                {"b1", b1},
                {"mode", std::string(to_string(c.mode))},
                {"hypothesis", hyp},
                {"coeff_bounds", coeffs},
                {"distortion", nullptr},
                {"covering_radius", nullptr},
                {"convexity_radius", nullptr}};
    try {
        Json dist = Json::array();
        for (double r : c.grid.radii) {
            const auto d = distortion(s, b1, r, c.mode);
            dist.push_back({{"r", r}, {"lower", d.lower}, {"upper", d.upper}});
        }
        out["distortion"] = dist;
        out["covering_radius"] = covering_radius(s, b1, c.mode);
    } catch (const Error& e) {
        warnings.emplace_back(std::string("distortion/covering unavailable: ") + e.what());
    }
    try {
        out["convexity_radius"] = convexity_radius(s, b1);
    } catch (const Error& e) {
        warnings.emplace_back(std::string("convexity radius unavailable: ") + e.what());
    }
    return out;
}

inline Json run_extremal(const JobConfig& c, const HarmonicFunction& f, std::vector<std::string>& warnings) {
    const FamilySpec& s = c.family;
    Json pts = Json::array();
    for (std::size_t k = 1; k <= c.k_max; ++k) {
        const HarmonicFunction h = extreme_h(s, k);
        pts.push_back({{"kind", "h"}, {"k", k}, {"coefficient", complex_to_json(h.a(k) * double(k >= 2))},
                       {"functional", coefficient_functional(h, s)}, {"violates_b1_bound", false}});
        const HarmonicFunction g = extreme_g(s, k);
        const bool bad = violates_b1_bound(g);
        if (bad) warnings.push_back("extreme point g_" + std::to_string(k) + " has |b_1| >= 1 (not univalent)");
        pts.push_back({{"kind", "g"}, {"k", k}, {"coefficient", complex_to_json(g.b(k))},
                       {"functional", coefficient_functional(g, s)}, {"violates_b1_bound", bad}});
    }
    Json out = {{"extreme_points", pts}, {"decomposition", nullptr}};
    if (is_member_T(f, s, c.tol)) {
        const WeightVector w = decompose(f, s, c.tol);
        out["decomposition"] = {{"x", w.x}, {"y", w.y}};
    } else {
        warnings.emplace_back("function is not a T-family member; no decomposition");
    }
    return out;
}

inline Json run_verify(const JobConfig& c, const HarmonicFunction& f, int& exit_code,
                       std::vector<std::string>& warnings) {
    const FamilySpec& s = c.family;
    const VerificationReport re = check_re_condition(f, s, c.grid, c.tol);
    const VerificationReport sp = check_sense_preserving(f, c.grid, c.tol);
    bool passed = re.passed && sp.passed;
    Json out = {{"re_condition", report_to_json(re)}, {"sense_preserving", report_to_json(sp)}};
    if (is_member_T(f, s, c.tol) && check_thm3_hypothesis(s)) {
        const VerificationReport d = check_distortion(f, s, c.mode, c.grid.radii, c.tol);
        out["distortion"] = report_to_json(d);
        passed = passed && d.passed;
    }
    if (has_t_sign_pattern(f, s) && coefficient_functional(f, s) >= 1.05) {
        const VerificationReport np = necessity_probe(f, s);
        out["necessity"] = report_to_json(np);
        if (np.passed) warnings.emplace_back("necessity probe found a violation on the positive real axis");
    }
    out["passed"] = passed;
    if (!passed) exit_code = 1;
    return out;
}

inline Json run_render(const JobConfig& c, const HarmonicFunction& f) {
    ImageFormat fmt = ImageFormat::Svg;
    if (c.format) {
        fmt = *c.format;
    } else if (c.output.size() >= 4 && c.output.substr(c.output.size() - 4) == ".ppm") {
        fmt = ImageFormat::Ppm;
    }
    const std::size_t bytes = render(f, c.render, c.output, fmt);
    return {{"path", c.output}, {"format", std::string(to_string(fmt))}, {"bytes", bytes}};
}

} // namespace detail

/// Runs one job. Exit codes: 0 success, 1 verification failure, 2 input error.
inline RunResult run(const JobConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult res;
    std::vector<std::string> warnings = c.warnings;
    Json results;
    try {
        const HarmonicFunction f = materialize(c);
        if (violates_b1_bound(f)) warnings.emplace_back("|b_1| >= 1: function is not sense-preserving at 0");
        switch (c.action) {
        case Action::Check: results = detail::run_check(c, f, res.exit_code); break;
        case Action::Bounds: results = detail::run_bounds(c, f, warnings); break;
        case Action::Extremal: results = detail::run_extremal(c, f, warnings); break;
        case Action::Verify: results = detail::run_verify(c, f, res.exit_code, warnings); break;
        case Action::Render: results = detail::run_render(c, f); break;
        case Action::Bracket:
            results = {{"k", c.bracket_k},
                       {"m", c.bracket_m},
                       {"p", c.family.pq.p()},
                       {"q", c.family.pq.q()},
                       {"bracket", bracket(c.bracket_k, c.family.pq)},
                       {"bracket_pow", bracket_pow(c.bracket_k, c.bracket_m, c.family.pq)}};
            break;
        }
    } catch (const InputError& e) {
        res.exit_code = 2;
        results = {{"error", e.what()}};
    } catch (const IoError& e) {
        res.exit_code = 2;
        results = {{"error", e.what()}};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    res.report = {{"action", std::string(to_string(c.action))},
                  {"inputs", serialize_config(c)},
                  {"results", results},
                  {"warnings", warnings},
                  {"timings", {{"total_ms", ms}}},
                  {"exit_code", res.exit_code}};
    return res;
}

/// Report for a job that failed before it could be parsed.
inline RunResult input_error_report(const std::string& message) {
    RunResult res;
    res.exit_code = 2;
    res.report = {{"action", nullptr},
                  {"inputs", nullptr},
                  {"results", {{"error", message}}},
                  {"warnings", Json::array()},
                  {"timings", {{"total_ms", 0.0}}},
                  {"exit_code", 2}};
    return res;
}

} // namespace pqs
