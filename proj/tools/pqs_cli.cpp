// pqs: run one job against the (p,q)-Salagean harmonic family and print a JSON report.
//
//   pqs job.json
//   pqs --action bounds --preset starlike --alpha 0 --a -0.25
//   pqs job.json --alpha 0.3 --report out.json

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqs/io.hpp"

namespace {

// Sets j[key] from a flag unless the JSON already holds a different value.
template <class T>
void merge_flag(pqs::Json& j, const std::string& key, const T& value, const std::string& flag,
                std::vector<std::string>& warnings) {
    const pqs::Json incoming = value;
    if (j.contains(key)) {
        if (j[key] != incoming) warnings.push_back("JSON value for '" + key + "' wins over " + flag);
        return;
    }
    j[key] = incoming;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pqs::IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coefficient, bound and grid checks for the (p,q)-Salagean harmonic family"};
    std::string config_path, report_path, action, preset, mode, out;
    double alpha = 0, p = 1, q = 1, tol = 0;
    int m = 0, n = 0;
    std::size_t trunc = 0;
    std::vector<double> radii, a, b;
    app.add_option("config", config_path, "JSON job file");
    auto* o_action = app.add_option("--action", action, "check | bounds | extremal | verify | render | bracket");
    auto* o_preset = app.add_option("--preset", preset, "yalcin | starlike | convex | starlike_q | convex_q | convolution");
    auto* o_alpha = app.add_option("--alpha", alpha, "order alpha in [0,1)");
    auto* o_p = app.add_option("--p", p, "p in (0,1]");
    auto* o_q = app.add_option("--q", q, "q in (0,p]");
    auto* o_m = app.add_option("--m", m, "numerator operator order");
    auto* o_n = app.add_option("--n", n, "denominator operator order");
    auto* o_trunc = app.add_option("--trunc", trunc, "truncation order N");
    auto* o_radii = app.add_option("--grid-radii", radii, "comma separated radii")->delimiter(',');
    auto* o_tol = app.add_option("--tol", tol, "membership / verification tolerance");
    auto* o_mode = app.add_option("--mode", mode, "distortion mode: proof | statement");
    auto* o_out = app.add_option("--out", out, "output path for render");
    auto* o_a = app.add_option("--a", a, "analytic coefficients a_2, a_3, ...")->delimiter(',')->allow_extra_args(false);
    auto* o_b = app.add_option("--b", b, "co-analytic coefficients b_1, b_2, ...")->delimiter(',')->allow_extra_args(false);
    app.add_option("--report", report_path, "also write the report to this file");
    CLI11_PARSE(app, argc, argv);

    pqs::RunResult result;
    try {
        pqs::Json j = pqs::Json::object();
        if (!config_path.empty()) {
            try {
                j = pqs::Json::parse(read_file(config_path));
            } catch (const pqs::Json::parse_error& e) {
                throw pqs::ParseError(std::string("malformed JSON: ") + e.what());
            }
        }
        if (!j.is_object()) throw pqs::ValidationError("", "configuration must be a JSON object");
        std::vector<std::string> warnings;
        if (!j.contains("family")) j["family"] = pqs::Json::object();
        auto& fam = j["family"];
        if (*o_action) merge_flag(j, "action", action, "--action", warnings);
        if (*o_preset) merge_flag(fam, "preset", preset, "--preset", warnings);
        if (*o_alpha) merge_flag(fam, "alpha", alpha, "--alpha", warnings);
        if (*o_p) merge_flag(fam, "p", p, "--p", warnings);
        if (*o_q) merge_flag(fam, "q", q, "--q", warnings);
        if (*o_m) merge_flag(fam, "m", m, "--m", warnings);
        if (*o_n) merge_flag(fam, "n", n, "--n", warnings);
        if (*o_trunc) merge_flag(fam, "trunc", trunc, "--trunc", warnings);
        if (*o_radii) {
            if (!j.contains("grid")) j["grid"] = pqs::Json::object();
            merge_flag(j["grid"], "radii", radii, "--grid-radii", warnings);
        }
        if (*o_tol) merge_flag(j, "tol", tol, "--tol", warnings);
        if (*o_mode) merge_flag(j, "mode", mode, "--mode", warnings);
        if (*o_out) merge_flag(j, "output", out, "--out", warnings);
        if (*o_a || *o_b) {
            if (!j.contains("function")) j["function"] = pqs::Json::object();
            auto& fn = j["function"];
            if (fn.contains("weights") || fn.contains("extreme")) {
                warnings.emplace_back("JSON function source wins over --a/--b");
            } else {
                if (*o_a) merge_flag(fn, "a", a, "--a", warnings);
                if (*o_b) merge_flag(fn, "b", b, "--b", warnings);
            }
        }
        pqs::JobConfig config = pqs::parse_config(j);
        config.warnings.insert(config.warnings.end(), warnings.begin(), warnings.end());
        result = pqs::run(config);
    } catch (const pqs::InputError& e) {
        result = pqs::input_error_report(e.what());
    } catch (const pqs::IoError& e) {
        result = pqs::input_error_report(e.what());
    }

    const std::string text = result.report.dump(2);
    std::cout << text << '\n';
    if (!report_path.empty()) {
        std::ofstream rep(report_path, std::ios::binary | std::ios::trunc);
        if (!rep) {
            std::cerr << "pqs: cannot write report to '" << report_path << "'\n";
            return 2;
        }
        rep << text << '\n';
    }
    return result.exit_code;
}
