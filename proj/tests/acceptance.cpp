// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pqs/pqs.hpp"

using namespace pqs;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

std::mt19937_64 rng(20240601);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Complex in_disc(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi));
}

std::vector<FamilySpec> all_presets(double alpha) {
    return {presets::yalcin(2, 1, alpha),
            presets::starlike(alpha),
            presets::convex(alpha),
            presets::starlike_q(0.5, alpha),
            presets::convex_q(0.5, alpha),
            presets::convolution(CoeffSeq::k_squared(), CoeffSeq::k_squared(), 0, CoeffSeq::k(), CoeffSeq::k(), 1,
                                 alpha)};
}

// Random hull weights on h_1..h_K and g_1..g_K, summing to `total`.
WeightVector random_weights(std::size_t K, double total) {
    WeightVector w;
    w.x.resize(K);
    w.y.resize(K);
    std::exponential_distribution<double> ex(1.0);
    double s = 0.0;
    for (auto& t : w.x) s += (t = ex(rng));
    for (auto& t : w.y) s += (t = ex(rng));
    for (auto& t : w.x) t *= total / s;
    for (auto& t : w.y) t *= total / s;
    return w;
}

// Sign-patterned function whose coefficient functional equals the weight
// mass placed away from h_1.
HarmonicFunction patterned(const FamilySpec& spec, const WeightVector& w) {
    HarmonicFunction f(spec.trunc);
    for (std::size_t k = 2; k <= w.x.size(); ++k) f.set_a(k, -w.x[k - 1] * (1 - spec.alpha) / gamma_k(spec, k));
    for (std::size_t k = 1; k <= w.y.size(); ++k) {
        f.set_b(k, spec.coanalytic_sign() * w.y[k - 1] * (1 - spec.alpha) / phi_k(spec, k));
    }
    return f;
}

HarmonicFunction random_member(const FamilySpec& spec, std::size_t K = 10) {
    return combine(spec, random_weights(K, 1.0));
}

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome ac1() {
    Outcome o;
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const int k = std::uniform_int_distribution<int>(2, 50)(rng);
        const double p = uniform(0.05, 1.0);
        const double q = uniform(0.01, p);
        const PQParams pq(p, q);
        const double lhs = bracket(k, pq);
        const double rhs = p * bracket(k - 1, pq) + std::pow(q, k - 1);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        const PQParams pp(p, p);
        if (bracket(k, pp) != k * std::pow(p, k - 1)) o.fail("coincident bracket not exact at k=" + std::to_string(k));
    }
    if (worst > 1e-12) o.fail(fmt("recurrence rel. error %.3e", worst));
    if (o.ok) o.detail = fmt("max rel. error %.2e", worst);
    return o;
}

Outcome ac2() {
    Outcome o;
    std::vector<PQParams> pqs;
    while (pqs.size() < 20) {
        const double p = uniform(0.2, 1.0);
        const double q = uniform(0.05, p - 0.02);
        if (q > 0.0) pqs.emplace_back(p, q);
    }
    double worst = 0.0;
    for (int poly = 0; poly < 50; ++poly) {
        std::vector<Complex> c(33);
        for (auto& x : c) x = in_disc(1.0);
        const auto pq = pqs[poly % pqs.size()];
        const auto d = pq_derive_series(c, pq);
        for (int t = 0; t < 100; ++t) {
            Complex z = in_disc(0.9);
            if (z == Complex{}) z = 0.5;
            const Complex s = horner(d, z);
            const Complex qv = pq_derive_quotient([&](Complex w) { return horner(c, w); }, z, pq);
            worst = std::max(worst, std::abs(s - qv));
        }
        // every p != q pair is exercised against the same polynomial too
        if (poly < 20) {
            const auto pq2 = pqs[(poly + 7) % pqs.size()];
            const auto d2 = pq_derive_series(c, pq2);
            const Complex z = in_disc(0.9);
            worst = std::max(worst, std::abs(horner(d2, z) - pq_derive_quotient([&](Complex w) { return horner(c, w); }, z, pq2)));
        }
    }
    if (worst > 1e-10) o.fail(fmt("max abs. difference %.3e", worst));
    else o.detail = fmt("max abs. difference %.2e", worst);
    return o;
}

Outcome ac3() {
    Outcome o;
    double worst = 0.0;
    std::vector<PQParams> pqs{PQParams::classical(), PQParams::q_only(0.5)};
    for (const auto& spec : all_presets(0.0)) pqs.push_back(spec.pq);
    for (const auto& pq : pqs) {
        HarmonicFunction f(64);
        for (std::size_t k = 2; k <= 64; ++k) f.set_a(k, in_disc(1.0));
        for (std::size_t k = 1; k <= 64; ++k) f.set_b(k, in_disc(1.0));
        for (int m = 0; m <= 6; ++m) {
            const auto closed = salagean(f, m, pq);
            const auto ia = iterated_salagean_check(f.analytic(), m, pq);
            const auto ib = iterated_salagean_check(f.coanalytic(), m, pq);
            const double sign = parity_sign(m);
            for (std::size_t k = 1; k <= 64; ++k) {
                const double sa = std::max(std::abs(ia[k]), 1e-300), sb = std::max(std::abs(ib[k]), 1e-300);
                worst = std::max(worst, std::abs(closed.a(k) - ia[k]) / sa);
                if (std::abs(ib[k]) > 0.0) worst = std::max(worst, std::abs(closed.b(k) - sign * ib[k]) / sb);
            }
        }
    }
    if (worst > 1e-12) o.fail(fmt("max rel. difference %.3e", worst));
    else o.detail = fmt("max rel. difference %.2e", worst);
    return o;
}

Outcome ac4() {
    Outcome o;
    const auto grid = GridSpec::uniform(12, 360, 0.999);
    const double alphas[] = {0.0, 0.25, 0.5};
    double worst_re = 1e300, worst_sp = 1e300;
    std::size_t n = 0;
    for (std::size_t pi = 0; pi < 6; ++pi) {
        for (int t = 0; t < 100; ++t) {
            const auto spec = all_presets(alphas[t % 3])[pi];
            const auto f = random_member(spec, 12);
            const auto re = check_re_condition(f, spec, grid, 1e-9);
            const auto sp = check_sense_preserving(f, grid, 1e-9);
            worst_re = std::min(worst_re, re.min_margin);
            worst_sp = std::min(worst_sp, sp.min_margin);
            ++n;
            if (!re.passed) o.fail(spec.label + ": Re-condition margin " + fmt("%.3e", re.min_margin));
            if (!sp.passed) o.fail(spec.label + ": sense-preserving margin " + fmt("%.3e", sp.min_margin));
        }
    }
    if (o.ok) o.detail = std::to_string(n) + " functions, min margins " + fmt("%.2e", worst_re) + " / " + fmt("%.2e", worst_sp);
    return o;
}

Outcome ac5() {
    Outcome o;
    const double alphas[] = {0.0, 0.25, 0.5};
    std::size_t found = 0;
    for (std::size_t pi = 0; pi < 6; ++pi) {
        for (int t = 0; t < 100; ++t) {
            const auto spec = all_presets(alphas[t % 3])[pi];
            auto w = random_weights(12, 1.0);
            w.x[0] = 0.0; // h_1 carries no functional mass
            const double mass = w.total();
            const double target = uniform(1.05, 2.0);
            for (auto& x : w.x) x *= target / mass;
            for (auto& y : w.y) y *= target / mass;
            const auto f = patterned(spec, w);
            try {
                const auto rep = necessity_probe(f, spec);
                if (rep.passed) ++found;
                else o.fail(spec.label + ": no violation for functional " + fmt("%.4f", coefficient_functional(f, spec)));
            } catch (const Error& e) {
                o.fail(spec.label + ": " + e.what());
            }
        }
    }
    if (o.ok) o.detail = std::to_string(found) + " / 600 violations found";
    return o;
}

Outcome ac6() {
    Outcome o;
    double worst = 0.0;
    for (double alpha : {0.0, 0.3, 0.7}) {
        for (const auto& spec : all_presets(alpha)) {
            for (std::size_t k = 2; k <= 8; ++k) {
                worst = std::max(worst, std::abs(coefficient_functional(extreme_h(spec, k), spec) - 1.0));
                worst = std::max(worst, std::abs(coefficient_functional(extreme_g(spec, k), spec) - 1.0));
            }
        }
    }
    if (worst > 1e-12) o.fail(fmt("max |functional - 1| = %.3e", worst));
    else o.detail = fmt("max |functional - 1| = %.2e", worst);
    return o;
}

Outcome ac7() {
    Outcome o;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto spec = all_presets(uniform(0.0, 0.9))[t % 6];
        auto w = random_weights(16, 1.0);
        const double shrink = uniform(0.2, 1.0); // interior points put the slack on h_1
        for (auto& x : w.x) x *= shrink;
        for (auto& y : w.y) y *= shrink;
        const auto f = patterned(spec, w);
        const auto back = combine(spec, decompose(f, spec));
        worst = std::max(worst, max_coeff_diff(f, back));
    }
    if (worst > 1e-12) o.fail(fmt("max coefficient difference %.3e", worst));
    else o.detail = fmt("max coefficient difference %.2e", worst);
    return o;
}

Outcome ac8() {
    Outcome o;
    const std::vector<double> radii{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t checked = 0, skipped = 0;
    for (double alpha : {0.0, 0.25, 0.5}) {
        for (const auto& spec : {presets::starlike(alpha), presets::convex(alpha)}) {
            if (!check_thm3_hypothesis(spec)) {
                o.fail(spec.label + ": hypothesis fails");
                continue;
            }
            std::vector<HarmonicFunction> fs;
            for (std::size_t k = 1; k <= 8; ++k) fs.push_back(extreme_h(spec, k));
            for (std::size_t k = 1; k <= 8; ++k) {
                auto g = extreme_g(spec, k);
                if (violates_b1_bound(g)) {
                    ++skipped;
                    continue;
                }
                fs.push_back(std::move(g));
            }
            for (int t = 0; t < 100; ++t) fs.push_back(random_member(spec, 10));
            for (const auto& f : fs) {
                const auto rep = check_distortion(f, spec, DistortionMode::Proof, radii, 1e-9);
                ++checked;
                if (!rep.passed) o.fail(spec.label + fmt(": envelope margin %.3e", rep.min_margin));
            }
            for (double r : radii) {
                const auto s = distortion(spec, 0.0, r, DistortionMode::Statement);
                const auto p = distortion(spec, 0.0, r, DistortionMode::Proof);
                if (std::abs(s.lower - p.lower) > 1e-12 || std::abs(s.upper - p.upper) > 1e-12) {
                    o.fail(spec.label + ": modes disagree at b1 = 0");
                }
            }
        }
    }
    if (o.ok) o.detail = std::to_string(checked) + " functions, " + std::to_string(skipped) + " extreme points with |b_1| = 1 excluded";
    return o;
}

Outcome ac9() {
    Outcome o;
    double worst = 0.0;
    for (double alpha : {0.0, 0.25, 0.5}) {
        for (const auto& spec : {presets::starlike(alpha), presets::convex(alpha), presets::yalcin(2, 1, alpha)}) {
            const double cap = std::min(0.99, (1 - alpha) / phi_k(spec, 1));
            for (double b1 : {0.0, 0.25 * cap, 0.5 * cap, 0.9 * cap}) {
                const double lim = distortion(spec, b1, 1.0 - 1e-15).lower;
                const double r = covering_radius(spec, b1);
                worst = std::max(worst, std::abs(lim - r));
            }
        }
    }
    if (worst > 1e-12) o.fail(fmt("limit mismatch %.3e", worst));
    const auto st = presets::starlike(0.0);
    const double r0 = covering_radius(st, 0.0);
    if (std::abs(r0 - 0.75) > 1e-12) o.fail(fmt("starlike covering radius %.15f", r0));
    const auto h2 = extreme_h(st, 2);
    double mn = 1e300;
    for (int t = 0; t < 3600; ++t) mn = std::min(mn, std::abs(evaluate(h2, std::polar(0.9999, 2 * std::numbers::pi * t / 3600))));
    if (mn < 0.75 - 1e-3) o.fail(fmt("min |h_2| on r = 0.9999 is %.6f", mn));
    if (o.ok) o.detail = fmt("limit mismatch %.2e", worst) + fmt(", min |h_2(0.9999 e^it)| = %.6f", mn);
    return o;
}

Outcome ac10() {
    Outcome o;
    const auto st = presets::starlike(0.0);
    std::vector<HarmonicFunction> fs;
    std::size_t skipped = 0;
    for (std::size_t k = 1; k <= 6; ++k) fs.push_back(extreme_h(st, k));
    for (std::size_t k = 1; k <= 6; ++k) {
        auto g = extreme_g(st, k);
        if (violates_b1_bound(g)) {
            ++skipped;
            continue;
        }
        fs.push_back(std::move(g));
    }
    for (int t = 0; t < 50; ++t) fs.push_back(random_member(st, 8));
    double worst = 1e300;
    for (const auto& f : fs) {
        const double formula = convexity_radius(st, std::abs(f.b(1)));
        const double brute = brute_convexity_radius(f);
        worst = std::min(worst, brute - formula);
        if (brute < formula - 1e-3) o.fail(fmt("brute %.4f", brute) + fmt(" < formula %.4f", formula));
    }
    if (convexity_radius(st, 0.0) != 0.5) o.fail("formula at b1 = 0 is not 0.5");
    if (o.ok) {
        o.detail = std::to_string(fs.size()) + " functions, min(brute - formula) = " + fmt("%.4f", worst) + ", " +
                   std::to_string(skipped) + " extreme point with |b_1| = 1 excluded";
    }
    return o;
}

Outcome ac11() {
    Outcome o;
    const char* docs[] = {
        R"({"family":{"preset":"starlike","alpha":0.0},"function":{"a":[-0.25],"b":[]},"action":"check"})",
        R"({"family":{"preset":"convex_q","q":0.3,"alpha":0.1},"function":{"weights":{"x":[0.5,0.25],"y":[0.25]}},"action":"extremal","mode":"statement"})",
        R"({"family":{"preset":"yalcin","m":3,"n":1,"alpha":0.2},"function":{"extreme":{"kind":"g","k":3}},"action":"verify","grid":{"radii":[0.1,0.5,0.9],"angles":90}})"};
    for (const char* d : docs) {
        const auto c = parse_config(d);
        if (!(parse_config(serialize_config(c)) == c)) o.fail(std::string("round trip differs for ") + d);
    }
    const auto res = run(parse_config(
        R"({"family":{"preset":"starlike","alpha":0.0},"function":{"a":[-0.25]},"action":"bounds"})"));
    const auto& r = res.report["results"];
    if (r["beta"].get<double>() != 4.0) o.fail("beta != 4");
    if (std::abs(r["covering_radius"].get<double>() - 0.75) > 1e-12) o.fail("covering != 0.75");
    if (r["convexity_radius"].get<double>() != 0.5) o.fail("convexity radius != 0.5");
    const auto dir = std::filesystem::temp_directory_path();
    HarmonicFunction f = extreme_h(presets::starlike(0.0), 2);
    for (auto fmt_ : {ImageFormat::Ppm, ImageFormat::Svg}) {
        const std::string ext(to_string(fmt_));
        const auto p1 = (dir / ("pqs_acc_1." + ext)).string(), p2 = (dir / ("pqs_acc_2." + ext)).string();
        render(f, {}, p1, fmt_);
        render(f, {}, p2, fmt_);
        const auto s1 = slurp(p1), s2 = slurp(p2);
        if (s1.empty() || s1 != s2) o.fail(ext + " output differs between runs");
        std::filesystem::remove(p1);
        std::filesystem::remove(p2);
    }
    if (o.ok) o.detail = "round trip, beta = 4, covering = 0.75, convexity = 0.5, render bytes identical";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"AC1 bracket recurrence and coincident limit", ac1},
        {"AC2 series derivative vs difference quotient", ac2},
        {"AC3 closed-form vs iterated operator", ac3},
        {"AC4 convex combinations satisfy the Re-condition", ac4},
        {"AC5 functional >= 1.05 forces a violation", ac5},
        {"AC6 extreme points are sharp", ac6},
        {"AC7 decompose / combine round trip", ac7},
        {"AC8 distortion envelope", ac8},
        {"AC9 covering radius consistency", ac9},
        {"AC10 convexity radius domination", ac10},
        {"AC11 config, report and render", ac11},
    };
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %s: %s (%.0f ms)\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str(), ms);
        std::fflush(stdout);
        if (!o.ok) ++failures;
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%zu criteria, %d failed, %.1f s\n", criteria.size(), failures, total);
    return failures == 0 ? 0 : 1;
}
