#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pqs/extremal.hpp"

using Catch::Approx;
using pqs::Complex;
using pqs::HarmonicFunction;
using pqs::WeightVector;
namespace presets = pqs::presets;

TEST_CASE("extreme_h", "[extremal]") {
    const auto st = presets::starlike(0.0);
    CHECK(pqs::extreme_h(st, 1) == HarmonicFunction(64));
    CHECK(pqs::extreme_h(st, 2).a(2) == Complex{-0.25});
    CHECK(pqs::extreme_h(presets::convex(0.0), 2).a(2) == Complex{-0.0625});
    CHECK(pqs::coefficient_functional(pqs::extreme_h(st, 1), st) == 0.0);
    CHECK_THROWS_AS(pqs::extreme_h(st, 0), pqs::InvalidArgument);
    CHECK_THROWS_AS(pqs::extreme_h(st, 65), pqs::InvalidArgument);
}

TEST_CASE("extreme_g", "[extremal]") {
    const auto st = presets::starlike(0.0);
    CHECK(pqs::extreme_g(st, 2).b(2) == Complex{-0.25});
    const auto g1 = pqs::extreme_g(st, 1);
    CHECK(g1.b(1) == Complex{-1.0});
    CHECK(pqs::violates_b1_bound(g1));
    CHECK(pqs::extreme_g(presets::convex(0.0), 1).b(1) == Complex{-1.0});
    CHECK_FALSE(pqs::violates_b1_bound(pqs::extreme_g(presets::yalcin(3, 1, 0.5), 1)));
}

TEST_CASE("extreme points lie on the functional boundary with disjoint supports", "[extremal][property]") {
    for (double alpha : {0.0, 0.3}) {
        for (const auto& s : {presets::starlike(alpha), presets::convex_q(0.4, alpha), presets::yalcin(4, 2, alpha)}) {
            std::vector<HarmonicFunction> pts;
            for (std::size_t k = 1; k <= 10; ++k) {
                if (k >= 2) pts.push_back(pqs::extreme_h(s, k));
                pts.push_back(pqs::extreme_g(s, k));
            }
            for (const auto& p : pts) CHECK(std::abs(pqs::coefficient_functional(p, s) - 1.0) <= 1e-12);
            // each carries exactly one non-zero tail coefficient, never shared
            for (std::size_t u = 0; u < pts.size(); ++u) {
                for (std::size_t v = u + 1; v < pts.size(); ++v) {
                    for (std::size_t k = 1; k <= 64; ++k) {
                        const bool ua = k >= 2 && pts[u].a(k) != Complex{}, va = k >= 2 && pts[v].a(k) != Complex{};
                        const bool ub = pts[u].b(k) != Complex{}, vb = pts[v].b(k) != Complex{};
                        CHECK_FALSE((ua && va));
                        CHECK_FALSE((ub && vb));
                    }
                }
            }
        }
    }
}

TEST_CASE("combine examples", "[extremal]") {
    const auto st = presets::starlike(0.0);
    CHECK(pqs::combine(st, {{1.0}, {}}) == HarmonicFunction(64));
    const auto f = pqs::combine(st, {{0.0, 1.0}, {}});
    CHECK(f.a(2) == Complex{-0.25});
    CHECK(pqs::coefficient_functional(f, st) == Approx(1.0));
    const auto g = pqs::combine(st, {{0.0, 0.5}, {0.0, 0.5}});
    CHECK(g.a(2) == Complex{-0.125});
    CHECK(g.b(2) == Complex{-0.125});
    CHECK(g.a(1) == Complex{1.0});

    CHECK_THROWS_AS(pqs::combine(st, {{0.5}, {}}), pqs::InvalidWeights);
    CHECK_THROWS_AS(pqs::combine(st, {{1.5, -0.5}, {}}), pqs::InvalidWeights);
    CHECK_THROWS_AS(pqs::combine(st, {std::vector<double>(65, 1.0 / 65), {}}), pqs::InvalidWeights);
}

TEST_CASE("decompose examples", "[extremal]") {
    const auto st = presets::starlike(0.0);
    auto w = pqs::decompose(HarmonicFunction(64), st);
    CHECK(w.x[0] == 1.0);
    CHECK(w.total() == 1.0);

    HarmonicFunction f(64);
    f.set_a(2, -0.25);
    w = pqs::decompose(f, st);
    CHECK(w.x[1] == Approx(1.0));
    CHECK(w.x[0] == Approx(0.0).margin(1e-15));

    f.set_a(2, -0.125);
    f.set_b(2, -0.125);
    w = pqs::decompose(f, st);
    CHECK(w.x[1] == Approx(0.5));
    CHECK(w.y[1] == Approx(0.5));
    CHECK(w.x[0] == Approx(0.0).margin(1e-15));

    f.set_a(2, -0.3);
    CHECK_THROWS_AS(pqs::decompose(f, st), pqs::NotMember);
}

TEST_CASE("combine of random weights stays inside the family", "[extremal][property]") {
    std::mt19937_64 rng(31);
    std::exponential_distribution<double> E(1.0);
    for (const auto& s : {presets::starlike(0.2), presets::convex(0.0), presets::starlike_q(0.3, 0.6)}) {
        for (int t = 0; t < 300; ++t) {
            WeightVector w{std::vector<double>(12), std::vector<double>(12)};
            double sum = 0;
            for (auto* v : {&w.x, &w.y}) {
                for (auto& x : *v) sum += (x = E(rng));
            }
            for (auto* v : {&w.x, &w.y}) {
                for (auto& x : *v) x /= sum;
            }
            const auto f = pqs::combine(s, w);
            CHECK(pqs::is_member_sufficient(f, s));
            CHECK(std::abs(pqs::coefficient_functional(f, s) - (1.0 - w.x[0])) <= 1e-12);
        }
    }
}
