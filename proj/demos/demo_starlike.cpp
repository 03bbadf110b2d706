// Walks through the starlike preset: extreme points, a hull element, its
// bounds, and a grid check of the defining condition.

#include <cstdio>

#include "pqs/pqs.hpp"

int main() {
    using namespace pqs;
    const FamilySpec spec = presets::starlike(0.0);

    std::printf("beta = %.6f\n", beta(spec));
    for (std::size_t k = 2; k <= 4; ++k) {
        const auto cb = coeff_bounds(spec, k);
        std::printf("k=%zu  |a_k| <= %.6f  |b_k| <= %.6f\n", k, *cb.a_max, cb.b_max);
    }

    WeightVector w{std::vector<double>(4), std::vector<double>(4)};
    w.x[0] = 0.2;
    w.x[1] = 0.5;
    w.y[1] = 0.3;
    const HarmonicFunction f = combine(spec, w);
    std::printf("functional = %.6f  member_T = %s\n", coefficient_functional(f, spec),
                is_member_T(f, spec) ? "yes" : "no");

    const auto d = distortion(spec, std::abs(f.b(1)), 0.5);
    std::printf("|f(z)| on |z|=0.5 within [%.6f, %.6f]\n", d.lower, d.upper);
    std::printf("covering radius %.6f, convexity radius %.6f\n", covering_radius(spec, 0.0),
                convexity_radius(spec, 0.0));

    const auto rep = check_re_condition(f, spec, GridSpec::uniform(12, 360), 1e-9);
    std::printf("Re-condition on grid: %s (min margin %.3e over %zu points)\n", rep.passed ? "pass" : "FAIL",
                rep.min_margin, rep.checks_run);
    return rep.passed ? 0 : 1;
}
