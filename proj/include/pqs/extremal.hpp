#pragma once

// Extreme points h_k, g_{m_k} of the closed convex hull of the T-family,
// convex combinations of them, and the inverse weight decomposition.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "family.hpp"
#include "series.hpp"

namespace pqs {

inline constexpr double kWeightSumTol = 1e-12;

/// Hull weights: x[k-1] multiplies h_k, y[k-1] multiplies g_{m_k}.
struct WeightVector {
    std::vector<double> x;
    std::vector<double> y;

    double total() const {
        return std::accumulate(x.begin(), x.end(), 0.0) + std::accumulate(y.begin(), y.end(), 0.0);
    }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// h_1 = z, h_k = z - (1-alpha)/gamma_k z^k.
inline HarmonicFunction extreme_h(const FamilySpec& spec, std::size_t k) {
    if (k < 1 || k > spec.trunc) throw InvalidArgument("extreme_h index out of range");
    HarmonicFunction f(spec.trunc);
    if (k >= 2) f.set_a(k, -(1.0 - spec.alpha) / gamma_k(spec, k));
    return f;
}

/// g_{m_k} = z + (-1)^{m+i-1} (1-alpha)/phi_k conj(z)^k.
///
/// For k = 1 the co-analytic coefficient may reach modulus 1 (e.g. every
/// starlike preset); see `violates_b1_bound`.
inline HarmonicFunction extreme_g(const FamilySpec& spec, std::size_t k) {
    if (k < 1 || k > spec.trunc) throw InvalidArgument("extreme_g index out of range");
    HarmonicFunction f(spec.trunc);
    f.set_b(k, spec.coanalytic_sign() * (1.0 - spec.alpha) / phi_k(spec, k));
    return f;
}

/// True when |b_1| >= 1, i.e. f is not sense-preserving at the origin.
inline bool violates_b1_bound(const HarmonicFunction& f) { return std::abs(f.b(1)) >= 1.0; }

/// sum_k (x_k h_k + y_k g_{m_k}).
inline HarmonicFunction combine(const FamilySpec& spec, const WeightVector& w) {
    if (w.x.size() > spec.trunc || w.y.size() > spec.trunc) throw InvalidWeights("weight vector longer than truncation");
    for (double t : w.x) {
        if (!(t >= 0.0)) throw InvalidWeights("negative or non-finite weight");
    }
    for (double t : w.y) {
        if (!(t >= 0.0)) throw InvalidWeights("negative or non-finite weight");
    }
    if (std::abs(w.total() - 1.0) > kWeightSumTol) {
        throw InvalidWeights("weights must sum to 1, got " + std::to_string(w.total()));
    }
    // The z coefficient collects every weight and equals 1 by the sum rule.
    HarmonicFunction f(spec.trunc);
    const double s = spec.coanalytic_sign();
    for (std::size_t k = 2; k <= w.x.size(); ++k) {
        if (w.x[k - 1] != 0.0) f.set_a(k, -(1.0 - spec.alpha) / gamma_k(spec, k) * w.x[k - 1]);
    }
    for (std::size_t k = 1; k <= w.y.size(); ++k) {
        if (w.y[k - 1] != 0.0) f.set_b(k, s * (1.0 - spec.alpha) / phi_k(spec, k) * w.y[k - 1]);
    }
    return f;
}

/// Inverse of `combine` on T-family members; residual mass goes to x_1.
inline WeightVector decompose(const HarmonicFunction& f, const FamilySpec& spec, double tol = kMembershipTol) {
    if (!is_member_T(f, spec, tol)) throw NotMember("decompose requires a T-family member");
    const std::size_t n = f.order();
    WeightVector w{std::vector<double>(n), std::vector<double>(n)};
    double rest = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k >= 2) {
            w.x[k - 1] = gamma_k(spec, k) * std::abs(f.a(k)) / (1.0 - spec.alpha);
            rest += w.x[k - 1];
        }
        w.y[k - 1] = phi_k(spec, k) * std::abs(f.b(k)) / (1.0 - spec.alpha);
        rest += w.y[k - 1];
    }
    w.x[0] = std::max(0.0, 1.0 - rest);
    return w;
}

} // namespace pqs
