#pragma once

// Closed-form bounds for T-family members: coefficient bounds, distortion,
// covering radius and radius of convexity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "family.hpp"

namespace pqs {

/// Two readings of the |b_1| correction in the distortion bound: divided by
/// beta (Statement) or by (1 - alpha) (Proof). Proof is the default.
enum class DistortionMode { Statement, Proof };

inline std::string_view to_string(DistortionMode m) { return m == DistortionMode::Proof ? "proof" : "statement"; }

inline DistortionMode parse_distortion_mode(std::string_view s) {
    if (s == "proof") return DistortionMode::Proof;
    if (s == "statement") return DistortionMode::Statement;
    throw InvalidArgument("unknown distortion mode '" + std::string(s) + "'");
}

struct CoeffBound {
    std::optional<double> a_max; // absent for k = 1
    double b_max = 0.0;
};

/// |a_k| <= (1-alpha)/gamma_k (k >= 2), |b_k| <= (1-alpha)/phi_k (k >= 1).
inline CoeffBound coeff_bounds(const FamilySpec& spec, std::size_t k) {
    if (k < 1) throw InvalidArgument("coefficient index must be >= 1");
    CoeffBound out;
    if (k >= 2) {
        const double g = gamma_k(spec, k);
        if (!(g > 0.0)) throw NonpositiveDenominator("gamma_" + std::to_string(k) + " <= 0");
        out.a_max = (1.0 - spec.alpha) / g;
    }
    const double p = phi_k(spec, k);
    if (!(p > 0.0)) throw NonpositiveDenominator("phi_" + std::to_string(k) + " <= 0");
    out.b_max = (1.0 - spec.alpha) / p;
    return out;
}

/// min(gamma_2, phi_2).
inline double beta(const FamilySpec& spec) { return std::min(gamma_k(spec, 2), phi_k(spec, 2)); }

/// gamma_k non-decreasing on 2..depth and phi_k non-decreasing on 1..depth.
inline bool check_thm3_hypothesis(const FamilySpec& spec, std::size_t depth) {
    if (depth < 3) throw InvalidArgument("hypothesis probe depth must be >= 3");
    for (std::size_t k = 2; k < depth; ++k) {
        if (gamma_k(spec, k + 1) < gamma_k(spec, k)) return false;
    }
    for (std::size_t k = 1; k < depth; ++k) {
        if (phi_k(spec, k + 1) < phi_k(spec, k)) return false;
    }
    return true;
}

inline bool check_thm3_hypothesis(const FamilySpec& spec) { return check_thm3_hypothesis(spec, std::max<std::size_t>(spec.trunc, 3)); }

struct DistortionBounds {
    double lower = 0.0;
    double upper = 0.0;
};

namespace detail {

inline void require_hypothesis(const FamilySpec& spec) {
    if (!check_thm3_hypothesis(spec)) throw HypothesisViolated("gamma_k / phi_k are not non-decreasing");
}

inline void require_b1(const FamilySpec& spec, double b1) {
    if (!(b1 >= 0.0 && b1 < 1.0)) throw InvalidArgument("|b_1| must lie in [0,1)");
    const double cap = (1.0 - spec.alpha) / phi_k(spec, 1);
    if (b1 > cap + kMembershipTol) throw InvalidArgument("|b_1| exceeds its coefficient bound");
}

// Divisor-dependent factor D multiplying |b_1| inside the r^2 term.
inline double b1_factor(const FamilySpec& spec, DistortionMode mode) {
    const double phi1 = phi_k(spec, 1);
    return mode == DistortionMode::Statement ? phi1 / beta(spec) : phi1 / (1.0 - spec.alpha);
}

} // namespace detail

/// Two-sided bound on |f(z)| for |z| = r. The lower bound is clamped at 0.
inline DistortionBounds distortion(const FamilySpec& spec, double b1, double r,
                                   DistortionMode mode = DistortionMode::Proof) {
    detail::require_hypothesis(spec);
    detail::require_b1(spec, b1);
    if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("r must lie in [0,1)");
    const double c = (1.0 - spec.alpha) / beta(spec) * (1.0 - detail::b1_factor(spec, mode) * b1);
    return {std::max(0.0, (1.0 - b1) * r - c * r * r), (1.0 + b1) * r + c * r * r};
}

/// Radius of a disc {|w| < R} contained in f(D). Clamped at 0.
inline double covering_radius(const FamilySpec& spec, double b1, DistortionMode mode = DistortionMode::Proof) {
    detail::require_hypothesis(spec);
    detail::require_b1(spec, b1);
    const double bt = beta(spec);
    double r = 0.0;
    if (mode == DistortionMode::Statement) {
        r = (bt - 1.0 + spec.alpha + (phi_k(spec, 1) - bt) * b1) / bt;
    } else {
        r = (1.0 - b1) - (1.0 - spec.alpha) / bt * (1.0 - detail::b1_factor(spec, mode) * b1);
    }
    return std::max(0.0, r);
}

inline constexpr std::size_t kConvexityScanMax = 512;
inline constexpr int kConvexityScanPatience = 8;

/// min_{k>=2} ((1-b1) / (k [1 - phi_1 b1/(1-alpha)]))^{1/(k-1)}, capped at 1.
///
/// The scan stops after kConvexityScanPatience consecutive increasing terms.
inline double convexity_radius(const FamilySpec& spec, double b1) {
    if (!(b1 >= 0.0 && b1 < 1.0)) throw InvalidArgument("|b_1| must lie in [0,1)");
    const double denom = 1.0 - phi_k(spec, 1) / (1.0 - spec.alpha) * b1;
    if (!(denom > 0.0)) throw DegenerateDenominator("1 - phi_1 |b_1| / (1 - alpha) <= 0");
    const double c = (1.0 - b1) / denom;
    double best = 1.0;
    double prev = 0.0;
    int rising = 0;
    for (std::size_t k = 2; k <= kConvexityScanMax; ++k) {
        const double kd = static_cast<double>(k);
        const double term = std::pow(c / kd, 1.0 / (kd - 1.0));
        best = std::min(best, term);
        if (k > 2 && term > prev) {
            if (++rising >= kConvexityScanPatience) break;
        } else {
            rising = 0;
        }
        prev = term;
    }
    return best;
}

} // namespace pqs
