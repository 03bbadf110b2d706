#pragma once

// Brute-force numerical oracles over grids in the unit disc.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "series.hpp"

namespace pqs {

/// Polar sampling grid: every radius is crossed with angles_per_circle equally
/// spaced angles starting at 0.
struct GridSpec {
    std::vector<double> radii;
    int angles_per_circle = 360;
    double r_max = 0.999;

    /// `count` radii r_max * t / count for t = 1..count.
    static GridSpec uniform(int count, int angles = 360, double r_max = 0.999) {
        GridSpec g;
        g.angles_per_circle = angles;
        g.r_max = r_max;
        for (int t = 1; t <= count; ++t) g.radii.push_back(r_max * t / count);
        return g;
    }

    void validate() const {
        if (radii.empty()) throw InvalidArgument("grid needs at least one radius");
        if (angles_per_circle < 8) throw InvalidArgument("grid needs at least 8 angles per circle");
        if (!(r_max < 1.0)) throw InvalidArgument("grid r_max must be < 1");
        for (double r : radii) {
            if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("grid radii must lie in (0,1)");
        }
    }

    double angle(int t) const { return 2.0 * std::numbers::pi * t / angles_per_circle; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct VerificationReport {
    bool passed = false;
    double min_margin = std::numeric_limits<double>::infinity();
    std::optional<Complex> witness;
    std::size_t checks_run = 0;
    std::vector<std::string> notes;
};

/// Order-independent min reduction: smaller margin wins, ties go to the
/// lexicographically smaller (r, theta).
class MarginTracker {
public:
    void offer(double margin, double r, double theta) {
        ++count_;
        if (!best_ || margin < best_->margin ||
            (margin == best_->margin && (r < best_->r || (r == best_->r && theta < best_->theta)))) {
            best_ = Entry{margin, r, theta};
        }
    }

    void merge(const MarginTracker& o) {
        if (o.best_) {
            const auto c = count_;
            offer(o.best_->margin, o.best_->r, o.best_->theta);
            count_ = c;
        }
        count_ += o.count_;
    }

    std::size_t count() const noexcept { return count_; }

    VerificationReport report(double tol) const {
        VerificationReport rep;
        rep.checks_run = count_;
        if (best_) {
            rep.min_margin = best_->margin;
            rep.witness = std::polar(best_->r, best_->theta);
        }
        rep.passed = rep.min_margin >= -tol;
        return rep;
    }

private:
    struct Entry {
        double margin;
        double r;
        double theta;
    };
    std::optional<Entry> best_;
    std::size_t count_ = 0;
};

/// min over the grid of Re(ratio) - alpha. Points where the denominator
/// vanishes are skipped and counted in the notes.
inline VerificationReport check_re_condition(const HarmonicFunction& f, const FamilySpec& spec, const GridSpec& grid,
                                             double tol) {
    grid.validate();
    const RatioForm form(f, spec);
    MarginTracker tracker;
    std::size_t zero_hits = 0;
    for (double r : grid.radii) {
        for (int t = 0; t < grid.angles_per_circle; ++t) {
            const double th = grid.angle(t);
            const auto w = form.try_at(std::polar(r, th));
            if (!w) {
                ++zero_hits;
                continue;
            }
            tracker.offer(w->real() - spec.alpha, r, th);
        }
    }
    VerificationReport rep = tracker.report(tol);
    if (zero_hits > 0) rep.notes.push_back(std::to_string(zero_hits) + " grid point(s) with vanishing denominator skipped");
    if (tracker.count() == 0) {
        rep.passed = false;
        rep.notes.emplace_back("no grid point could be evaluated");
    }
    return rep;
}

/// min over the grid of 1 - |g'/h'|. Critical points of h count as failures
/// with margin -1.
inline VerificationReport check_sense_preserving(const HarmonicFunction& f, const GridSpec& grid, double tol) {
    grid.validate();
    MarginTracker tracker;
    std::size_t critical = 0;
    for (double r : grid.radii) {
        for (int t = 0; t < grid.angles_per_circle; ++t) {
            const double th = grid.angle(t);
            double margin = -1.0;
            try {
                margin = 1.0 - std::abs(dilatation(f, std::polar(r, th)));
            } catch (const VanishingDerivative&) {
                ++critical;
            }
            tracker.offer(margin, r, th);
        }
    }
    VerificationReport rep = tracker.report(tol);
    if (critical > 0) rep.notes.push_back(std::to_string(critical) + " critical point(s) of h found");
    return rep;
}

inline constexpr int kDistortionAngles = 720;

/// Samples |f(r e^{i theta})| on 720 angles per radius against the distortion
/// envelope; the margin is the distance to the nearer bound.
inline VerificationReport check_distortion(const HarmonicFunction& f, const FamilySpec& spec, DistortionMode mode,
                                           const std::vector<double>& radii, double tol) {
    const double b1 = std::abs(f.b(1));
    MarginTracker tracker;
    for (double r : radii) {
        const DistortionBounds bd = distortion(spec, b1, r, mode);
        for (int t = 0; t < kDistortionAngles; ++t) {
            const double th = 2.0 * std::numbers::pi * t / kDistortionAngles;
            const double mod = std::abs(evaluate(f, std::polar(r, th)));
            tracker.offer(std::min(mod - bd.lower, bd.upper - mod), r, th);
        }
    }
    return tracker.report(tol);
}

inline constexpr double kConvexSlack = 1e-12;

/// Whether the sampled image curve theta -> f(r e^{i theta}) bounds a convex
/// region: consecutive edge cross products share one sign and the total
/// turning is +-2 pi.
inline bool convex_image_test(const HarmonicFunction& f, double r, int samples = 2048) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("convexity test radius must lie in (0,1)");
    if (samples < 64) throw InvalidArgument("convexity test needs at least 64 samples");
    std::vector<Complex> pts(samples);
    for (int t = 0; t < samples; ++t) pts[t] = evaluate(f, std::polar(r, 2.0 * std::numbers::pi * t / samples));
    std::vector<Complex> edges;
    edges.reserve(samples);
    for (int t = 0; t < samples; ++t) {
        const Complex e = pts[(t + 1) % samples] - pts[t];
        if (std::abs(e) > 0.0) edges.push_back(e);
    }
    if (edges.size() < 3) return false;
    bool pos = false;
    bool neg = false;
    double turning = 0.0;
    for (std::size_t t = 0; t < edges.size(); ++t) {
        const Complex e0 = edges[t];
        const Complex e1 = edges[(t + 1) % edges.size()];
        const double cross = e0.real() * e1.imag() - e0.imag() * e1.real();
        const double dot = e0.real() * e1.real() + e0.imag() * e1.imag();
        const double slack = kConvexSlack * std::abs(e0) * std::abs(e1);
        if (cross > slack) pos = true;
        if (cross < -slack) neg = true;
        turning += std::atan2(cross, dot);
    }
    if (pos && neg) return false;
    return std::abs(std::abs(turning) - 2.0 * std::numbers::pi) < 1e-6;
}

inline constexpr double kRadiusCap = 0.999;

/// Bisection for the largest r in (0, 0.999] at which the images of |z| = r
/// and |z| = 0.99 r both pass `convex_image_test`. A lower-bound estimate.
inline double brute_convexity_radius(const HarmonicFunction& f, double tol_r = 1e-3, int samples = 2048) {
    auto convex_at = [&](double r) { return convex_image_test(f, r, samples) && convex_image_test(f, 0.99 * r, samples); };
    if (convex_at(kRadiusCap)) return kRadiusCap;
    double lo = 0.0;
    double hi = kRadiusCap;
    while (hi - lo > tol_r) {
        const double mid = 0.5 * (lo + hi);
        if (convex_at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

inline constexpr double kProbeRadiusMax = 0.9999;
inline constexpr int kProbeSteps = 4000;

/// Searches the positive real axis for Re(ratio) < alpha.
///
/// Requires a T-sign-patterned f whose functional is at least 1 + margin.
/// `passed` means a violation was found; min_margin then holds its depth
/// alpha - Re(ratio) at the witness (positive), otherwise the largest
/// (negative) depth seen.
inline VerificationReport necessity_probe(const HarmonicFunction& f, const FamilySpec& spec, double margin = 0.05) {
    if (!has_t_sign_pattern(f, spec)) throw PreconditionUnmet("necessity probe needs the T-family sign pattern");
    const double fn = coefficient_functional(f, spec);
    if (fn < 1.0 + margin) {
        throw PreconditionUnmet("functional " + std::to_string(fn) + " below 1 + margin");
    }
    const RatioForm form(f, spec);
    VerificationReport rep;
    double deepest = -std::numeric_limits<double>::infinity();
    for (int t = 1; t <= kProbeSteps; ++t) {
        const double r = kProbeRadiusMax * t / kProbeSteps;
        const auto w = form.try_at(Complex{r, 0.0});
        ++rep.checks_run;
        if (!w) continue;
        const double depth = spec.alpha - w->real();
        if (depth > 0.0) {
            rep.passed = true;
            rep.min_margin = depth;
            rep.witness = Complex{r, 0.0};
            return rep;
        }
        deepest = std::max(deepest, depth);
    }
    rep.passed = false;
    rep.min_margin = deepest;
    rep.notes.emplace_back("no violation found on (0, 0.9999]");
    return rep;
}

} // namespace pqs
