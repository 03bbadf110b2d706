#pragma once

// The (p,q)-Salagean harmonic family: parameters, kernels, the coefficient
// functional, membership predicates and the defining ratio.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pq_core.hpp"
#include "series.hpp"

namespace pqs {

inline constexpr double kMembershipTol = 1e-12;

/// Weight sequence of a convolution kernel: one of the symbolic forms 1, k, k^2
/// or an explicit non-negative array starting at `first_index`.
class CoeffSeq {
public:
    enum class Kind { One, K, KSquared, Explicit };

    CoeffSeq() = default;

    static CoeffSeq one() { return CoeffSeq(Kind::One); }
    static CoeffSeq k() { return CoeffSeq(Kind::K); }
    static CoeffSeq k_squared() { return CoeffSeq(Kind::KSquared); }
    static CoeffSeq explicit_values(std::vector<double> values, std::size_t first_index) {
        for (double v : values) {
            if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("explicit weights must be finite and >= 0");
        }
        CoeffSeq s(Kind::Explicit);
        s.values_ = std::move(values);
        s.first_ = first_index;
        return s;
    }

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t first_index() const noexcept { return first_; }

    /// Largest index this sequence can produce.
    std::size_t last_index() const noexcept {
        if (kind_ != Kind::Explicit) return static_cast<std::size_t>(-1);
        return first_ + values_.size() - 1;
    }

    double operator()(std::size_t k) const {
        switch (kind_) {
        case Kind::One: return 1.0;
        case Kind::K: return static_cast<double>(k);
        case Kind::KSquared: return static_cast<double>(k) * static_cast<double>(k);
        case Kind::Explicit:
            if (k < first_ || k - first_ >= values_.size()) {
                throw InvalidArgument("explicit weight sequence has no entry at index " + std::to_string(k));
            }
            return values_[k - first_];
        }
        return 0.0;
    }

    friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

private:
    explicit CoeffSeq(Kind kind) : kind_(kind) {}

    Kind kind_ = Kind::One;
    std::vector<double> values_;
    std::size_t first_ = 1;
};

/// n + j - (m + i), the exponent of the sign attached to alpha v_k.
struct SignExponent {
    int value = 0;
    int sign() const noexcept { return parity_sign(value); }
};

/// One instance of the family: operator orders, kernel signs, alpha, (p,q)
/// and the four kernel weight sequences.
struct FamilySpec {
    int m = 1;
    int n = 0;
    int i = 1;
    int j = 0;
    double alpha = 0.0;
    PQParams pq = PQParams::classical();
    CoeffSeq lambda = CoeffSeq::k();
    CoeffSeq u = CoeffSeq::one();
    CoeffSeq mu = CoeffSeq::k();
    CoeffSeq v = CoeffSeq::one();
    std::size_t trunc = kDefaultTruncation;
    std::string label; // preset name, informational

    SignExponent sign_exponent() const noexcept { return {n + j - (m + i)}; }

    /// (-1)^{m+i-1}: the sign every co-analytic coefficient of a T-family member carries.
    int coanalytic_sign() const noexcept { return parity_sign(m + i - 1); }

    /// Checks every invariant; throws ValidationError on a breach and returns
    /// warnings for the tolerated deviations (m == n, m == 0, mu_k == v_k).
    std::vector<std::string> validate() const {
        std::vector<std::string> warnings;
        if (!(alpha >= 0.0 && alpha < 1.0)) throw ValidationError("/family/alpha", "alpha must lie in [0,1)");
        if (i != 0 && i != 1) throw ValidationError("/family/i", "i must be 0 or 1");
        if (j != 0 && j != 1) throw ValidationError("/family/j", "j must be 0 or 1");
        if (m < 0) throw ValidationError("/family/m", "m must be >= 0");
        if (n < 0) throw ValidationError("/family/n", "n must be >= 0");
        if (m < n) throw ValidationError("/family/m", "m must be >= n");
        if (trunc < 2) throw ValidationError("/family/trunc", "truncation must be >= 2");
        if (m == 0) warnings.emplace_back("m = 0 lies outside the natural numbers; accepted as a documented deviation");
        if (m == n) warnings.emplace_back("m == n relaxes the strict m > n requirement");
        check_covers(lambda, 2, "/family/lambda");
        check_covers(u, 2, "/family/u");
        check_covers(mu, 1, "/family/mu");
        check_covers(v, 1, "/family/v");
        for (std::size_t k = 2; k <= trunc; ++k) {
            if (!(lambda(k) > u(k))) {
                throw ValidationError("/family/lambda", "lambda_k > u_k violated at k=" + std::to_string(k));
            }
        }
        std::size_t ties = 0;
        for (std::size_t k = 1; k <= trunc; ++k) {
            if (mu(k) < v(k)) throw ValidationError("/family/mu", "mu_k >= v_k violated at k=" + std::to_string(k));
            if (mu(k) == v(k)) ++ties;
        }
        if (ties > 0) {
            warnings.emplace_back("mu_k == v_k at " + std::to_string(ties) +
                                  " index(es); strict mu_k > v_k relaxed to mu_k >= v_k");
        }
        return warnings;
    }

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;

private:
    void check_covers(const CoeffSeq& s, std::size_t first, const char* field) const {
        if (s.kind() != CoeffSeq::Kind::Explicit) return;
        if (s.first_index() != first || s.last_index() < trunc) {
            throw ValidationError(field, "explicit weights must cover indices " + std::to_string(first) + ".." +
                                             std::to_string(trunc));
        }
    }
};

/// Phi_i and Psi_j truncated at spec.trunc.
inline std::pair<KernelFunction, KernelFunction> kernels(const FamilySpec& spec) {
    const std::size_t n = spec.trunc;
    KernelFunction phi{std::vector<double>(n + 1), std::vector<double>(n + 1), spec.i};
    KernelFunction psi{std::vector<double>(n + 1), std::vector<double>(n + 1), spec.j};
    phi.analytic[1] = psi.analytic[1] = 1.0;
    for (std::size_t k = 2; k <= n; ++k) {
        phi.analytic[k] = spec.lambda(k);
        psi.analytic[k] = spec.u(k);
    }
    for (std::size_t k = 1; k <= n; ++k) {
        phi.coanalytic[k] = spec.mu(k);
        psi.coanalytic[k] = spec.v(k);
    }
    return {std::move(phi), std::move(psi)};
}

/// gamma_k = lambda_k [k]^m - alpha u_k [k]^n, k >= 2.
inline double gamma_k(const FamilySpec& spec, std::size_t k) {
    const int kk = static_cast<int>(k);
    return spec.lambda(k) * bracket_pow(kk, spec.m, spec.pq) - spec.alpha * spec.u(k) * bracket_pow(kk, spec.n, spec.pq);
}

/// phi_k = mu_k [k]^m - (-1)^E alpha v_k [k]^n, k >= 1.
inline double phi_k(const FamilySpec& spec, std::size_t k) {
    const int kk = static_cast<int>(k);
    const double s = spec.sign_exponent().sign();
    return spec.mu(k) * bracket_pow(kk, spec.m, spec.pq) - s * spec.alpha * spec.v(k) * bracket_pow(kk, spec.n, spec.pq);
}

/// sum_{k>=2} gamma_k |a_k| / (1-alpha) + sum_{k>=1} phi_k |b_k| / (1-alpha).
/// Membership threshold is 1.
inline double coefficient_functional(const HarmonicFunction& f, const FamilySpec& spec) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= f.order(); ++k) {
        if (k >= 2 && f.a(k) != Complex{}) acc += gamma_k(spec, k) * std::abs(f.a(k));
        if (f.b(k) != Complex{}) acc += phi_k(spec, k) * std::abs(f.b(k));
    }
    return acc / (1.0 - spec.alpha);
}

/// Sufficient membership test: functional <= 1 + tol.
inline bool is_member_sufficient(const HarmonicFunction& f, const FamilySpec& spec, double tol = kMembershipTol) {
    return f.normalized() && coefficient_functional(f, spec) <= 1.0 + tol;
}

/// The T-family sign pattern: a_1 = 1, a_k = -|a_k|, b_k = (-1)^{m+i-1} |b_k|, |b_1| < 1.
inline bool has_t_sign_pattern(const HarmonicFunction& f, const FamilySpec& spec) {
    if (!f.normalized()) return false;
    const double s = spec.coanalytic_sign();
    for (std::size_t k = 1; k <= f.order(); ++k) {
        if (k >= 2 && (f.a(k).imag() != 0.0 || f.a(k).real() > 0.0)) return false;
        if (f.b(k).imag() != 0.0 || s * f.b(k).real() < 0.0) return false;
    }
    return std::abs(f.b(1)) < 1.0;
}

/// Exact membership for sign-patterned functions.
inline bool is_member_T(const HarmonicFunction& f, const FamilySpec& spec, double tol = kMembershipTol) {
    return has_t_sign_pattern(f, spec) && coefficient_functional(f, spec) <= 1.0 + tol;
}

/// Numerator (L^m f * Phi_i) and denominator (L^n f * Psi_j) of the defining
/// ratio, built once so the quotient can be evaluated over many points.
class RatioForm {
public:
    RatioForm(const HarmonicFunction& f, const FamilySpec& spec) {
        const auto [phi, psi] = kernels(spec);
        num_ = hadamard(salagean(f, spec.m, spec.pq), phi);
        den_ = hadamard(salagean(f, spec.n, spec.pq), psi);
    }

    const HarmonicFunction& numerator() const noexcept { return num_; }
    const HarmonicFunction& denominator() const noexcept { return den_; }

    /// Returns nullopt where |denominator| < 1e-14.
    std::optional<Complex> try_at(Complex z) const {
        const Complex d = evaluate(den_, z);
        if (std::abs(d) < kCriticalPointFloor) return std::nullopt;
        return evaluate(num_, z) / d;
    }

    Complex operator()(Complex z) const {
        if (z == Complex{}) return evaluate_at_origin();
        const auto r = try_at(z);
        if (!r) throw ZeroDenominator("ratio denominator vanishes", z);
        return *r;
    }

private:
    // Ratio of the leading analytic terms. With b_1 != 0 the true limit at 0
    // depends on the direction of approach; this is the value along which the
    // analytic parts dominate.
    Complex evaluate_at_origin() const {
        if (std::abs(den_.a(1)) < kCriticalPointFloor) throw ZeroDenominator("ratio denominator vanishes", Complex{});
        return num_.a(1) / den_.a(1);
    }

    HarmonicFunction num_;
    HarmonicFunction den_;
};

/// (L^m f * Phi_i)(z) / (L^n f * Psi_j)(z); membership requires Re > alpha.
inline Complex ratio(const HarmonicFunction& f, const FamilySpec& spec, Complex z) { return RatioForm(f, spec)(z); }

/// Options read by `preset`; fields a preset does not use are ignored.
struct PresetOptions {
    int m = 2;
    int n = 1;
    double q = 0.5;
    std::size_t trunc = kDefaultTruncation;
    // convolution(Phi, Psi) only
    std::optional<CoeffSeq> lambda, u, mu, v;
    int i = 0;
    int j = 0;
};

namespace presets {

inline FamilySpec starlike_like(int m, int n, double alpha, PQParams pq, std::size_t trunc, std::string label) {
    FamilySpec s;
    s.m = m;
    s.n = n;
    s.i = 1;
    s.j = 0;
    s.alpha = alpha;
    s.pq = pq;
    s.lambda = CoeffSeq::k();
    s.mu = CoeffSeq::k();
    s.u = CoeffSeq::one();
    s.v = CoeffSeq::one();
    s.trunc = trunc;
    s.label = std::move(label);
    return s;
}

inline FamilySpec convex_like(double alpha, PQParams pq, std::size_t trunc, std::string label) {
    FamilySpec s;
    s.m = 2;
    s.n = 1;
    s.i = 0;
    s.j = 1;
    s.alpha = alpha;
    s.pq = pq;
    s.lambda = CoeffSeq::k_squared();
    s.mu = CoeffSeq::k_squared();
    s.u = CoeffSeq::k();
    s.v = CoeffSeq::k();
    s.trunc = trunc;
    s.label = std::move(label);
    return s;
}

/// Phi = z/(1-z)^2 - conj(z)/(1-conj z)^2, Psi = z/(1-z) + conj(z)/(1-conj z), p = q = 1.
inline FamilySpec yalcin(int m, int n, double alpha, std::size_t trunc = kDefaultTruncation) {
    return starlike_like(m, n, alpha, PQParams::classical(), trunc, "yalcin");
}

inline FamilySpec starlike(double alpha, std::size_t trunc = kDefaultTruncation) {
    return starlike_like(1, 0, alpha, PQParams::classical(), trunc, "starlike");
}

inline FamilySpec starlike_q(double q, double alpha, std::size_t trunc = kDefaultTruncation) {
    return starlike_like(1, 0, alpha, PQParams::q_only(q), trunc, "starlike_q");
}

/// Phi = (z+z^2)/(1-z)^3 + conj of the same, Psi = the starlike kernel.
inline FamilySpec convex(double alpha, std::size_t trunc = kDefaultTruncation) {
    return convex_like(alpha, PQParams::classical(), trunc, "convex");
}

inline FamilySpec convex_q(double q, double alpha, std::size_t trunc = kDefaultTruncation) {
    return convex_like(alpha, PQParams::q_only(q), trunc, "convex_q");
}

/// m = n = 0, p = q = 1 with caller-supplied kernels.
inline FamilySpec convolution(CoeffSeq lambda, CoeffSeq mu, int i, CoeffSeq u, CoeffSeq v, int j, double alpha,
                              std::size_t trunc = kDefaultTruncation) {
    FamilySpec s;
    s.m = 0;
    s.n = 0;
    s.i = i;
    s.j = j;
    s.alpha = alpha;
    s.pq = PQParams::classical();
    s.lambda = std::move(lambda);
    s.mu = std::move(mu);
    s.u = std::move(u);
    s.v = std::move(v);
    s.trunc = trunc;
    s.label = "convolution";
    return s;
}

} // namespace presets

/// Names accepted by `preset`.
inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"yalcin", "starlike", "convex", "starlike_q", "convex_q",
                                                "convolution"};
    return names;
}

/// Preset lookup by name.
inline FamilySpec preset(std::string_view name, double alpha, const PresetOptions& opt = {}) {
    if (name == "yalcin") return presets::yalcin(opt.m, opt.n, alpha, opt.trunc);
    if (name == "starlike") return presets::starlike(alpha, opt.trunc);
    if (name == "convex") return presets::convex(alpha, opt.trunc);
    if (name == "starlike_q") return presets::starlike_q(opt.q, alpha, opt.trunc);
    if (name == "convex_q") return presets::convex_q(opt.q, alpha, opt.trunc);
    if (name == "convolution") {
        if (!opt.lambda || !opt.u || !opt.mu || !opt.v) {
            throw ValidationError("/family", "convolution preset needs lambda, mu, u and v");
        }
        return presets::convolution(*opt.lambda, *opt.mu, opt.i, *opt.u, *opt.v, opt.j, alpha, opt.trunc);
    }
    throw UnknownPreset("unknown preset '" + std::string(name) + "'");
}

} // namespace pqs
