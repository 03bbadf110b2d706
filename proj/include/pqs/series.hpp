#pragma once

// Truncated harmonic series f = h + conj(g) on the unit disc.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pq_core.hpp"

namespace pqs {

inline constexpr std::size_t kDefaultTruncation = 64;
inline constexpr double kCriticalPointFloor = 1e-14;

/// f(z) = h(z) + conj(g(z)) with h = sum_{k>=1} a_k z^k and g = sum_{k>=1} b_k z^k,
/// both truncated at order N.
///
/// Coefficients are stored by their natural index (slot 0 is always zero), so
/// a(1) is explicit: it equals 1 for normalized members of the family, but
/// linear combinations and kernels are free to carry other values.
class HarmonicFunction {
public:
    HarmonicFunction() : HarmonicFunction(kDefaultTruncation) {}

    /// The identity map z at truncation `order`.
    explicit HarmonicFunction(std::size_t order) : a_(order + 1), b_(order + 1) {
        if (order < 1) throw InvalidArgument("truncation order must be >= 1");
        a_[1] = 1.0;
    }

    /// Builds z + sum_{k>=2} tail_a[k-2] z^k + conj(sum_{k>=1} tail_b[k-1] z^k).
    static HarmonicFunction from_tails(std::span<const Complex> tail_a, std::span<const Complex> tail_b,
                                       std::size_t order = 0) {
        const std::size_t needed = std::max({tail_a.size() + 1, tail_b.size(), std::size_t{1}});
        if (order == 0) order = needed;
        if (order < needed) throw InvalidArgument("coefficients exceed truncation order");
        HarmonicFunction f(order);
        for (std::size_t i = 0; i < tail_a.size(); ++i) f.set_a(i + 2, tail_a[i]);
        for (std::size_t i = 0; i < tail_b.size(); ++i) f.set_b(i + 1, tail_b[i]);
        return f;
    }

    std::size_t order() const noexcept { return a_.size() - 1; }

    Complex a(std::size_t k) const { return k < a_.size() ? a_[k] : Complex{}; }
    Complex b(std::size_t k) const { return k < b_.size() ? b_[k] : Complex{}; }

    void set_a(std::size_t k, Complex v) { slot(a_, k, v, "a"); }
    void set_b(std::size_t k, Complex v) { slot(b_, k, v, "b"); }

    /// Full coefficient arrays, index 0..N.
    std::span<const Complex> analytic() const noexcept { return a_; }
    std::span<const Complex> coanalytic() const noexcept { return b_; }

    bool normalized() const noexcept { return a_[1] == Complex{1.0, 0.0}; }

    /// Same coefficients at a different truncation (zero padded or cut).
    HarmonicFunction truncated(std::size_t order) const {
        HarmonicFunction out(order);
        out.a_[1] = a_[1];
        for (std::size_t k = 2; k <= std::min(order, this->order()); ++k) out.a_[k] = a_[k];
        for (std::size_t k = 1; k <= std::min(order, this->order()); ++k) out.b_[k] = b_[k];
        return out;
    }

    HarmonicFunction& operator+=(const HarmonicFunction& o) {
        grow(o.order());
        for (std::size_t k = 1; k <= o.order(); ++k) {
            a_[k] += o.a_[k];
            b_[k] += o.b_[k];
        }
        return *this;
    }

    HarmonicFunction& operator*=(double s) {
        for (auto& c : a_) c *= s;
        for (auto& c : b_) c *= s;
        return *this;
    }

    friend HarmonicFunction operator+(HarmonicFunction l, const HarmonicFunction& r) { return l += r; }
    friend HarmonicFunction operator*(double s, HarmonicFunction f) { return f *= s; }

    friend bool operator==(const HarmonicFunction&, const HarmonicFunction&) = default;

private:
    static void slot(std::vector<Complex>& v, std::size_t k, Complex c, const char* name) {
        if (k == 0 || k >= v.size()) {
            throw InvalidArgument(std::string("coefficient index out of range for ") + name + ": " +
                                  std::to_string(k));
        }
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw InvalidArgument(std::string("non-finite coefficient ") + name + "_" + std::to_string(k));
        }
        v[k] = c;
    }

    void grow(std::size_t order) {
        if (order > this->order()) {
            a_.resize(order + 1);
            b_.resize(order + 1);
        }
    }

    std::vector<Complex> a_;
    std::vector<Complex> b_;
};

/// Largest coefficient-wise absolute difference of two series.
inline double max_coeff_diff(const HarmonicFunction& f, const HarmonicFunction& g) {
    double d = 0.0;
    const std::size_t n = std::max(f.order(), g.order());
    for (std::size_t k = 1; k <= n; ++k) {
        d = std::max(d, std::abs(f.a(k) - g.a(k)));
        d = std::max(d, std::abs(f.b(k) - g.b(k)));
    }
    return d;
}

/// Convolution kernel Phi_i or Psi_j: z + sum w_k z^k + (-1)^sign_exponent sum c_k conj(z)^k.
struct KernelFunction {
    std::vector<double> analytic;   // index 0..N, analytic[1] == 1
    std::vector<double> coanalytic; // index 0..N, unsigned weights
    int sign_exponent = 0;          // i or j

    std::size_t order() const noexcept { return analytic.empty() ? 0 : analytic.size() - 1; }

    /// The kernel as a harmonic function, with the sign applied to the co-analytic part.
    HarmonicFunction as_harmonic() const {
        HarmonicFunction f(order());
        const double s = parity_sign(sign_exponent);
        for (std::size_t k = 2; k < analytic.size(); ++k) f.set_a(k, analytic[k]);
        for (std::size_t k = 1; k < coanalytic.size(); ++k) f.set_b(k, s * coanalytic[k]);
        return f;
    }
};

/// z + sum a_k z^k + conj(sum b_k z^k). Only defined strictly inside the disc.
inline Complex evaluate(const HarmonicFunction& f, Complex z) {
    if (!(std::abs(z) < 1.0)) throw OutsideDisc("evaluation point outside the unit disc");
    return horner(f.analytic(), z) + std::conj(horner(f.coanalytic(), z));
}

/// Coefficient-wise product; the shorter operand is padded with zeros.
inline HarmonicFunction hadamard(const HarmonicFunction& f1, const HarmonicFunction& f2) {
    const std::size_t n = std::max(f1.order(), f2.order());
    HarmonicFunction out(n);
    out.set_a(1, f1.a(1) * f2.a(1));
    for (std::size_t k = 2; k <= n; ++k) out.set_a(k, f1.a(k) * f2.a(k));
    for (std::size_t k = 1; k <= n; ++k) out.set_b(k, f1.b(k) * f2.b(k));
    return out;
}

inline HarmonicFunction hadamard(const HarmonicFunction& f, const KernelFunction& kernel) {
    return hadamard(f, kernel.as_harmonic());
}

/// Harmonic Salagean operator: a_k -> [k]^m a_k, b_k -> (-1)^m [k]^m b_k.
inline HarmonicFunction salagean(const HarmonicFunction& f, int m, const PQParams& pq) {
    if (m < 0) throw InvalidArgument("salagean order must be >= 0");
    HarmonicFunction out = f;
    const double s = parity_sign(m);
    for (std::size_t k = 1; k <= f.order(); ++k) {
        const double w = bracket_pow(static_cast<int>(k), m, pq);
        out.set_a(k, w * f.a(k));
        out.set_b(k, s * w * f.b(k));
    }
    return out;
}

/// L^m h by literal iteration of h -> z D_{p,q} h on an analytic coefficient array.
inline std::vector<Complex> iterated_salagean_check(std::span<const Complex> analytic, int m,
                                                    const PQParams& pq) {
    std::vector<Complex> cur(analytic.begin(), analytic.end());
    for (int step = 0; step < m; ++step) {
        const std::vector<Complex> d = pq_derive_series(cur, pq);
        std::vector<Complex> next(cur.size());
        for (std::size_t k = 0; k < d.size(); ++k) next[k + 1] = d[k];
        cur = std::move(next);
    }
    return cur;
}

namespace detail {

// sum_k k c[k] z^{k-1}
inline Complex classical_derivative(std::span<const Complex> c, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
}

} // namespace detail

/// Second complex dilatation g'(z) / h'(z).
inline Complex dilatation(const HarmonicFunction& f, Complex z) {
    if (!(std::abs(z) < 1.0)) throw OutsideDisc("dilatation point outside the unit disc");
    const Complex hp = detail::classical_derivative(f.analytic(), z);
    if (std::abs(hp) < kCriticalPointFloor) throw VanishingDerivative("h'(z) vanishes");
    return detail::classical_derivative(f.coanalytic(), z) / hp;
}

} // namespace pqs
