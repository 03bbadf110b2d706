#pragma once

// Twin-basic numbers [k]_{p,q} and the (p,q)-derivative.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pqs {

using Complex = std::complex<double>;

/// Relative gap below which p and q are treated as equal.
inline constexpr double kPqCloseness = 1e-12;

/// The calculus parameters, 0 < q <= p <= 1.
class PQParams {
public:
    PQParams() = default;

    PQParams(double p, double q) : p_(p), q_(q) {
        if (!(q > 0.0) || !(q <= p) || !(p <= 1.0)) {
            throw InvalidArgument("PQParams requires 0 < q <= p <= 1, got p=" + std::to_string(p) +
                                  ", q=" + std::to_string(q));
        }
    }

    /// The classical case p = q = 1.
    static PQParams classical() { return {1.0, 1.0}; }
    /// The q-calculus case p = 1.
    static PQParams q_only(double q) { return {1.0, q}; }

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }

    /// True when p and q fall inside the closeness threshold.
    bool coincident() const noexcept { return std::abs(p_ - q_) < kPqCloseness * std::max(p_, q_); }

    friend bool operator==(const PQParams&, const PQParams&) = default;

private:
    double p_ = 1.0;
    double q_ = 1.0;
};

namespace detail {

// Running sum p^{k-1} + p^{k-2} y + ... + y^{k-1}, i.e. b_k = x b_{k-1} + y^{k-1}.
// Accepts any positive pair so symmetry in (x, y) can be exercised directly.
inline double twin_basic(int k, double x, double y) {
    if (k <= 0) return 0.0;
    if (std::abs(x - y) < kPqCloseness * std::max(x, y)) {
        return static_cast<double>(k) * std::pow(x, k - 1);
    }
    double acc = 0.0;
    double ypow = 1.0;
    for (int i = 0; i < k; ++i) {
        acc = x * acc + ypow;
        ypow *= y;
    }
    return acc;
}

} // namespace detail

/// [k]_{p,q}; equals k p^{k-1} on the coincident branch.
inline double bracket(int k, const PQParams& pq) { return detail::twin_basic(k, pq.p(), pq.q()); }

/// [k]_{p,q}^m by repeated multiplication.
inline double bracket_pow(int k, int m, const PQParams& pq) {
    if (m < 0) throw InvalidArgument("bracket_pow requires m >= 0");
    const double base = bracket(k, pq);
    double out = 1.0;
    for (int i = 0; i < m; ++i) out *= base;
    return out;
}

/// Coefficients of D_{p,q} f for f(z) = sum_k c[k] z^k.
///
/// The result d has d[k-1] = [k]_{p,q} c[k]; c[0] is annihilated since [0] = 0.
inline std::vector<Complex> pq_derive_series(std::span<const Complex> c, const PQParams& pq) {
    if (c.size() <= 1) return {};
    std::vector<Complex> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = bracket(static_cast<int>(k), pq) * c[k];
    return d;
}

/// Difference quotient (f(pz) - f(qz)) / ((p - q) z).
///
/// Only meaningful away from the coincident branch; kept as an independent
/// check on pq_derive_series.
template <class F>
    requires std::invocable<F&, Complex>
Complex pq_derive_quotient(F&& f, Complex z, const PQParams& pq) {
    if (pq.coincident()) throw DegenerateQuotient("difference quotient undefined for p == q");
    if (z == Complex{0.0, 0.0}) throw DegenerateQuotient("difference quotient undefined at z = 0");
    const Complex num = f(pq.p() * z) - f(pq.q() * z);
    return num / ((pq.p() - pq.q()) * z);
}

/// Horner evaluation of sum_k c[k] z^k.
inline Complex horner(std::span<const Complex> c, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

/// (-1)^e for any integer e.
constexpr int parity_sign(int e) noexcept { return (e % 2 == 0) ? 1 : -1; }

} // namespace pqs
