#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"

namespace cjvol {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double zeta2 = pi * pi / 6.0;

namespace detail {

inline constexpr int kSeriesTerms = 40;

// zeta(2k) for k = 1..kSeriesTerms by Euler-Maclaurin with cutoff N = 10.
inline const std::array<double, kSeriesTerms + 1>& zeta_even() {
    static const auto table = [] {
        std::array<double, kSeriesTerms + 1> z{};
        constexpr double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                   5.0 / 66, -691.0 / 2730, 7.0 / 6};
        constexpr double N = 10.0;
        z[0] = -0.5;
        for (int k = 1; k <= kSeriesTerms; ++k) {
            const double s = 2.0 * k;
            double sum = 0.0;
            for (int n = 9; n >= 1; --n) sum += std::pow(n, -s);
            double tail = std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);
            double rising = s;  // s(s+1)...(s+2j-2)
            double fact = 2.0;  // (2j)!
            for (int j = 1; j <= 7; ++j) {
                tail += bern[j - 1] / fact * rising * std::pow(N, -s - 2 * j + 1);
                rising *= (s + 2 * j - 1) * (s + 2 * j);
                fact *= (2 * j + 1) * (2 * j + 2);
            }
            z[k] = sum + tail;
        }
        z[1] = zeta2;
        return z;
    }();
    return table;
}

// Cl2(x) for x in [0, pi]:  x - x log x + sum zeta(2k) x^(2k+1) / ((2pi)^(2k) k (2k+1)).
inline double clausen_reduced(double x) {
    if (x == 0.0) return 0.0;
    const auto& z = zeta_even();
    const double t = (x / (2.0 * pi)) * (x / (2.0 * pi));
    double power = t;
    double sum = 0.0;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        const double term = z[k] * power / (k * (2.0 * k + 1.0));
        sum += term;
        if (term < 1e-18 * std::abs(sum)) break;
        power *= t;
    }
    return x - x * std::log(x) + x * sum;
}

// Li2 = sum B_n u^(n+1)/(n+1)!, u = -log(1-w).  Converges fast for |w| <= 1, Re w <= 1/2.
inline cplx dilog_bernoulli(cplx w) {
    const cplx u = -std::log(1.0 - w);
    const cplx u2 = u * u;
    const auto& z = zeta_even();
    cplx sum = u - 0.25 * u2;
    cplx power = u * u2;
    const double inv4pi2 = 1.0 / (4.0 * pi * pi);
    double scale = inv4pi2;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        const double c = (k % 2 == 1 ? 2.0 : -2.0) * z[k] * scale / (2.0 * k + 1.0);
        const cplx term = c * power;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        power *= u2;
        scale *= inv4pi2;
    }
    return sum;
}

inline cplx dilog_unit_disk(cplx w) {
    if (w.real() > 0.5) {
        const cplx v = 1.0 - w;
        return zeta2 - std::log(w) * std::log(v) - dilog_bernoulli(v);
    }
    return dilog_bernoulli(w);
}

} // namespace detail

// Clausen function Cl2, odd and 2pi-periodic.
inline double clausen(double x) {
    double y = std::remainder(x, 2.0 * pi);  // in [-pi, pi]
    if (y < 0) return -detail::clausen_reduced(-y);
    return detail::clausen_reduced(y);
}

// Lobachevsky function, odd and pi-periodic.
inline double lobachevsky(double theta) { return 0.5 * clausen(2.0 * theta); }

inline double delta_fn(double a, double b) { return lobachevsky(a + b) - lobachevsky(a - b); }

// Principal Li2 with the cut [1, inf).  Exactly-on-cut arguments throw.
inline cplx dilog(cplx w) {
    if (w.imag() == 0.0 && w.real() > 1.0)
        throw CutPointError("dilog: argument on the branch cut (1, inf)");
    if (w == cplx(0.0)) return 0.0;
    if (w == cplx(1.0)) return zeta2;
    if (std::norm(w) > 1.0) {
        const cplx l = std::log(-w);
        return -zeta2 - 0.5 * l * l - detail::dilog_unit_disk(1.0 / w);
    }
    return detail::dilog_unit_disk(w);
}

inline double im_dilog_unit_circle(double x) { return 2.0 * lobachevsky(x); }

// Li2(e^{i theta}) on the principal sheet.
inline cplx dilog_exp_i(cplx theta) {
    if (theta.imag() == 0.0) return dilog(std::polar(1.0, theta.real()));
    return dilog(std::exp(cplx(0.0, 1.0) * theta));
}

// Continuation of theta -> Li2(e^{i theta}) from the strip 0 < Re theta < 2pi into the
// lower half plane without crossing a cut.  Upper half plane and real axis are principal.
inline cplx dilog_exp_i_continued(cplx theta) {
    if (theta.imag() >= 0.0) return dilog_exp_i(theta);
    const cplx d = theta - pi;
    return -zeta2 + 0.5 * d * d - dilog(std::exp(cplx(0.0, -1.0) * theta));
}

} // namespace cjvol
