#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "quadrature.hpp"
#include "specfun.hpp"

namespace cjvol {

struct QuantumDilogOptions {
    double radius = 0.5;       // semicircle radius c, any value in (0, 1)
    double abs_tol = 1e-11;    // absolute quadrature tolerance
    double tail_cutoff = 1e-18;
    int max_intervals = 20000;
};

inline bool in_quantum_dilog_strip(int r, cplx z) {
    return z.real() > -pi / r && z.real() < pi + pi / r;
}

// phi_r(z) = int e^{(2z-pi)x} / (4x sinh(pi x) sinh(2pi x/r)) dx over the real line
// indented above the origin, valid for -pi/r < Re z < pi + pi/r.
inline cplx quantum_dilog(int r, cplx z, const QuantumDilogOptions& opt = {}) {
    if (r < 3 || r % 2 == 0) throw DomainError("quantum_dilog: r must be odd and >= 3");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !in_quantum_dilog_strip(r, z))
        throw DomainError("quantum_dilog: Re z outside (-pi/r, pi + pi/r)");

    const cplx a = 2.0 * z - pi;
    const double b = 2.0 * pi / r;
    const double c = opt.radius;
    const cplx I(0.0, 1.0);

    // upper semicircle x = c e^{i t}, t from pi down to 0
    auto arc = [&](double t) {
        const cplx x = std::polar(c, t);
        return std::exp(a * x) / (std::sinh(pi * x) * std::sinh(b * x));
    };
    const auto arc_part = integrate(arc, 0.0, pi, 0.5 * opt.abs_tol, opt.max_intervals);

    // both real rays folded onto [c, inf)
    auto ray = [&](double x) {
        const cplx num = std::exp((a - pi - b) * x) - std::exp(-(a + pi + b) * x);
        return num / (x * -std::expm1(-2.0 * pi * x) * -std::expm1(-2.0 * b * x));
    };
    const double kappa = pi + b - std::abs(a.real());
    auto tail_bound = [&](double x) {
        return 2.0 * std::exp(-kappa * x) /
               (kappa * x * -std::expm1(-2.0 * pi * x) * -std::expm1(-2.0 * b * x));
    };
    double X = 2.0 * c;
    while (tail_bound(X) > opt.tail_cutoff) X *= 1.5;
    const auto ray_part = integrate(ray, c, X, 0.5 * opt.abs_tol, opt.max_intervals);

    return -0.25 * I * arc_part.value + ray_part.value;
}

namespace detail {
// log(1 + e^t), continued from the strip through the half plane Re t > 0 as t + log(1 + e^-t).
inline cplx log1p_exp(cplx t) {
    if (t.real() > 0.0) return t + std::log(1.0 + std::exp(-t));
    return std::log(1.0 + std::exp(t));
}
} // namespace detail

// phi_r continued one period of pi beyond either edge of the strip through
// phi_r(w + pi) = phi_r(w) - log(1 + e^{irw}).  Below the real axis this follows
// (2 pi i / r) phi_r towards Li2 continued across its cut, not the principal Li2.
inline cplx quantum_dilog_continued(int r, cplx z, const QuantumDilogOptions& opt = {}) {
    if (r < 3 || r % 2 == 0) throw DomainError("quantum_dilog: r must be odd and >= 3");
    const double edge = pi / r;
    const double x = z.real();
    if (x > -edge && x < pi + edge) return quantum_dilog(r, z, opt);
    const cplx I(0.0, 1.0);
    if (x >= pi + edge && x < 2.0 * pi + edge) {
        const cplx w = z - pi;
        return quantum_dilog(r, w, opt) - detail::log1p_exp(I * double(r) * w);
    }
    if (x <= -edge && x > -pi - edge)
        return quantum_dilog(r, z + pi, opt) + detail::log1p_exp(I * double(r) * z);
    throw DomainError("quantum_dilog_continued: Re z outside (-pi - pi/r, 2pi + pi/r)");
}

} // namespace cjvol
