#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "specfun.hpp"

namespace cjvol {

// Horner evaluation in extended precision, coefficients in descending powers.
inline double poly_eval(const std::vector<double>& c, double x) {
    long double v = 0.0L;
    for (double a : c) v = v * x + a;
    return static_cast<double>(v);
}

inline double poly_deriv(const std::vector<double>& c, double x) {
    double v = 0.0;
    const int n = static_cast<int>(c.size()) - 1;
    for (int i = 0; i < n; ++i) v = v * x + c[i] * (n - i);
    return v;
}

inline double newton_polish(const std::vector<double>& c, double x, int iters = 8) {
    for (int i = 0; i < iters; ++i) {
        const double d = poly_deriv(c, x);
        if (d == 0.0) break;
        const double step = poly_eval(c, x) / d;
        const double next = x - step;
        if (!std::isfinite(next) || std::abs(poly_eval(c, next)) > std::abs(poly_eval(c, x))) break;
        x = next;
        if (step == 0.0) break;
    }
    // settle on the best neighbouring double
    for (int i = 0; i < 4; ++i) {
        const double lo = std::nextafter(x, -INFINITY), hi = std::nextafter(x, INFINITY);
        const double f = std::abs(poly_eval(c, x));
        if (std::abs(poly_eval(c, lo)) < f) x = lo;
        else if (std::abs(poly_eval(c, hi)) < f) x = hi;
        else break;
    }
    return x;
}

// Real roots of x^2 + b x + c, ascending.
inline std::vector<double> real_quadratic_roots(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc < 0.0) return {};
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    std::vector<double> r;
    if (q != 0.0) r = {q, c / q};
    else r = {0.0, 0.0};
    std::sort(r.begin(), r.end());
    return r;
}

// Real roots of x^3 + a x^2 + b x + c, ascending, Newton polished.
inline std::vector<double> real_cubic_roots(double a, double b, double c) {
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    std::vector<double> t;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (p < 0.0 && disc <= 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double th = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) t.push_back(m * std::cos(th - 2.0 * pi * k / 3.0));
    } else {
        const double s = std::sqrt(std::max(disc, 0.0));
        t.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s));
    }
    const std::vector<double> coeffs = {1.0, a, b, c};
    std::vector<double> roots;
    for (double x : t) roots.push_back(newton_polish(coeffs, x + shift));
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace cjvol
