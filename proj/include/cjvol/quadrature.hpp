#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "errors.hpp"

namespace cjvol {

struct QuadratureResult {
    std::complex<double> value;
    double error;
    int intervals;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    std::complex<double> value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const std::complex<double> fc = f(c);
    std::complex<double> kron = fc * kWgk[7];
    std::complex<double> gauss = fc * kWg[3];
    for (int i = 0; i < 7; ++i) {
        const std::complex<double> s = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
        kron += kWgk[i] * s;
        if (i % 2 == 1) gauss += kWg[i / 2] * s;
    }
    return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod for complex-valued integrands on a finite interval.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol, int max_intervals = 4000) {
    std::priority_queue<detail::Segment> heap;
    auto first = detail::gk15(f, a, b);
    std::complex<double> total = first.value;
    double err = first.error;
    heap.push(first);
    int count = 1;
    while (err > abs_tol) {
        if (count >= max_intervals)
            throw QuadratureError("integrate: tolerance not met after " +
                                  std::to_string(count) + " intervals");
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
        if (err <= abs_tol) {
            // recompute from scratch to shed accumulated update rounding
            total = 0.0;
            err = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                total += copy.top().value;
                err += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, err, count};
}

} // namespace cjvol
