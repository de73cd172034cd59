#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace cjvol {

// A real number as sign and natural log of its magnitude.
struct SignedLogValue {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    static SignedLogValue zero() { return {}; }
    static SignedLogValue from_double(double x) {
        if (x == 0.0) return {};
        return {x > 0 ? 1 : -1, std::log(std::abs(x))};
    }
    bool is_zero() const { return sign == 0; }
    // may overflow to +-inf for large magnitudes
    double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }

    SignedLogValue operator-() const { return {-sign, log_mag}; }
    friend SignedLogValue operator*(SignedLogValue a, SignedLogValue b) {
        if (a.sign == 0 || b.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag + b.log_mag};
    }
    friend SignedLogValue operator/(SignedLogValue a, SignedLogValue b) {
        if (a.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag - b.log_mag};
    }
};

// Scaled compensated sum: factor out the largest magnitude, Neumaier-sum the rest.
inline SignedLogValue signed_log_sum(std::span<const SignedLogValue> xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& x : xs)
        if (x.sign != 0) m = std::max(m, x.log_mag);
    if (!std::isfinite(m)) return {};
    double sum = 0.0, comp = 0.0;
    for (const auto& x : xs) {
        if (x.sign == 0) continue;
        const double t = x.sign * std::exp(x.log_mag - m);
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }
    sum += comp;
    if (sum == 0.0) return {};
    return {sum > 0 ? 1 : -1, m + std::log(std::abs(sum))};
}

inline SignedLogValue operator+(SignedLogValue a, SignedLogValue b) {
    const SignedLogValue xs[] = {a, b};
    return signed_log_sum(xs);
}

// A complex number as log magnitude and phase in (-pi, pi].
struct LogPolarValue {
    double log_mag = 0.0;
    double phase = 0.0;

    static double wrap(double p) {
        constexpr double tau = 2.0 * std::numbers::pi;
        p = std::remainder(p, tau);
        if (p <= -std::numbers::pi) p += tau;
        return p;
    }
    friend LogPolarValue operator*(LogPolarValue a, LogPolarValue b) {
        return {a.log_mag + b.log_mag, wrap(a.phase + b.phase)};
    }
    friend LogPolarValue operator/(LogPolarValue a, LogPolarValue b) {
        return {a.log_mag - b.log_mag, wrap(a.phase - b.phase)};
    }
};

} // namespace cjvol
