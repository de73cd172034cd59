#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "signed_log.hpp"
#include "specfun.hpp"
#include "weights.hpp"

namespace cjvol {

// sin(pi m / r) with the argument reduced to [0, pi/2] before calling std::sin.
inline double sin_pi_frac(long long m, long long r) {
    m %= 2 * r;
    if (m < 0) m += 2 * r;
    double sign = 1.0;
    if (m >= r) {
        m -= r;
        sign = -1.0;
    }
    if (2 * m > r) m = r - m;
    return sign * std::sin(pi * static_cast<double>(m) / static_cast<double>(r));
}

// Level r with s = exp(2 pi i / r).  Caches sin(2 pi n / r), prefix sums of
// log|{n}| and the quarter-turn count of each {n}! so factorials are O(1).
class RootContext {
public:
    explicit RootContext(int r) : r_(r) {
        if (r < 3 || r % 2 == 0) throw DomainError("RootContext: r must be odd and >= 3");
        sin_.resize(r);
        for (int n = 0; n < r; ++n) sin_[n] = sin_pi_frac(2LL * n, r);
        log_fact_.assign(r, 0.0);
        quarters_.assign(r, 0);
        double sum = 0.0, comp = 0.0;
        for (int n = 1; n < r; ++n) {
            const double t = std::log(2.0 * std::abs(sin_[n]));
            const double s = sum + t;
            comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
            sum = s;
            log_fact_[n] = sum + comp;
            quarters_[n] = quarters_[n - 1] + (sin_[n] > 0 ? 1 : -1);
        }
    }

    int r() const { return r_; }
    std::complex<double> s() const { return std::polar(1.0, 2.0 * pi / r_); }
    std::complex<double> q() const { return std::polar(1.0, 4.0 * pi / r_); }

    // sin(2 pi n / r) for any integer n
    double sin2pi(long long n) const {
        long long m = n % r_;
        if (m < 0) m += r_;
        return sin_[m];
    }
    const std::vector<double>& sine_table() const { return sin_; }
    double log_abs_factorial(int n) const { return log_fact_[n]; }
    int factorial_quarters(int n) const { return quarters_[n]; }

private:
    int r_;
    std::vector<double> sin_;
    std::vector<double> log_fact_;
    std::vector<int> quarters_;
};

// {n} = s^n - s^-n
inline std::complex<double> q_integer(const RootContext& ctx, long long n) {
    return {0.0, 2.0 * ctx.sin2pi(n)};
}

inline LogPolarValue q_factorial(const RootContext& ctx, int n) {
    if (n < 0 || n >= ctx.r())
        throw RangeError("q_factorial: n = " + std::to_string(n) + " outside [0, r-1]");
    return {ctx.log_abs_factorial(n), LogPolarValue::wrap(ctx.factorial_quarters(n) * (pi / 2))};
}

namespace detail {

inline void check_weights(const RootContext& ctx, const Weights& w) {
    if (!w.valid_for(ctx.r()))
        throw RangeError("weights outside {0, 1/2, ..., (r-2)/2} for r = " + std::to_string(ctx.r()));
}

inline void check_k(const RootContext& ctx, const Weights& w, int k, int lo) {
    const int km = k_max(ctx.r(), w);
    if (k < lo || k > km)
        throw RangeError("k = " + std::to_string(k) + " outside [" + std::to_string(lo) + ", " +
                         std::to_string(km) + "]");
}

// cos(4 pi a / r) - cos(4 pi k / r) in product form
inline double cos_gap(const RootContext& ctx, int a, int k) {
    return 2.0 * ctx.sin2pi(k - a) * ctx.sin2pi(k + a);
}

inline SignedLogValue from_quarters(double log_mag, int quarters) {
    const int q = ((quarters % 4) + 4) % 4;
    if (q % 2 != 0)
        throw RealnessError("summand phase is an odd multiple of pi/2; normalization mismatch");
    return {q == 0 ? 1 : -1, log_mag};
}

} // namespace detail

inline double term_ratio_E(const RootContext& ctx, int twice_j, int k) {
    const Weights w = Weights::E(twice_j);
    detail::check_weights(ctx, w);
    detail::check_k(ctx, w, k, 1);
    return 2.0 * detail::cos_gap(ctx, twice_j + 1, k);
}

inline double term_ratio_B(const RootContext& ctx, const Weights& w, int k) {
    detail::check_weights(ctx, w);
    detail::check_k(ctx, w, k, 1);
    const double sk = ctx.sin2pi(k), s1 = ctx.sin2pi(2 * k + 1), s2 = ctx.sin2pi(2 * k);
    double v = 2.0 * sk * sk / (s1 * s1 * s2 * s2);
    for (int t : w.twice) v *= detail::cos_gap(ctx, t + 1, k);
    return v;
}

inline double term_ratio(const RootContext& ctx, const Weights& w, int k) {
    return w.knot == Knot::E ? term_ratio_E(ctx, w.twice[0], k) : term_ratio_B(ctx, w, k);
}

// Summands normalized by {1}:  A_k / {1}, which is real.
inline SignedLogValue term_E(const RootContext& ctx, int twice_j, int k) {
    const Weights w = Weights::E(twice_j);
    detail::check_weights(ctx, w);
    detail::check_k(ctx, w, k, 0);
    const int J = twice_j;
    const double lm = ctx.log_abs_factorial(J + 1 + k) - ctx.log_abs_factorial(J - k) -
                      ctx.log_abs_factorial(1);
    const int quarters = ctx.factorial_quarters(J + 1 + k) - ctx.factorial_quarters(J - k) -
                         ctx.factorial_quarters(1);
    return detail::from_quarters(lm, quarters);
}

inline SignedLogValue term_B(const RootContext& ctx, const Weights& w, int k) {
    detail::check_weights(ctx, w);
    detail::check_k(ctx, w, k, 0);
    double lm = 2.0 * (ctx.log_abs_factorial(k) - ctx.log_abs_factorial(2 * k + 1)) -
                ctx.log_abs_factorial(1);
    int quarters = 2 * (ctx.factorial_quarters(k) - ctx.factorial_quarters(2 * k + 1)) + 2 * k -
                   ctx.factorial_quarters(1);
    for (int J : w.twice) {
        lm += ctx.log_abs_factorial(J + 1 + k) - ctx.log_abs_factorial(J - k);
        quarters += ctx.factorial_quarters(J + 1 + k) - ctx.factorial_quarters(J - k);
    }
    return detail::from_quarters(lm, quarters);
}

inline SignedLogValue term(const RootContext& ctx, const Weights& w, int k) {
    return w.knot == Knot::E ? term_E(ctx, w.twice[0], k) : term_B(ctx, w, k);
}

inline std::vector<SignedLogValue> terms(const RootContext& ctx, const Weights& w) {
    detail::check_weights(ctx, w);
    const int km = k_max(ctx.r(), w);
    std::vector<SignedLogValue> out(km + 1);
    for (int k = 0; k <= km; ++k) out[k] = term(ctx, w, k);
    return out;
}

struct IndexRange {
    std::string label;
    int first = 0;
    int last = -1;             // empty when last < first
    bool alternating = false;  // sign flips at every step inside the set

    bool empty() const { return last < first; }
    int size() const { return empty() ? 0 : last - first + 1; }
    bool contains(int k) const { return k >= first && k <= last; }
};

struct IndexPartition {
    int k_max = 0;
    std::vector<IndexRange> sets;

    const IndexRange& at(const std::string& label) const {
        for (const auto& s : sets)
            if (s.label == label) return s;
        throw DomainError("index partition has no set " + label);
    }
    // For k >= 1: whether sign(term k) differs from sign(term k-1).
    bool flips_at(int k) const {
        for (const auto& s : sets)
            if (s.contains(k)) return s.alternating;
        return false;
    }
};

// Factor i of the ratio is negative exactly when k < |r/2 - (2j_i+1)|, so the boundaries
// are the floors of those distances in decreasing order.
inline IndexPartition index_partition(const RootContext& ctx, const Weights& w) {
    detail::check_weights(ctx, w);
    const int km = k_max(ctx.r(), w);
    std::vector<int> bounds;
    for (int J : w.twice) bounds.push_back(static_cast<int>(std::abs(ctx.r() - 2 * (J + 1)) / 2));
    std::sort(bounds.begin(), bounds.end());

    IndexPartition p{km, {}};
    int start = 0;
    bool alternating = w.knot == Knot::E || bounds.size() % 2 == 1;
    for (std::size_t i = 0; i <= bounds.size(); ++i) {
        const int end = i < bounds.size() ? std::min(bounds[i], km) : km;
        p.sets.push_back({"I" + std::to_string(i + 1), start, end, alternating});
        start = std::max(start, end + 1);
        alternating = !alternating;
    }
    return p;
}

enum class Trend { up, down };

inline const char* trend_name(Trend t) { return t == Trend::up ? "up" : "down"; }

struct UnimodalityProfile {
    std::vector<Trend> runs;
    std::vector<int> breakpoints;  // indices where the trend reverses
    std::vector<std::string> diagnostics;
};

inline UnimodalityProfile unimodality_profile(const std::vector<SignedLogValue>& values) {
    UnimodalityProfile p;
    for (std::size_t k = 1; k < values.size(); ++k) {
        const double a = values[k - 1].log_mag, b = values[k].log_mag;
        const double d = b - a;
        if (std::abs(d) <= 1e-14 * std::max(1.0, std::abs(a))) {
            p.diagnostics.push_back("tie between " + std::to_string(k - 1) + " and " +
                                    std::to_string(k));
            continue;
        }
        const Trend t = d > 0 ? Trend::up : Trend::down;
        if (p.runs.empty() || p.runs.back() != t) {
            if (!p.runs.empty()) p.breakpoints.push_back(static_cast<int>(k - 1));
            p.runs.push_back(t);
        }
    }
    return p;
}

} // namespace cjvol
