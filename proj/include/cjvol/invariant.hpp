#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "qseries.hpp"
#include "signed_log.hpp"
#include "weights.hpp"

namespace cjvol {

struct InternalError : NumericalFamily { using NumericalFamily::NumericalFamily; };

enum class Branch { minus, plus };

inline const char* branch_name(Branch b) { return b == Branch::minus ? "minus" : "plus"; }

struct WeightChoice {
    Branch branch = Branch::minus;
    Weights weights;
    std::vector<double> defects;  // |8 pi j / r - 2 pi| - alpha, per component
};

// j_i nearest half-integer to r (2pi -+ alpha_i) / (8 pi); ties round up.
inline WeightChoice weights_for_angles(int r, Knot knot, const std::vector<double>& alphas,
                                       Branch branch = Branch::minus) {
    if (r < 3 || r % 2 == 0) throw DomainError("weights_for_angles: r must be odd and >= 3");
    if (static_cast<int>(alphas.size()) != component_count(knot))
        throw DomainError("weights_for_angles: wrong number of angles");
    WeightChoice wc{branch, {knot, {}}, {}};
    std::vector<std::pair<int, double>> picked;  // (2j, defect)
    for (double a : alphas) {
        if (!(a >= 0.0 && a < pi)) throw DomainError("weights_for_angles: angle outside [0, pi)");
        const double sgn = branch == Branch::minus ? -1.0 : 1.0;
        const double x = r * (2.0 * pi + sgn * a) / (4.0 * pi);
        const double J = std::floor(x + 0.5);
        if (J < 0 || J > r - 2)
            throw RangeError("weights_for_angles: rounded weight leaves {0, ..., (r-2)/2}");
        picked.emplace_back(static_cast<int>(J), std::abs(4.0 * pi * J / r - 2.0 * pi) - a);
    }
    // weights are stored ascending; on the minus branch that reverses the angle order
    std::sort(picked.begin(), picked.end());
    for (const auto& [J, d] : picked) {
        wc.weights.twice.push_back(J);
        wc.defects.push_back(d);
    }
    return wc;
}

struct InvariantValue {
    int r = 0;
    Weights weights;
    std::vector<int> permutation;  // sorted position -> input position
    SignedLogValue total;
    IndexPartition partition;
    std::vector<std::pair<std::string, SignedLogValue>> partials;

    const SignedLogValue& partial(const std::string& label) const {
        for (const auto& [l, v] : partials)
            if (l == label) return v;
        throw DomainError("no partial sum labelled " + label);
    }
    double growth() const { return 4.0 * pi / r * total.log_mag; }
};

namespace detail {

inline SignedLogValue range_sum(const std::vector<SignedLogValue>& t, const IndexRange& s) {
    if (s.empty()) return {};
    return signed_log_sum(std::span<const SignedLogValue>(t.data() + s.first, s.size()));
}

// max|t| <= |sum| <= #set max|t| for a constant-sign set
inline void check_squeeze(const std::vector<SignedLogValue>& t, const IndexRange& s,
                          const SignedLogValue& sum) {
    if (s.empty() || s.alternating) return;
    double m = -INFINITY;
    for (int k = s.first; k <= s.last; ++k) m = std::max(m, t[k].log_mag);
    const double slack = 1e-12 * std::max(1.0, std::abs(m));
    if (sum.log_mag < m - slack || sum.log_mag > m + std::log(double(s.size())) + slack)
        throw InternalError("constant-sign squeeze violated on " + s.label);
}

} // namespace detail

inline InvariantValue colored_jones(int r, const Weights& w) {
    const RootContext ctx(r);
    InvariantValue out;
    out.r = r;
    out.weights = w;
    std::sort(out.weights.twice.begin(), out.weights.twice.end());
    out.permutation.resize(w.twice.size());
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    std::stable_sort(out.permutation.begin(), out.permutation.end(),
                     [&](int a, int b) { return w.twice[a] < w.twice[b]; });

    const auto t = terms(ctx, out.weights);
    out.total = signed_log_sum(t);
    out.partition = index_partition(ctx, out.weights);
    for (const auto& s : out.partition.sets) {
        const auto v = detail::range_sum(t, s);
        detail::check_squeeze(t, s, v);
        out.partials.emplace_back(s.label, v);
    }
    return out;
}

inline InvariantValue colored_jones_E(int r, double j) {
    return colored_jones(r, Weights::from_half_integers(Knot::E, {j}));
}

inline InvariantValue colored_jones_B(int r, double j1, double j2, double j3) {
    const std::vector<double> in = {j1, j2, j3};
    auto w = Weights::from_half_integers(Knot::B, in);
    w.twice = {static_cast<int>(2 * j1), static_cast<int>(2 * j2), static_cast<int>(2 * j3)};
    return colored_jones(r, w);
}

inline SignedLogValue partial_sum(int r, const Weights& w, const std::string& label) {
    return colored_jones(r, w).partial(label);
}

} // namespace cjvol
