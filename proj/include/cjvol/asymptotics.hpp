#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "angles.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "invariant.hpp"
#include "parallel.hpp"
#include "potential.hpp"

namespace cjvol {

struct GrowthRecord {
    int r = 0;
    ConeAngles angles;
    Weights weights;
    Branch branch = Branch::minus;
    double growth = 0.0;  // (4 pi / r) log|V|
    double target = 0.0;  // cone-manifold volume
    double error = 0.0;   // growth - target
    double dominance = 0.0;  // |sum over I1| / |sum over the last set|
    double cancellation_digits = 0.0;  // log10(sum |terms| / |V|)
};

inline GrowthRecord growth_rate(int r, const ConeAngles& angles, Branch branch = Branch::minus) {
    require_hyperbolic(angles, "growth_rate");
    if (r < 5 || r % 2 == 0) throw DomainError("growth_rate: r must be odd and >= 5");
    GrowthRecord g;
    g.r = r;
    g.angles = angles;
    g.branch = branch;
    g.weights = weights_for_angles(r, angles.knot, angles.alpha, branch).weights;
    const auto inv = colored_jones(r, g.weights);
    if (inv.total.is_zero()) throw NumericalFamily("growth_rate: invariant evaluated to zero");
    g.growth = inv.growth();
    g.target = vol_cone(angles).volume;
    g.error = g.growth - g.target;

    const auto& first = inv.partials.front().second;
    const auto& last = inv.partials.back().second;
    if (first.is_zero()) g.dominance = 0.0;
    else if (last.is_zero()) g.dominance = INFINITY;
    else g.dominance = std::exp(first.log_mag - last.log_mag);

    const RootContext ctx(r);
    auto mags = terms(ctx, g.weights);
    for (auto& t : mags) t.sign = 1;
    g.cancellation_digits = (signed_log_sum(mags).log_mag - inv.total.log_mag) / std::log(10.0);
    return g;
}

struct ConvergenceStudy {
    std::vector<GrowthRecord> records;  // ascending r
    double target = 0.0;
    // growth(r) ~ limit + a log(r)/r + b/r
    double limit = 0.0, a = 0.0, b = 0.0;
    std::vector<double> residuals;
    double residual_norm = 0.0;
    double relative_residual = 0.0;  // residual norm over the norm of the errors
};

inline ConvergenceStudy convergence_study(std::vector<int> rs, const ConeAngles& angles,
                                          Branch branch = Branch::minus) {
    std::sort(rs.begin(), rs.end());
    if (std::set<int>(rs.begin(), rs.end()).size() != rs.size())
        throw FitError("convergence_study: duplicate r values make the fit singular");
    if (rs.size() < 3) throw FitError("convergence_study: need at least three r values");

    ConvergenceStudy cs;
    cs.records.resize(rs.size());
    parallel_for(rs.size(), [&](std::size_t i) { cs.records[i] = growth_rate(rs[i], angles, branch); });
    cs.target = cs.records.front().target;

    const auto n = static_cast<Eigen::Index>(rs.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n), err(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = rs[i];
        A(i, 0) = 1.0;
        A(i, 1) = std::log(r) / r;
        A(i, 2) = 1.0 / r;
        y(i) = cs.records[i].growth;
        err(i) = cs.records[i].error;
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 3) throw FitError("convergence_study: design matrix is rank deficient");
    const Eigen::Vector3d c = qr.solve(y);
    cs.limit = c(0);
    cs.a = c(1);
    cs.b = c(2);
    const Eigen::VectorXd res = y - A * c;
    cs.residuals.assign(res.data(), res.data() + n);
    cs.residual_norm = res.norm();
    cs.relative_residual = err.norm() > 0 ? cs.residual_norm / err.norm() : 0.0;
    return cs;
}

struct ThresholdResult {
    double value = 0.0;
    double bracket_width = 0.0;
    bool split_verified = false;  // positive on every scan point below, negative above
};

namespace detail {

template <class G>
ThresholdResult threshold_by_scan(G&& g, double lo, double hi, int steps, const char* what) {
    std::vector<double> xs(steps), gs(steps);
    for (int i = 0; i < steps; ++i) {
        xs[i] = lo + (hi - lo) * i / steps;
        gs[i] = g(xs[i]);
    }
    int idx = -1;  // last scan point with g > 0 followed by g <= 0
    for (int i = 0; i + 1 < steps; ++i)
        if (gs[i] > 0 && gs[i + 1] <= 0) idx = i;
    if (idx < 0) throw BracketError(std::string(what) + ": no sign change found on the scan");
    ThresholdResult t;
    t.split_verified = true;
    for (int i = 0; i < steps; ++i)
        if ((i <= idx && !(gs[i] > 0)) || (i > idx && !(gs[i] < 0))) t.split_verified = false;
    double a = xs[idx], b = xs[idx + 1];
    while (b - a > 1e-13) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (g(mid) > 0) a = mid;
        else b = mid;
    }
    t.value = 0.5 * (a + b);
    t.bracket_width = b - a;
    return t;
}

} // namespace detail

// g(alpha) = Vol(M_alpha(E)) - 2 Im Phi_E(alpha/2)
inline double alpha0_gap(double alpha) {
    return vol_cone_E(alpha).volume - 2.0 * im_phi_real(ConeAngles::E(alpha), alpha / 2);
}

// h(alpha) = Vol(M_(alpha,alpha,alpha)(B)) - 2 Im Phi_B(alpha/2)
inline double equal_angle_gap(double alpha) {
    return vol_cone_B(alpha, alpha, alpha).volume -
           2.0 * im_phi_real(ConeAngles::B(alpha, alpha, alpha), alpha / 2);
}

inline ThresholdResult threshold_alpha0(int scan_steps = 400) {
    return detail::threshold_by_scan(alpha0_gap, 0.0, 2.0 * pi / 3.0, scan_steps, "threshold_alpha0");
}

inline ThresholdResult equal_angle_bound_B(int scan_steps = 400) {
    return detail::threshold_by_scan(equal_angle_gap, 0.0, pi, scan_steps, "equal_angle_bound_B");
}

struct RegionSample {
    std::array<double, 3> angles{};
    double condition = 0.0;  // 2 Im Phi_B(alpha_1/2) - Vol
    bool in_omega0 = false;
};

struct RegionGrid {
    double lo = 0.0, hi = 0.0;
    int steps = 0;  // points per axis: lo + (hi - lo) i / steps, i < steps
    std::vector<RegionSample> samples;  // index (i * steps + j) * steps + k
    std::vector<std::array<double, 3>> boundary;  // zero crossings on grid edges

    double coord(int i) const { return lo + (hi - lo) * i / steps; }
};

inline RegionSample classify_point(double a1, double a2, double a3) {
    const auto spec = ConeAngles::B(a1, a2, a3);
    RegionSample s;
    s.angles = {a1, a2, a3};
    s.condition = 2.0 * im_phi_real(spec, spec.min() / 2) - vol_cone(spec).volume;
    s.in_omega0 = s.condition < 0.0;
    return s;
}

inline RegionGrid omega0_classify(double lo, double hi, int steps) {
    if (!(lo >= 0.0 && hi <= pi && hi > lo) || steps < 1)
        throw DomainError("omega0_classify: grid must lie in [0, pi) with positive steps");
    RegionGrid g;
    g.lo = lo;
    g.hi = hi;
    g.steps = steps;
    const std::size_t n = steps;
    g.samples.resize(n * n * n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                g.samples[(i * n + j) * n + k] = classify_point(g.coord(int(i)), g.coord(int(j)), g.coord(int(k)));
    });
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const RegionSample& {
        return g.samples[(i * n + j) * n + k];
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const auto& s = at(i, j, k);
                const std::size_t nb[3][3] = {{i + 1, j, k}, {i, j + 1, k}, {i, j, k + 1}};
                for (const auto& q : nb) {
                    if (q[0] >= n || q[1] >= n || q[2] >= n) continue;
                    const auto& t = at(q[0], q[1], q[2]);
                    if (s.in_omega0 == t.in_omega0) continue;
                    const double w = s.condition / (s.condition - t.condition);
                    std::array<double, 3> p;
                    for (int c = 0; c < 3; ++c) p[c] = s.angles[c] + w * (t.angles[c] - s.angles[c]);
                    g.boundary.push_back(p);
                }
            }
    return g;
}

} // namespace cjvol
