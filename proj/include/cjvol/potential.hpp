#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "angles.hpp"
#include "errors.hpp"
#include "polynomial.hpp"
#include "quantum_dilog.hpp"
#include "specfun.hpp"

namespace cjvol {

using PotentialSpec = ConeAngles;

// Vertical half-line {anchor + i t : t direction >= 0}; direction -1 is downward.
struct BranchCut {
    double anchor;
    int direction;
};

namespace detail {

inline void add_family(std::vector<BranchCut>& out, double offset, double period, int dir,
                       double lo, double hi) {
    const long long n0 = static_cast<long long>(std::ceil((lo - offset) / period));
    for (long long n = n0; offset + n * period <= hi; ++n) out.push_back({offset + n * period, dir});
}

} // namespace detail

// Cuts whose anchors fall in [lo, hi].  The term Li2(e^{i(alpha + 2z)}) cuts downward at
// u = pi n - alpha/2 and Li2(e^{i(alpha - 2z)}) upward at u = alpha/2 + pi n; B adds the
// downward families u = pi n (from Li2(e^{2iz})) and u = pi n / 2 (from Li2(e^{4iz})).
inline std::vector<BranchCut> branch_cuts(const PotentialSpec& spec, double lo, double hi) {
    std::vector<BranchCut> cuts;
    for (double a : spec.alpha) {
        detail::add_family(cuts, -a / 2, pi, -1, lo, hi);
        detail::add_family(cuts, a / 2, pi, +1, lo, hi);
    }
    if (spec.knot == Knot::B) {
        detail::add_family(cuts, 0.0, pi, -1, lo, hi);
        detail::add_family(cuts, 0.0, pi / 2, -1, lo, hi);
    }
    return cuts;
}

inline bool on_branch_cut(const PotentialSpec& spec, cplx z, double tol = 1e-12) {
    if (z.imag() == 0.0) return false;
    const int side = z.imag() > 0 ? 1 : -1;
    for (const auto& c : branch_cuts(spec, z.real() - 1.0, z.real() + 1.0))
        if (c.direction == side && std::abs(z.real() - c.anchor) < tol) return true;
    return false;
}

enum class Sheet { principal, continued };

namespace detail {

inline cplx li2e(cplx theta, Sheet sheet) {
    return sheet == Sheet::principal ? dilog_exp_i(theta) : dilog_exp_i_continued(theta);
}

inline cplx phi_impl(const PotentialSpec& spec, cplx z, Sheet sheet) {
    cplx v = 0.0;
    for (double a : spec.alpha) v += -0.5 * li2e(a + 2.0 * z, sheet) + 0.5 * li2e(a - 2.0 * z, sheet);
    if (spec.knot == Knot::E) return v + spec.alpha[0] * z;
    v += -li2e(2.0 * z, sheet) + li2e(4.0 * z, sheet);
    return v + (spec.sum() + 5.0 * pi) * z - 3.0 * z * z;
}

} // namespace detail

inline cplx phi(const PotentialSpec& spec, cplx z) {
    if (on_branch_cut(spec, z)) throw BranchCutError("phi: z lies on a branch cut");
    return detail::phi_impl(spec, z, Sheet::principal);
}

// Continuation of phi from the real interval (0, pi/2) into both half planes without
// crossing cuts; agrees with phi wherever the principal arguments stay in (0, 2pi).
inline cplx phi_continued(const PotentialSpec& spec, cplx z) {
    return detail::phi_impl(spec, z, Sheet::continued);
}

inline double im_phi_real(const PotentialSpec& spec, double x) {
    if (spec.knot == Knot::E) {
        const double h = spec.alpha[0] / 2;
        return -(lobachevsky(x + h) + lobachevsky(x - h));
    }
    double v = 2.0 * delta_fn(pi / 2, x) + delta_fn(0.0, x);
    for (double a : spec.alpha) v -= delta_fn(a / 2, x);
    return v;
}

// Finite-r potential built from the quantum dilogarithm; arguments outside the
// integral's strip use the continued phi_r.
inline cplx phi_finite_r(const PotentialSpec& spec, int r, cplx z, const QuantumDilogOptions& opt = {}) {
    const cplx c(0.0, 2.0 * pi / r);
    auto qd = [&](cplx w) { return c * quantum_dilog_continued(r, w, opt); };
    cplx v = 0.0;
    for (double a : spec.alpha) v += -qd(a / 2 + z) + qd(a / 2 - z);
    if (spec.knot == Knot::E) return v + spec.alpha[0] * z;
    v += -2.0 * qd(z) + 2.0 * qd(2.0 * z);
    return v + (spec.sum() + 5.0 * pi) * z - 3.0 * z * z;
}

struct PolynomialRoots {
    std::vector<double> coefficients;  // descending powers of T
    std::vector<double> real_roots;    // ascending
    double selected = 0.0;

    double residual(double t) const { return poly_eval(coefficients, t); }
    double scale() const {
        double m = 0.0;
        for (double c : coefficients) m = std::max(m, std::abs(c));
        return m;
    }
};

struct CriticalPointSet {
    Knot knot = Knot::E;
    double x0 = 0.0;  // abscissa of the maximum giving the volume
    // E
    double theta_min = 0.0;
    std::optional<double> theta_max_low;
    // B
    double t_A = 0.0;
    double t_B = 0.0;
    bool degenerate = false;  // alpha_1 = 0: the sextic root collapses to T_B = 0
    PolynomialRoots quartic;
    PolynomialRoots sextic;
};

namespace detail {

// Roots in T of a polynomial in U = T^2 given its real roots in U.
inline std::vector<double> t_roots_from_u(const std::vector<double>& u_roots) {
    std::vector<double> t;
    for (double u : u_roots) {
        if (u > 0) {
            t.push_back(-std::sqrt(u));
            t.push_back(std::sqrt(u));
        } else if (u == 0) {
            t.push_back(0.0);
            t.push_back(0.0);
        }
    }
    std::sort(t.begin(), t.end());
    return t;
}

} // namespace detail

// Positive root of T^4 - (S + 1) T^2 - P = 0, S = sum N_i^2, P = prod N_i^2, N_i = tan(alpha_i / 2).
inline PolynomialRoots quartic_B(const PotentialSpec& spec) {
    double S = 0.0, P = 1.0;
    for (double a : spec.alpha) {
        const double n2 = std::pow(std::tan(a / 2), 2);
        S += n2;
        P *= n2;
    }
    PolynomialRoots pr;
    pr.coefficients = {1.0, 0.0, -(S + 1.0), 0.0, -P};
    const double b = S + 1.0;
    const double uA = 0.5 * (b + std::sqrt(b * b + 4.0 * P));
    const std::vector<double> uc = {1.0, -b, -P};
    const double uAp = newton_polish(uc, uA);
    std::vector<double> us = {uAp};
    if (P == 0.0) us.insert(us.begin(), 0.0);
    pr.real_roots = detail::t_roots_from_u(us);
    for (double& t : pr.real_roots) t = newton_polish(pr.coefficients, t);
    pr.selected = pr.real_roots.back();
    return pr;
}

// T^6 - S T^4 + Q T^2 - P = 0; the selected root has T^2 in (0, N_1^2).
inline PolynomialRoots sextic_B(const PotentialSpec& spec) {
    double n2[3];
    double S = 0.0, P = 1.0;
    for (int i = 0; i < 3; ++i) {
        n2[i] = std::pow(std::tan(spec.alpha[i] / 2), 2);
        S += n2[i];
        P *= n2[i];
    }
    const double e2 = n2[0] * n2[1] + n2[1] * n2[2] + n2[2] * n2[0];
    const double Q = P + 2.0 * e2 + S + 1.0;
    PolynomialRoots pr;
    pr.coefficients = {1.0, 0.0, -S, 0.0, Q, 0.0, -P};
    const auto us = real_cubic_roots(-S, Q, -P);
    pr.real_roots = detail::t_roots_from_u(us);
    for (double& t : pr.real_roots) t = newton_polish(pr.coefficients, t);
    const double hi = n2[0];
    std::optional<double> pick;
    for (double u : us)
        if (u > 0 && u < hi) {
            pick = u;
            break;
        }
    if (!pick) {
        if (P == 0.0) {
            pr.selected = 0.0;
            return pr;
        }
        throw RootNotFoundError("sextic: no root with T^2 in (0, tan^2(alpha_1/2))");
    }
    pr.selected = newton_polish(pr.coefficients, std::sqrt(*pick));
    return pr;
}

inline CriticalPointSet critical_points(const PotentialSpec& spec) {
    require_hyperbolic(spec, "critical_points");
    CriticalPointSet cp;
    cp.knot = spec.knot;
    if (spec.knot == Knot::E) {
        const double a = spec.alpha[0];
        cp.theta_min = 0.5 * std::acos(std::cos(a) - 0.5);
        cp.x0 = pi - cp.theta_min;
        if (a > pi / 3) cp.theta_max_low = 0.5 * std::acos(std::cos(a) + 0.5);
        return cp;
    }
    cp.quartic = quartic_B(spec);
    cp.sextic = sextic_B(spec);
    cp.t_A = std::atan(cp.quartic.selected);
    cp.t_B = std::atan(cp.sextic.selected);
    cp.x0 = pi - cp.t_A;
    cp.degenerate = spec.alpha[0] == 0.0;
    const auto& a = spec.alpha;
    const bool chain = (cp.degenerate ? cp.t_B == 0.0 : (0.0 < cp.t_B && cp.t_B < a[0] / 2)) &&
                       a[2] / 2 < cp.t_A && cp.t_A < pi / 2 && cp.x0 < pi - a[2] / 2;
    if (!chain) throw RootNotFoundError("critical_points: ordering of extremal points violated");
    return cp;
}

inline double stationary_residual(const PotentialSpec& spec, double x) {
    constexpr double h = 1e-6;
    return (im_phi_real(spec, x + h) - im_phi_real(spec, x - h)) / (2.0 * h);
}

} // namespace cjvol
