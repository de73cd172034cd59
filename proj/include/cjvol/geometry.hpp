#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "angles.hpp"
#include "potential.hpp"
#include "specfun.hpp"

namespace cjvol {

struct VolumeResult {
    double volume = 0.0;
    double theta = 0.0;  // principal parameter
    std::vector<std::pair<std::string, double>> terms;
};

// 2 { Lambda(theta + alpha/2) + Lambda(theta - alpha/2) },  theta = arccos(cos alpha - 1/2) / 2
inline VolumeResult vol_cone_E(double alpha) {
    const auto spec = ConeAngles::E(alpha);
    require_hyperbolic(spec, "vol_cone_E");
    VolumeResult v;
    v.theta = 0.5 * std::acos(std::cos(alpha) - 0.5);
    v.terms = {{"2L(theta+alpha/2)", 2.0 * lobachevsky(v.theta + alpha / 2)},
               {"2L(theta-alpha/2)", 2.0 * lobachevsky(v.theta - alpha / 2)}};
    v.volume = v.terms[0].second + v.terms[1].second;
    return v;
}

// 2 { sum D(alpha_i/2, theta) - 2 D(pi/2, theta) - D(0, theta) },  tan theta = T_A
namespace detail {

inline VolumeResult vol_cone_B(const ConeAngles& spec) {
    require_hyperbolic(spec, "vol_cone_B");
    VolumeResult v;
    v.theta = std::atan(quartic_B(spec).selected);
    for (int i = 0; i < 3; ++i)
        v.terms.emplace_back("2D(alpha" + std::to_string(i + 1) + "/2,theta)",
                             2.0 * delta_fn(spec.alpha[i] / 2, v.theta));
    v.terms.emplace_back("-4D(pi/2,theta)", -4.0 * delta_fn(pi / 2, v.theta));
    v.terms.emplace_back("-2D(0,theta)", -2.0 * delta_fn(0.0, v.theta));
    for (const auto& t : v.terms) v.volume += t.second;
    return v;
}

} // namespace detail

inline VolumeResult vol_cone_B(double a1, double a2, double a3) {
    return detail::vol_cone_B(ConeAngles::B(a1, a2, a3));
}

inline VolumeResult vol_cone(const ConeAngles& a) {
    if (a.knot == Knot::E) return vol_cone_E(a.alpha[0]);
    return detail::vol_cone_B(a);
}

} // namespace cjvol
