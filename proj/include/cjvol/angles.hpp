#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"
#include "weights.hpp"

namespace cjvol {

// One cone angle for E, a sorted triple for B (radians).
struct ConeAngles {
    Knot knot = Knot::E;
    std::vector<double> alpha;

    static ConeAngles E(double a) { return {Knot::E, {a}}; }
    static ConeAngles B(double a1, double a2, double a3) { return make(Knot::B, {a1, a2, a3}); }
    static ConeAngles make(Knot knot, std::vector<double> a) {
        if (static_cast<int>(a.size()) != component_count(knot))
            throw DomainError(std::string("knot ") + knot_name(knot) + " takes " +
                              std::to_string(component_count(knot)) + " angle(s)");
        for (double x : a)
            if (!std::isfinite(x)) throw DomainError("cone angle is not finite");
        std::sort(a.begin(), a.end());
        return {knot, std::move(a)};
    }

    double min() const { return alpha.front(); }
    double sum() const {
        double s = 0.0;
        for (double x : alpha) s += x;
        return s;
    }
};

inline bool is_hyperbolic(const ConeAngles& a) {
    const double hi = a.knot == Knot::E ? 2.0 * pi / 3.0 : pi;
    return std::all_of(a.alpha.begin(), a.alpha.end(), [hi](double x) { return x >= 0.0 && x < hi; });
}

inline void require_hyperbolic(const ConeAngles& a, const char* what) {
    if (!is_hyperbolic(a))
        throw DomainError(std::string(what) + ": angles outside the hyperbolic range " +
                          (a.knot == Knot::E ? "[0, 2pi/3)" : "[0, pi)^3"));
}

} // namespace cjvol
