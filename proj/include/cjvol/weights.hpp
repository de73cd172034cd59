#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cjvol {

enum class Knot { E, B };

inline const char* knot_name(Knot k) { return k == Knot::E ? "E" : "B"; }

inline int component_count(Knot k) { return k == Knot::E ? 1 : 3; }

// Half-integer colors stored doubled: twice[i] = 2 j_i.  B weights are kept sorted.
struct Weights {
    Knot knot = Knot::E;
    std::vector<int> twice;

    static Weights E(int twice_j) { return {Knot::E, {twice_j}}; }
    static Weights B(int a, int b, int c) {
        Weights w{Knot::B, {a, b, c}};
        std::sort(w.twice.begin(), w.twice.end());
        return w;
    }
    static Weights from_half_integers(Knot knot, const std::vector<double>& j) {
        if (static_cast<int>(j.size()) != component_count(knot))
            throw DomainError(std::string("weights: knot ") + knot_name(knot) + " needs " +
                              std::to_string(component_count(knot)) + " weight(s)");
        Weights w{knot, {}};
        for (double x : j) {
            const double t = 2.0 * x;
            if (!std::isfinite(t) || t != std::round(t))
                throw DomainError("weights: " + std::to_string(x) + " is not a half-integer");
            w.twice.push_back(static_cast<int>(t));
        }
        std::sort(w.twice.begin(), w.twice.end());
        return w;
    }

    double j(std::size_t i) const { return 0.5 * twice[i]; }

    bool valid_for(int r) const {
        return std::all_of(twice.begin(), twice.end(), [r](int t) { return t >= 0 && t <= r - 2; });
    }
};

inline int k_max(int r, const Weights& w) {
    int k = r;
    for (int t : w.twice) k = std::min({k, t, r - t - 2});
    return k;
}

} // namespace cjvol
