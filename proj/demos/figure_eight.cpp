// Growth of the figure-eight invariant against the cone-manifold volume.

#include <cstdio>

#include "cjvol/cjvol.hpp"

int main() {
    using namespace cjvol;
    for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
        const auto angles = ConeAngles::E(alpha);
        std::printf("alpha = %.2f  volume = %.10f\n", alpha, vol_cone(angles).volume);
        for (int r : {101, 501, 2001}) {
            const auto g = growth_rate(r, angles);
            std::printf("  r = %4d  j = %7.1f  growth = %.6f  error = %+.6f\n", r, g.weights.j(0), g.growth, g.error);
        }
    }
    std::printf("alpha0 = %.12f\n", threshold_alpha0().value);
}
