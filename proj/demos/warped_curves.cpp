// Emits CSV eigenvalue curves nu(R) for geodesic balls of the three space
// forms, ready for an external plotter.

#include <cstdio>

#include "steklov/ball_spectrum.hpp"
#include "steklov/radial_ode.hpp"

using namespace steklov;

int main() {
    const int n = 2, p = 1, k = 1;
    const Rational mu = sphere_hodge_coexact(n, k, p);
    const struct {
        WarpProfile profile;
        const char* name;
        double r_max;
    } rows[] = {{euclidean_profile(), "euclidean", 3.0},
                {spherical_profile(), "spherical", 3.0},
                {hyperbolic_profile(), "hyperbolic", 3.0}};

    std::printf("profile,R,nu\n");
    for (const auto& row : rows)
        for (int i = 1; i <= 40; ++i) {
            const double R = row.r_max * i / 40.0;
            if (R >= row.profile.validity) break;
            const RadialSolution sol = solve_radial_profile({row.profile, n, p, k, mu, R});
            std::printf("%s,%.6f,%.12f\n", row.name, R, sol.nu);
        }
    return 0;
}
