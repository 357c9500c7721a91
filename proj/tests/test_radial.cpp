#include <catch2/catch_amalgamated.hpp>

#include "steklov/ball_spectrum.hpp"
#include "steklov/radial_ode.hpp"

#include <cmath>
#include <vector>

using namespace steklov;

namespace {

double solve_nu(const WarpProfile& w, int n, int p, int k, const Rational& mu, double R) {
    RadialProblem prob;
    prob.profile = w;
    prob.n = n;
    prob.p = p;
    prob.k = k;
    prob.mu = mu;
    prob.R = R;
    return solve_radial_profile(prob).nu;
}

}  // namespace

TEST_CASE("euclidean profile reproduces k+p on the unit ball") {
    const WarpProfile w = euclidean_profile();
    for (int n = 1; n <= 5; ++n)
        for (int p = 0; p < n; ++p)
            for (int k = 1; k <= 5; ++k) {
                const double nu = solve_nu(w, n, p, k, sphere_hodge_coexact(n, k, p), 1.0);
                INFO("n=" << n << " p=" << p << " k=" << k);
                REQUIRE(std::abs(nu - (k + p)) <= 1e-8);
            }
}

TEST_CASE("euclidean n=2 p=1 k=1 gives 2") {
    const double nu = solve_nu(euclidean_profile(), 2, 1, 1, sphere_hodge_coexact(2, 1, 1), 1.0);
    REQUIRE(std::abs(nu - 2.0) <= 1e-10);
}

TEST_CASE("euclidean scaling law nu(B_R) = nu(B_1)/R") {
    const WarpProfile w = euclidean_profile();
    for (double R : {0.5, 2.0, 5.0}) {
        const double nu1 = solve_nu(w, 3, 1, 2, sphere_hodge_coexact(3, 2, 1), 1.0);
        const double nuR = solve_nu(w, 3, 1, 2, sphere_hodge_coexact(3, 2, 1), R);
        REQUIRE(std::abs(nuR - nu1 / R) <= 1e-8 * std::max(1.0, nu1 / R));
    }
}

TEST_CASE("euclidean volume ratio closed form (n+1)/R") {
    for (int n : {1, 2, 3, 4})
        for (double R : {0.5, 1.0, 3.0}) {
            const double v = volume_ratio(euclidean_profile(), n, R);
            REQUIRE(std::abs(v - (n + 1) / R) <= 1e-10 * (n + 1) / R);
        }
}

TEST_CASE("spherical volume family at R=pi/3 matches the boundary/volume ratio") {
    const WarpProfile w = spherical_profile();
    const double R = M_PI / 3.0;
    const double nu = solve_nu(w, 2, 2, 1, Rational(0), R);
    const double s = std::sin(R);
    // int_0^R sin^2 = R/2 - sin(2R)/4
    const double expected = s * s / (R / 2.0 - std::sin(2.0 * R) / 4.0);
    REQUIRE(std::abs(nu - expected) <= 1e-8);
    REQUIRE(std::abs(volume_ratio(w, 2, R) - expected) <= 1e-8);
}

TEST_CASE("volume family agrees with the volume ratio on all three space forms") {
    struct Case {
        WarpProfile w;
        std::vector<double> radii;
    };
    const std::vector<Case> cases = {
        {euclidean_profile(), {0.5, 1.0, 2.0}},
        {spherical_profile(), {M_PI / 6.0, M_PI / 3.0, M_PI / 2.0, 2.5}},
        {hyperbolic_profile(), {0.5, 1.0, 2.0}},
    };
    for (const auto& c : cases)
        for (int n : {2, 3})
            for (double R : c.radii) {
                const double nu = solve_nu(c.w, n, n, 1, Rational(0), R);
                const double ratio = volume_ratio(c.w, n, R);
                INFO("kind=" << static_cast<int>(c.w.kind) << " n=" << n << " R=" << R);
                REQUIRE(std::abs(nu - ratio) <= 1e-8 * std::max(1.0, ratio));
            }
}

TEST_CASE("boundary eigenvalue increases with the sphere eigenvalue") {
    for (const WarpProfile& w : {euclidean_profile(), spherical_profile(), hyperbolic_profile()}) {
        const double R = w.kind == WarpKind::spherical ? 1.2 : 1.5;
        double prev = -1.0;
        for (int step = 0; step <= 6; ++step) {
            const Rational mu(3 * step, 2);
            const double nu = solve_nu(w, 3, 1, 1, mu, R);
            REQUIRE(nu > prev);
            prev = nu;
        }
    }
}

TEST_CASE("perturbing the sphere eigenvalue moves the boundary eigenvalue") {
    const Rational mu = sphere_hodge_coexact(3, 2, 1);
    const double nu = solve_nu(euclidean_profile(), 3, 1, 2, mu + Rational(1, 10), 1.0);
    REQUIRE(std::abs(nu - 3.0) > 1e-4);
}

TEST_CASE("invalid radial problems are rejected") {
    RadialProblem prob;
    prob.profile = spherical_profile();
    prob.n = 2;
    prob.p = 1;
    prob.k = 1;
    prob.mu = sphere_hodge_coexact(2, 1, 1);
    prob.R = 4.0;  // beyond pi
    REQUIRE_THROWS_AS(solve_radial_profile(prob), std::invalid_argument);
    prob.R = 1.0;
    prob.mu = Rational(-1);
    REQUIRE_THROWS_AS(solve_radial_profile(prob), std::invalid_argument);
}

TEST_CASE("solution samples are normalized and start near the indicial power") {
    RadialProblem prob;
    prob.profile = hyperbolic_profile();
    prob.n = 3;
    prob.p = 1;
    prob.k = 2;
    prob.mu = sphere_hodge_coexact(3, 2, 1);
    prob.R = 1.0;
    const RadialSolution sol = solve_radial_profile(prob);
    REQUIRE(sol.indicial_exponent == Catch::Approx(3.0));
    REQUIRE(sol.r_samples.size() == sol.q_samples.size());
    REQUIRE(sol.r_samples.front() == Catch::Approx(0.1));
    REQUIRE(sol.r_samples.back() == Catch::Approx(1.0));
    REQUIRE(sol.q_samples.back() == Catch::Approx(1.0));
    // Q grows monotonically for this problem.
    for (std::size_t i = 1; i < sol.q_samples.size(); ++i)
        REQUIRE(sol.q_samples[i] >= sol.q_samples[i - 1] - 1e-12);
}

TEST_CASE("separated residual vanishes for the tangential extension profile") {
    const std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    for (int n : {2, 3, 4})
        for (int p = 0; p < n; ++p)
            for (int k : {1, 2, 3}) {
                SeparatedProfiles f;
                const double e = k + p;
                f.Q = [e](double r) { return std::pow(r, e); };
                f.dQ = [e](double r) { return e * std::pow(r, e - 1.0); };
                f.ddQ = [e](double r) { return e * (e - 1.0) * std::pow(r, e - 2.0); };
                f.P = f.dP = f.ddP = [](double) { return 0.0; };
                SeparatedCoupling c;
                c.mu_xi = sphere_hodge_coexact(n, k, p);
                c.mu_eta = Rational(0);
                c.d_eta_in_xi = Rational(0);
                c.delta_xi_in_eta = Rational(0);  // coclosed
                const ResidualReport rep =
                    separated_laplacian_residual(euclidean_profile(), n, p, f, c, grid);
                REQUIRE(rep.tangential_max <= 1e-10);
                REQUIRE(rep.normal_max <= 1e-10);
            }
}

TEST_CASE("separated residual vanishes for the coupled second-family profile") {
    // omega = Q d(phi) + P dr ^ phi with phi a coclosed (p-1)-eigenform:
    // Q = alpha r^{k+p+1}, P = -(k+p-1) r^{k+p}, alpha = (k+p-1)/(n+k-p).
    const std::vector<double> grid = {0.2, 0.4, 0.6, 0.8, 1.0};
    for (int n : {2, 3, 4})
        for (int p = 1; p <= n; ++p)
            for (int k : {1, 2}) {
                const Rational mu = sphere_hodge_coexact(n, k, p - 1);
                const double alpha = static_cast<double>(k + p - 1) / (n + k - p);
                const double nu2 = k + p - 1;
                const double eq = k + p + 1, ep = k + p;
                SeparatedProfiles f;
                f.Q = [=](double r) { return alpha * std::pow(r, eq); };
                f.dQ = [=](double r) { return alpha * eq * std::pow(r, eq - 1.0); };
                f.ddQ = [=](double r) { return alpha * eq * (eq - 1.0) * std::pow(r, eq - 2.0); };
                f.P = [=](double r) { return -nu2 * std::pow(r, ep); };
                f.dP = [=](double r) { return -nu2 * ep * std::pow(r, ep - 1.0); };
                f.ddP = [=](double r) { return -nu2 * ep * (ep - 1.0) * std::pow(r, ep - 2.0); };
                SeparatedCoupling c;
                c.mu_xi = mu;
                c.mu_eta = mu;
                c.d_eta_in_xi = Rational(1);
                c.delta_xi_in_eta = mu;
                const ResidualReport rep =
                    separated_laplacian_residual(euclidean_profile(), n, p, f, c, grid);
                INFO("n=" << n << " p=" << p << " k=" << k);
                REQUIRE(rep.tangential_max <= 1e-9);
                REQUIRE(rep.normal_max <= 1e-9);
            }
}

TEST_CASE("separated residual flags profiles that do not solve the system") {
    const std::vector<double> grid = {0.2, 0.5, 0.8, 1.0};
    SeparatedProfiles f;
    f.Q = [](double r) { return std::cos(r); };
    f.dQ = [](double r) { return -std::sin(r); };
    f.ddQ = [](double r) { return -std::cos(r); };
    f.P = f.dP = f.ddP = [](double) { return 0.0; };
    SeparatedCoupling c;
    c.mu_xi = sphere_hodge_coexact(3, 1, 1);
    c.mu_eta = Rational(0);
    c.d_eta_in_xi = Rational(0);
    c.delta_xi_in_eta = Rational(0);
    const ResidualReport rep = separated_laplacian_residual(euclidean_profile(), 3, 1, f, c, grid);
    REQUIRE(rep.tangential_max > 1e-2);
}
