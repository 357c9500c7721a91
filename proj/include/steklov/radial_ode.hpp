#pragma once

// Radial reduction of the boundary spectrum on rotationally symmetric
// geodesic balls B_R with metric dr^2 + theta(r)^2 (round sphere metric).
// A coclosed sphere eigenform with Hodge eigenvalue mu extends harmonically
// as Q(r) * (eigenform) where
//
//   Q'' + (n - 2p) (theta'/theta) Q' - mu Q / theta^2 = 0,
//
// and the boundary eigenvalue is nu = Q'(R)/Q(R).  r = 0 is a regular
// singular point, so the solve launches with a Frobenius series on [0, r0]
// and hands off to an adaptive Runge-Kutta integrator on [r0, R].

#include "steklov/rational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace steklov {

enum class WarpKind { euclidean, spherical, hyperbolic, custom };

struct WarpProfile {
    WarpKind kind = WarpKind::custom;
    std::function<double(double)> theta;
    std::function<double(double)> dtheta;
    std::function<double(double)> ddtheta;
    double validity = std::numeric_limits<double>::infinity();
    // Coefficients of theta(r)/r as a series in r^2, used by the series
    // launch near the singular point.  Required for solving.
    std::vector<double> theta_over_r_even;
};

inline WarpProfile euclidean_profile() {
    WarpProfile w;
    w.kind = WarpKind::euclidean;
    w.theta = [](double r) { return r; };
    w.dtheta = [](double) { return 1.0; };
    w.ddtheta = [](double) { return 0.0; };
    w.theta_over_r_even = {1.0};
    return w;
}

namespace detail {

inline std::vector<double> sinc_like_series(bool alternating, int count) {
    std::vector<double> c(count);
    double fact = 1.0;  // (2m+1)!
    for (int m = 0; m < count; ++m) {
        if (m > 0) fact *= (2.0 * m) * (2.0 * m + 1.0);
        c[m] = (alternating && m % 2 == 1 ? -1.0 : 1.0) / fact;
    }
    return c;
}

}  // namespace detail

inline WarpProfile spherical_profile() {
    WarpProfile w;
    w.kind = WarpKind::spherical;
    w.theta = [](double r) { return std::sin(r); };
    w.dtheta = [](double r) { return std::cos(r); };
    w.ddtheta = [](double r) { return -std::sin(r); };
    w.validity = M_PI;
    w.theta_over_r_even = detail::sinc_like_series(true, 24);
    return w;
}

inline WarpProfile hyperbolic_profile() {
    WarpProfile w;
    w.kind = WarpKind::hyperbolic;
    w.theta = [](double r) { return std::sinh(r); };
    w.dtheta = [](double r) { return std::cosh(r); };
    w.ddtheta = [](double r) { return std::sinh(r); };
    w.theta_over_r_even = detail::sinc_like_series(false, 24);
    return w;
}

struct RadialProblem {
    WarpProfile profile;
    int n = 0;   // boundary sphere dimension; ambient dimension is n + 1
    int p = 0;   // form degree on the sphere
    int k = 0;   // spectral index, informational
    Rational mu; // sphere Hodge eigenvalue of the coclosed eigenform
    double R = 1.0;
};

struct RadialSolution {
    std::vector<double> r_samples;
    std::vector<double> q_samples;  // normalized so the last sample is 1
    double nu = 0.0;
    double indicial_exponent = 0.0;
};

namespace detail {

// w = u / v on even series (coefficients indexed by powers of r^2).
inline std::vector<double> even_series_divide(const std::vector<double>& u,
                                              const std::vector<double>& v) {
    if (v.empty() || v[0] == 0.0) throw std::invalid_argument("series division by zero constant term");
    const std::size_t m = std::max(u.size(), v.size());
    std::vector<double> w(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = i < u.size() ? u[i] : 0.0;
        for (std::size_t j = 1; j <= i; ++j)
            if (j < v.size()) acc -= v[j] * w[i - j];
        w[i] = acc / v[0];
    }
    return w;
}

struct LaunchSeries {
    std::vector<double> a;  // r theta'/theta      as a series in r^2
    std::vector<double> b;  // r^2 / theta^2       as a series in r^2
};

inline LaunchSeries launch_series(const WarpProfile& w) {
    const std::vector<double>& phi = w.theta_over_r_even;
    if (phi.empty() || phi[0] != 1.0)
        throw std::invalid_argument("profile series must start with theta/r -> 1");
    // theta = r phi, so r theta'/theta = 1 + (r phi')/phi and the numerator
    // r phi' has even coefficients 2m phi_m.
    std::vector<double> rdphi(phi.size());
    for (std::size_t m = 0; m < phi.size(); ++m) rdphi[m] = 2.0 * m * phi[m];
    LaunchSeries s;
    s.a = even_series_divide(rdphi, phi);
    s.a[0] += 1.0;
    std::vector<double> phi2(phi.size(), 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; i + j < phi.size(); ++j) phi2[i + j] += phi[i] * phi[j];
    std::vector<double> one{1.0};
    s.b = even_series_divide(one, phi2);
    return s;
}

}  // namespace detail

inline RadialSolution solve_radial_profile(const RadialProblem& prob) {
    if (prob.n < 1 || prob.p < 0 || prob.p > prob.n) throw std::invalid_argument("bad sphere indices");
    if (prob.mu < 0) throw std::invalid_argument("negative sphere eigenvalue");
    if (!(prob.R > 0.0) || prob.R >= prob.profile.validity)
        throw std::invalid_argument("radius outside profile validity");

    const double mu = to_double(prob.mu);
    const double q = prob.n - 2 * prob.p;  // coefficient n - 2p
    // Indicial equation s(s-1) + (n-2p)s - mu = 0; take the larger root.
    const double s = 0.5 * (-(q - 1.0) + std::sqrt((q - 1.0) * (q - 1.0) + 4.0 * mu));

    const detail::LaunchSeries series = detail::launch_series(prob.profile);
    const double r0 = std::min(prob.R / 10.0, 0.1);

    // Frobenius coefficients c_{2l} of Q = r^s sum c_{2l} r^{2l}:
    //   c_J D(s+J) = -sum_{m>=1} [ (n-2p) a_m (s+J-2m) - mu b_m ] c_{J-2m}
    // with D the indicial polynomial; only even J contribute.
    const std::size_t terms = series.a.size();
    std::vector<double> c(terms, 0.0);
    c[0] = 1.0;
    for (std::size_t l = 1; l < terms; ++l) {
        double rhs = 0.0;
        for (std::size_t m = 1; m <= l; ++m) {
            const double am = m < series.a.size() ? series.a[m] : 0.0;
            const double bm = m < series.b.size() ? series.b[m] : 0.0;
            rhs -= (q * am * (s + 2.0 * (l - m)) - mu * bm) * c[l - m];
        }
        const double t = s + 2.0 * l;
        const double D = t * (t - 1.0) + q * t - mu;
        c[l] = rhs / D;
    }
    double qval = 0.0, dqval = 0.0;
    for (std::size_t l = terms; l-- > 0;) {
        const double pw = std::pow(r0, 2.0 * l);
        qval += c[l] * pw;
        dqval += c[l] * (s + 2.0 * l) * pw;
    }
    qval *= std::pow(r0, s);
    dqval *= std::pow(r0, s - 1.0);

    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    const WarpProfile& w = prob.profile;
    auto system = [&](const State& y, State& dy, double r) {
        const double th = w.theta(r);
        const double dth = w.dtheta(r);
        dy[0] = y[1];
        dy[1] = mu * y[0] / (th * th) - q * (dth / th) * y[1];
    };

    RadialSolution sol;
    sol.indicial_exponent = s;
    State y{qval, dqval};
    auto observer = [&](const State& st, double r) {
        sol.r_samples.push_back(r);
        sol.q_samples.push_back(st[0]);
    };
    try {
        auto stepper = odeint::make_controlled(1e-14, 1e-12, odeint::runge_kutta_dopri5<State>());
        odeint::integrate_adaptive(stepper, system, y, r0, prob.R, (prob.R - r0) / 64.0, observer);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("radial integration failed at R=") +
                                 std::to_string(prob.R) + ": " + e.what());
    }
    if (y[0] == 0.0) throw std::runtime_error("degenerate radial solution at the boundary");
    sol.nu = y[1] / y[0];
    const double scale = 1.0 / y[0];
    for (double& v : sol.q_samples) v *= scale;
    return sol;
}

// Vol(boundary)/Vol(ball) = theta^n(R) / int_0^R theta^n.
inline double volume_ratio(const WarpProfile& profile, int n, double R) {
    if (n < 1) throw std::invalid_argument("bad sphere dimension");
    if (!(R > 0.0) || R >= profile.validity) throw std::invalid_argument("radius outside profile validity");
    auto f = [&](double r) { return std::pow(profile.theta(r), n); };
    double error = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, R, 15, 1e-12, &error);
    if (!(error <= 1e-10 * std::max(std::abs(integral), 1e-300)))
        throw std::runtime_error("volume quadrature did not reach requested accuracy");
    return std::pow(profile.theta(R), n) / integral;
}

// Scalar data of a separated form Q(r) xi + P(r) dr ^ eta on the warped
// product, with xi, eta sphere eigenforms tied by d eta = (coupling) xi and
// delta xi = (coupling) eta.
struct SeparatedProfiles {
    std::function<double(double)> Q, dQ, ddQ;
    std::function<double(double)> P, dP, ddP;
};

struct SeparatedCoupling {
    Rational mu_xi;            // sphere Hodge eigenvalue of xi
    Rational mu_eta;           // sphere Hodge eigenvalue of eta
    Rational d_eta_in_xi;      // d eta = (this) * xi
    Rational delta_xi_in_eta;  // delta xi = (this) * eta
};

struct ResidualReport {
    double tangential_max = 0.0;
    double normal_max = 0.0;
};

// Evaluates the two scalar components of the Hodge Laplacian of the
// separated form on a radial grid.  Both vanish identically iff the pair
// (Q, P) solves the coupled radial system.
inline ResidualReport separated_laplacian_residual(const WarpProfile& w, int n, int p,
                                                   const SeparatedProfiles& f,
                                                   const SeparatedCoupling& c,
                                                   const std::vector<double>& grid) {
    const double mu_xi = to_double(c.mu_xi);
    const double mu_eta = to_double(c.mu_eta);
    const double cd = to_double(c.d_eta_in_xi);
    const double cdelta = to_double(c.delta_xi_in_eta);
    const double q = n - 2.0 * p;
    ResidualReport rep;
    for (double r : grid) {
        if (!(r > 0.0) || r >= w.validity) throw std::invalid_argument("grid point outside profile validity");
        const double th = w.theta(r);
        const double dth = w.dtheta(r);
        const double ddth = w.ddtheta(r);
        const double lg = dth / th;               // theta'/theta
        const double dlg = ddth / th - lg * lg;   // (theta'/theta)'
        const double tangential =
            mu_xi * f.Q(r) / (th * th) - (f.ddQ(r) + q * lg * f.dQ(r)) - 2.0 * lg * cd * f.P(r);
        const double normal = mu_eta * f.P(r) / (th * th) -
                              (f.ddP(r) + (q + 2.0) * (dlg * f.P(r) + lg * f.dP(r))) -
                              2.0 * (dth / (th * th * th)) * cdelta * f.Q(r);
        rep.tangential_max = std::max(rep.tangential_max, std::abs(tangential));
        rep.normal_max = std::max(rep.normal_max, std::abs(normal));
    }
    return rep;
}

}  // namespace steklov
