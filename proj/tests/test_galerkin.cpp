#include <catch2/catch_amalgamated.hpp>

#include "steklov/galerkin.hpp"

#include "support.hpp"

#include <cmath>

using namespace steklov;
using namespace steklov::testing;

namespace {

GalerkinProblem ball_problem(int n, int p, int D,
                             BoundaryConstraint c = BoundaryConstraint::tangential) {
    GalerkinProblem gp;
    gp.domain = Domain::unit_ball();
    gp.n = n;
    gp.p = p;
    gp.max_degree = D;
    gp.constraint = c;
    return gp;
}

bool in_span(const std::vector<PForm>& basis, const PForm& w, int n, int p, int D) {
    const FormBasis fb = FormBasis::up_to_degree(n + 1, D, p);
    std::vector<std::vector<Rational>> cols;
    for (const PForm& b : basis) cols.push_back(fb.coordinates(b));
    MatQ M = MatQ::from_columns(cols);
    try {
        solve(M, fb.coordinates(w));
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

}  // namespace

TEST_CASE("monomial moments match the classical closed forms") {
    // area and volume of the unit sphere/ball in R^3: 4 pi and 4 pi / 3
    const MomentValue area = sphere_monomial_moment({0, 0, 0});
    REQUIRE(area.rational == 4);
    REQUIRE(area.pi_half_power == 2);
    REQUIRE(ball_monomial_moment({0, 0, 0}).rational == make_rational(4, 3));
    REQUIRE(sphere_monomial_moment({2, 0, 0}).rational == make_rational(4, 3));
    REQUIRE(ball_monomial_moment({2, 0, 0}).rational == make_rational(4, 15));
    REQUIRE(sphere_monomial_moment({1, 2, 0}).rational == 0);
    // in R^4 the area of S^3 is 2 pi^2
    const MomentValue area4 = sphere_monomial_moment({0, 0, 0, 0});
    REQUIRE(area4.rational == 2);
    REQUIRE(area4.pi_half_power == 4);

    SECTION("inserting r^2 shifts ball moments consistently") {
        auto rng = make_rng(916);
        for (int trial = 0; trial < 12; ++trial) {
            const MultiIndex a = random_multi_index(rng, 3, 6);
            Rational total(0);
            for (size_t i = 0; i < a.size(); ++i) {
                MultiIndex b = a;
                b[i] += 2;
                total += ball_monomial_moment(b).rational;
            }
            REQUIRE(total == ball_monomial_moment(a).rational *
                                 Rational(multi_index_degree(a) + 3) /
                                 Rational(multi_index_degree(a) + 5));
        }
    }

    SECTION("polynomial integrals agree with termwise moments") {
        auto rng = make_rng(917);
        const Poly f = random_poly(rng, 3, 4, 5);
        const Poly g = random_poly(rng, 3, 3, 4);
        REQUIRE(sphere_integral_rational(f + g) ==
                sphere_integral_rational(f) + sphere_integral_rational(g));
        REQUIRE(sphere_integral(f).pi_half_power == 2);
    }
}

TEST_CASE("trial basis satisfies the tangential constraint exactly") {
    const auto basis = galerkin_trial_basis(ball_problem(2, 1, 2));
    REQUIRE_FALSE(basis.empty());
    for (const PForm& w : basis) {
        const Poly normal_part = interior_radial(w).component({});
        REQUIRE(vanishes_on_unit_sphere(normal_part));
    }
}

TEST_CASE("degree-2 tangential basis contains the known minimizer") {
    const PForm xi_hat = parse_pform(
        "(2 + -2 * x1^2 + 1 * x2^2 + 1 * x3^2) * dx1 + (-3 * x1 x2) * dx2 + (-3 * x1 x3) * dx3", 3,
        1);
    REQUIRE(in_span(galerkin_trial_basis(ball_problem(2, 1, 2)), xi_hat, 2, 1, 2));
}

TEST_CASE("degree-1 tangential 2-form basis contains the boundary volume extension") {
    const PForm v_hat =
        parse_pform("(1 * x3) * dx1^dx2 + (-1 * x2) * dx1^dx3 + (1 * x1) * dx2^dx3", 3, 2);
    REQUIRE(in_span(galerkin_trial_basis(ball_problem(2, 2, 1)), v_hat, 2, 2, 1));
}

TEST_CASE("empty constrained trial space is reported") {
    REQUIRE_THROWS_AS(galerkin_trial_basis(ball_problem(2, 3, 1)), std::domain_error);
}

TEST_CASE("mean-zero deflation removes constants only") {
    const auto basis = galerkin_trial_basis(ball_problem(2, 0, 2));
    const FormBasis fb = FormBasis::up_to_degree(3, 2, 0);
    REQUIRE(static_cast<int>(basis.size()) == fb.size() - 1);
    for (const PForm& f : basis)
        REQUIRE(sphere_integral_rational(f.component({})) == 0);
}

TEST_CASE("assembled ball matrices are exact and symmetric") {
    const AssembledProblem ap = assemble_problem(ball_problem(2, 1, 2));
    REQUIRE(ap.exact_pencil);
    const int nb = static_cast<int>(ap.basis.size());
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            REQUIRE(ap.A_rational.at(i, j) == ap.A_rational.at(j, i));
            REQUIRE(ap.B_rational.at(i, j) == ap.B_rational.at(j, i));
        }
}

TEST_CASE("boundary Gram rank matches the quadric-multiple count") {
    const AssembledProblem ap = assemble_problem(ball_problem(2, 1, 3));
    MatQ work = ap.B_rational;
    const int r = static_cast<int>(rref(work).size());
    // quadric multiples of 1-forms with coefficient degree <= 1
    const int predicted_null = 3 * (1 + 3);
    REQUIRE(r == static_cast<int>(ap.basis.size()) - predicted_null);
}

TEST_CASE("galerkin reproduces closed-form first eigenvalues at the minimizer degrees") {
    struct Case {
        int n, p, D;
    };
    const std::vector<Case> cases = {{2, 1, 2}, {2, 2, 1}, {3, 1, 2},
                                     {3, 2, 1}, {3, 3, 1}, {4, 1, 2}};
    for (const auto& c : cases) {
        const EigResult r = smallest_rayleigh(ball_problem(c.n, c.p, c.D));
        const double expected = to_double(first_eigenvalue(c.n, c.p));
        INFO("n=" << c.n << " p=" << c.p << " D=" << c.D);
        REQUIRE(std::abs(r.value - expected) <= 1e-10);
        REQUIRE(r.residual <= 1e-9);
    }
}

TEST_CASE("deflated p=0 problem recovers the first positive eigenvalue") {
    for (int n : {2, 3}) {
        const EigResult r = smallest_rayleigh(ball_problem(n, 0, 2));
        REQUIRE(std::abs(r.value - 1.0) <= 1e-10);
    }
}

TEST_CASE("galerkin values are upper bounds and decrease with the trial degree") {
    const double closed = to_double(first_eigenvalue(2, 1));
    double prev = std::numeric_limits<double>::infinity();
    for (int D = 1; D <= 5; ++D) {
        const EigResult r = smallest_rayleigh(ball_problem(2, 1, D));
        REQUIRE(r.value >= closed - 1e-9);
        REQUIRE(r.value <= prev + 1e-8);
        prev = r.value;
    }
    REQUIRE(std::abs(prev - closed) <= 1e-10);
}

TEST_CASE("degree-1 tangential 1-forms are rotations with quotient 2") {
    const EigResult r = smallest_rayleigh(ball_problem(2, 1, 1));
    REQUIRE(std::abs(r.value - 2.0) <= 1e-10);
}

TEST_CASE("certificate mode isolates the smallest eigenvalue exactly") {
    const AssembledProblem ap = assemble_problem(ball_problem(2, 1, 2));
    const CertificateResult good = certify_smallest_eigenvalue(ap, Rational(5, 3));
    REQUIRE(good.certified);
    REQUIRE(good.max_pencil_dimension <= 12);
    REQUIRE_FALSE(certify_smallest_eigenvalue(ap, Rational(2)).certified);
    REQUIRE_FALSE(certify_smallest_eigenvalue(ap, Rational(1)).certified);
    REQUIRE_FALSE(certify_smallest_eigenvalue(ap, Rational(8, 5)).certified);
}

TEST_CASE("iso bound on the ball: exact margins and the equality threshold") {
    for (int n = 2; n <= 5; ++n)
        for (int p = 1; p <= n; ++p) {
            const IsoBoundReport rep = iso_bound_check(Domain::unit_ball(), n, p);
            REQUIRE(rep.exact);
            REQUIRE(rep.confirmed);
            if (2 * p >= n + 1) {
                REQUIRE(rep.equality);
                REQUIRE(rep.margin_exact == 0);
            } else {
                REQUIRE_FALSE(rep.equality);
                REQUIRE(rep.margin_exact == make_rational(n + 1 - 2 * p, n + 1));
            }
        }
}

TEST_CASE("round ellipsoid reproduces the ball value numerically") {
    GalerkinProblem gp = ball_problem(2, 1, 2);
    gp.domain = Domain::ellipsoid({Rational(1), Rational(1), Rational(1)});
    const EigResult r = smallest_rayleigh(gp);
    REQUIRE_FALSE(assemble_problem(gp).exact_pencil);
    REQUIRE(std::abs(r.value - 5.0 / 3.0) <= 1e-8);
}

TEST_CASE("iso bound is confirmed on a mildly stretched ellipsoid") {
    const Domain dom = Domain::ellipsoid({Rational(11, 10), Rational(1), Rational(1)});
    const IsoBoundReport rep = iso_bound_check(dom, 2, 1, 2);
    REQUIRE_FALSE(rep.exact);
    REQUIRE(rep.confirmed);
    REQUIRE(rep.lhs <= rep.rhs + 1e-9);
}

TEST_CASE("p=0 deflation is unsupported away from the ball") {
    GalerkinProblem gp = ball_problem(2, 0, 2);
    gp.domain = Domain::ellipsoid({Rational(2), Rational(1), Rational(1)});
    REQUIRE_THROWS_AS(galerkin_trial_basis(gp), std::invalid_argument);
}

TEST_CASE("parallel pairing reproduces the inner product") {
    auto rng = make_rng(914);
    for (int n : {2, 3})
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<Rational> X, Y;
            Rational expected(0);
            for (int a = 0; a <= n; ++a) {
                X.push_back(random_rational(rng));
                Y.push_back(random_rational(rng));
                expected += X.back() * Y.back();
            }
            REQUIRE(parallel_pairing(n, X, Y) == expected);
        }
}

TEST_CASE("parallel moment identities hold at random unit normals") {
    auto rng = make_rng(915);
    for (int n : {2, 3})
        for (int p = 1; p <= n; ++p)
            for (int trial = 0; trial < (n == 2 ? 10 : 3); ++trial) {
                const ParallelMomentReport rep =
                    parallel_moment_identities(n, p, rational_sphere_point(rng, n + 1));
                INFO("n=" << n << " p=" << p);
                REQUIRE(rep.ok());
                REQUIRE(rep.wedge_expected == Rational(factorial(p)) * Rational(binomial(n + 1, p)));
            }
}

TEST_CASE("parallel moment identity values for the plane cases") {
    const ParallelMomentReport r1 =
        parallel_moment_identities(2, 1, {Rational(0), Rational(0), Rational(1)});
    REQUIRE(r1.wedge_integral == 3);
    REQUIRE(r1.contraction_integral == 1);
    const ParallelMomentReport r2 =
        parallel_moment_identities(2, 2, {Rational(3, 5), Rational(4, 5), Rational(0)});
    REQUIRE(r2.wedge_integral == 6);
    REQUIRE(r2.contraction_integral == 4);
}

TEST_CASE("vector field quotients on the unit three-ball") {
    const Poly x1 = Poly::variable(3, 1), x2 = Poly::variable(3, 2), x3 = Poly::variable(3, 3);

    const std::array<Poly, 3> minimizer = {
        Poly::constant(3, 2) - Rational(2) * x1 * x1 + x2 * x2 + x3 * x3,
        Rational(-3) * x1 * x2, Rational(-3) * x1 * x3};
    REQUIRE(vector_field_rayleigh_3d(minimizer, VectorFieldBoundary::tangent) == Rational(5, 3));

    const std::array<Poly, 3> radial = {x1, x2, x3};
    REQUIRE(vector_field_rayleigh_3d(radial, VectorFieldBoundary::normal) == Rational(3));

    const std::array<Poly, 3> rotation = {x2, -x1, Poly(3)};
    REQUIRE(vector_field_rayleigh_3d(rotation, VectorFieldBoundary::tangent) == Rational(2));
}

TEST_CASE("vector field boundary conditions are checked") {
    const Poly x1 = Poly::variable(3, 1), x2 = Poly::variable(3, 2), x3 = Poly::variable(3, 3);
    const std::array<Poly, 3> constant = {Poly::constant(3, 1), Poly(3), Poly(3)};
    REQUIRE_THROWS_AS(vector_field_rayleigh_3d(constant, VectorFieldBoundary::tangent),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(vector_field_rayleigh_3d(constant, VectorFieldBoundary::normal),
                      std::invalid_argument);
    // tangent field vanishing on the sphere has no boundary norm
    const Poly bump = radius_squared(3) - Poly::constant(3, 1);
    const std::array<Poly, 3> vanishing = {bump * x2, -(bump * x1), Poly(3)};
    REQUIRE_THROWS_AS(vector_field_rayleigh_3d(vanishing, VectorFieldBoundary::tangent),
                      std::domain_error);
}

TEST_CASE("problem validation rejects malformed inputs") {
    REQUIRE_THROWS_AS(assemble_problem(ball_problem(2, 1, 0)), std::invalid_argument);
    REQUIRE_THROWS_AS(assemble_problem(ball_problem(0, 0, 1)), std::invalid_argument);
    GalerkinProblem gp = ball_problem(2, 1, 2);
    gp.domain = Domain::ellipsoid({Rational(1), Rational(1)});  // wrong axis count
    REQUIRE_THROWS_AS(assemble_problem(gp), std::invalid_argument);
    REQUIRE_THROWS_AS(Domain::ellipsoid({Rational(1), Rational(-1), Rational(1)}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(iso_bound_check(Domain::unit_ball(), 2, 0), std::invalid_argument);
}
