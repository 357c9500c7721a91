#pragma once

// Rayleigh-Ritz machinery for the boundary spectrum on the unit ball and on
// ellipsoids: exact assembly of the variational quotient
//
//   ( int_Omega |d w|^2 + |delta w|^2 ) / ( int_Sigma |w|^2 )
//
// over polynomial trial forms satisfying the tangential boundary constraint,
// plus the isoperimetric-bound checker, the averaged parallel-form moment
// identities, and the three-dimensional div/curl vector-field quotients.
//
// Trial spaces restrict to the kernel of w -> i_grad(g) w mod (g), imposed
// exactly over the rationals (g the defining quadric), so Galerkin values
// are rigorous upper bounds for the first eigenvalue.  Every operator in
// sight preserves the per-variable parity signature of a monomial form, so
// the pencil splits into independent signature sectors; the solver and the
// exact certificate both work sector by sector.

#include "steklov/ball_spectrum.hpp"
#include "steklov/differential_form.hpp"
#include "steklov/exact_linalg.hpp"
#include "steklov/form_basis.hpp"
#include "steklov/sphere_moments.hpp"
#include "steklov/univariate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace steklov {

enum class DomainKind { ball, ellipsoid };

struct Domain {
    DomainKind kind = DomainKind::ball;
    std::vector<Rational> semi_axes;  // ellipsoid only; size = ambient dim

    static Domain unit_ball() { return Domain{}; }

    static Domain ellipsoid(std::vector<Rational> axes) {
        for (const Rational& a : axes)
            if (a <= 0) throw std::invalid_argument("ellipsoid semi-axes must be positive");
        Domain d;
        d.kind = DomainKind::ellipsoid;
        d.semi_axes = std::move(axes);
        return d;
    }
};

enum class BoundaryConstraint { tangential, none };

struct GalerkinProblem {
    Domain domain;
    int n = 2;           // boundary dimension; the ambient space is R^{n+1}
    int p = 1;           // trial form degree
    int max_degree = 1;  // coefficient degree bound D
    BoundaryConstraint constraint = BoundaryConstraint::tangential;
};

namespace detail {

inline void validate_problem(const GalerkinProblem& gp) {
    if (gp.n < 1) throw std::invalid_argument("boundary dimension must be positive");
    if (gp.p < 0 || gp.p > gp.n + 1) throw std::invalid_argument("form degree out of range");
    if (gp.max_degree < 1) throw std::invalid_argument("trial degree must be at least 1");
    if (gp.domain.kind == DomainKind::ellipsoid &&
        static_cast<int>(gp.domain.semi_axes.size()) != gp.n + 1)
        throw std::invalid_argument("semi-axis count must match the ambient dimension");
}

// Defining quadric, scaled monic in the last variable so that reduction is
// available: ball r^2 - 1; ellipsoid x_d^2 + a_d^2 (sum_{i<d} x_i^2/a_i^2 - 1).
inline Poly domain_quadric(const Domain& dom, int dim) {
    if (dom.kind == DomainKind::ball) return unit_sphere_quadric(dim);
    const Rational last2 = dom.semi_axes.back() * dom.semi_axes.back();
    Poly g = Poly::constant(dim, -last2);
    for (int v = 1; v <= dim; ++v) {
        MultiIndex a(dim, 0);
        a[v - 1] = 2;
        const Rational av = dom.semi_axes[static_cast<size_t>(v - 1)];
        g.add_term(a, v == dim ? Rational(1) : last2 / (av * av));
    }
    return g;
}

// Half the quadric gradient: Z for the ball, (x_i / a_i^2) for ellipsoids.
inline std::vector<Poly> constraint_field(const Domain& dom, int dim) {
    std::vector<Poly> f = radial_field(dim);
    if (dom.kind == DomainKind::ellipsoid)
        for (int v = 0; v < dim; ++v) {
            const Rational a = dom.semi_axes[static_cast<size_t>(v)];
            f[static_cast<size_t>(v)] *= 1 / (a * a);
        }
    return f;
}

inline double eval_double(const Poly& f, const std::vector<double>& x) {
    double total = 0.0;
    for (const auto& [a, c] : f.terms()) {
        double t = to_double(c);
        for (size_t v = 0; v < x.size(); ++v)
            for (int e = 0; e < a[v]; ++e) t *= x[v];
        total += t;
    }
    return total;
}

}  // namespace detail

// Constrained trial basis. Elements are rational combinations of monomial
// forms within a single parity sector.
inline std::vector<PForm> galerkin_trial_basis(const GalerkinProblem& gp) {
    detail::validate_problem(gp);
    const int dim = gp.n + 1;
    const FormBasis fb = FormBasis::up_to_degree(dim, gp.max_degree, gp.p);
    std::vector<PForm> elems;
    elems.reserve(static_cast<size_t>(fb.size()));
    for (int i = 0; i < fb.size(); ++i) elems.push_back(fb.element_form(i));

    std::vector<PForm> basis;
    if (gp.constraint == BoundaryConstraint::tangential && gp.p >= 1) {
        const Poly g = detail::domain_quadric(gp.domain, dim);
        const std::vector<Poly> field = detail::constraint_field(gp.domain, dim);
        const FormBasis target = FormBasis::up_to_degree(dim, gp.max_degree + 1, gp.p - 1);
        FormOp normal_part = [g, field, dim](const PForm& w) {
            const PForm contracted = interior_product(w, field);
            PForm reduced(dim, contracted.degree());
            for (const auto& [I, f] : contracted.components())
                reduced.add_component(I, reduce_mod_quadric(f, g, dim));
            return reduced;
        };
        const auto kernel = kernel_of_operators(elems, {{normal_part, &target}});
        basis.reserve(kernel.size());
        for (const auto& coeffs : kernel) basis.push_back(fb.from_coordinates(coeffs));
    } else if (gp.p == 0) {
        // Deflate the constant: restrict to boundary-mean-zero functions.
        if (gp.domain.kind != DomainKind::ball)
            throw std::invalid_argument("mean-zero deflation is only implemented for the ball");
        MatQ row(1, fb.size());
        for (int j = 0; j < fb.size(); ++j)
            row.at(0, j) = cached_sphere_moment(fb.elements()[static_cast<size_t>(j)].exponents);
        for (const auto& coeffs : nullspace(row)) basis.push_back(fb.from_coordinates(coeffs));
    } else {
        basis = std::move(elems);
    }
    if (basis.empty()) throw std::domain_error("constrained trial space is empty");
    return basis;
}

namespace detail {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<size_t>(m), 0.0);
    w.assign(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[static_cast<size_t>(i)] = t;
        w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Visits the tensor Gauss-Legendre nodes of the standard angular chart of
// S^n with their full surface weights (angles in [0,pi]^{n-1} x [0,2pi]).
inline void for_each_sphere_node(int n, int m,
                                 const std::function<void(const std::vector<double>&, double)>& visit) {
    std::vector<double> gx, gw;
    gauss_legendre(m, gx, gw);
    std::vector<double> theta(static_cast<size_t>(n)), u(static_cast<size_t>(n) + 1);
    std::function<void(int, double)> rec = [&](int level, double weight) {
        const bool last = level == n - 1;
        const double lo = 0.0, hi = last ? 2.0 * M_PI : M_PI;
        for (int i = 0; i < m; ++i) {
            const double t = 0.5 * (hi + lo) + 0.5 * (hi - lo) * gx[static_cast<size_t>(i)];
            const double wt = 0.5 * (hi - lo) * gw[static_cast<size_t>(i)];
            theta[static_cast<size_t>(level)] = t;
            const double jac = last ? 1.0 : std::pow(std::sin(t), n - 1 - level);
            if (last) {
                double sines = 1.0;
                for (int j = 0; j < n; ++j) {
                    u[static_cast<size_t>(j)] = sines * std::cos(theta[static_cast<size_t>(j)]);
                    sines *= std::sin(theta[static_cast<size_t>(j)]);
                }
                u[static_cast<size_t>(n)] = sines;
                visit(u, weight * wt * jac);
            } else {
                rec(level + 1, weight * wt * jac);
            }
        }
    };
    rec(0, 1.0);
}

// Boundary Gram matrix of the trial forms over an ellipsoid surface, by
// quadrature refined until two successive levels agree.
inline Eigen::MatrixXd ellipsoid_boundary_gram(const std::vector<PForm>& basis,
                                               const std::vector<Rational>& axes, int n) {
    const int dim = n + 1;
    const int nb = static_cast<int>(basis.size());
    std::vector<double> a(static_cast<size_t>(dim));
    double axes_product = 1.0;
    for (int v = 0; v < dim; ++v) {
        a[static_cast<size_t>(v)] = to_double(axes[static_cast<size_t>(v)]);
        axes_product *= a[static_cast<size_t>(v)];
    }
    // flatten component polynomials against a shared tuple enumeration
    const std::vector<IndexTuple> tuples = increasing_tuples(dim, basis.front().degree());
    std::map<IndexTuple, int> tuple_pos;
    for (size_t t = 0; t < tuples.size(); ++t) tuple_pos[tuples[t]] = static_cast<int>(t);
    const int nt = static_cast<int>(tuples.size());

    Eigen::MatrixXd prev;
    for (int m : {12, 18, 27, 40, 60, 90, 135, 200}) {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nb, nb);
        std::vector<double> x(static_cast<size_t>(dim));
        Eigen::MatrixXd vals(nb, nt);
        for_each_sphere_node(n, m, [&](const std::vector<double>& u, double w) {
            double stretch = 0.0;
            for (int v = 0; v < dim; ++v) {
                x[static_cast<size_t>(v)] = a[static_cast<size_t>(v)] * u[static_cast<size_t>(v)];
                const double r = u[static_cast<size_t>(v)] / a[static_cast<size_t>(v)];
                stretch += r * r;
            }
            const double area = axes_product * std::sqrt(stretch);
            vals.setZero();
            for (int b = 0; b < nb; ++b)
                for (const auto& [I, f] : basis[static_cast<size_t>(b)].components())
                    vals(b, tuple_pos.at(I)) = eval_double(f, x);
            B.noalias() += (w * area) * (vals * vals.transpose());
        });
        if (prev.size() > 0) {
            const double scale = 1.0 + B.cwiseAbs().maxCoeff();
            if ((B - prev).cwiseAbs().maxCoeff() <= 1e-10 * scale) return B;
        }
        prev = std::move(B);
    }
    throw std::runtime_error("ellipsoid surface quadrature did not converge");
}

inline double ellipsoid_surface_area(const std::vector<Rational>& axes, int n) {
    std::vector<double> a(axes.size());
    double axes_product = 1.0;
    for (size_t v = 0; v < axes.size(); ++v) {
        a[v] = to_double(axes[v]);
        axes_product *= a[v];
    }
    double prev = 0.0;
    bool have_prev = false;
    for (int m : {12, 18, 27, 40, 60, 90, 135, 200}) {
        double total = 0.0;
        for_each_sphere_node(n, m, [&](const std::vector<double>& u, double w) {
            double stretch = 0.0;
            for (size_t v = 0; v < a.size(); ++v) {
                const double r = u[v] / a[v];
                stretch += r * r;
            }
            total += w * axes_product * std::sqrt(stretch);
        });
        if (have_prev && std::abs(total - prev) <= 1e-10 * (1.0 + std::abs(total))) return total;
        prev = total;
        have_prev = true;
    }
    throw std::runtime_error("ellipsoid surface quadrature did not converge");
}

}  // namespace detail

struct AssembledProblem {
    GalerkinProblem problem;
    std::vector<PForm> basis;
    MatQ A_rational{0, 0};  // exact energy Gram (common sqrt(pi) power stripped)
    MatQ B_rational{0, 0};  // exact boundary Gram; ball only
    Eigen::MatrixXd A;      // floating versions consumed by the solver
    Eigen::MatrixXd B;
    bool exact_pencil = false;
    int moment_pi_power = 0;  // the stripped power of sqrt(pi)
};

inline AssembledProblem assemble_problem(const GalerkinProblem& gp) {
    detail::validate_problem(gp);
    const int dim = gp.n + 1;
    AssembledProblem ap;
    ap.problem = gp;
    ap.basis = galerkin_trial_basis(gp);
    const int nb = static_cast<int>(ap.basis.size());
    ap.moment_pi_power = moment_pi_half_power(dim);

    std::vector<PForm> d(static_cast<size_t>(nb), PForm(1, 0)),
        del(static_cast<size_t>(nb), PForm(1, 0));
    std::vector<unsigned> sig(static_cast<size_t>(nb), 0);
    for (int i = 0; i < nb; ++i) {
        const PForm& w = ap.basis[static_cast<size_t>(i)];
        d[static_cast<size_t>(i)] = w.degree() < dim ? exterior_d(w) : PForm::zero(dim, 0);
        del[static_cast<size_t>(i)] = detail::codifferential_or_zero(w);
        sig[static_cast<size_t>(i)] = signature_of(w);
    }

    ap.A_rational = MatQ(nb, nb);
    const bool ball = gp.domain.kind == DomainKind::ball;
    if (ball) ap.B_rational = MatQ(nb, nb);
    ap.B = Eigen::MatrixXd::Zero(nb, nb);

    Rational axes_product(1);
    if (!ball)
        for (const Rational& a : gp.domain.semi_axes) axes_product *= a;

    for (int i = 0; i < nb; ++i)
        for (int j = i; j < nb; ++j) {
            if (sig[static_cast<size_t>(i)] != sig[static_cast<size_t>(j)]) continue;
            Poly energy = pointwise_inner(d[static_cast<size_t>(i)], d[static_cast<size_t>(j)]);
            if (gp.p >= 1)
                energy += pointwise_inner(del[static_cast<size_t>(i)], del[static_cast<size_t>(j)]);
            if (ball) {
                ap.A_rational.at(i, j) = ball_integral_rational(energy);
                const Poly surface =
                    pointwise_inner(ap.basis[static_cast<size_t>(i)], ap.basis[static_cast<size_t>(j)]);
                ap.B_rational.at(i, j) = sphere_integral_rational(surface);
                ap.B_rational.at(j, i) = ap.B_rational.at(i, j);
            } else {
                ap.A_rational.at(i, j) =
                    axes_product * ball_integral_rational(energy.scale_variables(gp.domain.semi_axes));
            }
            ap.A_rational.at(j, i) = ap.A_rational.at(i, j);
        }

    ap.A = ap.A_rational.to_double();
    if (ball) {
        ap.exact_pencil = true;
        ap.B = ap.B_rational.to_double();
    } else {
        ap.A *= std::pow(M_PI, 0.5 * ap.moment_pi_power);
        ap.B = detail::ellipsoid_boundary_gram(ap.basis, gp.domain.semi_axes, gp.n);
    }

    for (const Eigen::MatrixXd* M : {&ap.A, &ap.B}) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(*M, Eigen::EigenvaluesOnly);
        if (es.eigenvalues()(0) < -1e-9 * (1.0 + M->cwiseAbs().maxCoeff()))
            throw std::logic_error("assembled Gram matrix is not positive semidefinite");
    }
    return ap;
}

enum class ValueCertificate { floating, exact_rational_ratio };

struct EigResult {
    double value = 0.0;
    double residual = 0.0;
    int trial_dimension = 0;
    ValueCertificate certificate = ValueCertificate::floating;
};

namespace detail {

// Forms in the trial space vanishing on the boundary are exactly the
// quadric multiples g * eta with deg eta <= D - 2, and every such multiple
// satisfies the tangential constraint; counting them per parity sector
// predicts the rank of each boundary Gram block exactly.
inline std::map<unsigned, int> boundary_null_counts(const GalerkinProblem& gp) {
    std::map<unsigned, int> counts;
    if (gp.max_degree < 2) return counts;
    const FormBasis fb = FormBasis::up_to_degree(gp.n + 1, gp.max_degree - 2, gp.p);
    for (const auto& e : fb.elements()) ++counts[e.signature];
    return counts;
}

struct ReducedSector {
    std::vector<int> index;  // basis positions of the sector
    MatQ A{0, 0}, B{0, 0};   // exact reduced pencil (exact path only)
    Eigen::MatrixXd Ad, Bd;  // floating reduced pencil
};

// Reduces one sector to a pencil with positive definite right-hand side.
// Null(B) holds the forms vanishing on the boundary; the finite pencil
// eigenvalues live on the Schur complement of A there (eliminating the
// interior part is the discrete analogue of extending harmonically), so
// plain restriction to a complement would overestimate the minimum.
inline std::vector<ReducedSector> reduce_sectors(const AssembledProblem& ap) {
    const int nb = static_cast<int>(ap.basis.size());
    std::map<unsigned, std::vector<int>> sectors;
    for (int i = 0; i < nb; ++i) sectors[signature_of(ap.basis[static_cast<size_t>(i)])].push_back(i);
    const std::map<unsigned, int> null_counts = boundary_null_counts(ap.problem);

    std::vector<ReducedSector> out;
    for (const auto& [sigma, idx] : sectors) {
        const int s = static_cast<int>(idx.size());
        const auto it = null_counts.find(sigma);
        const int predicted_null = it == null_counts.end() ? 0 : it->second;
        ReducedSector rs;
        if (ap.exact_pencil) {
            MatQ As(s, s), Bs(s, s);
            for (int a = 0; a < s; ++a)
                for (int b = 0; b < s; ++b) {
                    const int ia = idx[static_cast<size_t>(a)], ib = idx[static_cast<size_t>(b)];
                    As.at(a, b) = ap.A_rational.at(ia, ib);
                    Bs.at(a, b) = ap.B_rational.at(ia, ib);
                }
            const std::vector<std::vector<Rational>> kernel = nullspace(Bs);
            const int q = static_cast<int>(kernel.size());
            if (q != predicted_null)
                throw std::logic_error("boundary Gram rank disagrees with the quadric-multiple count");
            MatQ work = Bs;
            const std::vector<int> pivots = rref(work);
            const int r = static_cast<int>(pivots.size());
            if (r == 0) continue;
            rs.B = MatQ(r, r);
            rs.index.resize(static_cast<size_t>(r));
            for (int a = 0; a < r; ++a) {
                rs.index[static_cast<size_t>(a)] = idx[static_cast<size_t>(pivots[static_cast<size_t>(a)])];
                for (int b = 0; b < r; ++b)
                    rs.B.at(a, b) = Bs.at(pivots[static_cast<size_t>(a)], pivots[static_cast<size_t>(b)]);
            }
            // Schur complement: A_WW - A_WK (A_KK)^{-1} A_KW over the exact
            // kernel basis K and the pivot coordinates W.
            MatQ M1(r, r), M2(r, q), M3(q, q);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    M1.at(a, b) = As.at(pivots[static_cast<size_t>(a)], pivots[static_cast<size_t>(b)]);
            for (int kb = 0; kb < q; ++kb) {
                std::vector<Rational> Ak(static_cast<size_t>(s), Rational(0));
                for (int a = 0; a < s; ++a)
                    for (int b = 0; b < s; ++b)
                        Ak[static_cast<size_t>(a)] +=
                            As.at(a, b) * kernel[static_cast<size_t>(kb)][static_cast<size_t>(b)];
                for (int a = 0; a < r; ++a) M2.at(a, kb) = Ak[static_cast<size_t>(pivots[static_cast<size_t>(a)])];
                for (int ka = 0; ka < q; ++ka) {
                    Rational dot(0);
                    for (int b = 0; b < s; ++b)
                        dot += kernel[static_cast<size_t>(ka)][static_cast<size_t>(b)] * Ak[static_cast<size_t>(b)];
                    M3.at(ka, kb) = dot;
                }
            }
            rs.A = M1;
            if (q > 0) {
                for (int col = 0; col < r; ++col) {
                    std::vector<Rational> rhs(static_cast<size_t>(q));
                    for (int ka = 0; ka < q; ++ka) rhs[static_cast<size_t>(ka)] = M2.at(col, ka);
                    const std::vector<Rational> y = solve(M3, rhs);
                    for (int a = 0; a < r; ++a) {
                        Rational acc(0);
                        for (int ka = 0; ka < q; ++ka) acc += M2.at(a, ka) * y[static_cast<size_t>(ka)];
                        rs.A.at(a, col) -= acc;
                    }
                }
            }
            rs.Ad = rs.A.to_double();
            rs.Bd = rs.B.to_double();
        } else {
            Eigen::MatrixXd As(s, s), Bs(s, s);
            for (int a = 0; a < s; ++a)
                for (int b = 0; b < s; ++b) {
                    As(a, b) = ap.A(idx[static_cast<size_t>(a)], idx[static_cast<size_t>(b)]);
                    Bs(a, b) = ap.B(idx[static_cast<size_t>(a)], idx[static_cast<size_t>(b)]);
                }
            const int r = s - predicted_null;
            if (r <= 0) continue;
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Bs);
            if (predicted_null > 0 &&
                es.eigenvalues()(predicted_null - 1) > 1e-8 * es.eigenvalues()(s - 1))
                throw std::runtime_error("boundary Gram null space poorly separated");
            const Eigen::MatrixXd W = es.eigenvectors().rightCols(r);
            rs.index = idx;
            rs.Bd = W.transpose() * Bs * W;
            rs.Ad = W.transpose() * As * W;
            if (predicted_null > 0) {
                const Eigen::MatrixXd K = es.eigenvectors().leftCols(predicted_null);
                const Eigen::MatrixXd M2 = W.transpose() * As * K;
                const Eigen::MatrixXd M3 = K.transpose() * As * K;
                rs.Ad.noalias() -= M2 * M3.llt().solve(M2.transpose());
            }
        }
        out.push_back(std::move(rs));
    }
    if (out.empty()) throw std::domain_error("boundary norm vanishes on the whole trial space");
    return out;
}

}  // namespace detail

inline EigResult smallest_rayleigh(const AssembledProblem& ap) {
    EigResult result;
    result.trial_dimension = static_cast<int>(ap.basis.size());
    if (ap.exact_pencil) result.certificate = ValueCertificate::exact_rational_ratio;
    bool found = false;
    for (const auto& rs : detail::reduce_sectors(ap)) {
        const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(rs.Ad, rs.Bd);
        const double lam = ges.eigenvalues()(0);
        if (!found || lam < result.value) {
            const Eigen::VectorXd v = ges.eigenvectors().col(0);
            result.value = lam;
            result.residual = (rs.Ad * v - lam * rs.Bd * v).norm() / v.norm();
            found = true;
        }
    }
    return result;
}

inline EigResult smallest_rayleigh(const GalerkinProblem& gp) {
    return smallest_rayleigh(assemble_problem(gp));
}

struct CertificateResult {
    bool certified = false;
    Rational value;
    std::string reason;
    int sectors_checked = 0;
    int max_pencil_dimension = 0;
};

// Exact certificate that `candidate` is the smallest generalized eigenvalue
// of the assembled pencil: it must be a root of some sector's characteristic
// polynomial det(A - t B), and no sector may have a root strictly below it
// (root counting by Sturm chains).  Requires the exact (ball) pencil and
// reduced sector blocks of dimension at most 12.
inline CertificateResult certify_smallest_eigenvalue(const AssembledProblem& ap,
                                                     const Rational& candidate) {
    CertificateResult res;
    res.value = candidate;
    if (!ap.exact_pencil) {
        res.reason = "pencil is not exact on this domain";
        return res;
    }
    bool is_root_somewhere = false;
    for (const auto& rs : detail::reduce_sectors(ap)) {
        const int r = rs.A.rows();
        res.max_pencil_dimension = std::max(res.max_pencil_dimension, r);
        if (r > 12) {
            res.reason = "a sector pencil exceeds the exact-certificate size limit";
            return res;
        }
        const UniPoly chi = pencil_characteristic(rs.A, rs.B);
        const std::vector<UniPoly> chain = sturm_chain(chi);
        const bool is_root = uni_eval(chi, candidate) == 0;
        const int below = count_roots_below(chain, candidate) - (is_root ? 1 : 0);
        if (below > 0) {
            res.reason = "a sector has an eigenvalue below the candidate";
            return res;
        }
        is_root_somewhere = is_root_somewhere || is_root;
        ++res.sectors_checked;
    }
    if (!is_root_somewhere) {
        res.reason = "candidate is not an eigenvalue of any sector";
        return res;
    }
    res.certified = true;
    return res;
}

struct IsoBoundReport {
    int n = 0, p = 0;
    DomainKind domain = DomainKind::ball;
    double lhs = 0.0;  // upper bound for the first eigenvalue
    double rhs = 0.0;  // (p+1)/(n+1) * Vol(boundary)/Vol(domain)
    bool exact = false;
    Rational lhs_exact, rhs_exact, margin_exact;  // ball only
    bool confirmed = false;
    bool equality = false;
};

// Checks the isoperimetric upper bound nu_1 <= (p+1)/(n+1) * area/volume.
// On the ball both sides are closed-form rationals; elsewhere the Galerkin
// value (a rigorous upper bound) is compared against the quadrature ratio.
inline IsoBoundReport iso_bound_check(const Domain& dom, int n, int p, int max_degree = 3) {
    if (p < 1 || p > n) throw std::invalid_argument("isoperimetric bound needs 1 <= p <= n");
    IsoBoundReport rep;
    rep.n = n;
    rep.p = p;
    rep.domain = dom.kind;
    if (dom.kind == DomainKind::ball) {
        rep.exact = true;
        rep.lhs_exact = first_eigenvalue(n, p);
        rep.rhs_exact = Rational(p + 1);  // area/volume of the unit ball is n+1
        rep.margin_exact = rep.rhs_exact - rep.lhs_exact;
        rep.lhs = to_double(rep.lhs_exact);
        rep.rhs = to_double(rep.rhs_exact);
        rep.confirmed = rep.margin_exact >= 0;
        rep.equality = rep.margin_exact == 0;
        return rep;
    }
    GalerkinProblem gp;
    gp.domain = dom;
    gp.n = n;
    gp.p = p;
    gp.max_degree = max_degree;
    gp.constraint = BoundaryConstraint::tangential;
    rep.lhs = smallest_rayleigh(gp).value;
    const double area = detail::ellipsoid_surface_area(dom.semi_axes, n);
    Rational vol_rational = ball_monomial_moment(MultiIndex(static_cast<size_t>(n) + 1, 0)).rational;
    for (const Rational& a : dom.semi_axes) vol_rational *= a;
    const double volume =
        to_double(vol_rational) * std::pow(M_PI, 0.5 * moment_pi_half_power(n + 1));
    rep.rhs = (p + 1.0) / (n + 1.0) * area / volume;
    rep.confirmed = rep.lhs <= rep.rhs + 1e-9;
    rep.equality = std::abs(rep.rhs - rep.lhs) <= 1e-9;
    return rep;
}

namespace detail {

// Determinant of a small matrix of polynomials by first-row expansion.
inline Poly poly_det(const std::vector<std::vector<Poly>>& M, int dim) {
    const size_t m = M.size();
    if (m == 0) return Poly::constant(dim, Rational(1));
    if (m == 1) return M[0][0];
    Poly total(dim);
    for (size_t c = 0; c < m; ++c) {
        std::vector<std::vector<Poly>> minor;
        minor.reserve(m - 1);
        for (size_t r = 1; r < m; ++r) {
            std::vector<Poly> row;
            row.reserve(m - 1);
            for (size_t cc = 0; cc < m; ++cc)
                if (cc != c) row.push_back(M[r][cc]);
            minor.push_back(std::move(row));
        }
        Poly term = M[0][c] * poly_det(minor, dim);
        if (c % 2 == 1) term = -term;
        total += term;
    }
    return total;
}

// Integrates out one group of sphere variables against the measure
// normalized so that int <V,X><V,Y> = <X,Y> (i.e. (n+1) x probability).
inline Poly integrate_group(const Poly& f, int group, int n) {
    const int dim = f.ambient_dim();
    const Rational s0 = cached_sphere_moment(MultiIndex(static_cast<size_t>(n) + 1, 0));
    Poly out(dim);
    for (const auto& [a, c] : f.terms()) {
        MultiIndex slice(static_cast<size_t>(n) + 1, 0);
        for (int v = 0; v <= n; ++v) slice[static_cast<size_t>(v)] = a[static_cast<size_t>(group * (n + 1) + v)];
        const Rational mom = (n + 1) * cached_sphere_moment(slice) / s0;
        if (mom == 0) continue;
        MultiIndex rest = a;
        for (int v = 0; v <= n; ++v) rest[static_cast<size_t>(group * (n + 1) + v)] = 0;
        out.add_term(rest, c * mom);
    }
    return out;
}

}  // namespace detail

// Exact average of <V,X><V,Y> over unit parallel fields V.
inline Rational parallel_pairing(int n, const std::vector<Rational>& X,
                                 const std::vector<Rational>& Y) {
    if (static_cast<int>(X.size()) != n + 1 || static_cast<int>(Y.size()) != n + 1)
        throw std::invalid_argument("vector length must match the ambient dimension");
    const Rational s0 = cached_sphere_moment(MultiIndex(static_cast<size_t>(n) + 1, 0));
    Rational total(0);
    for (int a = 0; a <= n; ++a) {
        MultiIndex e(static_cast<size_t>(n) + 1, 0);
        e[static_cast<size_t>(a)] = 2;
        total += X[static_cast<size_t>(a)] * Y[static_cast<size_t>(a)] * (n + 1) *
                 cached_sphere_moment(e) / s0;
    }
    return total;
}

struct ParallelMomentReport {
    Rational wedge_integral, wedge_expected;
    Rational contraction_integral, contraction_expected;
    bool ok() const {
        return wedge_integral == wedge_expected && contraction_integral == contraction_expected;
    }
};

// Averages of |V_1^flat ^ ... ^ V_p^flat|^2 and |i_N(V_1^flat ^ ... ^
// V_p^flat)|^2 over p independent unit parallel fields, computed by exact
// iterated moment integration; they must equal p! C(n+1, p) and
// p! C(n, p-1) at every point and unit normal.
inline ParallelMomentReport parallel_moment_identities(int n, int p,
                                                       const std::vector<Rational>& unit_normal) {
    if (p < 1 || p > n) throw std::invalid_argument("need 1 <= p <= n");
    if (static_cast<int>(unit_normal.size()) != n + 1)
        throw std::invalid_argument("normal length must match the ambient dimension");
    Rational norm2(0);
    for (const Rational& c : unit_normal) norm2 += c * c;
    if (norm2 != 1) throw std::invalid_argument("normal vector must have unit length");

    const int dim = p * (n + 1);  // symbol variables, group i holds V_i
    auto var = [&](int group, int coord) {
        return Poly::variable(dim, group * (n + 1) + coord + 1);
    };
    auto inner_vv = [&](int i, int j) {
        Poly s(dim);
        for (int a = 0; a <= n; ++a) s += var(i, a) * var(j, a);
        return s;
    };
    auto integrate_all = [&](Poly f) {
        for (int g = 0; g < p; ++g) f = detail::integrate_group(f, g, n);
        if (!f.is_zero() && f.total_degree() > 0)
            throw std::logic_error("moment integration left free variables");
        return f.coefficient(MultiIndex(static_cast<size_t>(dim), 0));
    };

    ParallelMomentReport rep;
    std::vector<std::vector<Poly>> gram(static_cast<size_t>(p),
                                        std::vector<Poly>(static_cast<size_t>(p), Poly(dim)));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) gram[static_cast<size_t>(i)][static_cast<size_t>(j)] = inner_vv(i, j);
    rep.wedge_integral = integrate_all(detail::poly_det(gram, dim));
    rep.wedge_expected = Rational(factorial(p)) * Rational(binomial(n + 1, p));

    Poly contraction(dim);
    for (int j = 0; j < p; ++j)
        for (int l = 0; l < p; ++l) {
            Poly cj(dim), cl(dim);
            for (int a = 0; a <= n; ++a) {
                cj += unit_normal[static_cast<size_t>(a)] * var(j, a);
                cl += unit_normal[static_cast<size_t>(a)] * var(l, a);
            }
            std::vector<std::vector<Poly>> minor;
            for (int i = 0; i < p; ++i) {
                if (i == j) continue;
                std::vector<Poly> row;
                for (int ii = 0; ii < p; ++ii)
                    if (ii != l) row.push_back(gram[static_cast<size_t>(i)][static_cast<size_t>(ii)]);
                minor.push_back(std::move(row));
            }
            Poly term = cj * cl * detail::poly_det(minor, dim);
            if ((j + l) % 2 == 1) term = -term;
            contraction += term;
        }
    rep.contraction_integral = integrate_all(contraction);
    rep.contraction_expected = Rational(factorial(p)) * Rational(binomial(n, p - 1));
    return rep;
}

enum class VectorFieldBoundary { tangent, normal };

// Exact Rayleigh quotient int_B (|div X|^2 + |curl X|^2) / int_S |X|^2 for a
// polynomial vector field on the unit ball in R^3 whose boundary condition
// (tangency or normality) holds exactly on the sphere.
inline Rational vector_field_rayleigh_3d(const std::array<Poly, 3>& field,
                                         VectorFieldBoundary type) {
    PForm w(3, 1);
    for (int i = 0; i < 3; ++i) {
        if (field[static_cast<size_t>(i)].ambient_dim() != 3)
            throw std::invalid_argument("field components must live in three variables");
        w.add_component({i + 1}, field[static_cast<size_t>(i)]);
    }
    if (type == VectorFieldBoundary::tangent) {
        const PForm rad = interior_radial(w);
        if (!vanishes_on_unit_sphere(rad.component({})))
            throw std::invalid_argument("field is not tangent to the unit sphere");
    } else {
        if (!pullback_vanishes_on_sphere(w))
            throw std::invalid_argument("field is not normal to the unit sphere");
    }
    const PForm dw = exterior_d(w);
    const PForm dels = codifferential(w);
    const Poly energy = pointwise_inner(dw, dw) + pointwise_inner(dels, dels);
    const Rational num = ball_integral_rational(energy);
    const Rational den = sphere_integral_rational(pointwise_inner(w, w));
    if (den == 0) throw std::domain_error("field vanishes on the boundary");
    return num / den;
}

}  // namespace steklov
