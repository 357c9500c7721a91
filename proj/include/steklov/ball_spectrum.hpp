#pragma once

// The full boundary spectrum of the normal-trace operator on p-forms over
// the unit Euclidean ball, in exact rational arithmetic.
//
// The operator sends a boundary form to -i_N d of its tangential harmonic
// extension. Its spectrum on p-forms of the n-sphere boundary decomposes
// into families indexed by the harmonic spaces of harmonic_spaces.hpp:
//
//   function  (p = 0)        nu = k                    k = 0, 1, 2, ...
//   coexact   (1 <= p < n)   nu = k + p                k = 1, 2, ...
//   volume    (p = n)        nu = n + 1                (k = 1 only)
//   exact     (1 <= p <= n)  nu = (k+p-1)(n+2k+1)/(n+2k-1)
//
// Each entry also records the sphere Hodge-Laplacian eigenvalue of its
// eigenform's coefficient profile, which feeds the radial ODE module.
//
// build_coexact_pair / build_exact_pair rebuild an eigenpair from a given
// harmonic-space member and re-verify every identity exactly before
// returning; a failure there signals a transcription error in the formulas
// and throws.

#include "steklov/differential_form.hpp"
#include "steklov/harmonic_spaces.hpp"
#include "steklov/rational.hpp"
#include "steklov/univariate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace steklov {

enum class EigenFamily { function, coexact, exact, volume };

inline const char* to_string(EigenFamily f) {
    switch (f) {
        case EigenFamily::function: return "function";
        case EigenFamily::coexact: return "coexact";
        case EigenFamily::exact: return "exact";
        case EigenFamily::volume: return "volume";
    }
    throw std::logic_error("unknown eigenvalue family");
}

struct SpectrumEntry {
    EigenFamily family = EigenFamily::function;
    int n = 0;
    int k = 0;
    int p = 0;
    Rational eigenvalue;
    int multiplicity = 0;  // 0 when multiplicities were not requested
    Rational sphere_hodge_eigenvalue;
};

// nu for the function (p=0), coexact (1<=p<n) and volume (p=n, k=1)
// families; all three read k + p.
inline Rational nu_coexact(int n, int k, int p) {
    if (n < 1 || k < 0 || p < 0 || p > n) throw std::invalid_argument("index out of range");
    return Rational(k + p);
}

inline Rational nu_function(int n, int k) { return nu_coexact(n, k, 0); }

inline Rational nu_volume(int n) { return nu_coexact(n, 1, n); }

inline Rational nu_exact(int n, int k, int p) {
    if (n < 1 || k < 1 || p < 1 || p > n) throw std::invalid_argument("index out of range");
    return make_rational(static_cast<long>(k + p - 1) * (n + 2 * k + 1), n + 2 * k - 1);
}

// Sphere Hodge eigenvalues of the eigenform coefficient profiles: the
// coexact-type families carry (k+p)(n+k-p-1), the exact family
// (k+p-1)(n+k-p).
inline Rational sphere_hodge_coexact(int n, int k, int p) {
    if (n < 1 || k < 0 || p < 0 || p > n) throw std::invalid_argument("index out of range");
    return Rational(static_cast<long>(k + p) * (n + k - p - 1));
}

inline Rational sphere_hodge_exact(int n, int k, int p) {
    if (n < 1 || k < 1 || p < 1 || p > n) throw std::invalid_argument("index out of range");
    return Rational(static_cast<long>(k + p - 1) * (n + k - p));
}

struct SpectrumOptions {
    int k_max = 3;
    bool with_multiplicities = true;
};

// All distinct eigenvalues on p-forms produced by family indices k <= k_max,
// ascending, with equal values merged (multiplicities added; the first
// generating family is kept as the label).
inline std::vector<SpectrumEntry> enumerate_spectrum(int n, int p,
                                                     const SpectrumOptions& opt = {}) {
    if (n < 1) throw std::invalid_argument("boundary dimension must be at least 1");
    if (p < 0 || p > n) throw std::invalid_argument("form degree out of range");
    if (opt.k_max < 0) throw std::invalid_argument("negative family index bound");

    std::vector<SpectrumEntry> raw;
    auto mult = [&](int k, int q) { return opt.with_multiplicities ? multiplicity(n, k, q) : 0; };

    if (p == 0) {
        for (int k = 0; k <= opt.k_max; ++k)
            raw.push_back({EigenFamily::function, n, k, 0, nu_function(n, k), mult(k, 0),
                           sphere_hodge_coexact(n, k, 0)});
    } else if (p < n) {
        for (int k = 1; k <= opt.k_max; ++k)
            raw.push_back({EigenFamily::coexact, n, k, p, nu_coexact(n, k, p), mult(k, p),
                           sphere_hodge_coexact(n, k, p)});
    } else {
        // top boundary degree: the only coexact-type eigenform is the
        // boundary volume form (k = 1)
        if (opt.k_max >= 1)
            raw.push_back({EigenFamily::volume, n, 1, n, nu_volume(n), mult(1, n),
                           sphere_hodge_coexact(n, 1, n)});
    }
    if (p >= 1)
        for (int k = 1; k <= opt.k_max; ++k)
            raw.push_back({EigenFamily::exact, n, k, p, nu_exact(n, k, p), mult(k, p - 1),
                           sphere_hodge_exact(n, k, p)});

    std::map<Rational, SpectrumEntry> merged;
    for (const auto& e : raw) {
        auto [it, fresh] = merged.emplace(e.eigenvalue, e);
        if (!fresh) it->second.multiplicity += e.multiplicity;
    }
    std::vector<SpectrumEntry> out;
    out.reserve(merged.size());
    for (auto& [nu, e] : merged) out.push_back(std::move(e));
    return out;
}

// Smallest eigenvalue on p-forms, p >= 1 (for p = 0 the smallest nonzero
// one): p(n+3)/(n+1) when 2p <= n+1, else p+1.
inline Rational first_eigenvalue(int n, int p) {
    if (n < 1) throw std::invalid_argument("boundary dimension must be at least 1");
    if (p < 0 || p > n) throw std::invalid_argument("form degree out of range");
    if (p == 0) return Rational(1);
    if (2 * p <= n + 1) return make_rational(static_cast<long>(p) * (n + 3), n + 1);
    return Rational(p + 1);
}

struct VerifiedEigenpair {
    SpectrumEntry entry;
    PForm boundary_eigenform;   // ambient representative; its sphere pullback is the eigenform
    PForm harmonic_extension;   // ambient extension realizing the eigenvalue
    Rational trace_scale;       // sphere pullback of extension = trace_scale * that of eigenform

    VerifiedEigenpair() : boundary_eigenform(1, 0), harmonic_extension(1, 0), trace_scale(1) {}
};

namespace detail {

inline int homogeneous_degree_of(const PForm& w, const char* what) {
    const int k = w.coefficient_degree();
    if (k < 0) throw std::invalid_argument(std::string(what) + ": zero form");
    if (!w.has_homogeneous_coefficients(k))
        throw std::invalid_argument(std::string(what) +
                                    ": coefficients are not homogeneous");
    return k;
}

inline void check_harmonic_membership(const PForm& w, int n, int expected_k, int expected_p,
                                      bool require_radial_kernel, const char* what) {
    if (w.ambient_dim() != n + 1)
        throw std::invalid_argument(std::string(what) + ": ambient dimension mismatch");
    if (w.degree() != expected_p)
        throw std::invalid_argument(std::string(what) + ": form degree mismatch");
    if (homogeneous_degree_of(w, what) != expected_k)
        throw std::invalid_argument(std::string(what) + ": coefficient degree mismatch");
    if (!hodge_laplacian(w).is_zero())
        throw std::invalid_argument(std::string(what) + ": not harmonic");
    if (expected_p >= 1 && !detail::codifferential_or_zero(w).is_zero())
        throw std::invalid_argument(std::string(what) + ": codifferential does not vanish");
    if (require_radial_kernel && expected_p >= 1 && !interior_radial(w).is_zero())
        throw std::invalid_argument(std::string(what) +
                                    ": radial contraction does not vanish");
}

}  // namespace detail

// Rebuilds the eigenpair for a member xi of the radial-kernel harmonic space
// (the coexact-type families: function for p = 0, volume for p = n). The
// extension is xi itself; the normal-trace identity is re-verified exactly.
inline VerifiedEigenpair build_coexact_pair(int n, int k, int p, const PForm& xi,
                                            int mult = 0) {
    if (p < 0 || p > n) throw std::invalid_argument("form degree out of range");
    detail::check_harmonic_membership(xi, n, k, p, true, "coexact eigenform");
    if (p >= 1 && k < 1)
        throw std::invalid_argument("coexact eigenform: family index must be positive");

    const Rational nu = nu_coexact(n, k, p);
    // with i_Z xi = 0, contracting d xi with the radial field scales xi by
    // the total homogeneity k + p; this is the normal-trace identity on the
    // unit sphere
    const PForm traced = interior_radial(exterior_d(xi));
    if (traced != Rational(k + p) * xi)
        throw std::domain_error("normal-trace identity failed for a coexact eigenform");
    if (!pullback_equal_on_sphere(traced, nu * xi))
        throw std::domain_error("sphere pullback of the normal trace is not nu times the form");

    VerifiedEigenpair pair;
    pair.entry = {p == 0 ? EigenFamily::function : (p == n ? EigenFamily::volume : EigenFamily::coexact),
                  n, k, p, nu, mult, sphere_hodge_coexact(n, k, p)};
    pair.boundary_eigenform = xi;
    pair.harmonic_extension = xi;
    pair.trace_scale = 1;
    return pair;
}

// Coefficients (A, B, C) of the exact-family extension
//   w = A d(phi) + B r^2 d(phi) + C rho ^ phi
// for phi in the radial-kernel harmonic space of (p-1)-forms: the unique
// ray (up to scale) on which w is harmonic and i_Z w vanishes on the sphere.
struct ExactExtensionCoefficients {
    Rational A, B, C;
};

inline ExactExtensionCoefficients exact_extension_coefficients(int n, int k, int p) {
    if (n < 1 || k < 1 || p < 1 || p > n) throw std::invalid_argument("index out of range");
    return {Rational(n + k - p), Rational(k + p - 1),
            Rational(-static_cast<long>(k + p - 1) * (n + 2 * k - 1))};
}

// Rebuilds the eigenpair of the exact family from phi: the boundary
// eigenform is d(phi) (up to the sphere pullback) and the eigenvalue is
// (k+p-1)(n+2k+1)/(n+2k-1). All defining identities are re-verified in
// exact arithmetic; any failure throws.
inline VerifiedEigenpair build_exact_pair(int n, int k, int p, const PForm& phi,
                                          int mult = 0) {
    if (p < 1 || p > n) throw std::invalid_argument("form degree out of range");
    if (k < 1) throw std::invalid_argument("family index must be positive");
    detail::check_harmonic_membership(phi, n, k, p - 1, true, "generating form");

    const int dim = n + 1;
    const auto [A, B, C] = exact_extension_coefficients(n, k, p);
    const PForm dphi = exterior_d(phi);
    const Poly r2 = radius_squared(dim);

    PForm w = A * dphi;
    w += B * (r2 * dphi);
    w += C * wedge(radial_one_form(dim), phi);

    if (!hodge_laplacian(w).is_zero())
        throw std::domain_error("exact-family extension is not harmonic");

    const PForm traced = interior_radial(w);
    const Poly ideal = unit_sphere_quadric(dim);
    for (const auto& [I, f] : traced.components())
        if (!vanishes_on_quadric(f, ideal, dim))
            throw std::domain_error(
                "radial contraction of the exact-family extension does not vanish on the sphere");

    const Rational scale(n + 2 * k - 1);
    if (!pullback_equal_on_sphere(w, scale * dphi))
        throw std::domain_error("exact-family extension does not restrict to its boundary form");

    const Rational nu = nu_exact(n, k, p);
    if (!pullback_equal_on_sphere(Rational(n + 2 * k - 1) * interior_radial(exterior_d(w)),
                                  Rational(static_cast<long>(k + p - 1) * (n + 2 * k + 1)) * w))
        throw std::domain_error("normal-trace identity failed for an exact-family eigenform");

    VerifiedEigenpair pair;
    pair.entry = {EigenFamily::exact, n, k, p, nu, mult, sphere_hodge_exact(n, k, p)};
    pair.boundary_eigenform = dphi;
    pair.harmonic_extension = w;
    pair.trace_scale = scale;
    return pair;
}

struct ProfileCheck {
    bool first_equation = false;
    bool second_equation = false;

    bool ok() const { return first_equation && second_equation; }
};

// The radial profile of a coexact-family extension is Q(r) = r^{k+p}: it
// must satisfy r^2 Q'' + (n-2p) r Q' = mu Q with mu the sphere Hodge
// eigenvalue. exponent_shift perturbs the exponent for negative controls.
inline bool verify_coexact_profile(int n, int k, int p, int exponent_shift = 0) {
    const Rational mu = sphere_hodge_coexact(n, k, p);
    const int s = k + p + exponent_shift;
    if (s < 0) throw std::invalid_argument("profile exponent went negative");
    UniPoly Q = uni_shift(UniPoly{Rational(1)}, s);
    UniPoly lhs = uni_shift(uni_derivative(uni_derivative(Q)), 2);
    lhs = uni_add(lhs, uni_scale(uni_shift(uni_derivative(Q), 1), Rational(n - 2 * p)));
    return lhs == uni_scale(Q, mu);
}

// The exact-family extension separates into the profile pair
//   P(r) = -(k+p-1) r^{k+p},   Q(r) = (k+p-1)/(n+k-p) r^{k+p+1}
// coupled through mu = (k+p-1)(n+k-p), the sphere Hodge eigenvalue of the
// generating (p-1)-form:
//   mu (r P - 2 Q) = r^3 (P' + (n-2p+2) P / r)'
//   mu Q - 2 r P   = r^2 (Q'' + (n-2p) Q' / r)
// exponent_shift perturbs both exponents for negative controls.
inline ProfileCheck verify_exact_profiles(int n, int k, int p, int exponent_shift = 0) {
    if (n < 1 || k < 1 || p < 1 || p > n) throw std::invalid_argument("index out of range");
    const Rational mu = sphere_hodge_exact(n, k, p);
    const int s = k + p + exponent_shift;
    if (s < 1) throw std::invalid_argument("profile exponent out of range");
    const Rational nu_bar(k + p - 1);
    const Rational alpha = nu_bar / Rational(n + k - p);

    const UniPoly P = uni_scale(uni_shift(UniPoly{Rational(1)}, s), -nu_bar);
    const UniPoly Q = uni_scale(uni_shift(UniPoly{Rational(1)}, s + 1), alpha);

    ProfileCheck out;
    {
        // P / r is polynomial since s >= 1
        UniPoly P_over_r(P.begin() + 1, P.end());
        UniPoly inner = uni_add(uni_derivative(P), uni_scale(P_over_r, Rational(n - 2 * p + 2)));
        UniPoly rhs = uni_shift(uni_derivative(inner), 3);
        UniPoly lhs = uni_scale(uni_sub(uni_shift(P, 1), uni_scale(Q, Rational(2))), mu);
        out.first_equation = lhs == rhs;
    }
    {
        UniPoly rhs = uni_shift(uni_derivative(uni_derivative(Q)), 2);
        rhs = uni_add(rhs, uni_scale(uni_shift(uni_derivative(Q), 1), Rational(n - 2 * p)));
        UniPoly lhs = uni_sub(uni_scale(Q, mu), uni_scale(uni_shift(P, 1), Rational(2)));
        out.second_equation = lhs == rhs;
    }
    return out;
}

}  // namespace steklov
