#pragma once

// Exact bases for the spaces of polynomial p-forms with homogeneous
// coefficients and their harmonic subspaces:
//
//   P(k,p)  all p-forms with degree-k homogeneous polynomial coefficients
//   H(k,p)  the subspace with vanishing Laplacian and codifferential
//   closed subspace of H: additionally d w = 0
//   radial-kernel subspace of H: additionally i_Z w = 0 (Z the position field)
//
// H splits as the direct sum of the last two for every (k,p) except the
// degenerate (0,0), where constants are both closed and radially
// contracted. On 0-forms i_Z is taken to be identically zero, so there the
// radial-kernel subspace is all of H and the closed part is trivial for
// k >= 1.
//
// The dimension of the radial-kernel subspace is the multiplicity carried
// by the boundary spectrum enumeration downstream.

#include "steklov/differential_form.hpp"
#include "steklov/exact_linalg.hpp"
#include "steklov/form_basis.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace steklov {

enum class SpaceLabel { polynomial, harmonic, closed_harmonic, radial_kernel_harmonic };

inline const char* to_string(SpaceLabel l) {
    switch (l) {
        case SpaceLabel::polynomial: return "polynomial";
        case SpaceLabel::harmonic: return "harmonic";
        case SpaceLabel::closed_harmonic: return "closed_harmonic";
        case SpaceLabel::radial_kernel_harmonic: return "radial_kernel_harmonic";
    }
    throw std::logic_error("unknown space label");
}

struct FormSubspace {
    int n = 0;  // boundary dimension; ambient dimension is n + 1
    int k = 0;  // coefficient degree
    int p = 0;  // form degree
    SpaceLabel label = SpaceLabel::polynomial;
    std::vector<PForm> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

namespace detail {

inline void check_space_indices(int n, int k, int p) {
    if (n < 1) throw std::invalid_argument("boundary dimension must be at least 1");
    if (k < 0) throw std::invalid_argument("negative coefficient degree");
    if (p < 0 || p > n + 1) throw std::invalid_argument("form degree out of range");
}

}  // namespace detail

inline FormSubspace build_Pkp(int n, int k, int p) {
    detail::check_space_indices(n, k, p);
    FormSubspace s{n, k, p, SpaceLabel::polynomial, {}};
    const FormBasis b = FormBasis::homogeneous(n + 1, k, p);
    s.basis.reserve(static_cast<size_t>(b.size()));
    for (int i = 0; i < b.size(); ++i) s.basis.push_back(b.element_form(i));
    return s;
}

inline FormSubspace build_Hkp(int n, int k, int p) {
    detail::check_space_indices(n, k, p);
    const int dim = n + 1;
    FormSubspace P = build_Pkp(n, k, p);

    std::vector<OperatorConstraint> ops;
    FormBasis lap_target, codiff_target;
    if (k >= 2) {
        // coefficients of degree <= 1 are annihilated by the Laplacian already
        lap_target = FormBasis::homogeneous(dim, k - 2, p);
        ops.push_back({[](const PForm& w) { return hodge_laplacian(w); }, &lap_target});
    }
    if (p >= 1 && k >= 1) {
        // the codifferential of constant coefficients vanishes
        codiff_target = FormBasis::homogeneous(dim, k - 1, p - 1);
        ops.push_back({[](const PForm& w) { return codifferential(w); }, &codiff_target});
    }

    FormSubspace H{n, k, p, SpaceLabel::harmonic, {}};
    if (ops.empty()) {
        H.basis = std::move(P.basis);
        return H;
    }
    for (const auto& v : kernel_of_operators(P.basis, ops)) {
        PForm w(dim, p);
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) w += v[i] * P.basis[i];
        H.basis.push_back(std::move(w));
    }
    return H;
}

// Splits H(k,p) into its closed part and its radial-kernel part. The two
// intersect only for (k,p) = (0,0), where both coincide with the constants.
inline std::pair<FormSubspace, FormSubspace> split_H(const FormSubspace& H) {
    if (H.label != SpaceLabel::harmonic)
        throw std::invalid_argument("split expects a harmonic space");
    const int dim = H.n + 1;

    FormSubspace closed{H.n, H.k, H.p, SpaceLabel::closed_harmonic, {}};
    FormSubspace radial{H.n, H.k, H.p, SpaceLabel::radial_kernel_harmonic, {}};

    auto combos = [&](const std::vector<std::vector<Rational>>& coeffs) {
        std::vector<PForm> out;
        for (const auto& v : coeffs) {
            PForm w(dim, H.p);
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0) w += v[i] * H.basis[i];
            out.push_back(std::move(w));
        }
        return out;
    };

    if (H.k == 0 || H.p == dim) {
        // constant coefficients or top degree: d vanishes identically
        closed.basis = H.basis;
    } else {
        FormBasis d_target = FormBasis::homogeneous(dim, H.k - 1, H.p + 1);
        closed.basis = combos(kernel_of_operators(
            H.basis, {{[](const PForm& w) { return exterior_d(w); }, &d_target}}));
    }

    if (H.p == 0) {
        // i_Z is identically zero on functions
        radial.basis = H.basis;
    } else {
        FormBasis z_target = FormBasis::homogeneous(dim, H.k + 1, H.p - 1);
        radial.basis = combos(kernel_of_operators(
            H.basis, {{[](const PForm& w) { return interior_radial(w); }, &z_target}}));
    }
    return {std::move(closed), std::move(radial)};
}

// dim of the radial-kernel part of H(k,p); the boundary spectrum multiplicity.
inline int multiplicity(int n, int k, int p) {
    detail::check_space_indices(n, k, p);
    static std::map<std::tuple<int, int, int>, int> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({n, k, p});
        if (it != cache.end()) return it->second;
    }
    const FormSubspace H = build_Hkp(n, k, p);
    int result;
    if (p == 0) {
        result = H.dim();
    } else {
        result = split_H(H).second.dim();
    }
    std::lock_guard<std::mutex> lock(mtx);
    cache[{n, k, p}] = result;
    return result;
}

struct DifferentialIsoReport {
    int dim_source = 0;  // radial-kernel part of H(k,p)
    int dim_target = 0;  // closed part of H(k-1,p+1)
    bool injective = false;
    bool surjective = false;

    bool holds() const { return injective && surjective; }
};

// d maps the radial-kernel part of H(k,p) bijectively onto the closed part
// of H(k-1,p+1) for k >= 1; this verifies both directions exactly.
inline DifferentialIsoReport check_d_isomorphism(int n, int k, int p) {
    detail::check_space_indices(n, k, p);
    if (k < 1) throw std::invalid_argument("the differential drops the coefficient degree");
    if (p > n) throw std::invalid_argument("target form degree out of range");

    const FormSubspace source = split_H(build_Hkp(n, k, p)).second;
    const FormSubspace target = split_H(build_Hkp(n, k - 1, p + 1)).first;

    DifferentialIsoReport rep;
    rep.dim_source = source.dim();
    rep.dim_target = target.dim();

    const FormBasis codomain = FormBasis::homogeneous(n + 1, k - 1, p + 1);
    MatQ D(codomain.size(), source.dim());
    for (int j = 0; j < source.dim(); ++j) {
        const auto c = codomain.coordinates(exterior_d(source.basis[static_cast<size_t>(j)]));
        for (int i = 0; i < codomain.size(); ++i) D.at(i, j) = c[static_cast<size_t>(i)];
    }
    MatQ T(codomain.size(), target.dim());
    for (int j = 0; j < target.dim(); ++j) {
        const auto c = codomain.coordinates(target.basis[static_cast<size_t>(j)]);
        for (int i = 0; i < codomain.size(); ++i) T.at(i, j) = c[static_cast<size_t>(i)];
    }

    rep.injective = rank(D) == rep.dim_source;

    MatQ joint(codomain.size(), D.cols() + T.cols());
    for (int i = 0; i < codomain.size(); ++i) {
        for (int j = 0; j < D.cols(); ++j) joint.at(i, j) = D.at(i, j);
        for (int j = 0; j < T.cols(); ++j) joint.at(i, D.cols() + j) = T.at(i, j);
    }
    const int rank_T = rank(T);
    const int rank_joint = rank(joint);
    // image contained in the target and of full target rank
    rep.surjective = rank_joint == rank_T && rank(D) == rank_T;
    return rep;
}

struct SubspaceDims {
    int n, k, p;
    int dim_polynomial;
    int dim_harmonic;
    int dim_closed;
    int dim_radial_kernel;
};

inline std::vector<SubspaceDims> subspace_dimension_table(int n, int k_max) {
    std::vector<SubspaceDims> rows;
    for (int k = 0; k <= k_max; ++k)
        for (int p = 0; p <= n + 1; ++p) {
            const FormSubspace P = build_Pkp(n, k, p);
            const FormSubspace H = build_Hkp(n, k, p);
            const auto [closed, radial] = split_H(H);
            rows.push_back({n, k, p, P.dim(), H.dim(), closed.dim(), radial.dim()});
        }
    return rows;
}

}  // namespace steklov
