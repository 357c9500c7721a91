#pragma once

// Shared helpers for the test suite: seeded random rationals, polynomials
// and forms, rational points on the unit sphere, and an independent dense
// implementation of the wedge product used as an oracle.

#include "steklov/differential_form.hpp"
#include "steklov/polynomial.hpp"
#include "steklov/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace steklov::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Rational random_rational(std::mt19937_64& rng, int max_abs_num = 6, int max_den = 4) {
    std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return make_rational(num(rng), den(rng));
}

inline MultiIndex random_multi_index(std::mt19937_64& rng, int dim, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    MultiIndex a(dim, 0);
    int budget = deg(rng);
    std::uniform_int_distribution<int> var(0, dim - 1);
    while (budget-- > 0) ++a[static_cast<size_t>(var(rng))];
    return a;
}

inline Poly random_poly(std::mt19937_64& rng, int dim, int max_deg, int n_terms) {
    Poly p(dim);
    for (int t = 0; t < n_terms; ++t)
        p.add_term(random_multi_index(rng, dim, max_deg), random_rational(rng));
    return p;
}

inline IndexTuple random_tuple(std::mt19937_64& rng, int dim, int p) {
    std::vector<int> all(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) all[static_cast<size_t>(i)] = i + 1;
    for (int i = dim - 1; i > 0; --i) {
        std::uniform_int_distribution<int> pick(0, i);
        std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(pick(rng))]);
    }
    IndexTuple I(all.begin(), all.begin() + p);
    std::sort(I.begin(), I.end());
    return I;
}

inline PForm random_pform(std::mt19937_64& rng, int dim, int p, int max_deg, int n_terms) {
    PForm w(dim, p);
    for (int t = 0; t < n_terms; ++t)
        w.add_component(random_tuple(rng, dim, p), random_poly(rng, dim, max_deg, 2));
    return w;
}

// Rational point on the unit sphere in R^dim via the stereographic
// parametrization x = (2u, |u|^2 - 1) / (|u|^2 + 1), u in Q^{dim-1}.
inline std::vector<Rational> rational_sphere_point(std::mt19937_64& rng, int dim) {
    std::vector<Rational> u(static_cast<size_t>(dim) - 1);
    Rational norm2(0);
    for (auto& c : u) {
        c = random_rational(rng, 3, 3);
        norm2 += c * c;
    }
    const Rational denom = norm2 + 1;
    std::vector<Rational> x(static_cast<size_t>(dim));
    for (size_t i = 0; i + 1 < x.size(); ++i) x[i] = 2 * u[i] / denom;
    x.back() = (norm2 - 1) / denom;
    return x;
}

// Spanning set of the tangent space at a sphere point: e_i - x_i x.
inline std::vector<std::vector<Rational>> tangent_spanning_set(const std::vector<Rational>& x) {
    const size_t dim = x.size();
    std::vector<std::vector<Rational>> gen(dim, std::vector<Rational>(dim, Rational(0)));
    for (size_t i = 0; i < dim; ++i) {
        gen[i][i] = 1;
        for (size_t j = 0; j < dim; ++j) gen[i][j] -= x[i] * x[j];
    }
    return gen;
}

// Dense alternating-tensor representation over subset bitmasks, kept
// deliberately independent of PForm's sparse bookkeeping.
struct DenseForm {
    int dim = 0;
    int p = 0;
    std::vector<Poly> comp;  // indexed by bitmask, nonzero only on p-subsets

    static DenseForm from(const PForm& w) {
        DenseForm d;
        d.dim = w.ambient_dim();
        d.p = w.degree();
        d.comp.assign(size_t(1) << d.dim, Poly::zero(d.dim));
        for (const auto& [I, f] : w.components()) {
            unsigned mask = 0;
            for (int i : I) mask |= 1u << (i - 1);
            d.comp[mask] = f;
        }
        return d;
    }

    PForm to_pform() const {
        PForm w(dim, p);
        for (unsigned mask = 0; mask < comp.size(); ++mask) {
            if (comp[mask].is_zero()) continue;
            IndexTuple I;
            for (int i = 0; i < dim; ++i)
                if (mask & (1u << i)) I.push_back(i + 1);
            w.add_component(I, comp[mask]);
        }
        return w;
    }
};

// Sign of interleaving mask b into mask a (disjoint): parity of the number
// of set-bit pairs (i in a, j in b) with i > j.
inline int dense_merge_sign(unsigned a, unsigned b) {
    int swaps = 0;
    for (int j = 0; j < 32; ++j) {
        if (!(b & (1u << j))) continue;
        unsigned higher = a >> (j + 1);
        swaps += __builtin_popcount(higher);
    }
    return swaps % 2 == 0 ? 1 : -1;
}

inline DenseForm dense_wedge(const DenseForm& a, const DenseForm& b) {
    DenseForm r;
    r.dim = a.dim;
    r.p = a.p + b.p;
    r.comp.assign(size_t(1) << a.dim, Poly::zero(a.dim));
    for (unsigned ma = 0; ma < a.comp.size(); ++ma) {
        if (a.comp[ma].is_zero()) continue;
        for (unsigned mb = 0; mb < b.comp.size(); ++mb) {
            if (b.comp[mb].is_zero()) continue;
            if (ma & mb) continue;
            const int s = dense_merge_sign(ma, mb);
            Poly prod = a.comp[ma] * b.comp[mb];
            if (s < 0) prod = -prod;
            r.comp[ma | mb] += prod;
        }
    }
    return r;
}

}  // namespace steklov::testing
