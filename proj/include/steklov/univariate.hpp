#pragma once

// Univariate polynomials over the rationals: arithmetic, evaluation,
// division, Newton interpolation, and Sturm-sequence root counting. This is
// the exact backend behind eigenvalue certificates: characteristic
// polynomials of small matrix pencils are interpolated from exact
// determinant evaluations and their roots are located with Sturm counts.

#include "steklov/exact_linalg.hpp"
#include "steklov/rational.hpp"

#include <stdexcept>
#include <vector>

namespace steklov {

// Coefficients in ascending degree order; normalized so the back is nonzero.
using UniPoly = std::vector<Rational>;

inline void uni_normalize(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int uni_degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Rational uni_eval(const UniPoly& p, const Rational& x) {
    Rational r(0);
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

inline UniPoly uni_add(UniPoly a, const UniPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    uni_normalize(a);
    return a;
}

inline UniPoly uni_sub(UniPoly a, const UniPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    uni_normalize(a);
    return a;
}

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    uni_normalize(r);
    return r;
}

inline UniPoly uni_scale(UniPoly a, const Rational& c) {
    for (auto& v : a) v *= c;
    uni_normalize(a);
    return a;
}

inline UniPoly uni_derivative(const UniPoly& p) {
    if (p.size() <= 1) return {};
    UniPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<long>(i));
    uni_normalize(r);
    return r;
}

// Multiply by x^k.
inline UniPoly uni_shift(const UniPoly& p, int k) {
    if (p.empty()) return {};
    if (k < 0) throw std::invalid_argument("negative shift");
    UniPoly r(p.size() + static_cast<size_t>(k), Rational(0));
    for (size_t i = 0; i < p.size(); ++i) r[i + static_cast<size_t>(k)] = p[i];
    return r;
}

// Quotient and remainder of a divided by b.
inline std::pair<UniPoly, UniPoly> uni_divmod(UniPoly a, const UniPoly& b) {
    if (b.empty()) throw std::invalid_argument("division by the zero polynomial");
    uni_normalize(a);
    UniPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        const Rational f = a.back() / b.back();
        const size_t off = a.size() - b.size();
        q[off] = f;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        uni_normalize(a);
    }
    uni_normalize(q);
    return {q, a};
}

inline UniPoly uni_rem(UniPoly a, const UniPoly& b) { return uni_divmod(std::move(a), b).second; }

inline UniPoly uni_divexact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = uni_divmod(a, b);
    if (!r.empty()) throw std::invalid_argument("inexact polynomial division");
    return q;
}

inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    uni_normalize(a);
    uni_normalize(b);
    while (!b.empty()) {
        UniPoly r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Strips repeated roots.
inline UniPoly uni_squarefree_part(const UniPoly& p) {
    const UniPoly g = uni_gcd(p, uni_derivative(p));
    return uni_degree(g) <= 0 ? p : uni_divexact(p, g);
}

// Sturm chain of the squarefree part of p; sign-change differences count
// distinct real roots regardless of multiplicities in the input.
inline std::vector<UniPoly> sturm_chain(UniPoly p) {
    uni_normalize(p);
    if (p.empty()) throw std::invalid_argument("sturm chain of the zero polynomial");
    p = uni_squarefree_part(p);
    std::vector<UniPoly> chain;
    chain.push_back(p);
    UniPoly d = uni_derivative(p);
    if (d.empty()) return chain;
    chain.push_back(d);
    for (;;) {
        const UniPoly& a = chain[chain.size() - 2];
        const UniPoly& b = chain[chain.size() - 1];
        UniPoly r = uni_rem(a, b);
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

inline int sturm_sign_changes_at(const std::vector<UniPoly>& chain, const Rational& x) {
    int changes = 0, prev = 0;
    for (const UniPoly& p : chain) {
        const int s = sign_of(uni_eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

inline int sturm_sign_changes_at_minus_infinity(const std::vector<UniPoly>& chain) {
    int changes = 0, prev = 0;
    for (const UniPoly& p : chain) {
        int s = sign_of(p.back());
        if (uni_degree(p) % 2 == 1) s = -s;
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

// Number of distinct real roots in (a, b].
inline int count_roots_in(const std::vector<UniPoly>& chain, const Rational& a,
                          const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("empty interval");
    return sturm_sign_changes_at(chain, a) - sturm_sign_changes_at(chain, b);
}

// Number of distinct real roots in (-inf, b].
inline int count_roots_below(const std::vector<UniPoly>& chain, const Rational& b) {
    return sturm_sign_changes_at_minus_infinity(chain) - sturm_sign_changes_at(chain, b);
}

// Newton interpolation through (nodes[i], values[i]) with distinct nodes.
inline UniPoly uni_interpolate(const std::vector<Rational>& nodes,
                               const std::vector<Rational>& values) {
    if (nodes.size() != values.size()) throw std::invalid_argument("node/value count mismatch");
    if (nodes.empty()) return {};
    const size_t m = nodes.size();
    // divided differences
    std::vector<Rational> dd = values;
    for (size_t level = 1; level < m; ++level)
        for (size_t i = m - 1; i >= level; --i) {
            const Rational denom = nodes[i] - nodes[i - level];
            if (denom == 0) throw std::invalid_argument("repeated interpolation node");
            dd[i] = (dd[i] - dd[i - 1]) / denom;
            if (i == level) break;
        }
    UniPoly result{dd[m - 1]};
    for (size_t i = m - 1; i-- > 0;) {
        // result = result * (x - nodes[i]) + dd[i]
        UniPoly shifted = uni_shift(result, 1);
        result = uni_add(shifted, uni_scale(result, -nodes[i]));
        result = uni_add(result, UniPoly{dd[i]});
    }
    return result;
}

// det(A - t B) as an exact polynomial in t, interpolated from n+1 exact
// determinant evaluations at t = 0, 1, ..., n.
inline UniPoly pencil_characteristic(const MatQ& A, const MatQ& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::invalid_argument("pencil matrices must be square and of equal size");
    const int n = A.rows();
    std::vector<Rational> nodes, values;
    nodes.reserve(static_cast<size_t>(n) + 1);
    values.reserve(static_cast<size_t>(n) + 1);
    for (int t = 0; t <= n; ++t) {
        MatQ M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M.at(i, j) = A.at(i, j) - Rational(t) * B.at(i, j);
        nodes.emplace_back(t);
        values.push_back(determinant(M));
    }
    return uni_interpolate(nodes, values);
}

}  // namespace steklov
