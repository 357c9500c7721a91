#pragma once

// Exact monomial moments over the unit sphere and unit ball in R^d.
//
// The sphere moment of x^a vanishes unless every exponent is even, and then
//
//   int_{S^{d-1}} x^a dS = 2 Gamma((a_1+1)/2) ... Gamma((a_d+1)/2)
//                           / Gamma((|a| + d) / 2)
//
// The ball moment divides the sphere moment by |a| + d. Each value is a
// rational multiple of an integer power of sqrt(pi); for fixed d the power
// is the same for every monomial (d mod 2 decides it), so ratios of moments
// and all Gram matrices built from them are exactly rational.

#include "steklov/polynomial.hpp"
#include "steklov/rational.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace steklov {

// value = rational * pi^(pi_half_power / 2)
struct MomentValue {
    Rational rational;
    int pi_half_power = 0;

    double to_double() const {
        return rational.get_d() * std::pow(M_PI, 0.5 * pi_half_power);
    }
};

inline MomentValue operator+(const MomentValue& a, const MomentValue& b) {
    if (a.rational == 0) return b;
    if (b.rational == 0) return a;
    if (a.pi_half_power != b.pi_half_power)
        throw std::invalid_argument("mixed transcendental factors in moment addition");
    return {a.rational + b.rational, a.pi_half_power};
}

inline MomentValue operator*(const Rational& c, const MomentValue& m) {
    return {c * m.rational, m.pi_half_power};
}

namespace detail {

// Gamma(j/2) for j >= 1, as rational * sqrt(pi)^(j odd): Gamma(1/2) =
// sqrt(pi), Gamma(1) = 1, and Gamma(z+1) = z Gamma(z).
inline std::pair<Rational, int> gamma_half(int j) {
    if (j < 1) throw std::invalid_argument("gamma argument out of range");
    Rational r(1);
    int current = j;
    while (current > 2) {
        current -= 2;
        r *= Rational(current, 2);
    }
    return {r, current == 1 ? 1 : 0};
}

}  // namespace detail

// The number of sqrt(pi) factors every nonzero moment carries in R^dim: the
// d Gamma((a_i+1)/2) factors contribute one each, and the denominator
// Gamma((|a|+d)/2) removes one when d is odd.
inline int moment_pi_half_power(int dim) { return dim % 2 == 0 ? dim : dim - 1; }

inline MomentValue sphere_monomial_moment(const MultiIndex& a) {
    const int dim = static_cast<int>(a.size());
    if (dim < 1) throw std::invalid_argument("empty exponent vector");
    for (int e : a) {
        if (e < 0) throw std::invalid_argument("negative exponent");
        if (e % 2 != 0) return {Rational(0), moment_pi_half_power(dim)};
    }
    Rational num(2);
    int pi_power = 0;
    for (int e : a) {
        const auto [r, s] = detail::gamma_half(e + 1);
        num *= r;
        pi_power += s;
    }
    const auto [den, s_den] = detail::gamma_half(multi_index_degree(a) + dim);
    num /= den;
    pi_power -= s_den;
    if (pi_power != moment_pi_half_power(dim))
        throw std::logic_error("moment transcendental bookkeeping failed");
    return {num, pi_power};
}

inline MomentValue ball_monomial_moment(const MultiIndex& a) {
    MomentValue s = sphere_monomial_moment(a);
    s.rational /= Rational(multi_index_degree(a) + static_cast<int>(a.size()));
    return s;
}

inline MomentValue sphere_integral(const Poly& f) {
    MomentValue total{Rational(0), moment_pi_half_power(f.ambient_dim())};
    for (const auto& [a, c] : f.terms()) total = total + c * sphere_monomial_moment(a);
    return total;
}

inline MomentValue ball_integral(const Poly& f) {
    MomentValue total{Rational(0), moment_pi_half_power(f.ambient_dim())};
    for (const auto& [a, c] : f.terms()) total = total + c * ball_monomial_moment(a);
    return total;
}

// Moment against the probability measure with density (dim / volume of the
// sphere): exactly rational, and the workhorse of Gram assembly.
inline Rational normalized_sphere_moment(const MultiIndex& a) {
    const MomentValue m = sphere_monomial_moment(a);
    const MomentValue total = sphere_monomial_moment(MultiIndex(a.size(), 0));
    return m.rational / total.rational;
}

// Process-wide memoized rational sphere moments with the common sqrt(pi)
// power stripped; assembly code calls this in tight loops.
inline const Rational& cached_sphere_moment(const MultiIndex& a) {
    static std::map<MultiIndex, Rational, GradedLexLess> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, sphere_monomial_moment(a).rational).first;
    return it->second;
}

inline const Rational& cached_ball_moment(const MultiIndex& a) {
    static std::map<MultiIndex, Rational, GradedLexLess> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, ball_monomial_moment(a).rational).first;
    return it->second;
}

// Rational parts (common sqrt(pi) power stripped) of polynomial integrals.
inline Rational sphere_integral_rational(const Poly& f) {
    Rational total(0);
    for (const auto& [a, c] : f.terms()) total += c * cached_sphere_moment(a);
    return total;
}

inline Rational ball_integral_rational(const Poly& f) {
    Rational total(0);
    for (const auto& [a, c] : f.terms()) total += c * cached_ball_moment(a);
    return total;
}

}  // namespace steklov
