#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// A monomial is an exponent vector (MultiIndex) over variables x1..xd,
// stored 0-based internally but printed 1-based. Term order everywhere is
// graded lexicographic; every container iteration below inherits that
// order, which is what makes printing and matrix assembly deterministic.

#include "steklov/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace steklov {

using MultiIndex = std::vector<int>;

inline int multi_index_degree(const MultiIndex& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        const int da = multi_index_degree(a), db = multi_index_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

class Poly {
public:
    using TermMap = std::map<MultiIndex, Rational, GradedLexLess>;

    explicit Poly(int ambient_dim) : dim_(ambient_dim) {
        if (dim_ <= 0) throw std::invalid_argument("polynomial needs at least one variable");
    }

    static Poly zero(int dim) { return Poly(dim); }

    static Poly constant(int dim, const Rational& c) {
        Poly p(dim);
        p.add_term(MultiIndex(dim, 0), c);
        return p;
    }

    // x_i, 1-based
    static Poly variable(int dim, int i) {
        MultiIndex a(dim, 0);
        a.at(check_var(dim, i)) = 1;
        return monomial(dim, a, Rational(1));
    }

    static Poly monomial(int dim, const MultiIndex& a, const Rational& c) {
        if (static_cast<int>(a.size()) != dim)
            throw std::invalid_argument("exponent vector length mismatch");
        for (int e : a)
            if (e < 0) throw std::invalid_argument("negative exponent");
        Poly p(dim);
        p.add_term(a, c);
        return p;
    }

    int ambient_dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // -1 for the zero polynomial
    int total_degree() const {
        return terms_.empty() ? -1 : multi_index_degree(terms_.rbegin()->first);
    }

    Rational coefficient(const MultiIndex& a) const {
        auto it = terms_.find(a);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const MultiIndex& a, const Rational& c) {
        if (static_cast<int>(a.size()) != dim_)
            throw std::invalid_argument("exponent vector length mismatch");
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(a, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_same_dim(o);
        for (const auto& [a, c] : o.terms_) add_term(a, c);
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        check_same_dim(o);
        for (const auto& [a, c] : o.terms_) add_term(a, -c);
        return *this;
    }

    Poly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [a, v] : terms_) v *= c;
        }
        return *this;
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& [a, v] : r.terms_) v = -v;
        return r;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same_dim(b);
        Poly r(a.dim_);
        MultiIndex m(a.dim_);
        for (const auto& [ai, ac] : a.terms_)
            for (const auto& [bi, bc] : b.terms_) {
                for (int v = 0; v < a.dim_; ++v) m[v] = ai[v] + bi[v];
                r.add_term(m, ac * bc);
            }
        return r;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    bool operator==(const Poly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // d/dx_i, 1-based
    Poly derivative(int i) const {
        const int v = check_var(dim_, i);
        Poly r(dim_);
        for (const auto& [a, c] : terms_) {
            if (a[v] == 0) continue;
            MultiIndex b = a;
            --b[v];
            r.add_term(b, c * a[v]);
        }
        return r;
    }

    Poly homogeneous_component(int k) const {
        Poly r(dim_);
        for (const auto& [a, c] : terms_)
            if (multi_index_degree(a) == k) r.add_term(a, c);
        return r;
    }

    bool is_homogeneous(int k) const {
        for (const auto& [a, c] : terms_)
            if (multi_index_degree(a) != k) return false;
        return true;
    }

    Rational evaluate(const std::vector<Rational>& x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw std::invalid_argument("evaluation point length mismatch");
        Rational r(0);
        for (const auto& [a, c] : terms_) {
            Rational t = c;
            for (int v = 0; v < dim_; ++v)
                for (int e = 0; e < a[v]; ++e) t *= x[v];
            r += t;
        }
        return r;
    }

    // x_i -> f_i * x_i
    Poly scale_variables(const std::vector<Rational>& f) const {
        if (static_cast<int>(f.size()) != dim_)
            throw std::invalid_argument("scale factor list length mismatch");
        Poly r(dim_);
        for (const auto& [a, c] : terms_) {
            Rational t = c;
            for (int v = 0; v < dim_; ++v) t *= rational_pow(f[v], a[v]);
            r.add_term(a, t);
        }
        return r;
    }

private:
    static int check_var(int dim, int i) {
        if (i < 1 || i > dim) throw std::out_of_range("variable index out of range");
        return i - 1;
    }

    void check_same_dim(const Poly& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("mixed ambient dimensions");
    }

    int dim_;
    TermMap terms_;
};

// x1^2 + ... + xd^2
inline Poly radius_squared(int dim) {
    Poly r(dim);
    for (int i = 1; i <= dim; ++i) r += Poly::variable(dim, i) * Poly::variable(dim, i);
    return r;
}

inline Poly unit_sphere_quadric(int dim) {
    return radius_squared(dim) - Poly::constant(dim, Rational(1));
}

// Remainder of a modulo the ideal (g), where g must be monic of degree 2 in
// the pivot variable (1-based). Substitutes x_pivot^2 := x_pivot^2 - g until
// the pivot exponent drops below 2; the result is the unique representative
// of a mod (g) with pivot degree <= 1.
inline Poly reduce_mod_quadric(const Poly& a, const Poly& g, int pivot) {
    const int dim = a.ambient_dim();
    if (g.ambient_dim() != dim) throw std::invalid_argument("mixed ambient dimensions");
    if (pivot < 1 || pivot > dim) throw std::out_of_range("pivot variable out of range");
    const int pv = pivot - 1;

    MultiIndex sq(dim, 0);
    sq[pv] = 2;
    Poly tail = g - Poly::monomial(dim, sq, Rational(1));
    for (const auto& [m, c] : tail.terms())
        if (m[pv] >= 2)
            throw std::invalid_argument("modulus is not monic quadratic in the pivot variable");

    Poly work = a;
    for (;;) {
        const MultiIndex* hit = nullptr;
        Rational coeff;
        for (const auto& [m, c] : work.terms())
            if (m[pv] >= 2) {
                hit = &m;
                coeff = c;
                break;
            }
        if (!hit) return work;
        MultiIndex q = *hit;
        q[pv] -= 2;
        // a == a - c * x^q * g  (mod g); the x^q * x_pivot^2 term cancels exactly
        work -= Poly::monomial(dim, q, coeff) * g;
    }
}

inline bool vanishes_on_quadric(const Poly& a, const Poly& g, int pivot) {
    return reduce_mod_quadric(a, g, pivot).is_zero();
}

// Picks the highest variable in which g is monic quadratic.
inline bool vanishes_on_quadric(const Poly& a, const Poly& g) {
    const int dim = a.ambient_dim();
    for (int pivot = dim; pivot >= 1; --pivot) {
        MultiIndex sq(dim, 0);
        sq[pivot - 1] = 2;
        if (g.coefficient(sq) != 1) continue;
        Poly tail = g - Poly::monomial(dim, sq, Rational(1));
        bool monic = true;
        for (const auto& [m, c] : tail.terms())
            if (m[pivot - 1] >= 2) {
                monic = false;
                break;
            }
        if (monic) return vanishes_on_quadric(a, g, pivot);
    }
    throw std::invalid_argument("modulus is not monic quadratic in any variable");
}

inline bool vanishes_on_unit_sphere(const Poly& a) {
    return vanishes_on_quadric(a, unit_sphere_quadric(a.ambient_dim()), a.ambient_dim());
}

// Textual form: terms joined by " + ", each "c" or "c * x1^2 x3" with
// exponent suffixes omitted when 1. Terms appear in graded-lex order.
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        if (multi_index_degree(a) > 0) {
            os << " *";
            for (int v = 0; v < p.ambient_dim(); ++v) {
                if (a[v] == 0) continue;
                os << " x" << (v + 1);
                if (a[v] > 1) os << "^" << a[v];
            }
        }
    }
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_top_level_plus(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    size_t i = 0;
    int depth = 0;
    while (i < s.size()) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0 && i + 2 < s.size() && s[i] == ' ' && s[i + 1] == '+' && s[i + 2] == ' ') {
            parts.push_back(cur);
            cur.clear();
            i += 3;
            continue;
        }
        cur += s[i++];
    }
    if (depth != 0) throw std::invalid_argument("unbalanced parentheses");
    parts.push_back(cur);
    return parts;
}

inline std::string strip_spaces(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline Poly parse_poly(const std::string& text, int dim) {
    const std::string body = detail::strip_spaces(text);
    if (body.empty()) throw std::invalid_argument("empty polynomial literal");
    Poly p(dim);
    if (body == "0") return p;
    for (const std::string& raw : detail::split_top_level_plus(body)) {
        std::string term = detail::strip_spaces(raw);
        if (term.empty()) throw std::invalid_argument("empty term in polynomial literal");
        std::string coeff_part = term, var_part;
        const size_t star = term.find('*');
        if (star != std::string::npos) {
            coeff_part = detail::strip_spaces(term.substr(0, star));
            var_part = detail::strip_spaces(term.substr(star + 1));
        }
        Rational c = parse_rational(coeff_part);
        MultiIndex a(dim, 0);
        std::istringstream vs(var_part);
        std::string tok;
        while (vs >> tok) {
            if (tok.size() < 2 || tok[0] != 'x')
                throw std::invalid_argument("bad variable token: " + tok);
            int exp = 1;
            std::string name = tok;
            const size_t caret = tok.find('^');
            if (caret != std::string::npos) {
                name = tok.substr(0, caret);
                exp = std::stoi(tok.substr(caret + 1));
                if (exp < 0) throw std::invalid_argument("negative exponent in: " + tok);
            }
            const int idx = std::stoi(name.substr(1));
            if (idx < 1 || idx > dim) throw std::invalid_argument("variable out of range: " + tok);
            a[idx - 1] += exp;
        }
        p.add_term(a, c);
    }
    return p;
}

}  // namespace steklov
