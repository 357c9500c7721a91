#pragma once

// Differential forms on R^d with polynomial coefficients.
//
// A p-form is a map from strictly increasing index tuples (i1 < ... < ip,
// 1-based) to Poly coefficients. All the flat-space operators live here:
// wedge, exterior derivative, codifferential, Hodge Laplacian, Hodge star,
// interior products, and the radial/tangential machinery used to restrict
// forms to the unit sphere.
//
// Sign conventions: the Laplacian is the Hodge one (on functions it is
// minus the sum of second derivatives), and the codifferential of a 1-form
// is minus the divergence of the dual field.

#include "steklov/polynomial.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace steklov {

using IndexTuple = std::vector<int>;

namespace detail {

inline void check_tuple(const IndexTuple& I, int dim) {
    for (size_t t = 0; t < I.size(); ++t) {
        if (I[t] < 1 || I[t] > dim) throw std::invalid_argument("form index out of range");
        if (t > 0 && I[t] <= I[t - 1])
            throw std::invalid_argument("form index tuple must be strictly increasing");
    }
}

// Merge the strictly increasing tuples a and b into out; returns the sign of
// the sorting permutation, or 0 if they share an index.
inline int merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace detail

class PForm {
public:
    using ComponentMap = std::map<IndexTuple, Poly>;

    PForm(int ambient_dim, int degree) : dim_(ambient_dim), p_(degree) {
        if (dim_ <= 0) throw std::invalid_argument("form needs at least one ambient variable");
        if (p_ < 0 || p_ > dim_) throw std::invalid_argument("form degree out of range");
    }

    static PForm zero(int dim, int degree) { return PForm(dim, degree); }

    static PForm scalar(const Poly& f) {
        PForm w(f.ambient_dim(), 0);
        w.add_component({}, f);
        return w;
    }

    // x^a dx_I
    static PForm monomial_form(int dim, const IndexTuple& I, const Poly& coeff) {
        PForm w(dim, static_cast<int>(I.size()));
        w.add_component(I, coeff);
        return w;
    }

    static PForm coframe(int dim, int i) {
        return monomial_form(dim, {i}, Poly::constant(dim, Rational(1)));
    }

    int ambient_dim() const { return dim_; }
    int degree() const { return p_; }
    const ComponentMap& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    Poly component(const IndexTuple& I) const {
        detail::check_tuple(I, dim_);
        if (static_cast<int>(I.size()) != p_)
            throw std::invalid_argument("component tuple has wrong length");
        auto it = comps_.find(I);
        return it == comps_.end() ? Poly::zero(dim_) : it->second;
    }

    void add_component(const IndexTuple& I, const Poly& f) {
        detail::check_tuple(I, dim_);
        if (static_cast<int>(I.size()) != p_)
            throw std::invalid_argument("component tuple has wrong length");
        if (f.ambient_dim() != dim_) throw std::invalid_argument("mixed ambient dimensions");
        if (f.is_zero()) return;
        auto [it, fresh] = comps_.emplace(I, f);
        if (!fresh) {
            it->second += f;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    // max total degree over components; -1 for the zero form
    int coefficient_degree() const {
        int d = -1;
        for (const auto& [I, f] : comps_) d = std::max(d, f.total_degree());
        return d;
    }

    bool has_homogeneous_coefficients(int k) const {
        for (const auto& [I, f] : comps_)
            if (!f.is_homogeneous(k)) return false;
        return true;
    }

    PForm& operator+=(const PForm& o) {
        check_compatible(o);
        for (const auto& [I, f] : o.comps_) add_component(I, f);
        return *this;
    }

    PForm& operator-=(const PForm& o) {
        check_compatible(o);
        for (const auto& [I, f] : o.comps_) add_component(I, -f);
        return *this;
    }

    PForm& operator*=(const Rational& c) {
        if (c == 0) {
            comps_.clear();
            return *this;
        }
        for (auto& [I, f] : comps_) f *= c;
        return *this;
    }

    PForm& operator*=(const Poly& g) {
        if (g.ambient_dim() != dim_) throw std::invalid_argument("mixed ambient dimensions");
        ComponentMap old;
        old.swap(comps_);
        for (auto& [I, f] : old) add_component(I, f * g);
        return *this;
    }

    PForm operator-() const {
        PForm r(*this);
        for (auto& [I, f] : r.comps_) f = -f;
        return r;
    }

    friend PForm operator+(PForm a, const PForm& b) { return a += b; }
    friend PForm operator-(PForm a, const PForm& b) { return a -= b; }
    friend PForm operator*(PForm a, const Rational& c) { return a *= c; }
    friend PForm operator*(const Rational& c, PForm a) { return a *= c; }
    friend PForm operator*(const Poly& g, PForm a) { return a *= g; }

    bool operator==(const PForm& o) const {
        return dim_ == o.dim_ && p_ == o.p_ && comps_ == o.comps_;
    }
    bool operator!=(const PForm& o) const { return !(*this == o); }

private:
    void check_compatible(const PForm& o) const {
        if (dim_ != o.dim_ || p_ != o.p_)
            throw std::invalid_argument("form degree or ambient dimension mismatch");
    }

    int dim_;
    int p_;
    ComponentMap comps_;
};

inline PForm wedge(const PForm& a, const PForm& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("mixed ambient dimensions");
    const int deg = a.degree() + b.degree();
    if (deg > a.ambient_dim())
        throw std::invalid_argument("wedge degree exceeds ambient dimension");
    PForm r(a.ambient_dim(), deg);
    IndexTuple merged;
    for (const auto& [I, f] : a.components())
        for (const auto& [J, g] : b.components()) {
            const int sign = detail::merge_tuples(I, J, merged);
            if (sign == 0) continue;
            r.add_component(merged, sign > 0 ? f * g : -(f * g));
        }
    return r;
}

inline PForm exterior_d(const PForm& a) {
    const int dim = a.ambient_dim();
    if (a.degree() >= dim)
        throw std::invalid_argument("exterior derivative of a top-degree form");
    PForm r(dim, a.degree() + 1);
    IndexTuple merged;
    for (const auto& [I, f] : a.components())
        for (int j = 1; j <= dim; ++j) {
            Poly df = f.derivative(j);
            if (df.is_zero()) continue;
            const int sign = detail::merge_tuples({j}, I, merged);
            if (sign == 0) continue;
            r.add_component(merged, sign > 0 ? df : -df);
        }
    return r;
}

namespace detail {

// delta with the degree-0 case mapped to zero, for internal use
inline PForm codifferential_or_zero(const PForm& a) {
    const int dim = a.ambient_dim();
    if (a.degree() == 0) return PForm::zero(dim, 0);
    PForm r(dim, a.degree() - 1);
    for (const auto& [I, f] : a.components())
        for (size_t t = 0; t < I.size(); ++t) {
            Poly df = f.derivative(I[t]);
            if (df.is_zero()) continue;
            IndexTuple J = I;
            J.erase(J.begin() + static_cast<long>(t));
            r.add_component(J, t % 2 == 0 ? -df : df);
        }
    return r;
}

}  // namespace detail

inline PForm codifferential(const PForm& a) {
    if (a.degree() == 0) throw std::invalid_argument("codifferential of a 0-form");
    return detail::codifferential_or_zero(a);
}

inline PForm hodge_laplacian(const PForm& a) {
    const int dim = a.ambient_dim();
    PForm r(dim, a.degree());
    if (a.degree() < dim) r += detail::codifferential_or_zero(exterior_d(a));
    if (a.degree() > 0) r += exterior_d(detail::codifferential_or_zero(a));
    return r;
}

inline PForm hodge_star(const PForm& a) {
    const int dim = a.ambient_dim();
    PForm r(dim, dim - a.degree());
    for (const auto& [I, f] : a.components()) {
        IndexTuple Ic;
        Ic.reserve(dim - I.size());
        size_t t = 0;
        for (int j = 1; j <= dim; ++j) {
            if (t < I.size() && I[t] == j) {
                ++t;
                continue;
            }
            Ic.push_back(j);
        }
        // sign of the permutation (I, Ic) of (1..dim)
        int inversions = 0;
        for (int x : I)
            for (int y : Ic)
                if (x > y) ++inversions;
        r.add_component(Ic, inversions % 2 == 0 ? f : -f);
    }
    return r;
}

// Interior product with a polynomial vector field W = sum field[i] d/dx_{i+1}.
inline PForm interior_product(const PForm& a, const std::vector<Poly>& field) {
    const int dim = a.ambient_dim();
    if (static_cast<int>(field.size()) != dim)
        throw std::invalid_argument("vector field component count mismatch");
    if (a.degree() == 0) throw std::invalid_argument("interior product with a 0-form");
    PForm r(dim, a.degree() - 1);
    for (const auto& [I, f] : a.components())
        for (size_t t = 0; t < I.size(); ++t) {
            Poly g = field[static_cast<size_t>(I[t] - 1)] * f;
            if (g.is_zero()) continue;
            IndexTuple J = I;
            J.erase(J.begin() + static_cast<long>(t));
            r.add_component(J, t % 2 == 0 ? g : -g);
        }
    return r;
}

inline std::vector<Poly> radial_field(int dim) {
    std::vector<Poly> Z;
    Z.reserve(dim);
    for (int i = 1; i <= dim; ++i) Z.push_back(Poly::variable(dim, i));
    return Z;
}

// Contraction with the position field sum x_i d/dx_i.
inline PForm interior_radial(const PForm& a) {
    if (a.degree() == 0)
        throw std::invalid_argument("interior product of a 0-form with the radial field");
    return interior_product(a, radial_field(a.ambient_dim()));
}

namespace detail {

inline PForm interior_radial_or_zero(const PForm& a) {
    if (a.degree() == 0) return PForm::zero(a.ambient_dim(), 0);
    return interior_radial(a);
}

}  // namespace detail

// The tautological 1-form sum x_i dx_i.
inline PForm radial_one_form(int dim) {
    PForm rho(dim, 1);
    for (int i = 1; i <= dim; ++i) rho.add_component({i}, Poly::variable(dim, i));
    return rho;
}

// r^2 a - rho ^ (i_Z a): kills the radial part, so on the unit sphere this is
// the tangential part of a. Contracting the result with Z gives zero.
inline PForm radial_horizontal_projection(const PForm& a) {
    const int dim = a.ambient_dim();
    PForm r = a;
    r *= radius_squared(dim);
    if (a.degree() > 0) r -= wedge(radial_one_form(dim), interior_radial(a));
    return r;
}

// Whether a and b pull back to the same form on the unit sphere: every
// component of the projected difference must lie in the ideal (r^2 - 1).
inline bool pullback_equal_on_sphere(const PForm& a, const PForm& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.degree() != b.degree())
        throw std::invalid_argument("form degree or ambient dimension mismatch");
    const int dim = a.ambient_dim();
    const Poly g = unit_sphere_quadric(dim);
    const PForm proj = radial_horizontal_projection(a - b);
    for (const auto& [I, f] : proj.components())
        if (!vanishes_on_quadric(f, g, dim)) return false;
    return true;
}

inline bool pullback_vanishes_on_sphere(const PForm& a) {
    return pullback_equal_on_sphere(a, PForm::zero(a.ambient_dim(), a.degree()));
}

// Pointwise inner product sum_I a_I b_I in the flat metric.
inline Poly pointwise_inner(const PForm& a, const PForm& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.degree() != b.degree())
        throw std::invalid_argument("form degree or ambient dimension mismatch");
    Poly r(a.ambient_dim());
    for (const auto& [I, f] : a.components()) {
        auto it = b.components().find(I);
        if (it != b.components().end()) r += f * it->second;
    }
    return r;
}

// Value of a on the vectors v[0], ..., v[p-1] at the point x: the component
// polynomials weighted by determinants of the selected vector entries.
inline Rational evaluate_on_vectors(const PForm& a, const std::vector<Rational>& x,
                                    const std::vector<std::vector<Rational>>& v) {
    const int dim = a.ambient_dim();
    const int p = a.degree();
    if (static_cast<int>(v.size()) != p)
        throw std::invalid_argument("vector count must match the form degree");
    for (const auto& vec : v)
        if (static_cast<int>(vec.size()) != dim)
            throw std::invalid_argument("vector length mismatch");
    Rational total(0);
    for (const auto& [I, f] : a.components()) {
        // det of the p x p matrix M[s][t] = v[s][I[t]-1], by Laplace expansion
        std::vector<std::vector<Rational>> M(p, std::vector<Rational>(p));
        for (int s = 0; s < p; ++s)
            for (int t = 0; t < p; ++t) M[s][t] = v[s][static_cast<size_t>(I[t] - 1)];
        std::vector<int> rows(p);
        for (int s = 0; s < p; ++s) rows[s] = s;
        // iterative first-column expansion
        struct Det {
            static Rational of(const std::vector<std::vector<Rational>>& m,
                               std::vector<int> rows, int col) {
                if (rows.empty()) return Rational(1);
                Rational acc(0);
                for (size_t s = 0; s < rows.size(); ++s) {
                    const Rational& entry = m[rows[s]][col];
                    if (entry == 0) continue;
                    std::vector<int> rest;
                    rest.reserve(rows.size() - 1);
                    for (size_t u = 0; u < rows.size(); ++u)
                        if (u != s) rest.push_back(rows[u]);
                    Rational sub = of(m, rest, col + 1);
                    acc += (s % 2 == 0 ? entry : -entry) * sub;
                }
                return acc;
            }
        };
        total += f.evaluate(x) * Det::of(M, rows, 0);
    }
    return total;
}

// Textual form: "(poly) * dx1^dx3" terms joined by " + "; a 0-form prints as
// a bare parenthesized polynomial.
inline std::string to_string(const PForm& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [I, f] : a.components()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(f) << ")";
        if (!I.empty()) {
            os << " * ";
            for (size_t t = 0; t < I.size(); ++t) {
                if (t > 0) os << "^";
                os << "dx" << I[t];
            }
        }
    }
    return os.str();
}

inline PForm parse_pform(const std::string& text, int dim, int degree) {
    const std::string body = detail::strip_spaces(text);
    if (body.empty()) throw std::invalid_argument("empty form literal");
    PForm w(dim, degree);
    if (body == "0") return w;
    for (const std::string& raw : detail::split_top_level_plus(body)) {
        std::string term = detail::strip_spaces(raw);
        if (term.empty() || term[0] != '(')
            throw std::invalid_argument("form term must start with a parenthesized coefficient");
        int depth = 0;
        size_t close = std::string::npos;
        for (size_t i = 0; i < term.size(); ++i) {
            if (term[i] == '(') ++depth;
            if (term[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        if (close == std::string::npos) throw std::invalid_argument("unbalanced parentheses");
        const Poly f = parse_poly(term.substr(1, close - 1), dim);
        std::string rest = detail::strip_spaces(term.substr(close + 1));
        IndexTuple I;
        if (!rest.empty()) {
            if (rest[0] != '*') throw std::invalid_argument("expected '*' before coframe part");
            rest = detail::strip_spaces(rest.substr(1));
            const std::string& tok = rest;
            size_t pos = 0;
            while (pos < tok.size()) {
                size_t next = tok.find('^', pos);
                std::string piece = detail::strip_spaces(
                    next == std::string::npos ? tok.substr(pos) : tok.substr(pos, next - pos));
                if (piece.size() < 3 || piece.substr(0, 2) != "dx")
                    throw std::invalid_argument("bad coframe token: " + piece);
                I.push_back(std::stoi(piece.substr(2)));
                pos = next == std::string::npos ? tok.size() : next + 1;
            }
        }
        if (static_cast<int>(I.size()) != degree)
            throw std::invalid_argument("coframe length does not match the stated degree");
        w.add_component(I, f);
    }
    return w;
}

}  // namespace steklov
