#pragma once

// Deterministic enumerations of monomial p-forms x^a dx_I and coordinate
// extraction against them. Monomials are ordered graded-lex, index tuples
// lexicographically; every matrix in the toolkit inherits this order.
//
// The signature of a monomial form is the parity vector of the exponents
// with the coframe set toggled in: bit i of sigma(a, I) is (a_i + [i in I])
// mod 2. The exterior derivative, codifferential, Laplacian, radial
// contraction and radial projection all preserve the signature, and sphere
// or ball Gram matrices vanish across distinct signatures, so kernel and
// eigenvalue computations split into independent signature blocks. The
// blocking is used as an exact optimization throughout.

#include "steklov/differential_form.hpp"
#include "steklov/exact_linalg.hpp"
#include "steklov/polynomial.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace steklov {

inline void enumerate_monomials_rec(int dim, int k, int slot, MultiIndex& cur,
                                    std::vector<MultiIndex>& out) {
    if (slot == dim - 1) {
        cur[static_cast<size_t>(slot)] = k;
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= k; ++e) {
        cur[static_cast<size_t>(slot)] = e;
        enumerate_monomials_rec(dim, k - e, slot + 1, cur, out);
    }
    cur[static_cast<size_t>(slot)] = 0;
}

// All exponent vectors of total degree k, in ascending graded-lex order.
inline std::vector<MultiIndex> monomials_of_degree(int dim, int k) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<size_t>(dim), 0);
    enumerate_monomials_rec(dim, k, 0, cur, out);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

// All strictly increasing p-tuples from 1..dim, lexicographically.
inline std::vector<IndexTuple> increasing_tuples(int dim, int p) {
    std::vector<IndexTuple> out;
    if (p < 0 || p > dim) return out;
    IndexTuple I(static_cast<size_t>(p));
    std::function<void(int, int)> rec = [&](int start, int slot) {
        if (slot == p) {
            out.push_back(I);
            return;
        }
        for (int v = start; v <= dim - (p - slot - 1); ++v) {
            I[static_cast<size_t>(slot)] = v;
            rec(v + 1, slot + 1);
        }
    };
    rec(1, 0);
    return out;
}

inline unsigned signature_of(const MultiIndex& a, const IndexTuple& I) {
    unsigned s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] % 2 != 0) s ^= 1u << i;
    for (int i : I) s ^= 1u << (i - 1);
    return s;
}

// Signature of a form all of whose monomial components share one signature;
// throws otherwise (and for the zero form, which has no signature).
inline unsigned signature_of(const PForm& w) {
    bool seen = false;
    unsigned sig = 0;
    for (const auto& [I, f] : w.components())
        for (const auto& [a, c] : f.terms()) {
            const unsigned s = signature_of(a, I);
            if (!seen) {
                sig = s;
                seen = true;
            } else if (s != sig) {
                throw std::invalid_argument("form mixes parity signatures");
            }
        }
    if (!seen) throw std::invalid_argument("zero form has no parity signature");
    return sig;
}

inline bool has_uniform_signature(const PForm& w) {
    bool seen = false;
    unsigned sig = 0;
    for (const auto& [I, f] : w.components())
        for (const auto& [a, c] : f.terms()) {
            const unsigned s = signature_of(a, I);
            if (!seen) {
                sig = s;
                seen = true;
            } else if (s != sig) {
                return false;
            }
        }
    return seen;
}

class FormBasis {
public:
    struct Element {
        MultiIndex exponents;
        IndexTuple frame;
        unsigned signature;
    };

    static FormBasis homogeneous(int dim, int k, int p) {
        FormBasis b;
        b.dim_ = dim;
        b.p_ = p;
        for (const auto& m : monomials_of_degree(dim, k))
            for (const auto& I : increasing_tuples(dim, p))
                b.push(m, I);
        return b;
    }

    static FormBasis up_to_degree(int dim, int max_deg, int p) {
        FormBasis b;
        b.dim_ = dim;
        b.p_ = p;
        for (int k = 0; k <= max_deg; ++k)
            for (const auto& m : monomials_of_degree(dim, k))
                for (const auto& I : increasing_tuples(dim, p))
                    b.push(m, I);
        return b;
    }

    FormBasis restricted_to_signature(unsigned sig) const {
        FormBasis b;
        b.dim_ = dim_;
        b.p_ = p_;
        for (const auto& e : elems_)
            if (e.signature == sig) b.push(e.exponents, e.frame);
        return b;
    }

    int ambient_dim() const { return dim_; }
    int degree() const { return p_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const std::vector<Element>& elements() const { return elems_; }

    PForm element_form(int i) const {
        const Element& e = elems_.at(static_cast<size_t>(i));
        return PForm::monomial_form(dim_, e.frame,
                                    Poly::monomial(dim_, e.exponents, Rational(1)));
    }

    // -1 when the monomial form is not enumerated here
    int find(const MultiIndex& a, const IndexTuple& I) const {
        auto it = pos_.find({a, I});
        return it == pos_.end() ? -1 : it->second;
    }

    std::vector<Rational> coordinates(const PForm& w) const {
        if (w.ambient_dim() != dim_ || w.degree() != p_)
            throw std::invalid_argument("form degree or ambient dimension mismatch");
        std::vector<Rational> c(elems_.size(), Rational(0));
        for (const auto& [I, f] : w.components())
            for (const auto& [a, v] : f.terms()) {
                const int i = find(a, I);
                if (i < 0) throw std::invalid_argument("form lies outside the basis span");
                c[static_cast<size_t>(i)] = v;
            }
        return c;
    }

    PForm from_coordinates(const std::vector<Rational>& c) const {
        if (c.size() != elems_.size())
            throw std::invalid_argument("coordinate vector length mismatch");
        PForm w(dim_, p_);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            w.add_component(elems_[i].frame,
                            Poly::monomial(dim_, elems_[i].exponents, c[i]));
        }
        return w;
    }

private:
    void push(const MultiIndex& a, const IndexTuple& I) {
        pos_[{a, I}] = static_cast<int>(elems_.size());
        elems_.push_back({a, I, signature_of(a, I)});
    }

    int dim_ = 0;
    int p_ = 0;
    std::vector<Element> elems_;
    std::map<std::pair<MultiIndex, IndexTuple>, int> pos_;
};

using FormOp = std::function<PForm(const PForm&)>;

struct OperatorConstraint {
    FormOp op;
    const FormBasis* target;  // enumeration of the op's codomain
};

// Joint kernel of the given operators on span(domain_elems), returned as
// coefficient vectors over domain_elems. When every domain element carries a
// uniform parity signature the computation splits into signature blocks
// (each operator must preserve signatures, which all the operators in this
// toolkit do); otherwise one dense elimination is performed.
inline std::vector<std::vector<Rational>> kernel_of_operators(
    const std::vector<PForm>& domain_elems, const std::vector<OperatorConstraint>& ops) {
    const int m = static_cast<int>(domain_elems.size());
    std::vector<std::vector<Rational>> kernel;
    if (m == 0) return kernel;

    bool blockable = true;
    std::vector<unsigned> sigs(domain_elems.size(), 0);
    for (size_t i = 0; i < domain_elems.size(); ++i) {
        if (!has_uniform_signature(domain_elems[i])) {
            blockable = false;
            break;
        }
        sigs[i] = signature_of(domain_elems[i]);
    }

    std::map<unsigned, std::vector<int>> blocks;
    if (blockable) {
        for (int i = 0; i < m; ++i) blocks[sigs[static_cast<size_t>(i)]].push_back(i);
    } else {
        std::vector<int> all(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) all[static_cast<size_t>(i)] = i;
        blocks[0] = std::move(all);
    }

    for (const auto& [sig, cols] : blocks) {
        // apply each operator to each column and index the rows that appear
        std::vector<std::vector<std::pair<int, Rational>>> sparse_cols(cols.size());
        std::map<std::pair<int, int>, int> row_of;  // (op index, target index) -> row
        int next_row = 0;
        for (size_t c = 0; c < cols.size(); ++c) {
            for (size_t t = 0; t < ops.size(); ++t) {
                const PForm img = ops[t].op(domain_elems[static_cast<size_t>(cols[c])]);
                for (const auto& [I, f] : img.components())
                    for (const auto& [a, v] : f.terms()) {
                        if (blockable && signature_of(a, I) != sig)
                            throw std::logic_error(
                                "operator does not preserve parity signatures");
                        const int ti = ops[t].target->find(a, I);
                        if (ti < 0)
                            throw std::invalid_argument(
                                "operator image lies outside its stated codomain");
                        auto [it, fresh] =
                            row_of.try_emplace({static_cast<int>(t), ti}, next_row);
                        if (fresh) ++next_row;
                        sparse_cols[c].emplace_back(it->second, v);
                    }
            }
        }
        MatQ M(next_row, static_cast<int>(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c)
            for (const auto& [r, v] : sparse_cols[c]) M.at(r, static_cast<int>(c)) += v;
        for (auto& v : nullspace(M)) {
            std::vector<Rational> full(static_cast<size_t>(m), Rational(0));
            for (size_t c = 0; c < cols.size(); ++c)
                full[static_cast<size_t>(cols[c])] = v[c];
            kernel.push_back(std::move(full));
        }
    }
    return kernel;
}

}  // namespace steklov
