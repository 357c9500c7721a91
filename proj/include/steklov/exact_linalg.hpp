#pragma once

// Dense exact-rational linear algebra: reduced row echelon form, rank,
// nullspace and complement bases, determinants, and conversion to floating
// point. Pivoting is deterministic (first nonzero entry in column order),
// so every basis produced here is reproducible byte for byte.

#include "steklov/rational.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace steklov {

class MatQ {
public:
    MatQ() : rows_(0), cols_(0) {}
    MatQ(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    }

    static MatQ identity(int n) {
        MatQ m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static MatQ from_columns(const std::vector<std::vector<Rational>>& cols) {
        if (cols.empty()) return MatQ(0, 0);
        MatQ m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols(); ++j) {
            if (static_cast<int>(cols[j].size()) != m.rows())
                throw std::invalid_argument("ragged column list");
            for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }
    const Rational& at(int i, int j) const { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }

    std::vector<Rational> column(int j) const {
        std::vector<Rational> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    MatQ transposed() const {
        MatQ t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool operator==(const MatQ& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Eigen::MatrixXd to_double() const {
        Eigen::MatrixXd m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).get_d();
        return m;
    }

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

inline MatQ operator+(const MatQ& a, const MatQ& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
    MatQ r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

inline MatQ operator-(const MatQ& a, const MatQ& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
    MatQ r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

inline MatQ operator*(const MatQ& a, const MatQ& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    MatQ r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rational& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const Rational& bkj = b.at(k, j);
                if (bkj == 0) continue;
                r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

inline std::vector<Rational> operator*(const MatQ& a, const std::vector<Rational>& x) {
    if (a.cols() != static_cast<int>(x.size()))
        throw std::invalid_argument("matrix shape mismatch");
    std::vector<Rational> r(a.rows(), Rational(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0 && x[j] != 0) r[i] += a.at(i, j) * x[j];
    return r;
}

// In-place reduced row echelon form; returns the pivot columns in order.
inline std::vector<int> rref(MatQ& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pr = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.at(i, col) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
        const Rational inv = Rational(1) / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const Rational f = m.at(i, col);
            if (f == 0) continue;
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(MatQ m) { return static_cast<int>(rref(m).size()); }

// Basis of { x : m x = 0 }, one vector per free column: the free coordinate
// is 1, pivot coordinates are back-substituted, all others 0.
inline std::vector<std::vector<Rational>> nullspace(MatQ m) {
    const std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int j = 0; j < m.cols(); ++j) {
        if (is_pivot[static_cast<size_t>(j)]) continue;
        std::vector<Rational> v(static_cast<size_t>(m.cols()), Rational(0));
        v[static_cast<size_t>(j)] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] = -m.at(static_cast<int>(r), j);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Basis of the orthogonal complement (standard inner product) of the column
// span of m: the nullspace of m^T.
inline std::vector<std::vector<Rational>> orthogonal_complement_of_columns(const MatQ& m) {
    return nullspace(m.transposed());
}

// Solves m x = b exactly; throws if the system is inconsistent. Free
// coordinates are set to zero.
inline std::vector<Rational> solve(const MatQ& m, const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("rhs length mismatch");
    MatQ aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    const std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols())
        throw std::domain_error("inconsistent linear system");
    std::vector<Rational> x(static_cast<size_t>(m.cols()), Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<size_t>(pivots[r])] = aug.at(static_cast<int>(r), m.cols());
    return x;
}

// Exact determinant by fraction-preserving Gaussian elimination.
inline Rational determinant(MatQ m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const int n = m.rows();
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) return Rational(0);
        if (pr != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(pr, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        const Rational inv = Rational(1) / m.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            const Rational f = m.at(i, col) * inv;
            if (f == 0) continue;
            for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

}  // namespace steklov
