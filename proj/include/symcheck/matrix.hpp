#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symcheck/poly.hpp"
#include "symcheck/rational.hpp"

namespace symcheck {

template <class S>
using Vec = std::vector<S>;

/// Dense row-major matrix over an exact scalar (Rational, GaussianRational or
/// a polynomial ring). Carries its own zero so that polynomial entries know
/// their variable count.
template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, S zero = ScalarTraits<S>::zero())
        : rows_(rows), cols_(cols), zero_(std::move(zero)), data_(rows * cols, zero_) {}

    static Matrix identity(std::size_t n, S zero, const S& one) {
        Matrix m(n, n, std::move(zero));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }
    static Matrix identity(std::size_t n) { return identity(n, ScalarTraits<S>::zero(), ScalarTraits<S>::one()); }

    static Matrix from_rows(const std::vector<std::vector<S>>& rows, S zero = ScalarTraits<S>::zero()) {
        const std::size_t c = rows.empty() ? 0 : rows.front().size();
        Matrix m(rows.size(), c, std::move(zero));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("Matrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    /// Matrix whose columns are the given vectors (all of length `dim`).
    static Matrix from_columns(const std::vector<Vec<S>>& cols, std::size_t dim, S zero = ScalarTraits<S>::zero()) {
        Matrix m(dim, cols.size(), std::move(zero));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != dim) throw std::invalid_argument("Matrix::from_columns: dimension mismatch");
            for (std::size_t i = 0; i < dim; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const S& zero() const { return zero_; }
    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<S> row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
    Vec<S> col(std::size_t j) const {
        Vec<S> v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!symcheck::is_zero(x)) return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        Matrix m(rs.size(), cs.size(), zero_);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
        return m;
    }

    /// Vertical concatenation.
    static Matrix stack(const Matrix& top, const Matrix& bottom) {
        if (top.cols_ != bottom.cols_) throw std::invalid_argument("Matrix::stack: column mismatch");
        Matrix m(top.rows_ + bottom.rows_, top.cols_, top.zero_);
        std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
        std::copy(bottom.data_.begin(), bottom.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
        return m;
    }
    /// Horizontal concatenation.
    static Matrix augment(const Matrix& left, const Matrix& right) {
        if (left.rows_ != right.rows_) throw std::invalid_argument("Matrix::augment: row mismatch");
        Matrix m(left.rows_, left.cols_ + right.cols_, left.zero_);
        for (std::size_t i = 0; i < left.rows_; ++i) {
            for (std::size_t j = 0; j < left.cols_; ++j) m(i, j) = left(i, j);
            for (std::size_t j = 0; j < right.cols_; ++j) m(i, left.cols_ + j) = right(i, j);
        }
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
        Matrix r(a.rows_, b.cols_, a.zero_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                if (symcheck::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (symcheck::is_zero(b(k, j))) continue;
                    r(i, j) += aik * b(k, j);
                }
            }
        return r;
    }
    template <class T>
    Matrix scaled(const T& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x * c;
        return r;
    }
    Vec<S> apply(const Vec<S>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
        Vec<S> out(rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!symcheck::is_zero((*this)(i, j)) && !symcheck::is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void check_same_shape(const Matrix& o) const {
        if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    S zero_{};
    std::vector<S> data_;
};

template <class S>
using ScalarMatrix = Matrix<S>;

namespace detail {

template <class S>
std::size_t pivot_weight(const S&) {
    return 0;
}
template <class S>
std::size_t pivot_weight(const MultiPoly<S>& p) {
    return p.term_count();
}

}  // namespace detail

/// Row echelon form from fraction-free (Bareiss) elimination. Every entry
/// produced is a minor of the input, so all divisions are exact and the
/// routine works over any of our integral domains, including Q[x].
template <class S>
struct Echelon {
    Matrix<S> m;
    std::vector<std::size_t> pivot_cols;
    int sign = 1;  // parity of the row swaps

    std::size_t rank() const { return pivot_cols.size(); }
};

template <class S>
Echelon<S> bareiss_echelon(Matrix<S> a, std::size_t col_limit = static_cast<std::size_t>(-1)) {
    Echelon<S> out;
    const std::size_t rows = a.rows();
    const std::size_t cols = std::min(a.cols(), col_limit);
    std::optional<S> prev;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (symcheck::is_zero(a(i, c))) continue;
            if (best == rows || detail::pivot_weight(a(i, c)) < detail::pivot_weight(a(best, c))) best = i;
        }
        if (best == rows) continue;
        if (best != r) {
            a.swap_rows(best, r);
            out.sign = -out.sign;
        }
        const S pivot = a(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const S lead = a(i, c);
            for (std::size_t j = c + 1; j < a.cols(); ++j) {
                S v = pivot * a(i, j);
                if (!symcheck::is_zero(lead) && !symcheck::is_zero(a(r, j))) v -= lead * a(r, j);
                a(i, j) = prev ? exact_div(v, *prev) : std::move(v);
            }
            a(i, c) = a.zero();
        }
        prev = pivot;
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.m = std::move(a);
    return out;
}

/// Determinant by Bareiss elimination.
template <class S>
S determinant(const Matrix<S>& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) throw std::invalid_argument("determinant: empty matrix");
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    auto e = bareiss_echelon(a);
    if (e.rank() < n) return a.zero();
    S d = e.m(n - 1, n - 1);
    if (e.sign < 0) d = -d;
    return d;
}

template <class S>
std::size_t rank(const Matrix<S>& a) {
    return bareiss_echelon(a).rank();
}

/// Reduced row echelon form over a field, built on the Bareiss echelon.
template <class S>
Echelon<S> reduced_echelon(const Matrix<S>& a, std::size_t col_limit = static_cast<std::size_t>(-1)) {
    auto e = bareiss_echelon(a, col_limit);
    auto& m = e.m;
    const std::size_t r = e.rank();
    for (std::size_t i = r; i-- > 0;) {
        const std::size_t pc = e.pivot_cols[i];
        const S inv = exact_div(ScalarTraits<S>::one(), m(i, pc));
        for (std::size_t j = pc; j < m.cols(); ++j) m(i, j) *= inv;
        for (std::size_t k = 0; k < i; ++k) {
            const S f = m(k, pc);
            if (symcheck::is_zero(f)) continue;
            for (std::size_t j = pc; j < m.cols(); ++j) m(k, j) -= f * m(i, j);
        }
    }
    return e;
}

/// Exact basis of ker M; one vector per free column, with a 1 in that column.
template <class S>
std::vector<Vec<S>> kernel_basis(const Matrix<S>& a) {
    const auto e = reduced_echelon(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vec<S>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec<S> v(a.cols(), ScalarTraits<S>::zero());
        v[f] = ScalarTraits<S>::one();
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = -e.m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Particular solution of A X = B (free variables set to zero), or nullopt
/// when the system is inconsistent.
template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    const auto e = reduced_echelon(Matrix<S>::augment(a, b), a.cols());
    const std::size_t r = e.rank();
    for (std::size_t i = r; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (!symcheck::is_zero(e.m(i, a.cols() + j))) return std::nullopt;
    Matrix<S> x(a.cols(), b.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivot_cols[i], j) = e.m(i, a.cols() + j);
    return x;
}

/// Inverse of a nonsingular square matrix over a field.
template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
    auto x = solve(a, Matrix<S>::identity(a.rows()));
    if (!x || rank(a) != a.rows()) throw std::domain_error("inverse: singular matrix");
    return *x;
}

template <class S>
bool is_zero_vector(const Vec<S>& v) {
    for (const auto& x : v)
        if (!symcheck::is_zero(x)) return false;
    return true;
}

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
    S s = ScalarTraits<S>::zero();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ---- subspaces, represented by (not necessarily independent) spanning lists ----

/// Independent spanning subset of the given vectors (pivot columns of the
/// matrix whose columns are the input).
template <class S>
std::vector<Vec<S>> reduce_basis(const std::vector<Vec<S>>& vs, std::size_t dim) {
    if (vs.empty()) return {};
    const auto e = bareiss_echelon(Matrix<S>::from_columns(vs, dim));
    std::vector<Vec<S>> out;
    for (auto c : e.pivot_cols) out.push_back(vs[c]);
    return out;
}

/// Canonical basis of span(vs): rows of the reduced echelon form.
template <class S>
std::vector<Vec<S>> canonical_basis(const std::vector<Vec<S>>& vs, std::size_t dim) {
    if (vs.empty()) return {};
    Matrix<S> rows(vs.size(), dim);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) rows(i, j) = vs[i][j];
    const auto e = reduced_echelon(rows);
    std::vector<Vec<S>> out;
    for (std::size_t i = 0; i < e.rank(); ++i) out.push_back(e.m.row(i));
    return out;
}

/// Column space basis of M.
template <class S>
std::vector<Vec<S>> column_space(const Matrix<S>& m) {
    std::vector<Vec<S>> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    return reduce_basis(cols, m.rows());
}

/// span U ∩ span V: kernel of [U | -V] mapped back through U.
template <class S>
std::vector<Vec<S>> intersect(const std::vector<Vec<S>>& u_in, const std::vector<Vec<S>>& v_in, std::size_t dim) {
    const auto u = reduce_basis(u_in, dim);
    const auto v = reduce_basis(v_in, dim);
    if (u.empty() || v.empty()) return {};
    Matrix<S> m(dim, u.size() + v.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m(i, j) = u[j][i];
    for (std::size_t j = 0; j < v.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m(i, u.size() + j) = -v[j][i];
    std::vector<Vec<S>> out;
    for (const auto& k : kernel_basis(m)) {
        Vec<S> w(dim, ScalarTraits<S>::zero());
        for (std::size_t j = 0; j < u.size(); ++j)
            if (!symcheck::is_zero(k[j]))
                for (std::size_t i = 0; i < dim; ++i) w[i] += k[j] * u[j][i];
        out.push_back(std::move(w));
    }
    return reduce_basis(out, dim);
}

/// Orthogonal complement in Q^dim with the standard (bilinear) inner product.
template <class S>
std::vector<Vec<S>> orth_complement(const std::vector<Vec<S>>& u_in, std::size_t dim) {
    const auto u = reduce_basis(u_in, dim);
    if (u.empty()) return kernel_basis(Matrix<S>(0, dim));
    Matrix<S> m(u.size(), dim);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = ScalarTraits<S>::conj(u[i][j]);
    return kernel_basis(m);
}

/// Orthogonal projection onto span(B): B (B^T B)^{-1} B^T, exact.
inline Matrix<Rational> projection_onto(const std::vector<Vec<Rational>>& b_in, std::size_t dim) {
    const auto b = reduce_basis(b_in, dim);
    if (b.empty()) return Matrix<Rational>(dim, dim);
    const auto bm = Matrix<Rational>::from_columns(b, dim);
    const auto bt = bm.transpose();
    return bm * inverse(bt * bm) * bt;
}

/// Orthogonal projection onto the complement of span(B): Id - B (B^T B)^{-1} B^T.
inline Matrix<Rational> projection_onto_complement(const std::vector<Vec<Rational>>& b, std::size_t dim) {
    return Matrix<Rational>::identity(dim) - projection_onto(b, dim);
}

template <class S>
std::string to_string(const Vec<S>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

}  // namespace symcheck
