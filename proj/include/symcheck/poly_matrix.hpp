#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symcheck/matrix.hpp"
#include "symcheck/poly.hpp"

namespace symcheck {

/// Matrix with entries in Q[xi_1..xi_N].
using PolyMatrix = Matrix<Poly>;

inline PolyMatrix make_poly_matrix(std::size_t rows, std::size_t cols, std::size_t nvars) {
    return PolyMatrix(rows, cols, Poly(nvars));
}

inline std::size_t nvars(const PolyMatrix& m) { return m.zero().nvars(); }

inline PolyMatrix poly_identity(std::size_t n, std::size_t nvars) {
    return PolyMatrix::identity(n, Poly(nvars), Poly::constant(nvars, Rational(1)));
}

/// Constant matrix lifted to polynomial entries.
inline PolyMatrix to_poly_matrix(const Matrix<Rational>& m, std::size_t nvars) {
    auto out = make_poly_matrix(m.rows(), m.cols(), nvars);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Poly::constant(nvars, m(i, j));
    return out;
}

/// Entrywise evaluation at xi.
template <class T>
Matrix<T> evaluate(const PolyMatrix& m, const std::vector<T>& xi) {
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(xi);
    return out;
}

/// Every nonzero entry homogeneous of degree `deg`.
inline bool is_homogeneous(const PolyMatrix& m, int deg) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_homogeneous(deg)) return false;
    return true;
}

/// Each coefficient of every entry multiplied out: entry(i,j) = sum_m C_m(i,j) xi^m.
/// Returns the coefficient matrices keyed by monomial.
inline std::map<MultiIndex, Matrix<Rational>, GrlexLess> coefficient_matrices(const PolyMatrix& m) {
    std::map<MultiIndex, Matrix<Rational>, GrlexLess> out;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (const auto& [mono, c] : m(i, j).terms()) {
                auto it = out.find(mono);
                if (it == out.end()) it = out.emplace(mono, Matrix<Rational>(m.rows(), m.cols())).first;
                it->second(i, j) = c;
            }
    return out;
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

struct Minor {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    Poly value;
};

/// Visit every size x size minor in lexicographic (rows, cols) order; the
/// visitor returns false to stop early. Returns false iff stopped.
inline bool for_each_minor(const PolyMatrix& m, std::size_t size, const std::function<bool(const Minor&)>& visit) {
    if (size == 0 || size > std::min(m.rows(), m.cols()))
        throw std::out_of_range("minors: size out of range");
    const auto row_sets = combinations(m.rows(), size);
    const auto col_sets = combinations(m.cols(), size);
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) {
            Minor mi{rs, cs, determinant(m.submatrix(rs, cs))};
            if (!visit(mi)) return false;
        }
    return true;
}

/// All size x size minor determinants.
inline std::vector<Poly> minors(const PolyMatrix& m, std::size_t size) {
    std::vector<Poly> out;
    for_each_minor(m, size, [&](const Minor& mi) {
        out.push_back(mi.value);
        return true;
    });
    return out;
}

/// First minor of the given size that is not the zero polynomial.
inline std::optional<Minor> first_nonzero_minor(const PolyMatrix& m, std::size_t size) {
    if (size == 0 || size > std::min(m.rows(), m.cols())) return std::nullopt;
    std::optional<Minor> found;
    for_each_minor(m, size, [&](const Minor& mi) {
        if (mi.value.is_zero()) return true;
        found = mi;
        return false;
    });
    return found;
}

/// Whether every minor of the given size vanishes identically (vacuously
/// true when size exceeds the matrix dimensions).
inline bool all_minors_vanish(const PolyMatrix& m, std::size_t size) {
    if (size > std::min(m.rows(), m.cols())) return true;
    return !first_nonzero_minor(m, size).has_value();
}

/// Coefficients c_0..c_{n-1} of det(lambda Id - M) = lambda^n + c_{n-1} lambda^{n-1} + ... + c_0,
/// by the Faddeev-LeVerrier recurrence. Only divisions by the integers 1..n occur.
inline std::vector<Poly> charpoly(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("charpoly: matrix not square");
    const std::size_t n = m.rows();
    const std::size_t nv = nvars(m);
    std::vector<Poly> c(n, Poly(nv));
    // N_1 = Id, c_{n-1} = -tr(M); N_k = M N_{k-1} + c_{n-k+1} Id, c_{n-k} = -tr(M N_k)/k
    PolyMatrix nk = poly_identity(n, nv);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            nk = m * nk;
            for (std::size_t i = 0; i < n; ++i) nk(i, i) += c[n - k + 1];
        }
        const PolyMatrix mn = m * nk;
        Poly tr(nv);
        for (std::size_t i = 0; i < n; ++i) tr += mn(i, i);
        c[n - k] = tr * Rational(Rational(-1) / Rational(static_cast<long>(k)));
    }
    return c;
}

inline PolyMatrix matrix_power(const PolyMatrix& m, unsigned e) {
    PolyMatrix r = poly_identity(m.rows(), nvars(m));
    for (unsigned i = 0; i < e; ++i) r = r * m;
    return r;
}

}  // namespace symcheck
