#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcheck/matrix.hpp"
#include "symcheck/poly_matrix.hpp"

namespace symcheck {

/// Homogeneous constant-coefficient operator
///   u |-> sum_{|alpha| = k} A_alpha d^alpha u,   u : R^N -> R^d,  A_alpha in Lin(R^d, R^l).
struct DiffOp {
    std::string name;
    std::size_t N = 0;
    std::size_t d = 0;
    std::size_t l = 0;
    int k = 0;
    std::map<MultiIndex, Matrix<Rational>, GrlexLess> terms;
    /// Optional per-component multiplicities for the pointwise norm of the
    /// output (e.g. 2 on off-diagonal strain components). Empty = all ones.
    std::vector<Rational> weights;

    bool is_zero() const {
        for (const auto& [a, m] : terms)
            if (!m.is_zero()) return false;
        return true;
    }

    Rational weight(std::size_t row) const { return weights.empty() ? Rational(1) : weights.at(row); }

    /// Structural checks; throws std::invalid_argument with a specific message.
    void validate() const {
        if (N == 0 || N > kMaxVars) throw std::invalid_argument("dimension mismatch: N must be in 1.." + std::to_string(kMaxVars));
        if (d == 0 || l == 0) throw std::invalid_argument("dimension mismatch: d and l must be positive");
        if (k < 0) throw std::invalid_argument("multi-index order mismatch: negative order");
        for (const auto& [a, m] : terms) {
            if (a.size() != N) throw std::invalid_argument("dimension mismatch: multi-index length differs from N");
            if (a.degree() != k) throw std::invalid_argument("multi-index order mismatch: |alpha| != k");
            if (m.rows() != l || m.cols() != d) throw std::invalid_argument("dimension mismatch: coefficient matrix is not l x d");
        }
        if (!weights.empty()) {
            if (weights.size() != l) throw std::invalid_argument("dimension mismatch: weights length differs from l");
            for (const auto& w : weights)
                if (sgn(w) <= 0) throw std::invalid_argument("weights must be positive");
        }
    }

    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.name == b.name && a.N == b.N && a.d == b.d && a.l == b.l && a.k == b.k && a.terms == b.terms &&
               a.weights == b.weights;
    }
};

/// l x d polynomial matrix sum_alpha A_alpha xi^alpha.
inline PolyMatrix symbol(const DiffOp& op) {
    PolyMatrix s = make_poly_matrix(op.l, op.d, op.N);
    for (const auto& [a, m] : op.terms)
        for (std::size_t i = 0; i < op.l; ++i)
            for (std::size_t j = 0; j < op.d; ++j) s(i, j).add_term(a, m(i, j));
    return s;
}

/// Inverse of `symbol`: every entry must be homogeneous of degree k.
inline DiffOp from_symbol(std::string name, const PolyMatrix& s, int k) {
    if (!is_homogeneous(s, k)) throw std::invalid_argument("from_symbol: symbol is not homogeneous of degree " + std::to_string(k));
    DiffOp op;
    op.name = std::move(name);
    op.N = nvars(s);
    op.d = s.cols();
    op.l = s.rows();
    op.k = k;
    for (auto& [a, m] : coefficient_matrices(s)) op.terms.emplace(a, std::move(m));
    return op;
}

/// Symbol of an operator evaluated at xi (entries in T).
template <class T>
Matrix<T> symbol_at(const DiffOp& op, const std::vector<T>& xi) {
    return evaluate(symbol(op), xi);
}

/// L o A, realized as the symbol product.
inline DiffOp compose(const DiffOp& L, const DiffOp& A) {
    if (L.N != A.N) throw std::invalid_argument("compose: dimension mismatch (N)");
    if (L.d != A.l) throw std::invalid_argument("compose: dimension mismatch (L.d != A.l)");
    DiffOp out = from_symbol(L.name + "*" + A.name, symbol(L) * symbol(A), L.k + A.k);
    out.weights = L.weights;
    return out;
}

/// Vertical concatenation [A1; A2].
inline DiffOp stack(const DiffOp& a1, const DiffOp& a2) {
    if (a1.N != a2.N || a1.d != a2.d || a1.k != a2.k) throw std::invalid_argument("stack: mismatch in N, d or k");
    DiffOp out = from_symbol(a1.name + "|" + a2.name, PolyMatrix::stack(symbol(a1), symbol(a2)), a1.k);
    if (!a1.weights.empty() || !a2.weights.empty()) {
        for (std::size_t i = 0; i < a1.l; ++i) out.weights.push_back(a1.weight(i));
        for (std::size_t i = 0; i < a2.l; ++i) out.weights.push_back(a2.weight(i));
    }
    return out;
}

/// Block-diagonal operator acting on R^{d1} x R^{d2}.
inline DiffOp direct_sum(const DiffOp& a1, const DiffOp& a2) {
    if (a1.N != a2.N || a1.k != a2.k) throw std::invalid_argument("direct_sum: mismatch in N or k");
    const auto s1 = symbol(a1), s2 = symbol(a2);
    PolyMatrix s = make_poly_matrix(a1.l + a2.l, a1.d + a2.d, a1.N);
    for (std::size_t i = 0; i < a1.l; ++i)
        for (std::size_t j = 0; j < a1.d; ++j) s(i, j) = s1(i, j);
    for (std::size_t i = 0; i < a2.l; ++i)
        for (std::size_t j = 0; j < a2.d; ++j) s(a1.l + i, a1.d + j) = s2(i, j);
    return from_symbol(a1.name + "+" + a2.name, s, a1.k);
}

/// D^s on R^e-valued fields. Row index = tuple_index * e + i where the
/// ordered tuples (b_1..b_s) are enumerated with b_1 most significant;
/// row symbol xi_{b_1} ... xi_{b_s} on component i.
inline DiffOp grad_power(int s, std::size_t e, std::size_t N) {
    if (s < 0) throw std::invalid_argument("grad_power: s must be nonnegative");
    const auto tuples = ordered_tuples(N, s);
    PolyMatrix sym = make_poly_matrix(tuples.size() * e, e, N);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        const MultiIndex beta = tuple_to_multi_index(N, tuples[t]);
        for (std::size_t i = 0; i < e; ++i) sym(t * e + i, i) = Poly::monomial(beta, Rational(1));
    }
    return from_symbol(s == 0 ? "identity" : "D^" + std::to_string(s), sym, s);
}

namespace detail {

inline Poly xi(std::size_t N, std::size_t i) { return Poly::variable(N, i); }

inline Poly norm2(std::size_t N) {
    Poly p(N);
    for (std::size_t i = 0; i < N; ++i) p.add_term(MultiIndex::unit(N, i) + MultiIndex::unit(N, i), Rational(1));
    return p;
}

}  // namespace detail

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"gradient",  "divergence",  "curl",           "sym_gradient", "laplacian",
                                                "bilaplacian", "cauchy_riemann", "d2_laplacian", "div_k",       "identity"};
    return names;
}

/// Standard operators. `param` is the field dimension for gradient and
/// identity (default 1) and the order for div_k (default 1).
inline DiffOp catalog(const std::string& name, std::size_t N, int param = 0) {
    using detail::xi;
    if (N == 0 || N > kMaxVars) throw std::invalid_argument("catalog: N out of range");
    const Rational half(1, 2);
    if (name == "gradient" || name == "identity") {
        const std::size_t e = param > 0 ? static_cast<std::size_t>(param) : 1;
        DiffOp op = grad_power(name == "gradient" ? 1 : 0, e, N);
        op.name = name;
        return op;
    }
    if (name == "divergence") {
        PolyMatrix s = make_poly_matrix(1, N, N);
        for (std::size_t j = 0; j < N; ++j) s(0, j) = xi(N, j);
        return from_symbol(name, s, 1);
    }
    if (name == "curl") {
        if (N == 3) {
            PolyMatrix s = make_poly_matrix(3, 3, N);
            // (xi x v)_i = eps_ijk xi_j v_k
            s(0, 1) = -xi(N, 2);
            s(0, 2) = xi(N, 1);
            s(1, 0) = xi(N, 2);
            s(1, 2) = -xi(N, 0);
            s(2, 0) = -xi(N, 1);
            s(2, 1) = xi(N, 0);
            return from_symbol(name, s, 1);
        }
        if (N == 2) {
            PolyMatrix s = make_poly_matrix(1, 2, N);
            s(0, 0) = -xi(N, 1);
            s(0, 1) = xi(N, 0);
            return from_symbol(name, s, 1);
        }
        throw std::invalid_argument("catalog: curl requires N = 3 (or the scalar curl for N = 2)");
    }
    if (name == "sym_gradient") {
        const std::size_t l = N * (N + 1) / 2;
        PolyMatrix s = make_poly_matrix(l, N, N);
        std::vector<Rational> w;
        std::size_t r = 0;
        for (std::size_t i = 0; i < N; ++i, ++r) {
            s(r, i) = xi(N, i);
            w.emplace_back(1);
        }
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j, ++r) {
                s(r, i) = xi(N, j) * half;
                s(r, j) = xi(N, i) * half;
                w.emplace_back(2);
            }
        DiffOp op = from_symbol(name, s, 1);
        op.weights = std::move(w);
        return op;
    }
    if (name == "laplacian" || name == "bilaplacian") {
        PolyMatrix s = make_poly_matrix(1, 1, N);
        s(0, 0) = name == "laplacian" ? detail::norm2(N) : detail::norm2(N).pow(2);
        return from_symbol(name, s, name == "laplacian" ? 2 : 4);
    }
    if (name == "cauchy_riemann") {
        if (N != 2) throw std::invalid_argument("catalog: cauchy_riemann requires N = 2");
        PolyMatrix s = make_poly_matrix(2, 2, N);
        s(0, 0) = xi(N, 0);
        s(0, 1) = -xi(N, 1);
        s(1, 0) = xi(N, 1);
        s(1, 1) = xi(N, 0);
        return from_symbol(name, s, 1);
    }
    if (name == "d2_laplacian") {
        DiffOp op = compose(grad_power(2, 1, N), catalog("laplacian", N));
        op.name = name;
        return op;
    }
    if (name == "div_k") {
        const int k = param > 0 ? param : 1;
        const auto betas = multi_indices_of_degree(N, k);
        PolyMatrix s = make_poly_matrix(1, betas.size(), N);
        for (std::size_t j = 0; j < betas.size(); ++j) s(0, j) = Poly::monomial(betas[j], Rational(1));
        DiffOp op = from_symbol(name, s, k);
        return op;
    }
    throw std::invalid_argument("catalog: unknown operator \"" + name + "\"");
}

/// Number of multi-indices |beta| = k in N variables, binom(N+k-1, N-1).
inline std::size_t multi_index_count(std::size_t N, int k) { return multi_indices_of_degree(N, k).size(); }

/// Pair (calA, A) compared by an estimate: korn mode has ord A = k,
/// sobolev mode ord A = k - 1.
enum class PairMode { Korn, Sobolev };

struct OperatorPair {
    DiffOp calA;
    DiffOp A;
    PairMode mode = PairMode::Korn;

    void validate() const {
        calA.validate();
        A.validate();
        if (calA.N != A.N || calA.d != A.d) throw std::invalid_argument("pair: N and d must agree");
        const int expect = mode == PairMode::Korn ? calA.k : calA.k - 1;
        if (A.k != expect)
            throw std::invalid_argument(std::string("pair: order of A must be ") +
                                        (mode == PairMode::Korn ? "k" : "k - 1") + " in this mode");
    }
};

inline const char* to_string(PairMode m) { return m == PairMode::Korn ? "korn" : "sobolev"; }

}  // namespace symcheck
