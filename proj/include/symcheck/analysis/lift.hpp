#pragma once

#include <map>

#include "symcheck/analysis/common.hpp"

namespace symcheck {

/// A u for a polynomial field u (formal differentiation in x).
inline std::vector<Poly> apply_op(const DiffOp& op, const std::vector<Poly>& u) {
    if (u.size() != op.d) throw std::invalid_argument("apply_op: field has wrong number of components");
    std::vector<Poly> out(op.l, Poly(op.N));
    for (const auto& [alpha, m] : op.terms)
        for (std::size_t j = 0; j < op.d; ++j) {
            if (u[j].is_zero()) continue;
            const Poly du = u[j].derivative(alpha);
            if (du.is_zero()) continue;
            for (std::size_t i = 0; i < op.l; ++i)
                if (m(i, j) != 0) out[i] += du * m(i, j);
        }
    return out;
}

struct PolynomialLift {
    Status status = Status::Ok;  // Ok or NotInImage
    std::vector<Poly> pi;
    std::vector<Poly> Pi;
    int failed_degree = -1;  // homogeneous part that could not be lifted
    bool verified = false;   // A Pi == pi
};

/// Solve A Pi = pi one homogeneous part at a time. For the part of degree m,
/// Pi_m = sum_{|gamma| = m + k} x^gamma v_gamma / gamma! and matching the
/// coefficient of x^delta / delta! gives sum_alpha A_alpha v_{delta + alpha} = delta! p_delta.
inline PolynomialLift polynomial_lift(const DiffOp& A, const std::vector<Poly>& pi) {
    PolynomialLift out;
    out.pi = pi;
    if (pi.size() != A.l) throw std::invalid_argument("polynomial_lift: target has wrong number of components");
    const std::size_t N = A.N;
    int top = -1;
    for (const auto& p : pi) {
        if (p.nvars() != N) throw std::invalid_argument("polynomial_lift: variable-count mismatch");
        top = std::max(top, p.degree());
    }
    out.Pi.assign(A.d, Poly(N));
    for (int m = top; m >= 0; --m) {
        const auto deltas = multi_indices_of_degree(N, m);
        const auto gammas = multi_indices_of_degree(N, m + A.k);
        std::map<MultiIndex, std::size_t, GrlexLess> gamma_index;
        for (std::size_t g = 0; g < gammas.size(); ++g) gamma_index.emplace(gammas[g], g);
        Matrix<Rational> sys(deltas.size() * A.l, gammas.size() * A.d);
        Matrix<Rational> rhs(deltas.size() * A.l, 1);
        bool any = false;
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            const Rational fact(deltas[di].factorial());
            for (std::size_t i = 0; i < A.l; ++i) {
                rhs(di * A.l + i, 0) = fact * pi[i].coefficient(deltas[di]);
                any |= rhs(di * A.l + i, 0) != 0;
            }
            for (const auto& [alpha, mat] : A.terms) {
                const std::size_t g = gamma_index.at(deltas[di] + alpha);
                for (std::size_t i = 0; i < A.l; ++i)
                    for (std::size_t j = 0; j < A.d; ++j) sys(di * A.l + i, g * A.d + j) += mat(i, j);
            }
        }
        if (!any) continue;
        const auto v = solve(sys, rhs);
        if (!v) {
            out.status = Status::NotInImage;
            out.failed_degree = m;
            out.Pi.clear();
            return out;
        }
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            const Rational inv_fact = Rational(1) / Rational(gammas[g].factorial());
            for (std::size_t j = 0; j < A.d; ++j) {
                const Rational& c = (*v)(g * A.d + j, 0);
                if (c != 0) out.Pi[j].add_term(gammas[g], c * inv_fact);
            }
        }
    }
    out.verified = apply_op(A, out.Pi) == pi;
    return out;
}

}  // namespace symcheck
