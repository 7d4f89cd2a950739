#pragma once

#include <map>

#include "symcheck/analysis/rank.hpp"

namespace symcheck {

inline constexpr std::size_t kStableRounds = 8;

struct WReport {
    std::vector<Vec<Rational>> basis;  // certified: every vector passes the augmented-minor test
    bool cancelling = false;           // W = {0}
    std::size_t samples = 0;
    std::size_t dropped = 0;           // candidate dimensions removed by certification
    Certainty real_constant_rank = Certainty::UncertifiedYes;
};

/// W = intersection of Image calA[xi] over real xi != 0. Sampling shrinks a
/// candidate until it is stable for kStableRounds rounds; certification
/// keeps exactly the w for which every (rho+1)-minor of [calA[xi] | w]
/// vanishes identically (those minors are linear in w).
inline WReport compute_W(const DiffOp& op, std::uint64_t seed = 1) {
    WReport out;
    const auto profile = rank_profile(op, seed);
    out.real_constant_rank = profile.constant_rank_R;
    const PolyMatrix s = symbol(op);
    const std::size_t l = op.l;
    const auto constraints = augmented_minor_constraints(s, profile.generic_rank + 1);
    const auto certified = constraints.rows() == 0 ? kernel_basis(Matrix<Rational>(0, l)) : kernel_basis(constraints);

    std::mt19937_64 rng(seed ^ 0x5745ULL);
    std::vector<Vec<Rational>> cand = kernel_basis(Matrix<Rational>(0, l));  // all of Q^l
    std::size_t stable = 0;
    while (true) {
        while (stable < kStableRounds && !cand.empty()) {
            const auto xi = random_integer_point(rng, op.N, 9);
            ++out.samples;
            const auto next = intersect(cand, column_space(evaluate(s, xi)), l);
            if (next.size() < cand.size()) {
                cand = next;
                stable = 0;
            } else {
                ++stable;
            }
        }
        const auto kept = intersect(cand, certified, l);
        if (kept.size() == cand.size()) break;
        out.dropped += cand.size() - kept.size();
        cand = kept;
        stable = 0;
    }
    out.basis = canonical_basis(cand, l);
    out.cancelling = out.basis.empty();
    return out;
}

/// Whether w lies in Image calA[xi] for all xi, via identical vanishing of
/// the augmented minors.
inline bool certify_in_W(const DiffOp& op, const Vec<Rational>& w, std::size_t rho) {
    const auto c = augmented_minor_constraints(symbol(op), rho + 1);
    return c.rows() == 0 || is_zero_vector(c.apply(w));
}

struct Annihilator {
    Status status = Status::Ok;  // Ok or DegenerateCharpoly
    DiffOp B;                    // order 2 k rho, l x l
    std::vector<Poly> c;         // c_0 .. c_{rho-1}
    std::size_t rho = 0;
    bool verified = false;       // symbol(B) symbol(calA) == 0
    Certainty real_constant_rank = Certainty::UncertifiedYes;
};

/// Cayley-Hamilton annihilator. With M = S S^T and
/// det(lambda - M) = lambda^{l-rho} (lambda^rho + c_{rho-1} lambda^{rho-1} + ... + c_0),
/// B = (-1)^rho (c_0 Id + c_1 M + ... + c_{rho-1} M^{rho-1} + M^rho),
/// which equals (product of the nonzero eigenvalues of M) times the
/// orthogonal projection onto (Image S)^perp at every real xi of rank rho.
inline Annihilator construct_annihilator(const DiffOp& op, std::uint64_t seed = 1) {
    Annihilator out;
    const auto profile = rank_profile(op, seed);
    out.real_constant_rank = profile.constant_rank_R;
    const std::size_t rho = profile.generic_rank;
    const std::size_t l = op.l;
    out.rho = rho;
    const PolyMatrix s = symbol(op);
    const PolyMatrix m = s * s.transpose();
    const auto a = charpoly(m);
    for (std::size_t j = 0; j < l - rho; ++j)
        if (!a[j].is_zero()) {
            out.status = Status::DegenerateCharpoly;
            return out;
        }
    out.c.assign(a.begin() + static_cast<std::ptrdiff_t>(l - rho), a.end());
    if (out.c.empty() || out.c[0].is_zero()) {
        out.status = Status::DegenerateCharpoly;
        return out;
    }
    PolyMatrix b = poly_identity(l, op.N).scaled(out.c[0]);
    PolyMatrix power = poly_identity(l, op.N);
    for (std::size_t j = 1; j <= rho; ++j) {
        power = power * m;
        b += j < rho ? power.scaled(out.c[j]) : power;
    }
    if (rho % 2 == 1) b = b.scaled(Rational(-1));
    out.B = from_symbol("annihilator", b, 2 * op.k * static_cast<int>(rho));
    out.verified = (b * s).is_zero();
    return out;
}

struct CbetaReport {
    Status status = Status::Ok;  // Ok or Infeasible
    std::map<MultiIndex, Matrix<Rational>, GrlexLess> C;  // C_beta in Lin(R^m, R^l)
    Matrix<Rational> P_Wperp;
    bool verified = false;
};

/// Exact solution of sum_beta C_beta B_beta = P_{W^perp}. Stacking
/// T = [B_beta1; B_beta2; ...] turns it into T^T X = P with X = [C_beta^T].
inline CbetaReport construct_Cbeta(const DiffOp& B, const std::vector<Vec<Rational>>& W_basis) {
    CbetaReport out;
    const std::size_t l = B.d;  // B acts on R^l
    const std::size_t m = B.l;
    out.P_Wperp = projection_onto_complement(W_basis, l);
    std::vector<MultiIndex> betas;
    for (const auto& [beta, mat] : B.terms)
        if (!mat.is_zero()) betas.push_back(beta);
    if (betas.empty()) {
        out.status = out.P_Wperp.is_zero() ? Status::Ok : Status::Infeasible;
        out.verified = out.status == Status::Ok;
        return out;
    }
    Matrix<Rational> t(0, l);
    for (const auto& beta : betas) t = Matrix<Rational>::stack(t, B.terms.at(beta));
    const auto x = solve(t.transpose(), out.P_Wperp);
    if (!x) {
        out.status = Status::Infeasible;
        return out;
    }
    Matrix<Rational> sum(l, l);
    for (std::size_t b = 0; b < betas.size(); ++b) {
        Matrix<Rational> cb(l, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < l; ++c) cb(c, r) = (*x)(b * m + r, c);
        sum += cb * B.terms.at(betas[b]);
        out.C.emplace(betas[b], std::move(cb));
    }
    out.verified = sum == out.P_Wperp;
    if (!out.verified) out.status = Status::Infeasible;
    return out;
}

struct AnnihilatesWReport {
    bool holds = false;               // L[xi] w == 0 identically for every basis vector
    bool precondition_met = false;    // s >= 1
    std::vector<std::size_t> offending;  // indices of W vectors with L[xi] w != 0
};

inline AnnihilatesWReport verify_L_annihilates_W(const DiffOp& L, int s, const std::vector<Vec<Rational>>& W_basis) {
    AnnihilatesWReport out;
    out.precondition_met = s >= 1;
    const PolyMatrix ls = symbol(L);
    for (std::size_t i = 0; i < W_basis.size(); ++i) {
        const auto& w = W_basis[i];
        if (w.size() != L.d) throw std::invalid_argument("verify_L_annihilates_W: W vector length differs from L.d");
        for (std::size_t r = 0; r < ls.rows(); ++r) {
            Poly acc(L.N);
            for (std::size_t c = 0; c < ls.cols(); ++c) acc += ls(r, c) * w[c];
            if (!acc.is_zero()) {
                out.offending.push_back(i);
                break;
            }
        }
    }
    out.holds = out.offending.empty();
    return out;
}

}  // namespace symcheck
