#pragma once

#include <optional>

#include "symcheck/analysis/common.hpp"
#include "symcheck/groebner.hpp"

namespace symcheck {

struct RankProfile {
    std::size_t generic_rank = 0;  // rho
    std::size_t kernel_dim = 0;    // r = d - rho
    bool constant_rank_C = false;
    Certainty constant_rank_R = Certainty::UncertifiedYes;
    std::optional<std::vector<Rational>> real_rank_drop;  // xi with rank < rho
    std::size_t real_samples = 0;
};

/// First real integer point (in integer_points order) where the rank of the
/// symbol falls below `target`, searching at most `budget` points.
inline std::optional<std::vector<Rational>> find_real_rank_drop(const PolyMatrix& s, std::size_t target,
                                                                std::size_t budget, std::size_t* used = nullptr) {
    const auto pts = integer_points(nvars(s), budget);
    if (used) *used = pts.size();
    for (const auto& p : pts) {
        const auto xi = to_rational(p);
        if (rank(evaluate(s, xi)) < target) return xi;
    }
    return std::nullopt;
}

/// rho is raised from the rank at a random rational point while some
/// (rho+1)-minor is a nonzero polynomial.
inline RankProfile rank_profile(const DiffOp& op, std::uint64_t seed = 1, std::size_t real_budget = kRealSampleBudget) {
    RankProfile out;
    const PolyMatrix s = symbol(op);
    std::mt19937_64 rng(seed);
    std::size_t rho = rank(evaluate(s, random_integer_point(rng, op.N, 9)));
    const std::size_t cap = std::min(op.l, op.d);
    while (rho < cap) {
        const auto mu = first_nonzero_minor(s, rho + 1);
        if (!mu) break;
        // a point where mu does not vanish has rank >= rho + 1
        std::size_t next = rho + 1;
        for (const auto& p : integer_points(op.N, 1000)) {
            const auto xi = to_rational(p);
            if (mu->value.eval(xi) != 0) {
                next = std::max(next, rank(evaluate(s, xi)));
                break;
            }
        }
        rho = next;
    }
    out.generic_rank = rho;
    out.kernel_dim = op.d - rho;
    out.constant_rank_C = rho == 0 ? true : zero_dim_origin(minors(s, rho), op.N);
    if (rho == 0) {
        out.constant_rank_R = Certainty::CertifiedYes;
    } else if (out.constant_rank_C) {
        out.constant_rank_R = Certainty::CertifiedYes;
    } else if (auto xi = find_real_rank_drop(s, rho, real_budget, &out.real_samples)) {
        out.constant_rank_R = Certainty::CertifiedNo;
        out.real_rank_drop = std::move(xi);
    } else {
        out.constant_rank_R = Certainty::UncertifiedYes;
    }
    return out;
}

struct EllipticityVerdict {
    bool complex = false;
    Certainty real = Certainty::UncertifiedYes;
    std::optional<std::vector<Rational>> real_witness;  // real xi with non-injective symbol
};

/// Injectivity of the symbol on C^N \ {0} (exact) and R^N \ {0} (semi-decided).
inline EllipticityVerdict is_elliptic(const DiffOp& op, std::size_t real_budget = kRealSampleBudget) {
    EllipticityVerdict v;
    const PolyMatrix s = symbol(op);
    if (op.l < op.d) {
        v.real = Certainty::CertifiedNo;
        v.real_witness = to_rational(integer_points(op.N, 1).front());
        return v;
    }
    v.complex = !all_minors_vanish(s, op.d) && zero_dim_origin(minors(s, op.d), op.N);
    if (v.complex) {
        v.real = Certainty::CertifiedYes;
    } else if (auto xi = find_real_rank_drop(s, op.d, real_budget)) {
        v.real = Certainty::CertifiedNo;
        v.real_witness = std::move(xi);
    } else {
        v.real = Certainty::UncertifiedYes;
    }
    return v;
}

}  // namespace symcheck
