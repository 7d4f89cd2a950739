#pragma once

#include <optional>

#include "symcheck/analysis/rank.hpp"

namespace symcheck {

struct InclusionVerdict {
    Status status = Status::Ok;  // Ok or HypothesesNotMet
    bool holds = false;          // meaningful only when status == Ok
    bool minors_vanish = false;  // every (rho+1)-minor of [calA; A] is the zero polynomial
    std::size_t minor_size = 0;
    std::size_t minors_checked = 0;
    std::optional<Minor> nonzero_minor;
    RankProfile profile;
};

/// ker calA[xi] within ker A[xi] for every xi in C^N \ {0}. Under constant
/// rank rho this fails somewhere iff the stacked symbol has a nonzero
/// (rho+1)-minor, and a homogeneous polynomial vanishing off the origin is zero.
inline InclusionVerdict kernel_inclusion(const OperatorPair& pair, std::uint64_t seed = 1) {
    pair.validate();
    InclusionVerdict v;
    v.profile = rank_profile(pair.calA, seed);
    const std::size_t rho = v.profile.generic_rank;
    // orders may differ (sobolev mode); each minor is still homogeneous
    const PolyMatrix stacked = PolyMatrix::stack(symbol(pair.calA), symbol(pair.A));
    v.minor_size = rho + 1;
    if (rho + 1 <= std::min(stacked.rows(), stacked.cols())) {
        v.minors_vanish = true;
        for_each_minor(stacked, rho + 1, [&](const Minor& mi) {
            ++v.minors_checked;
            if (mi.value.is_zero()) return true;
            v.minors_vanish = false;
            v.nonzero_minor = mi;
            return false;
        });
    } else {
        v.minors_vanish = true;
    }
    if (!v.profile.constant_rank_C) {
        v.status = Status::HypothesesNotMet;
        return v;
    }
    v.holds = v.minors_vanish;
    return v;
}

struct Witness {
    std::vector<GaussianRational> xi;
    std::vector<GaussianRational> v;
    std::vector<GaussianRational> residual;  // A[xi] v
    bool real = false;
};

/// Exact witness at a given frequency: a kernel vector of calA[xi] not
/// annihilated by A[xi], if there is one.
inline std::optional<Witness> witness_at(const OperatorPair& pair, const std::vector<GaussianRational>& xi) {
    const auto ca = evaluate(symbol(pair.calA), xi);
    const auto a = evaluate(symbol(pair.A), xi);
    for (auto& v : kernel_basis(ca)) {
        auto res = a.apply(v);
        if (is_zero_vector(res)) continue;
        Witness w{xi, std::move(v), std::move(res), true};
        for (const auto& z : w.xi) w.real &= z.is_real();
        for (const auto& z : w.v) w.real &= z.is_real();
        return w;
    }
    return std::nullopt;
}

struct WitnessSearch {
    Status status = Status::Ok;  // Ok or SampleBudgetExceeded
    std::optional<Witness> witness;
    std::optional<Minor> minor;
    std::size_t real_tried = 0;
    std::size_t complex_tried = 0;
};

/// Deterministic real search over integer_points, then seeded complex
/// sampling with coordinates in {-R..R} + i{-R..R}, R doubling every 1000 failures.
inline WitnessSearch find_witness(const OperatorPair& pair, std::uint64_t seed = 1, std::size_t real_budget = 2000,
                                  std::size_t complex_budget = 10000) {
    WitnessSearch out;
    const auto verdict = kernel_inclusion(pair, seed);
    out.minor = verdict.nonzero_minor;
    if (verdict.status != Status::Ok || verdict.holds) {
        out.status = verdict.status == Status::Ok ? Status::PreconditionViolated : verdict.status;
        return out;
    }
    for (const auto& p : integer_points(pair.calA.N, real_budget)) {
        ++out.real_tried;
        if (auto w = witness_at(pair, to_gaussian(to_rational(p)))) {
            out.witness = std::move(w);
            return out;
        }
    }
    std::mt19937_64 rng(seed);
    long R = 2;
    for (std::size_t t = 0; t < complex_budget; ++t) {
        if (t > 0 && t % 1000 == 0) R *= 2;
        ++out.complex_tried;
        std::vector<GaussianRational> xi;
        bool nz = false;
        for (std::size_t i = 0; i < pair.calA.N; ++i) {
            GaussianRational z{Rational(uniform_int(rng, -R, R)), Rational(uniform_int(rng, -R, R))};
            nz |= !is_zero(z);
            xi.push_back(std::move(z));
        }
        if (!nz) continue;
        if (out.minor && is_zero(to_gaussian(out.minor->value).eval(xi))) continue;
        if (auto w = witness_at(pair, xi)) {
            out.witness = std::move(w);
            return out;
        }
    }
    out.status = Status::SampleBudgetExceeded;
    return out;
}

}  // namespace symcheck
