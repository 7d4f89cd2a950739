#pragma once

#include <map>

#include "symcheck/analysis/inclusion.hpp"
#include "symcheck/groebner.hpp"

namespace symcheck {

inline constexpr int kDefaultSMax = 6;

struct FactorizationCertificate {
    Status status = Status::Ok;  // Ok, HypothesesNotMet, InclusionFails or SMaxExceeded
    int s = -1;
    DiffOp L;
    bool verified = false;
};

/// Smallest s <= s_max with D^s o A = L o calA. Each row xi^beta A_i[xi] is
/// represented in the row module of calA[xi]; L keeps the degree-matched
/// homogeneous part of the coefficients. Rows of L follow grad_power:
/// tuple_index * l_A + i.
inline FactorizationCertificate construct_L(const OperatorPair& pair, int s_max = kDefaultSMax,
                                            std::uint64_t seed = 1) {
    FactorizationCertificate out;
    const auto verdict = kernel_inclusion(pair, seed);
    if (verdict.status != Status::Ok) {
        out.status = verdict.status;
        return out;
    }
    if (!verdict.holds) {
        out.status = Status::InclusionFails;
        return out;
    }
    const DiffOp& ca = pair.calA;
    const DiffOp& a = pair.A;
    const std::size_t N = ca.N;
    const PolyMatrix sc = symbol(ca);
    const PolyMatrix sa = symbol(a);

    std::vector<ModuleElement> gens;
    for (std::size_t j = 0; j < ca.l; ++j) gens.push_back(sc.row(j));
    const ModuleMembership module(gens, N, ca.d);

    for (int s = 0; s <= s_max; ++s) {
        const int deg_l = s + a.k - ca.k;
        if (deg_l < 0) continue;
        // coefficients for each distinct beta (tuples with equal counts give equal rows)
        std::map<std::pair<std::vector<int>, std::size_t>, std::vector<Poly>> reps;
        bool ok = true;
        for (const auto& beta : multi_indices_of_degree(N, s)) {
            for (std::size_t i = 0; i < a.l && ok; ++i) {
                ModuleElement target = sa.row(i);
                for (auto& p : target) p = p.mul_term(beta, Rational(1));
                auto q = module.represent(target);
                if (!q) {
                    ok = false;
                    break;
                }
                for (auto& p : *q) p = p.homogeneous_part(deg_l);
                reps.emplace(std::pair{beta.to_vector(), i}, std::move(*q));
            }
            if (!ok) break;
        }
        if (!ok) continue;
        const auto tuples = ordered_tuples(N, s);
        PolyMatrix lsym = make_poly_matrix(tuples.size() * a.l, ca.l, N);
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            const auto beta = tuple_to_multi_index(N, tuples[t]).to_vector();
            for (std::size_t i = 0; i < a.l; ++i) {
                const auto& q = reps.at({beta, i});
                for (std::size_t j = 0; j < ca.l; ++j) lsym(t * a.l + i, j) = q[j];
            }
        }
        out.L = from_symbol("L", lsym, deg_l);
        out.s = s;
        out.verified = symbol(compose(grad_power(s, a.l, N), a)) == lsym * sc;
        out.status = Status::Ok;
        return out;
    }
    out.status = Status::SMaxExceeded;
    return out;
}

/// R^d-valued polynomials of degree at most s + k + 1.
struct QuotientSpec {
    int degree_bound = 0;
    std::size_t N = 0;
    std::size_t d = 0;
    std::vector<MultiIndex> monomials;  // x^gamma, |gamma| <= degree_bound
    std::size_t dimension() const { return d * monomials.size(); }
};

inline QuotientSpec quotient_spec(std::size_t N, std::size_t d, int k, int s) {
    QuotientSpec q;
    q.degree_bound = s + k + 1;
    q.N = N;
    q.d = d;
    q.monomials = multi_indices_up_to(N, q.degree_bound);
    return q;
}

inline QuotientSpec quotient_spec(const OperatorPair& pair, int s) {
    return quotient_spec(pair.calA.N, pair.calA.d, pair.calA.k, s);
}

/// Whether the polynomial field lies in the span of the quotient basis.
inline bool quotient_contains(const QuotientSpec& q, const std::vector<Poly>& field) {
    if (field.size() != q.d) return false;
    for (const auto& p : field)
        if (p.degree() > q.degree_bound) return false;
    return true;
}

}  // namespace symcheck
