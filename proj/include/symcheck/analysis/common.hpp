#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "symcheck/diff_op.hpp"

namespace symcheck {

enum class Status {
    Ok,
    HypothesesNotMet,
    SMaxExceeded,
    SampleBudgetExceeded,
    NotInImage,
    Infeasible,
    DegenerateCharpoly,
    PreconditionViolated,
    InclusionFails,
};

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Ok: return "OK";
        case Status::HypothesesNotMet: return "HYPOTHESES_NOT_MET";
        case Status::SMaxExceeded: return "S_MAX_EXCEEDED";
        case Status::SampleBudgetExceeded: return "SAMPLE_BUDGET_EXCEEDED";
        case Status::NotInImage: return "NOT_IN_IMAGE";
        case Status::Infeasible: return "INFEASIBLE";
        case Status::DegenerateCharpoly: return "DEGENERATE_CHARPOLY";
        case Status::PreconditionViolated: return "PRECONDITION_VIOLATED";
        case Status::InclusionFails: return "INCLUSION_FAILS";
    }
    return "?";
}

/// Three-valued answer for properties that are only semi-decidable over R.
enum class Certainty { CertifiedYes, CertifiedNo, UncertifiedYes };

inline const char* to_string(Certainty c) {
    switch (c) {
        case Certainty::CertifiedYes: return "CERTIFIED_YES";
        case Certainty::CertifiedNo: return "CERTIFIED_NO";
        case Certainty::UncertifiedYes: return "UNCERTIFIED_YES";
    }
    return "?";
}

inline constexpr std::size_t kRealSampleBudget = 10000;

/// Nonzero primitive integer points of Z^N, ordered by sup-norm, then by
/// number of nonzero coordinates, then by number of negative coordinates,
/// then descending lexicographically. Starts (1,0,..), (0,1,..), ...
inline std::vector<std::vector<long>> integer_points(std::size_t N, std::size_t count) {
    std::vector<std::vector<long>> out;
    for (long R = 1; out.size() < count; ++R) {
        std::vector<std::vector<long>> shell;
        std::vector<long> p(N, -R);
        while (true) {
            const long sup = std::accumulate(p.begin(), p.end(), 0L, [](long a, long b) { return std::max(a, std::abs(b)); });
            long g = 0;
            for (long v : p) g = std::gcd(g, std::abs(v));
            if (sup == R && g == 1) shell.push_back(p);
            std::size_t i = 0;
            while (i < N && p[i] == R) p[i++] = -R;
            if (i == N) break;
            ++p[i];
        }
        auto key = [](const std::vector<long>& v) {
            int nnz = 0, neg = 0;
            for (long x : v) {
                nnz += x != 0;
                neg += x < 0;
            }
            return std::pair{nnz, neg};
        };
        std::sort(shell.begin(), shell.end(), [&](const auto& a, const auto& b) {
            const auto ka = key(a), kb = key(b);
            if (ka != kb) return ka < kb;
            return a > b;
        });
        for (auto& v : shell) {
            if (out.size() == count) break;
            out.push_back(std::move(v));
        }
        if (N == 0) break;
    }
    return out;
}

inline std::vector<Rational> to_rational(const std::vector<long>& v) {
    std::vector<Rational> r;
    r.reserve(v.size());
    for (long x : v) r.emplace_back(x);
    return r;
}

inline std::vector<GaussianRational> to_gaussian(const std::vector<Rational>& v) {
    return {v.begin(), v.end()};
}

/// Random nonzero integer vector with entries in [-R, R].
template <class Rng>
std::vector<Rational> random_integer_point(Rng& rng, std::size_t N, long R) {
    while (true) {
        std::vector<Rational> v;
        bool nz = false;
        for (std::size_t i = 0; i < N; ++i) {
            const long x = uniform_int(rng, -R, R);
            nz |= x != 0;
            v.emplace_back(x);
        }
        if (nz) return v;
    }
}

/// Rank of a polynomial matrix over Q(xi): the largest size with a nonzero minor.
inline std::size_t generic_rank(const PolyMatrix& s) {
    std::size_t rho = 0;
    const std::size_t cap = std::min(s.rows(), s.cols());
    while (rho < cap && !all_minors_vanish(s, rho + 1)) ++rho;
    return rho;
}

/// All size x size minors that use the last column of [S | e_i], as linear
/// functionals in w: every such minor of [S | w] equals sum_i w_i m_i(xi).
/// Returns the constraint matrix whose rows are the monomial coefficients
/// of those identities; its kernel is the set of w for which all minors
/// vanish identically.
inline Matrix<Rational> augmented_minor_constraints(const PolyMatrix& s, std::size_t size) {
    const std::size_t l = s.rows();
    std::vector<std::vector<Rational>> rows;
    if (size == 0 || size > std::min(l, s.cols() + 1)) return Matrix<Rational>(0, l);
    const auto row_sets = combinations(l, size);
    const auto col_sets = combinations(s.cols(), size - 1);
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) {
            // Laplace expansion along the appended column
            std::map<MultiIndex, std::vector<Rational>, GrlexLess> coeffs;
            for (std::size_t pos = 0; pos < rs.size(); ++pos) {
                std::vector<std::size_t> sub_rows;
                for (std::size_t q = 0; q < rs.size(); ++q)
                    if (q != pos) sub_rows.push_back(rs[q]);
                Poly cof = size == 1 ? Poly::constant(nvars(s), Rational(1)) : determinant(s.submatrix(sub_rows, cs));
                if ((pos + size - 1) % 2 == 1) cof = -cof;
                for (const auto& [m, c] : cof.terms()) {
                    auto& v = coeffs.try_emplace(m, std::vector<Rational>(l, Rational(0))).first->second;
                    v[rs[pos]] += c;
                }
            }
            for (auto& [m, v] : coeffs) rows.push_back(std::move(v));
        }
    if (rows.empty()) return Matrix<Rational>(0, l);
    return Matrix<Rational>::from_rows(rows);
}

}  // namespace symcheck
