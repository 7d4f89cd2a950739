#pragma once

#include <limits>
#include <random>

#include "symcheck/numerics/grid.hpp"

namespace symcheck::num {

inline constexpr double kUnboundedThreshold = 1e6;
inline constexpr double kLeakageTolerance = 1e-8;

struct KornEstimate {
    Outcome status = Outcome::Ok;
    double constant = 0.0;
    std::vector<double> best_xi;
    std::size_t evaluations = 0;
    double max_leakage = 0.0;  // |A[xi] v| / |A[xi]| over unit v in ker calA[xi]
    std::vector<double> running_sup;
};

namespace detail {

struct QuotientNorm {
    double value = 0.0;
    double leakage = 0.0;
};

/// max |A[xi] v| / |calA[xi] v| over v orthogonal to ker calA[xi].
inline QuotientNorm quotient_norm(const NumericOp& ca, const NumericOp& a, const Eigen::VectorXd& xi) {
    const Eigen::MatrixXd s = ca.weighted_at<double>(xi);
    const Eigen::MatrixXd t = a.weighted_at<double>(xi);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > 1e-12 * std::max(smax, 1.0)) ++r;
    QuotientNorm q;
    const Eigen::Index d = s.cols();
    const double tnorm = t.size() ? Eigen::JacobiSVD<Eigen::MatrixXd>(t).singularValues()(0) : 0.0;
    if (r < d && tnorm > 0.0) {
        const Eigen::MatrixXd leak = t * svd.matrixV().rightCols(d - r);
        q.leakage = Eigen::JacobiSVD<Eigen::MatrixXd>(leak).singularValues()(0) / tnorm;
    }
    if (r == 0) {
        q.value = tnorm > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        return q;
    }
    Eigen::MatrixXd m = t * svd.matrixV().leftCols(r);
    for (Eigen::Index j = 0; j < r; ++j) m.col(j) /= sv(j);
    q.value = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
    return q;
}

}  // namespace detail

/// p = 2 torus constant: sup over unit real xi of the symbol quotient norm.
/// Random directions, then golden-section searches along great circles
/// through the incumbent; only improvements are accepted.
inline KornEstimate korn_constant_p2(const OperatorPair& pair, std::size_t samples = 2000, std::size_t refine_iters = 60,
                                     std::uint64_t seed = 1) {
    KornEstimate est;
    const NumericOp ca(pair.calA), a(pair.A);
    if (ca.N != a.N || ca.d != a.d) {
        est.status = Outcome::InvalidInput;
        return est;
    }
    const auto N = static_cast<Eigen::Index>(ca.N);
    std::mt19937_64 rng(seed);
    Eigen::VectorXd best = Eigen::VectorXd::Zero(N);
    double best_val = -1.0;
    auto eval = [&](const Eigen::VectorXd& xi) {
        ++est.evaluations;
        const auto q = detail::quotient_norm(ca, a, xi);
        est.max_leakage = std::max(est.max_leakage, q.leakage);
        return q.value;
    };
    auto consider = [&](const Eigen::VectorXd& xi, double val) {
        if (val > best_val) {
            best_val = val;
            best = xi;
        }
    };
    auto random_unit = [&]() {
        Eigen::VectorXd v(N);
        do {
            for (Eigen::Index i = 0; i < N; ++i) v(i) = normal_real(rng);
        } while (v.norm() < 1e-12);
        return Eigen::VectorXd(v / v.norm());
    };
    for (Eigen::Index i = 0; i < N; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
        e(i) = 1.0;
        consider(e, eval(e));
    }
    for (std::size_t t = 0; t < samples; ++t) {
        const auto xi = random_unit();
        consider(xi, eval(xi));
        if ((t + 1) % 100 == 0) est.running_sup.push_back(best_val);
    }
    if (N >= 2 && std::isfinite(best_val)) {
        constexpr double gr = 0.6180339887498949;
        double width = 0.5;
        for (std::size_t it = 0; it < refine_iters; ++it) {
            Eigen::VectorXd dir = random_unit();
            dir -= dir.dot(best) * best;
            if (dir.norm() < 1e-12) continue;
            dir /= dir.norm();
            const Eigen::VectorXd base = best;
            auto along = [&](double th) { return Eigen::VectorXd(std::cos(th) * base + std::sin(th) * dir); };
            double lo = -width, hi = width;
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = eval(along(x1)), f2 = eval(along(x2));
            for (int g = 0; g < 40; ++g) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = eval(along(x2));
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = eval(along(x1));
                }
            }
            consider(along(x1), f1);
            consider(along(x2), f2);
            width = std::max(width * 0.8, 1e-3);
        }
    }
    est.running_sup.push_back(best_val);
    est.constant = best_val;
    est.best_xi.assign(best.data(), best.data() + best.size());
    if (!std::isfinite(best_val) || best_val > kUnboundedThreshold || est.max_leakage > kLeakageTolerance)
        est.status = Outcome::UnboundedSuspected;
    return est;
}

}  // namespace symcheck::num
