#pragma once

#include <algorithm>
#include <random>

#include "symcheck/analysis/factorization.hpp"
#include "symcheck/analysis/lift.hpp"
#include "symcheck/numerics/grid.hpp"

namespace symcheck::num {

inline constexpr double kConditionLimit = 1e12;
inline constexpr double kStabilityTolerance = 0.10;

struct BBReport {
    Outcome status = Outcome::Ok;
    int k = 1;
    std::size_t N = 2;
    std::size_t trials = 0;
    std::size_t n_grid = 0;
    std::uint64_t seed = 0;
    std::vector<double> ratios;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    double max_constraint_residual = 0.0;  // |sum_beta s_beta c_beta| / (|s| |c|), per frequency
    bool all_finite = true;
};

namespace detail {

/// Smooth bump prod_i exp(-1/(1 - u_i^2)), u_i = (x_i - c_i)/r_i, and its gradient.
struct Bump {
    std::vector<double> c, r;

    double value(const double* x, double* grad) const {
        const std::size_t N = c.size();
        std::vector<double> f(N), df(N);
        for (std::size_t i = 0; i < N; ++i) {
            const double u = (x[i] - c[i]) / r[i];
            if (std::abs(u) >= 1.0) {
                for (std::size_t j = 0; j < N; ++j) grad[j] = 0.0;
                return 0.0;
            }
            const double q = 1.0 - u * u;
            f[i] = std::exp(-1.0 / q);
            df[i] = f[i] * (-2.0 * u / (q * q)) / r[i];
        }
        double b = 1.0;
        for (double v : f) b *= v;
        for (std::size_t j = 0; j < N; ++j) {
            double g = df[j];
            for (std::size_t i = 0; i < N; ++i)
                if (i != j) g *= f[i];
            grad[j] = g;
        }
        return b;
    }
};

}  // namespace detail

/// |int v.phi| / (|v|_{L1} |D phi|_{L^N}) for random v with div^k v = 0 on the
/// torus and random phi = bump * (a + trig) supported in the open cube.
inline BBReport bb_ratio_experiment(int k, std::size_t N, std::size_t trials, std::size_t n_grid, std::uint64_t seed) {
    BBReport rep;
    rep.k = k;
    rep.N = N;
    rep.trials = trials;
    rep.n_grid = n_grid;
    rep.seed = seed;
    if (N < 2 || k < 1 || n_grid < 8) {
        rep.status = Outcome::InvalidInput;
        return rep;
    }
    const auto betas = multi_indices_of_degree(N, k);
    const std::size_t M = betas.size();
    const Grid g{Domain::Torus, N, n_grid};
    const std::size_t P = g.points();
    const int band = std::max<int>(1, static_cast<int>(n_grid / 8));
    std::mt19937_64 rng(seed);
    std::vector<double> x(N), grad(N);

    for (std::size_t t = 0; t < trials; ++t) {
        // v with per-frequency projection onto ker of s(m) = ((2 pi i m)^beta)_beta
        TrigField v{N, M, {}};
        const auto freqs = random_frequencies(rng, N, band, static_cast<std::size_t>(uniform_int(rng, 1, 4)));
        for (const auto& m : freqs) {
            Eigen::VectorXcd s(static_cast<Eigen::Index>(M));
            const cd base = std::pow(cd(0.0, kTwoPi), k);
            for (std::size_t b = 0; b < M; ++b) {
                double mono = 1.0;
                for (std::size_t i = 0; i < N; ++i) mono *= std::pow(static_cast<double>(m[i]), betas[b][i]);
                s(static_cast<Eigen::Index>(b)) = base * mono;
            }
            Eigen::VectorXcd c(static_cast<Eigen::Index>(M));
            for (std::size_t b = 0; b < M; ++b) {
                const double re = normal_real(rng);
                const double im = normal_real(rng);
                c(static_cast<Eigen::Index>(b)) = cd(re, im);
            }
            const cd sc = (s.transpose() * c)(0);
            c -= s.conjugate() * (sc / s.squaredNorm());
            const double resid = std::abs((s.transpose() * c)(0)) / (s.norm() * c.norm());
            rep.max_constraint_residual = std::max(rep.max_constraint_residual, resid);
            v.modes.push_back({m, std::move(c)});
        }
        const GridField vf = v.sample(g);

        detail::Bump bump;
        for (std::size_t i = 0; i < N; ++i) {
            const double c = 0.3 + 0.4 * uniform_real(rng);
            const double rmax = std::min(c, 1.0 - c);
            bump.c.push_back(c);
            bump.r.push_back(rmax * (0.4 + 0.6 * uniform_real(rng)));
        }
        std::vector<double> a(M);
        Eigen::VectorXcd e(static_cast<Eigen::Index>(M));
        for (std::size_t b = 0; b < M; ++b) {
            a[b] = normal_real(rng);
            const double re = normal_real(rng);
            const double im = normal_real(rng);
            e(static_cast<Eigen::Index>(b)) = cd(re, im);
        }
        std::vector<int> q(N);
        for (auto& qi : q) qi = static_cast<int>(uniform_int(rng, -3, 3));

        double integral = 0.0, l1 = 0.0, lN = 0.0;
        for (std::size_t p = 0; p < P; ++p) {
            g.point(p, x.data());
            const double* vv = vf.at(p);
            l1 += pointwise_norm(vv, M, {});
            const double b = bump.value(x.data(), grad.data());
            if (b == 0.0) continue;
            double phase = 0.0;
            for (std::size_t i = 0; i < N; ++i) phase += q[i] * x[i];
            const cd ex = std::polar(1.0, kTwoPi * phase);
            double dphi2 = 0.0;
            for (std::size_t bi = 0; bi < M; ++bi) {
                const cd w = e(static_cast<Eigen::Index>(bi)) * ex;
                const double tb = a[bi] + w.real();
                integral += vv[bi] * b * tb;
                for (std::size_t j = 0; j < N; ++j) {
                    const double dt = (cd(0.0, kTwoPi * q[j]) * w).real();
                    const double d = grad[j] * tb + b * dt;
                    dphi2 += d * d;
                }
            }
            lN += std::pow(dphi2, static_cast<double>(N) / 2.0);
        }
        integral /= static_cast<double>(P);
        l1 /= static_cast<double>(P);
        const double dphi = std::pow(lN / static_cast<double>(P), 1.0 / static_cast<double>(N));
        const double den = l1 * dphi;
        const double ratio = den > 0.0 ? std::abs(integral) / den : 0.0;
        rep.all_finite &= std::isfinite(ratio);
        rep.ratios.push_back(ratio);
    }
    for (double r : rep.ratios) {
        rep.max_ratio = std::max(rep.max_ratio, r);
        rep.mean_ratio += r;
    }
    if (!rep.ratios.empty()) rep.mean_ratio /= static_cast<double>(rep.ratios.size());
    return rep;
}

struct SobolevReport {
    Outcome status = Outcome::Ok;
    double p = 1.0;
    double p_star = 0.0;
    std::size_t trials = 0;
    std::size_t grid = 0;
    std::uint64_t seed = 0;
    int s = -1;
    int degree_bound = -1;
    std::size_t quotient_dim = 0;
    std::size_t image_dim = 0;  // independent fields A q, q in the quotient basis
    double gram_condition = 0.0;
    std::vector<double> ratios;
    std::vector<double> ratios_refined;
    double max_ratio = 0.0;
    double max_ratio_refined = 0.0;
};

namespace detail {

struct NumericPoly {
    std::vector<std::pair<std::vector<int>, double>> terms;

    double operator()(const double* x) const {
        double acc = 0.0;
        for (const auto& [e, c] : terms) {
            double m = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int j = 0; j < e[i]; ++j) m *= x[i];
            acc += m;
        }
        return acc;
    }
};

inline NumericPoly to_numeric(const Poly& p) {
    NumericPoly out;
    for (const auto& [m, c] : p.terms()) out.terms.emplace_back(m.to_vector(), c.get_d());
    return out;
}

/// Independent images A q of the centered quotient basis prod (2 x_i - 1)^gamma_i e_j.
inline std::vector<std::vector<Poly>> quotient_images(const DiffOp& A, const QuotientSpec& q) {
    const std::size_t N = A.N;
    std::vector<std::vector<Poly>> images;
    for (const auto& gamma : q.monomials) {
        Poly base = Poly::constant(N, Rational(1));
        for (std::size_t i = 0; i < N; ++i) {
            const Poly shifted = Poly::variable(N, i) * Rational(2) - Poly::constant(N, Rational(1));
            base = base * shifted.pow(static_cast<unsigned>(gamma[i]));
        }
        for (std::size_t j = 0; j < A.d; ++j) {
            std::vector<Poly> field(A.d, Poly(N));
            field[j] = base;
            auto img = apply_op(A, field);
            bool nz = false;
            for (const auto& c : img) nz |= !c.is_zero();
            if (nz) images.push_back(std::move(img));
        }
    }
    if (images.empty()) return images;
    const auto monos = multi_indices_up_to(N, q.degree_bound);
    const std::size_t dim = monos.size() * A.l;
    std::vector<Vec<Rational>> coeffs;
    for (const auto& img : images) {
        Vec<Rational> v(dim, Rational(0));
        for (std::size_t i = 0; i < A.l; ++i)
            for (std::size_t m = 0; m < monos.size(); ++m) v[i * monos.size() + m] = img[i].coefficient(monos[m]);
        coeffs.push_back(std::move(v));
    }
    const auto e = bareiss_echelon(Matrix<Rational>::from_columns(coeffs, dim));
    std::vector<std::vector<Poly>> out;
    for (auto c : e.pivot_cols) out.push_back(images[c]);
    return out;
}

struct QuotientProjector {
    Grid grid;
    std::size_t l = 0;
    Eigen::MatrixXd phi;  // (points * l) x r, rows scaled by sqrt(weight)
    Eigen::LDLT<Eigen::MatrixXd> gram;
    double condition = 0.0;

    QuotientProjector(const Grid& g, const std::vector<std::vector<Poly>>& images, const std::vector<double>& weights,
                      std::size_t l_out)
        : grid(g), l(l_out) {
        const auto P = static_cast<Eigen::Index>(g.points());
        const auto r = static_cast<Eigen::Index>(images.size());
        phi = Eigen::MatrixXd::Zero(P * static_cast<Eigen::Index>(l), r);
        std::vector<double> x(g.N);
        for (Eigen::Index c = 0; c < r; ++c) {
            std::vector<NumericPoly> comps;
            for (const auto& p : images[static_cast<std::size_t>(c)]) comps.push_back(to_numeric(p));
            for (Eigen::Index p = 0; p < P; ++p) {
                g.point(static_cast<std::size_t>(p), x.data());
                for (std::size_t i = 0; i < l; ++i) {
                    const double w = weights.empty() ? 1.0 : std::sqrt(weights[i]);
                    phi(p * static_cast<Eigen::Index>(l) + static_cast<Eigen::Index>(i), c) = w * comps[i](x.data());
                }
            }
        }
        if (r == 0) return;
        const Eigen::MatrixXd G = phi.transpose() * phi / static_cast<double>(P);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
        const double lo = es.eigenvalues().minCoeff();
        condition = lo > 0.0 ? es.eigenvalues().maxCoeff() / lo : std::numeric_limits<double>::infinity();
        gram.compute(G);
    }

    /// f minus its L2-orthogonal projection onto span(phi); f is weighted in place first.
    GridField residual(const GridField& f, const std::vector<double>& weights) const {
        const auto n = static_cast<Eigen::Index>(f.values.size());
        Eigen::VectorXd y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double w = weights.empty() ? 1.0 : std::sqrt(weights[static_cast<std::size_t>(i) % l]);
            y(i) = w * f.values[static_cast<std::size_t>(i)];
        }
        GridField out = f;
        if (phi.cols() > 0) {
            const Eigen::VectorXd c = gram.solve(phi.transpose() * y / static_cast<double>(grid.points()));
            y -= phi * c;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            const double w = weights.empty() ? 1.0 : std::sqrt(weights[static_cast<std::size_t>(i) % l]);
            out.values[static_cast<std::size_t>(i)] = y(i) / w;
        }
        return out;
    }
};

}  // namespace detail

/// inf_{v in Q} |A(u - v)|_{L^{p*}} / |calA u|_{L^p} for random band-limited u on
/// the cube, with the infimum replaced by the L2 projection onto A(Q).
/// BOUNDED when the maximum agrees within 10% between grid and 2 * grid.
inline SobolevReport sobolev_ratio_experiment(const OperatorPair& pair, double p, std::size_t trials, std::size_t grid,
                                              std::uint64_t seed, int s_max = kDefaultSMax) {
    SobolevReport rep;
    rep.p = p;
    rep.trials = trials;
    rep.grid = grid;
    rep.seed = seed;
    const auto N = static_cast<double>(pair.calA.N);
    if (pair.mode != PairMode::Sobolev || !(p >= 1.0) || !(p < N) || grid < 8) {
        rep.status = Outcome::InvalidInput;
        return rep;
    }
    rep.p_star = N * p / (N - p);
    const auto cert = construct_L(pair, s_max, seed);
    switch (cert.status) {
        case symcheck::Status::Ok: break;
        case symcheck::Status::HypothesesNotMet: rep.status = Outcome::HypothesesNotMet; return rep;
        case symcheck::Status::InclusionFails: rep.status = Outcome::InclusionFails; return rep;
        case symcheck::Status::SMaxExceeded: rep.status = Outcome::SMaxExceeded; return rep;
        default: rep.status = Outcome::InvalidInput; return rep;
    }
    rep.s = cert.s;
    const auto q = quotient_spec(pair, cert.s);
    rep.degree_bound = q.degree_bound;
    rep.quotient_dim = q.dimension();
    const auto images = detail::quotient_images(pair.A, q);
    rep.image_dim = images.size();

    const NumericOp ca(pair.calA), a(pair.A);
    const auto wc = weights_of(pair.calA), wa = weights_of(pair.A);
    const int band = std::max<int>(1, static_cast<int>(grid / 8));
    double worst_condition = 0.0;
    auto run = [&](std::size_t n, std::vector<double>& out) {
        const Grid g{Domain::Cube, pair.calA.N, n};
        const detail::QuotientProjector proj(g, images, wa, pair.A.l);
        worst_condition = std::max(worst_condition, proj.condition);
        if (proj.condition > kConditionLimit) return false;
        std::mt19937_64 rng(seed);
        for (std::size_t t = 0; t < trials; ++t) {
            const auto u = random_trig_field(rng, pair.calA.N, pair.calA.d, band, static_cast<std::size_t>(uniform_int(rng, 1, 4)));
            const double den = lp_norm(u.apply(ca).sample(g), p, wc);
            const double num = lp_norm(proj.residual(u.apply(a).sample(g), wa), rep.p_star, wa);
            out.push_back(den > 0.0 ? num / den : (num < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity()));
        }
        return true;
    };
    const bool ok = run(grid, rep.ratios) && run(2 * grid, rep.ratios_refined);
    rep.gram_condition = worst_condition;
    if (!ok) {
        rep.status = Outcome::IllConditionedQuotient;
        return rep;
    }
    for (double r : rep.ratios) rep.max_ratio = std::max(rep.max_ratio, r);
    for (double r : rep.ratios_refined) rep.max_ratio_refined = std::max(rep.max_ratio_refined, r);
    const bool finite = std::isfinite(rep.max_ratio) && std::isfinite(rep.max_ratio_refined);
    const bool stable = finite && std::abs(rep.max_ratio - rep.max_ratio_refined) <= kStabilityTolerance * rep.max_ratio_refined;
    rep.status = stable ? Outcome::Bounded : Outcome::Unstable;
    return rep;
}

}  // namespace symcheck::num
