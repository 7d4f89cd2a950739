#include <gtest/gtest.h>

#include <cmath>

#include "symcheck/numerics/experiments.hpp"
#include "symcheck/numerics/korn.hpp"
#include "symcheck/numerics/planewave.hpp"

using namespace symcheck;
using namespace symcheck::num;

namespace {

GridField field_from(const Grid& g, double (*f)(const double*)) {
    GridField out(g, 1);
    std::vector<double> x(g.N);
    for (std::size_t p = 0; p < g.points(); ++p) {
        g.point(p, x.data());
        out.values[p] = f(x.data());
    }
    return out;
}

OperatorPair korn(const DiffOp& ca, const DiffOp& a) { return {ca, a, PairMode::Korn}; }

}  // namespace

TEST(LpNorm, ConstantsAndZero) {
    const Grid g{Domain::Cube, 2, 16};
    GridField f(g, 2);
    for (std::size_t p = 0; p < g.points(); ++p) {
        f.at(p)[0] = 1.2;
        f.at(p)[1] = -1.6;
    }
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) EXPECT_NEAR(lp_norm(f, p), 2.0, 1e-13);
    EXPECT_EQ(lp_norm(GridField(g, 3), 2.0), 0.0);
    EXPECT_THROW(lp_norm(f, 0.5), std::invalid_argument);
}

TEST(LpNorm, SineOnTorus) {
    const Grid g{Domain::Torus, 1, 256};
    const auto f = field_from(g, [](const double* x) { return std::sin(kTwoPi * x[0]); });
    EXPECT_NEAR(lp_norm(f, 2.0), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(LpNorm, MidpointConvergesAtSecondOrder) {
    const double exact = std::sqrt(0.5 - std::sin(2.0) / 4.0);
    std::vector<double> err;
    for (std::size_t n : {64u, 128u, 256u}) {
        const Grid g{Domain::Cube, 1, n};
        err.push_back(std::abs(lp_norm(field_from(g, [](const double* x) { return std::sin(x[0]); }), 2.0) - exact));
    }
    EXPECT_GE(err[0] / err[1], 3.5);
    EXPECT_GE(err[1] / err[2], 3.5);
}

TEST(LpNorm, WeightsEnterSquared) {
    const Grid g{Domain::Torus, 2, 4};
    GridField f(g, 2);
    for (std::size_t p = 0; p < g.points(); ++p) {
        f.at(p)[0] = 1.0;
        f.at(p)[1] = 1.0;
    }
    EXPECT_NEAR(lp_norm(f, 2.0, {1.0, 2.0}), std::sqrt(3.0), 1e-14);
}

TEST(Trig, ParsevalAgreesWithQuadrature) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto u = random_trig_field(rng, 2, 3, 8, 5);
        const Grid g{Domain::Torus, 2, 64};
        EXPECT_NEAR(lp_norm(u.sample(g), 2.0), u.parseval_l2(), 1e-10 * u.parseval_l2());
    }
}

TEST(Trig, ApplyMatchesFiniteDifferences) {
    std::mt19937_64 rng(6);
    const auto u = random_trig_field(rng, 2, 1, 3, 3);
    const auto du = u.apply(NumericOp(catalog("gradient", 2)));
    const Grid g{Domain::Cube, 2, 8};
    const auto sampled = du.sample(g);
    const double h = 1e-5;
    std::vector<double> x(2);
    for (std::size_t p = 0; p < g.points(); ++p) {
        g.point(p, x.data());
        for (std::size_t j = 0; j < 2; ++j) {
            auto eval = [&](double shift) {
                std::vector<double> y = x;
                y[j] += shift;
                double acc = 0.0;
                for (const auto& m : u.modes) {
                    const double ph = kTwoPi * (m.m[0] * y[0] + m.m[1] * y[1]);
                    acc += (m.c(0) * std::polar(1.0, ph)).real();
                }
                return acc;
            };
            EXPECT_NEAR(sampled.at(p)[j], (eval(h) - eval(-h)) / (2 * h), 1e-4);
        }
    }
}

TEST(PlaneWave, DivergenceGradientFamily) {
    const auto pr = korn(catalog("divergence", 2), catalog("gradient", 2, 2));
    const auto w = find_witness(pr);
    ASSERT_TRUE(w.witness.has_value());
    const auto fam = make_family(pr, *w.witness, {1, 2});
    const Grid g{Domain::Torus, 2, 256};
    const auto zero = apply_op_planewave(pr.calA, fam, 1, g);
    EXPECT_TRUE(zero.symbolic_zero);
    for (double v : zero.field.values) EXPECT_EQ(v, 0.0);

    const auto n1 = apply_op_planewave(pr.A, fam, 1, g);
    EXPECT_FALSE(n1.symbolic_zero);
    // |A[xi] v| = |xi||v| = 1
    EXPECT_NEAR(n1.sup_before, kTwoPi, 1e-12);
    const auto n2 = apply_op_planewave(pr.A, fam, 2, g);
    EXPECT_NEAR(lp_norm(n2.field, 2.0) / lp_norm(n1.field, 2.0), 2.0, 1e-12);
}

TEST(PlaneWave, RejectsNonKernelVector) {
    const auto pr = korn(catalog("divergence", 2), catalog("gradient", 2, 2));
    Witness bad{{GaussianRational(1), GaussianRational(0)}, {GaussianRational(1), GaussianRational(0)}, {}, true};
    EXPECT_THROW(make_family(pr, bad, {1}), std::invalid_argument);
}

TEST(Blowup, RealWitnessSlopeAndIndependence) {
    const auto pr = korn(catalog("divergence", 2), catalog("gradient", 2, 2));
    const auto w = find_witness(pr).witness;
    ASSERT_TRUE(w.has_value());
    const auto rep = counterexample_blowup(pr, *w, {1, 2, 4, 8}, 256);
    EXPECT_EQ(rep.status, Outcome::Ok);
    EXPECT_EQ(rep.domain, Domain::Torus);
    ASSERT_TRUE(rep.slope_available);
    EXPECT_NEAR(rep.slope, 1.0, 0.05);
    EXPECT_EQ(rep.gram_rank, 4u);
    for (const auto& m : rep.modes) {
        EXPECT_TRUE(m.denominator_zero);
        EXPECT_GT(m.numerator, 0.0);
        EXPECT_EQ(m.ratio, Outcome::InfiniteRatio);
    }
    EXPECT_EQ(counterexample_blowup(pr, *w, {1}, 64).gram_rank, 1u);
    EXPECT_EQ(counterexample_blowup(pr, *w, {1, 8}, 32).status, Outcome::NyquistViolation);
}

TEST(Blowup, ComplexWitnessOnCube) {
    const OperatorPair pr{catalog("cauchy_riemann", 2), catalog("identity", 2, 2), PairMode::Sobolev};
    // Cauchy-Riemann lacks complex constant rank, so the witness is taken at the isotropic vector directly
    const auto w = witness_at(pr, {GaussianRational(1), GaussianRational::i_unit()});
    ASSERT_TRUE(w.has_value());
    EXPECT_FALSE(w->real);
    const auto rep = counterexample_blowup(pr, *w, {1, 2, 16}, 128);
    EXPECT_EQ(rep.status, Outcome::Ok);
    EXPECT_EQ(rep.domain, Domain::Cube);
    EXPECT_EQ(rep.dropped_modes, std::vector<int>{16});
    EXPECT_FALSE(rep.slope_available);
    for (const auto& m : rep.modes) {
        EXPECT_TRUE(m.denominator_zero);
        EXPECT_GT(m.numerator, 0.0);
        EXPECT_TRUE(std::isfinite(m.numerator));
    }
}

TEST(Korn, SymmetricGradientIsSqrtTwo) {
    for (std::size_t N : {2u, 3u}) {
        const auto est = korn_constant_p2(korn(catalog("sym_gradient", N), catalog("gradient", N, static_cast<int>(N))), 500, 20);
        EXPECT_EQ(est.status, Outcome::Ok);
        EXPECT_NEAR(est.constant, std::sqrt(2.0), 1e-6) << N;
    }
}

TEST(Korn, GradientIsOneAndMonotone) {
    const auto est = korn_constant_p2(korn(catalog("gradient", 2), catalog("gradient", 2)), 300, 10);
    EXPECT_NEAR(est.constant, 1.0, 1e-12);
    for (std::size_t i = 1; i < est.running_sup.size(); ++i) EXPECT_GE(est.running_sup[i], est.running_sup[i - 1]);
}

TEST(Korn, InclusionFailureIsUnbounded) {
    const auto est = korn_constant_p2(korn(catalog("divergence", 2), catalog("gradient", 2, 2)), 200, 5);
    EXPECT_EQ(est.status, Outcome::UnboundedSuspected);
}

TEST(Korn, QuotientNormMatchesBruteForce) {
    // direct maximization over v in the orthogonal complement of the kernel
    const NumericOp ca(catalog("sym_gradient", 2)), a(catalog("gradient", 2, 2));
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd xi(2);
        xi << normal_real(rng), normal_real(rng);
        const double q = num::detail::quotient_norm(ca, a, xi).value;
        double best = 0.0;
        for (int j = 0; j < 2000; ++j) {
            const double th = kTwoPi * j / 2000.0;
            Eigen::VectorXd v(2);
            v << std::cos(th), std::sin(th);
            best = std::max(best, (a.weighted_at<double>(xi) * v).norm() / (ca.weighted_at<double>(xi) * v).norm());
        }
        EXPECT_NEAR(q, best, 1e-5);
    }
}

TEST(BB, ConstraintAndFiniteness) {
    const auto rep = bb_ratio_experiment(1, 2, 100, 32, 11);
    EXPECT_EQ(rep.status, Outcome::Ok);
    EXPECT_EQ(rep.ratios.size(), 100u);
    EXPECT_TRUE(rep.all_finite);
    EXPECT_LE(rep.max_constraint_residual, 1e-12);
    EXPECT_GT(rep.max_ratio, 0.0);
    const auto rep2 = bb_ratio_experiment(2, 2, 20, 32, 11);
    EXPECT_LE(rep2.max_constraint_residual, 1e-12);
    EXPECT_EQ(bb_ratio_experiment(1, 1, 5, 32, 1).status, Outcome::InvalidInput);
}

TEST(BB, BumpVanishesOutsideSupport) {
    num::detail::Bump b{{0.5, 0.5}, {0.2, 0.2}};
    double grad[2];
    const double outside[2] = {0.1, 0.5};
    EXPECT_EQ(b.value(outside, grad), 0.0);
    EXPECT_EQ(grad[0], 0.0);
    const double inside[2] = {0.55, 0.45};
    const double h = 1e-6;
    const double plus[2] = {0.55 + h, 0.45}, minus[2] = {0.55 - h, 0.45};
    double tmp[2];
    b.value(inside, grad);
    EXPECT_NEAR(grad[0], (b.value(plus, tmp) - b.value(minus, tmp)) / (2 * h), 1e-6);
}

TEST(BB, Deterministic) {
    const auto a = bb_ratio_experiment(1, 2, 30, 32, 3);
    const auto b = bb_ratio_experiment(1, 2, 30, 32, 3);
    EXPECT_EQ(a.ratios, b.ratios);
    EXPECT_NE(a.ratios, bb_ratio_experiment(1, 2, 30, 32, 4).ratios);
}

TEST(Sobolev, BoundedExamples) {
    const OperatorPair eps{catalog("sym_gradient", 2), catalog("identity", 2, 2), PairMode::Sobolev};
    const auto r1 = sobolev_ratio_experiment(eps, 1.0, 60, 16, 1);
    EXPECT_EQ(r1.status, Outcome::Bounded);
    EXPECT_EQ(r1.s, 2);
    EXPECT_EQ(r1.degree_bound, 4);
    EXPECT_DOUBLE_EQ(r1.p_star, 2.0);
    EXPECT_LE(r1.gram_condition, kConditionLimit);

    const OperatorPair grad{catalog("gradient", 2), catalog("identity", 2), PairMode::Sobolev};
    const auto r2 = sobolev_ratio_experiment(grad, 1.0, 60, 16, 1);
    EXPECT_EQ(r2.status, Outcome::Bounded);
    EXPECT_EQ(r2.s, 1);
    EXPECT_EQ(r2.image_dim, 10u);
}

TEST(Sobolev, Guards) {
    const OperatorPair fails{catalog("divergence", 2), catalog("identity", 2, 2), PairMode::Sobolev};
    EXPECT_EQ(sobolev_ratio_experiment(fails, 1.0, 5, 16, 1).status, Outcome::InclusionFails);
    const OperatorPair korn_pair{catalog("gradient", 2), catalog("gradient", 2), PairMode::Korn};
    EXPECT_EQ(sobolev_ratio_experiment(korn_pair, 1.0, 5, 16, 1).status, Outcome::InvalidInput);
    const OperatorPair grad{catalog("gradient", 2), catalog("identity", 2), PairMode::Sobolev};
    EXPECT_EQ(sobolev_ratio_experiment(grad, 2.0, 5, 16, 1).status, Outcome::InvalidInput);
}
