#pragma once

#include <algorithm>

#include "symcheck/analysis/inclusion.hpp"
#include "symcheck/numerics/grid.hpp"

namespace symcheck::num {

inline constexpr int kComplexModeCap = 8;

/// u_n(x) = Re[v e^{2 pi i n xi.x}] for n in modes.
struct PlaneWaveFamily {
    std::vector<GaussianRational> xi_exact;
    std::vector<GaussianRational> v_exact;
    Eigen::VectorXcd xi;
    Eigen::VectorXcd v;
    std::vector<int> modes;
    bool sup_normalized = false;
    bool real = true;
};

inline Eigen::VectorXcd to_complex(const std::vector<GaussianRational>& z) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(z.size()));
    for (std::size_t i = 0; i < z.size(); ++i) out(static_cast<Eigen::Index>(i)) = cd(z[i].re.get_d(), z[i].im.get_d());
    return out;
}

/// Family built from a witness; calA[xi] v = 0 is re-checked exactly.
inline PlaneWaveFamily make_family(const OperatorPair& pair, const Witness& w, std::vector<int> modes) {
    if (!is_zero_vector(evaluate(symbol(pair.calA), w.xi).apply(w.v)))
        throw std::invalid_argument("make_family: v is not in the kernel of the symbol at xi");
    PlaneWaveFamily fam;
    fam.xi_exact = w.xi;
    fam.v_exact = w.v;
    fam.xi = to_complex(w.xi);
    fam.v = to_complex(w.v);
    fam.real = true;
    for (const auto& z : w.xi) fam.real &= z.is_real();
    fam.sup_normalized = !fam.real;
    fam.modes = std::move(modes);
    return fam;
}

struct PlaneWaveField {
    GridField field;
    bool symbolic_zero = false;
    double sup_before = 0.0;  // largest pointwise norm before normalization
};

/// op(u_n) in closed form: Re[(2 pi i n)^k op[xi] v e^{2 pi i n xi.x}].
/// A complex xi = a + ib contributes the real factor e^{-2 pi n b.x}.
inline PlaneWaveField apply_op_planewave(const DiffOp& op, const PlaneWaveFamily& fam, int n, const Grid& g) {
    if (op.N != g.N || op.d != static_cast<std::size_t>(fam.v.size()))
        throw std::invalid_argument("apply_op_planewave: dimension mismatch");
    PlaneWaveField out;
    out.field = GridField(g, op.l);
    const auto w_exact = evaluate(symbol(op), fam.xi_exact).apply(fam.v_exact);
    if (is_zero_vector(w_exact)) {
        out.symbolic_zero = true;
        return out;
    }
    const Eigen::VectorXcd w = std::pow(cd(0.0, kTwoPi * n), op.k) * to_complex(w_exact);
    const auto weights = weights_of(op);
    std::vector<double> x(g.N);
    for (std::size_t p = 0; p < g.points(); ++p) {
        g.point(p, x.data());
        cd phase(0.0, 0.0);
        for (std::size_t i = 0; i < g.N; ++i) phase += fam.xi(static_cast<Eigen::Index>(i)) * x[i];
        const cd e = std::exp(cd(0.0, kTwoPi * n) * phase);
        double* o = out.field.at(p);
        for (std::size_t j = 0; j < op.l; ++j) o[j] = (w(static_cast<Eigen::Index>(j)) * e).real();
        out.sup_before = std::max(out.sup_before, pointwise_norm(o, op.l, weights));
    }
    if (fam.sup_normalized && out.sup_before > 0.0)
        for (auto& val : out.field.values) val /= out.sup_before;
    return out;
}

/// The field u_n itself.
inline PlaneWaveField planewave(const PlaneWaveFamily& fam, int n, const Grid& g) {
    return apply_op_planewave(grad_power(0, static_cast<std::size_t>(fam.v.size()), g.N), fam, n, g);
}

struct ModeResult {
    int mode = 0;
    double numerator = 0.0;  // ||A u_n||_{L2}
    bool denominator_zero = false;
    Outcome ratio = Outcome::InfiniteRatio;
};

struct BlowupReport {
    Outcome status = Outcome::Ok;
    Domain domain = Domain::Torus;
    bool real = true;
    std::size_t n_grid = 0;
    std::vector<ModeResult> modes;
    std::vector<int> dropped_modes;  // complex witnesses keep modes <= kComplexModeCap
    bool slope_available = false;
    double slope = 0.0;
    std::size_t gram_rank = 0;
};

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Numerical rank of the Gram matrix of sampled fields.
inline std::size_t gram_rank(const std::vector<GridField>& fields, double rel_tol = 1e-10) {
    const auto m = static_cast<Eigen::Index>(fields.size());
    if (m == 0) return 0;
    Eigen::MatrixXd g(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) g(i, j) = g(j, i) = inner_product(fields[static_cast<std::size_t>(i)], fields[static_cast<std::size_t>(j)]);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < m; ++i)
        if (es.eigenvalues()(i) > rel_tol * top) ++r;
    return r;
}

inline BlowupReport counterexample_blowup(const OperatorPair& pair, const Witness& w, std::vector<int> modes,
                                          std::size_t n_grid) {
    BlowupReport rep;
    rep.n_grid = n_grid;
    if (modes.empty() || *std::min_element(modes.begin(), modes.end()) < 1) {
        rep.status = Outcome::InvalidInput;
        return rep;
    }
    auto fam = make_family(pair, w, {});
    rep.real = fam.real;
    if (!fam.real) {
        for (int m : modes) (m > kComplexModeCap ? rep.dropped_modes : fam.modes).push_back(m);
    } else {
        fam.modes = modes;
    }
    const int top = fam.modes.empty() ? 0 : *std::max_element(fam.modes.begin(), fam.modes.end());
    if (fam.modes.empty() || n_grid < 8 * static_cast<std::size_t>(top)) {
        rep.status = Outcome::NyquistViolation;
        return rep;
    }
    bool integral = fam.real;
    for (const auto& z : fam.xi_exact) integral &= z.re.get_den() == 1;
    rep.domain = integral ? Domain::Torus : Domain::Cube;
    const Grid g{rep.domain, pair.calA.N, n_grid};
    const auto wa = weights_of(pair.A);

    std::vector<GridField> us;
    std::vector<double> ns, norms;
    for (int n : fam.modes) {
        ModeResult mr;
        mr.mode = n;
        mr.denominator_zero = apply_op_planewave(pair.calA, fam, n, g).symbolic_zero;
        const auto num = apply_op_planewave(pair.A, fam, n, g);
        mr.numerator = num.symbolic_zero ? 0.0 : lp_norm(num.field, 2.0, wa);
        mr.ratio = mr.denominator_zero && mr.numerator > 0.0 ? Outcome::InfiniteRatio : Outcome::Ok;
        if (mr.numerator > 0.0) {
            ns.push_back(n);
            norms.push_back(mr.numerator);
        }
        rep.modes.push_back(mr);
        us.push_back(planewave(fam, n, g).field);
    }
    if (fam.real && ns.size() >= 2) {
        rep.slope_available = true;
        rep.slope = loglog_slope(ns, norms);
    }
    rep.gram_rank = gram_rank(us);
    return rep;
}

}  // namespace symcheck::num
