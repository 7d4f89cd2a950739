#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcheck/diff_op.hpp"

namespace symcheck::num {

using cd = std::complex<double>;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class Outcome {
    Ok,
    Bounded,
    Unstable,
    UnboundedSuspected,
    InfiniteRatio,
    NyquistViolation,
    IllConditionedQuotient,
    InclusionFails,
    HypothesesNotMet,
    SMaxExceeded,
    InvalidInput,
};

inline std::string to_string(Outcome s) {
    switch (s) {
        case Outcome::Ok: return "OK";
        case Outcome::Bounded: return "BOUNDED";
        case Outcome::Unstable: return "UNSTABLE";
        case Outcome::UnboundedSuspected: return "UNBOUNDED_SUSPECTED";
        case Outcome::InfiniteRatio: return "INFINITE_RATIO";
        case Outcome::NyquistViolation: return "NYQUIST_VIOLATION";
        case Outcome::IllConditionedQuotient: return "ILL_CONDITIONED_QUOTIENT";
        case Outcome::InclusionFails: return "INCLUSION_FAILS";
        case Outcome::HypothesesNotMet: return "HYPOTHESES_NOT_MET";
        case Outcome::SMaxExceeded: return "S_MAX_EXCEEDED";
        case Outcome::InvalidInput: return "INVALID_INPUT";
    }
    return "UNKNOWN";
}

enum class Domain { Torus, Cube };

inline std::string to_string(Domain d) { return d == Domain::Torus ? "torus" : "cube"; }

/// Uniform grid: torus nodes j/n, cube cell midpoints (j + 1/2)/n.
struct Grid {
    Domain domain = Domain::Torus;
    std::size_t N = 2;
    std::size_t n = 64;

    std::size_t points() const {
        std::size_t p = 1;
        for (std::size_t i = 0; i < N; ++i) p *= n;
        return p;
    }
    double coordinate(std::size_t j) const {
        const double off = domain == Domain::Torus ? 0.0 : 0.5;
        return (static_cast<double>(j) + off) / static_cast<double>(n);
    }
    /// Coordinates of a flat index; axis 0 varies slowest.
    void point(std::size_t idx, double* x) const {
        for (std::size_t i = N; i-- > 0;) {
            x[i] = coordinate(idx % n);
            idx /= n;
        }
    }
};

/// Samples of an R^d-valued field, point-major.
struct GridField {
    Grid grid;
    std::size_t d = 1;
    std::vector<double> values;

    GridField() = default;
    GridField(Grid g, std::size_t dim) : grid(g), d(dim), values(g.points() * dim, 0.0) {}
    double* at(std::size_t p) { return values.data() + p * d; }
    const double* at(std::size_t p) const { return values.data() + p * d; }
};

/// Euclidean norm with optional per-component weights (|v|^2 = sum w_i v_i^2).
inline double pointwise_norm(const double* v, std::size_t d, const std::vector<double>& weights) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += (weights.empty() ? 1.0 : weights[i]) * v[i] * v[i];
    return std::sqrt(s);
}

/// Midpoint/trapezoid quadrature of |f|^p over the unit domain, then the p-th root.
inline double lp_norm(const GridField& f, double p, const std::vector<double>& weights = {}) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be at least 1");
    if (!weights.empty() && weights.size() != f.d) throw std::invalid_argument("lp_norm: weight count differs from d");
    const std::size_t P = f.grid.points();
    double acc = 0.0;
    for (std::size_t i = 0; i < P; ++i) acc += std::pow(pointwise_norm(f.at(i), f.d, weights), p);
    return std::pow(acc / static_cast<double>(P), 1.0 / p);
}

inline double inner_product(const GridField& a, const GridField& b) {
    if (a.values.size() != b.values.size()) throw std::invalid_argument("inner_product: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
    return acc / static_cast<double>(a.grid.points());
}

inline std::vector<double> weights_of(const DiffOp& op) {
    std::vector<double> w;
    for (const auto& r : op.weights) w.push_back(r.get_d());
    return w;
}

/// Floating-point copy of an operator's coefficients.
struct NumericOp {
    std::size_t N = 0, l = 0, d = 0;
    int k = 0;
    std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> terms;
    std::vector<double> weights;

    NumericOp() = default;
    explicit NumericOp(const DiffOp& op) : N(op.N), l(op.l), d(op.d), k(op.k), weights(weights_of(op)) {
        for (const auto& [alpha, m] : op.terms) {
            Eigen::MatrixXd a(m.rows(), m.cols());
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
            terms.emplace_back(alpha.to_vector(), std::move(a));
        }
    }

    /// Symbol sum_alpha A_alpha xi^alpha; T is double or complex<double>.
    template <class T>
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> at(const Eigen::Matrix<T, Eigen::Dynamic, 1>& xi) const {
        Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> s =
            Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Zero(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(d));
        for (const auto& [alpha, m] : terms) {
            T mono(1);
            for (std::size_t i = 0; i < N; ++i)
                for (int e = 0; e < alpha[i]; ++e) mono *= xi(static_cast<Eigen::Index>(i));
            s += m.template cast<T>() * mono;
        }
        return s;
    }

    /// Rows scaled by sqrt(weight), so Euclidean norms match the weighted norm.
    template <class T>
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> weighted_at(const Eigen::Matrix<T, Eigen::Dynamic, 1>& xi) const {
        auto s = at<T>(xi);
        if (!weights.empty())
            for (std::size_t r = 0; r < l; ++r) s.row(static_cast<Eigen::Index>(r)) *= std::sqrt(weights[r]);
        return s;
    }
};

/// Real field sum_m Re[c_m e^{2 pi i m.x}].
struct TrigMode {
    std::vector<int> m;
    Eigen::VectorXcd c;
};

struct TrigField {
    std::size_t N = 2;
    std::size_t d = 1;
    std::vector<TrigMode> modes;

    GridField sample(const Grid& g) const {
        if (g.N != N) throw std::invalid_argument("TrigField::sample: dimension mismatch");
        GridField f(g, d);
        std::vector<double> x(N);
        for (std::size_t p = 0; p < g.points(); ++p) {
            g.point(p, x.data());
            double* out = f.at(p);
            for (const auto& mode : modes) {
                double phase = 0.0;
                for (std::size_t i = 0; i < N; ++i) phase += mode.m[i] * x[i];
                const cd e = std::polar(1.0, kTwoPi * phase);
                for (std::size_t j = 0; j < d; ++j) out[j] += (mode.c(static_cast<Eigen::Index>(j)) * e).real();
            }
        }
        return f;
    }

    /// Exact image under a constant-coefficient operator: c -> (2 pi i)^k A[m] c.
    TrigField apply(const NumericOp& op) const {
        if (op.N != N || op.d != d) throw std::invalid_argument("TrigField::apply: dimension mismatch");
        TrigField out{N, op.l, {}};
        const cd factor = std::pow(cd(0.0, kTwoPi), op.k);
        for (const auto& mode : modes) {
            Eigen::VectorXd m(static_cast<Eigen::Index>(N));
            for (std::size_t i = 0; i < N; ++i) m(static_cast<Eigen::Index>(i)) = mode.m[i];
            const Eigen::MatrixXcd s = op.at<double>(m).cast<cd>();
            out.modes.push_back({mode.m, factor * (s * mode.c)});
        }
        return out;
    }

    /// L2 norm from the coefficients; valid for distinct, non-opposite, nonzero frequencies.
    double parseval_l2(const std::vector<double>& weights = {}) const {
        double s = 0.0;
        for (const auto& mode : modes)
            for (std::size_t j = 0; j < d; ++j) s += (weights.empty() ? 1.0 : weights[j]) * std::norm(mode.c(static_cast<Eigen::Index>(j)));
        return std::sqrt(s / 2.0);
    }
};

/// Distinct frequencies with |m|_inf <= band whose first nonzero entry is positive.
template <class Rng>
std::vector<std::vector<int>> random_frequencies(Rng& rng, std::size_t N, int band, std::size_t count) {
    std::vector<std::vector<int>> out;
    std::size_t guard = 0;
    while (out.size() < count && guard++ < 100 * count + 100) {
        std::vector<int> m(N);
        for (auto& c : m) c = static_cast<int>(uniform_int(rng, -band, band));
        std::size_t first = 0;
        while (first < N && m[first] == 0) ++first;
        if (first == N) continue;
        if (m[first] < 0)
            for (auto& c : m) c = -c;
        bool dup = false;
        for (const auto& o : out) dup |= o == m;
        if (!dup) out.push_back(std::move(m));
    }
    return out;
}

template <class Rng>
TrigField random_trig_field(Rng& rng, std::size_t N, std::size_t d, int band, std::size_t count) {
    TrigField f{N, d, {}};
    for (auto& m : random_frequencies(rng, N, band, count)) {
        double len = 0.0;
        for (int c : m) len += static_cast<double>(c) * c;
        Eigen::VectorXcd c(static_cast<Eigen::Index>(d));
        for (std::size_t j = 0; j < d; ++j) {
            const double re = normal_real(rng);
            const double im = normal_real(rng);
            c(static_cast<Eigen::Index>(j)) = cd(re, im) / (1.0 + std::sqrt(len));
        }
        f.modes.push_back({std::move(m), std::move(c)});
    }
    return f;
}

}  // namespace symcheck::num
