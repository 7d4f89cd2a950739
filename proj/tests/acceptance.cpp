// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed here.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "pair_grid.hpp"
#include "symcheck/analysis/cancellation.hpp"
#include "symcheck/analysis/factorization.hpp"
#include "symcheck/analysis/inclusion.hpp"
#include "symcheck/analysis/lift.hpp"
#include "symcheck/analysis/rank.hpp"
#include "symcheck/groebner.hpp"
#include "symcheck/numerics/experiments.hpp"
#include "symcheck/numerics/korn.hpp"
#include "symcheck/numerics/planewave.hpp"

using namespace symcheck;
namespace fs = std::filesystem;

namespace {

constexpr double kCatalogSeconds = 10.0;
constexpr double kKornTolerance = 1e-6;
constexpr double kKornSeconds = 60.0;
constexpr double kSlopeTarget = 1.0;
constexpr double kSlopeTolerance = 0.05;
constexpr std::size_t kBlowupGrid = 256;
constexpr std::size_t kRandomElliptic = 100;
constexpr std::size_t kRandomPairs = 50;
constexpr int kSMax = 6;
constexpr std::size_t kAnnihilatorSamples = 100;
constexpr std::size_t kLiftInstances = 100;
constexpr int kLiftMaxDegree = 3;
constexpr std::size_t kBBTrials = 1000;
constexpr std::size_t kBBSeeds = 5;
constexpr std::size_t kBBGrid = 64;
constexpr double kBBSpreadFactor = 2.0;
constexpr double kBBResidual = 1e-12;
constexpr std::size_t kComplexSoundnessSamples = 1000;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string name_of(const OperatorPair& p) { return p.calA.name + "/" + p.A.name + "/" + to_string(p.mode); }

std::vector<GaussianRational> random_complex(std::mt19937_64& rng, std::size_t N) {
    while (true) {
        std::vector<GaussianRational> xi;
        bool nz = false;
        for (std::size_t i = 0; i < N; ++i) {
            GaussianRational z{Rational(uniform_int(rng, -5, 5)), Rational(uniform_int(rng, -5, 5))};
            nz |= !is_zero(z);
            xi.push_back(z);
        }
        if (nz) return xi;
    }
}

// ------------------------------------------------------------------ 1
void criterion1(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
        DiffOp op;
        bool crc;
    };
    const std::vector<Case> cases{
        {catalog("gradient", 2), true},      {catalog("gradient", 3), true},      {catalog("curl", 3), true},
        {catalog("divergence", 2), true},    {catalog("divergence", 3), true},    {catalog("sym_gradient", 2), true},
        {catalog("sym_gradient", 3), true},  {catalog("laplacian", 2), false},    {catalog("laplacian", 3), false},
        {catalog("cauchy_riemann", 2), false},
    };
    for (const auto& c : cases) {
        const auto p = rank_profile(c.op);
        o.require(p.constant_rank_C == c.crc, c.op.name + " N=" + std::to_string(c.op.N) + " constant_rank_C");
    }
    const auto cr = is_elliptic(catalog("cauchy_riemann", 2));
    o.require(!cr.complex, "cauchy_riemann must not be C-elliptic");
    o.require(cr.real != Certainty::CertifiedNo, "cauchy_riemann must be R-elliptic");
    o.require(!cr.real_witness.has_value(), "cauchy_riemann has no real rank drop");
    const double secs = seconds_since(t0);
    o.require(secs < kCatalogSeconds, "runtime");
    o.detail << cases.size() << " operators, " << secs << " s";
}

// ------------------------------------------------------------------ 2
void criterion2(Outcome& o) {
    std::size_t catalog_checked = 0;
    for (const auto& op : grid::catalog_operators()) {
        if (op.k < 1) continue;
        const auto e = is_elliptic(op);
        if (!e.complex) continue;
        ++catalog_checked;
        o.require(e.real == Certainty::CertifiedYes, op.name + " elliptic over R");
        const auto w = compute_W(op);
        o.require(w.cancelling && w.basis.empty(), op.name + " W = {0}");
    }
    std::mt19937_64 rng(2024);
    std::size_t found = 0, tried = 0;
    while (found < kRandomElliptic && tried < 20 * kRandomElliptic) {
        ++tried;
        const std::size_t N = static_cast<std::size_t>(uniform_int(rng, 2, 3));
        const std::size_t d = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        const std::size_t l = d + static_cast<std::size_t>(uniform_int(rng, 1, 2));
        const int k = static_cast<int>(uniform_int(rng, 1, 2));
        const auto op = grid::random_operator(rng, N, l, d, k);
        const auto e = is_elliptic(op);
        if (!e.complex) continue;
        ++found;
        o.require(e.real == Certainty::CertifiedYes, "random operator elliptic over R");
        const auto w = compute_W(op, tried);
        o.require(w.cancelling && w.basis.empty(), "random C-elliptic operator W = {0}");
    }
    o.require(found == kRandomElliptic, "not enough random C-elliptic operators generated");
    o.detail << catalog_checked << " catalog + " << found << " random C-elliptic operators (" << tried << " drawn)";
}

// ------------------------------------------------------------------ 3
void criterion3(Outcome& o) {
    std::mt19937_64 rng(33);
    std::size_t holds = 0, fails = 0, guarded = 0;
    auto check = [&](const OperatorPair& pr) {
        const auto verdict = kernel_inclusion(pr);
        const auto cert = construct_L(pr, kSMax);
        if (verdict.status == Status::HypothesesNotMet) {
            ++guarded;
            o.require(cert.status == Status::HypothesesNotMet, name_of(pr) + " guard");
            return;
        }
        if (verdict.holds) {
            ++holds;
            o.require(cert.status == Status::Ok && cert.s >= 0 && cert.s <= kSMax, name_of(pr) + " construct_L");
            if (cert.status != Status::Ok) return;
            const auto lhs = symbol(compose(grad_power(cert.s, pr.A.l, pr.calA.N), pr.A));
            o.require(lhs == symbol(cert.L) * symbol(pr.calA), name_of(pr) + " symbol identity");
            o.require(cert.L.k == cert.s + pr.A.k - pr.calA.k, name_of(pr) + " order of L");
            // inclusion holds: no sampled complex frequency breaks it
            const std::size_t samples = kComplexSoundnessSamples / 20;
            for (std::size_t t = 0; t < samples; ++t)
                o.require(!witness_at(pr, random_complex(rng, pr.calA.N)).has_value(), name_of(pr) + " soundness");
        } else {
            ++fails;
            o.require(cert.status == Status::InclusionFails, name_of(pr) + " construct_L must fail");
            const auto w = find_witness(pr);
            o.require(w.witness.has_value(), name_of(pr) + " witness");
            if (!w.witness) return;
            o.require(is_zero_vector(evaluate(symbol(pr.calA), w.witness->xi).apply(w.witness->v)), name_of(pr) + " calA v = 0");
            o.require(!is_zero_vector(evaluate(symbol(pr.A), w.witness->xi).apply(w.witness->v)), name_of(pr) + " A v != 0");
        }
    };
    const auto grid_pairs = grid::catalog_pair_grid();
    for (const auto& pr : grid_pairs) check(pr);
    const auto random_pairs = grid::random_constant_rank_pairs(1234, kRandomPairs);
    for (const auto& pr : random_pairs) {
        o.require(rank_profile(pr.calA).constant_rank_C, "random calA has complex constant rank");
        check(pr);
    }
    // full-size soundness sample on the leading example
    const OperatorPair eps{catalog("sym_gradient", 2), catalog("gradient", 2, 2), PairMode::Korn};
    for (std::size_t t = 0; t < kComplexSoundnessSamples; ++t)
        o.require(!witness_at(eps, random_complex(rng, 2)).has_value(), "sym_gradient/gradient soundness");
    o.detail << grid_pairs.size() << " catalog pairs + " << random_pairs.size() << " random pairs: " << holds << " hold, "
             << fails << " fail with witness, " << guarded << " guarded";
}

// ------------------------------------------------------------------ 4
void criterion4(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const OperatorPair pr{catalog("sym_gradient", 2), catalog("gradient", 2, 2), PairMode::Korn};
    const auto est = num::korn_constant_p2(pr);
    const double secs = seconds_since(t0);
    const double err = std::abs(est.constant - std::sqrt(2.0));
    o.require(est.status == num::Outcome::Ok, "status");
    o.require(err <= kKornTolerance, "constant within tolerance");
    o.require(secs < kKornSeconds, "runtime");
    o.detail.precision(12);
    o.detail << "estimate " << est.constant << ", |err| " << err << ", " << secs << " s";
}

// ------------------------------------------------------------------ 5
void criterion5(Outcome& o) {
    const OperatorPair pr{catalog("divergence", 2), catalog("gradient", 2, 2), PairMode::Korn};
    const auto w = find_witness(pr);
    o.require(w.witness.has_value(), "witness");
    if (!w.witness) return;
    const auto rep = num::counterexample_blowup(pr, *w.witness, {1, 2, 4, 8}, kBlowupGrid);
    o.require(rep.status == num::Outcome::Ok, "status");
    for (const auto& m : rep.modes) o.require(m.denominator_zero, "calA u_n symbolically zero");
    o.require(rep.slope_available && std::abs(rep.slope - kSlopeTarget) <= kSlopeTolerance, "slope");
    o.require(rep.gram_rank == 4, "Gram rank");
    o.detail << "slope " << rep.slope << ", Gram rank " << rep.gram_rank << ", grid " << kBlowupGrid;
}

// ------------------------------------------------------------------ 6
void criterion6(Outcome& o) {
    const OperatorPair pr{catalog("bilaplacian", 2), catalog("d2_laplacian", 2), PairMode::Korn};
    const auto v = kernel_inclusion(pr);
    o.require(v.status == Status::HypothesesNotMet, "status");
    o.require(!v.profile.constant_rank_C, "constant_rank_C false");
    o.require(v.minors_vanish, "inclusion minors all zero");
    o.require(construct_L(pr).status == Status::HypothesesNotMet, "no factorization claim");
    o.require(find_witness(pr).status == Status::HypothesesNotMet, "no witness claim");
    o.detail << "status " << to_string(v.status) << ", minors of size " << v.minor_size << " checked "
             << v.minors_checked << (v.minors_checked == 0 ? " (none exist)" : "");
}

// ------------------------------------------------------------------ 7
void criterion7(Outcome& o) {
    std::mt19937_64 rng(77);
    const std::vector<DiffOp> ops{catalog("gradient", 2), catalog("gradient", 3), catalog("sym_gradient", 2)};
    for (const auto& op : ops) {
        const auto ann = construct_annihilator(op);
        o.require(ann.status == Status::Ok, op.name + " annihilator status");
        if (ann.status != Status::Ok) continue;
        o.require((symbol(ann.B) * symbol(op)).is_zero(), op.name + " B calA = 0");
        o.require(ann.B.k == 2 * op.k * static_cast<int>(ann.rho), op.name + " order 2 k rho");
        for (std::size_t t = 0; t < kAnnihilatorSamples; ++t) {
            const auto xi = random_integer_point(rng, op.N, 9);
            const auto ker = kernel_basis(evaluate(symbol(ann.B), xi));
            const auto img = column_space(evaluate(symbol(op), xi));
            o.require(ker.size() == img.size() && intersect(ker, img, op.l).size() == img.size(), op.name + " ker B = Image calA");
        }
    }
    o.detail << ops.size() << " operators x " << kAnnihilatorSamples << " real frequencies";
}

// ------------------------------------------------------------------ 8
void criterion8(Outcome& o) {
    for (const auto& op : {catalog("gradient", 2), catalog("sym_gradient", 2)}) {
        const auto ann = construct_annihilator(op);
        const auto w = compute_W(op);
        const auto c = construct_Cbeta(ann.B, w.basis);
        o.require(c.status == Status::Ok && c.verified, op.name + " Cbeta");
        Matrix<Rational> sum(op.l, op.l);
        for (const auto& [beta, cb] : c.C) sum += cb * ann.B.terms.at(beta);
        o.require(sum == projection_onto_complement(w.basis, op.l), op.name + " sum C_beta B_beta = P");
    }
    std::size_t annihilated = 0;
    auto check2 = [&](const OperatorPair& pr) {
        const auto cert = construct_L(pr);
        if (cert.status != Status::Ok || cert.s < 1) return;
        const auto w = compute_W(pr.calA);
        for (const auto& v : w.basis) o.require(certify_in_W(pr.calA, v, rank_profile(pr.calA).generic_rank), "W certified");
        const auto r = verify_L_annihilates_W(cert.L, cert.s, w.basis);
        o.require(r.precondition_met && r.holds, name_of(pr) + " L w = 0");
        ++annihilated;
    };
    for (const auto& pr : grid::catalog_pair_grid()) check2(pr);
    const auto calA = direct_sum(catalog("divergence", 2), catalog("gradient", 2));
    PolyMatrix a = make_poly_matrix(1, 3, 2);
    a(0, 2) = Poly::constant(2, Rational(1));
    const OperatorPair mixed{calA, from_symbol("scalar_part", a, 0), PairMode::Sobolev};
    o.require(compute_W(calA).basis.size() == 1, "direct sum has one-dimensional W");
    check2(mixed);
    o.detail << "projection identity for gradient(2), sym_gradient(2); L w = 0 on " << annihilated << " certified pairs with s >= 1";
}

// ------------------------------------------------------------------ 9
void criterion9(Outcome& o) {
    std::mt19937_64 rng(99);
    const std::vector<DiffOp> ops{catalog("divergence", 2), catalog("divergence", 3), catalog("sym_gradient", 2),
                                  catalog("laplacian", 2),  catalog("curl", 3),       catalog("gradient", 2, 2),
                                  catalog("cauchy_riemann", 2)};
    std::size_t done = 0, nontrivial = 0;
    while (done < kLiftInstances) {
        const auto& A = ops[done % ops.size()];
        std::vector<Poly> u(A.d, Poly(A.N));
        for (auto& p : u)
            for (const auto& m : multi_indices_up_to(A.N, kLiftMaxDegree + A.k))
                if (uniform_int(rng, 0, 3) == 0) p.add_term(m, Rational(uniform_int(rng, -4, 4)));
        const auto pi = apply_op(A, u);
        int dpi = -1;
        for (const auto& p : pi) dpi = std::max(dpi, p.degree());
        if (dpi > kLiftMaxDegree) continue;
        ++done;
        if (dpi >= 0) ++nontrivial;
        const auto lift = polynomial_lift(A, pi);
        o.require(lift.status == Status::Ok && lift.verified, "feasible lift");
        o.require(apply_op(A, lift.Pi) == pi, "A Pi = pi");
        int dPi = -1;
        for (const auto& p : lift.Pi) dPi = std::max(dPi, p.degree());
        o.require(dpi < 0 || dPi <= dpi + A.k, "degree bound");
    }
    const Poly x1 = Poly::variable(2, 0), x2 = Poly::variable(2, 1);
    const auto bad1 = polynomial_lift(catalog("gradient", 2), {x2, Poly(2)});
    const auto bad2 = polynomial_lift(catalog("gradient", 2, 2), {x2, Poly(2), Poly(2), Poly(2)});
    o.require(bad1.status == Status::NotInImage && bad2.status == Status::NotInImage, "infeasible rejected");
    const auto good = polynomial_lift(catalog("gradient", 2, 2), {Poly(2), x1, Poly(2), Poly(2)});
    o.require(good.status == Status::Ok && good.verified, "closed gradient field lifted");
    o.detail << done << " feasible instances (" << nontrivial << " nonzero), 2 infeasible rejected";
}

// ------------------------------------------------------------------ 10
void criterion10(Outcome& o) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, resid = 0.0;
    for (std::size_t s = 1; s <= kBBSeeds; ++s) {
        const auto rep = num::bb_ratio_experiment(1, 2, kBBTrials, kBBGrid, s);
        o.require(rep.status == num::Outcome::Ok && rep.ratios.size() == kBBTrials, "run");
        o.require(rep.all_finite, "finite ratios");
        resid = std::max(resid, rep.max_constraint_residual);
        lo = std::min(lo, rep.max_ratio);
        hi = std::max(hi, rep.max_ratio);
    }
    o.require(lo > 0.0 && hi / lo < kBBSpreadFactor, "max ratio spread across seeds");
    o.require(resid <= kBBResidual, "constraint residual");
    o.detail << "max ratio in [" << lo << ", " << hi << "], spread " << hi / lo << ", residual " << resid;
}

// ------------------------------------------------------------------ 11
void criterion11(Outcome& o) {
    const std::size_t n = 2;
    const Poly a = Poly::variable(n, 0), b = Poly::variable(n, 1);
    o.require(zero_dim_origin({a.pow(2), b.pow(2)}, n), "{xi1^2, xi2^2} -> true");
    o.require(!zero_dim_origin({a * b}, n), "{xi1 xi2} -> false");
    o.require(!zero_dim_origin({a.pow(2) + b.pow(2)}, n), "{xi1^2 + xi2^2} -> false");
    std::size_t bases = 0;
    auto check = [&](const GroebnerBasis& gb, const std::string& what) {
        ++bases;
        o.require(gb.satisfies_buchberger_criterion(), what + " S-pairs reduce to zero");
        o.require(gb.certifies_equal_span(), what + " same span");
    };
    for (const auto& op : grid::catalog_operators()) {
        const auto s = symbol(op);
        const std::size_t rho = rank_profile(op).generic_rank;
        std::vector<Poly> mins;
        for (auto& m : minors(s, rho)) mins.push_back(std::move(m));
        std::vector<Poly> nz;
        for (auto& p : mins)
            if (!p.is_zero()) nz.push_back(p);
        if (!nz.empty()) check(buchberger(nz, op.N, {}, true), op.name + " minor ideal");
        std::vector<ModuleElement> rows;
        for (std::size_t i = 0; i < s.rows(); ++i) rows.push_back(s.row(i));
        check(buchberger(rows, op.N, op.d, {}, true), op.name + " row module");
    }
    std::mt19937_64 rng(111);
    for (int t = 0; t < 60; ++t) {
        const std::size_t N = static_cast<std::size_t>(uniform_int(rng, 2, 3));
        const std::size_t rank = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        std::vector<ModuleElement> gens;
        const int count = static_cast<int>(uniform_int(rng, 1, 3));
        for (int g = 0; g < count; ++g) {
            ModuleElement e(rank, Poly(N));
            const int deg = static_cast<int>(uniform_int(rng, 1, 2));
            for (auto& p : e)
                for (const auto& m : multi_indices_of_degree(N, deg))
                    if (uniform_int(rng, 0, 2) == 0) p.add_term(m, Rational(uniform_int(rng, -3, 3)));
            gens.push_back(std::move(e));
        }
        check(buchberger(gens, N, rank, {}, true), "random module");
    }
    o.detail << "fixed suite ok; " << bases << " bases checked exhaustively";
}

// ------------------------------------------------------------------ 12
int run_cli(const std::string& args) {
    const std::string cmd = std::string(SYMCHECK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion12(Outcome& o) {
    const fs::path dir = fs::temp_directory_path() / ("symcheck_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::vector<std::string> commands{
        "analyze --op catalog:sym_gradient:2",
        "analyze --op catalog:cauchy_riemann:2 --seed 3",
        "compare -A catalog:sym_gradient:2 -a catalog:gradient:2:2",
        "compare -A catalog:divergence:2 -a catalog:gradient:2:2",
        "compare -A catalog:bilaplacian:2 -a catalog:d2_laplacian:2",
        "experiment korn2 -A catalog:sym_gradient:2 -a catalog:gradient:2:2",
        "experiment blowup -A catalog:divergence:2 -a catalog:gradient:2:2",
        "experiment bb --trials 200",
        "experiment sobolev -A catalog:sym_gradient:2 -a catalog:identity:2:2 --trials 100",
    };
    std::size_t identical = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const auto p1 = dir / ("a" + std::to_string(i) + ".json");
        const auto p2 = dir / ("b" + std::to_string(i) + ".json");
        const int c1 = run_cli(commands[i] + " --out " + p1.string());
        const int c2 = run_cli(commands[i] + " --out " + p2.string());
        const auto s1 = slurp(p1), s2 = slurp(p2);
        o.require(c1 == c2, commands[i] + " exit code");
        o.require(!s1.empty() && s1 == s2, commands[i] + " byte-identical");
        if (!s1.empty() && s1 == s2) ++identical;
    }
    fs::remove_all(dir);
    o.detail << identical << "/" << commands.size() << " commands byte-identical";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"catalog classification", criterion1},
        {"C-elliptic implies elliptic and cancelling", criterion2},
        {"inclusion <=> factorization, witnesses exact", criterion3},
        {"p = 2 constant for the symmetric gradient", criterion4},
        {"plane-wave blow-up", criterion5},
        {"non-constant-rank guard", criterion6},
        {"annihilator identities", criterion7},
        {"projection identity and L w = 0", criterion8},
        {"polynomial lifts", criterion9},
        {"duality ratio stability", criterion10},
        {"Groebner engine", criterion11},
        {"deterministic reports", criterion12},
    };
    std::size_t passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = seconds_since(t0);
        passed += o.pass ? 1 : 0;
        std::printf("[%s] %2zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", passed, criteria.size());
    return passed == criteria.size() ? 0 : 1;
}
