#pragma once

#include <fstream>
#include <sstream>

#include "symcheck/analysis/cancellation.hpp"
#include "symcheck/analysis/factorization.hpp"
#include "symcheck/analysis/inclusion.hpp"
#include "symcheck/analysis/rank.hpp"
#include "symcheck/numerics/experiments.hpp"
#include "symcheck/numerics/korn.hpp"
#include "symcheck/numerics/planewave.hpp"
#include "symcheck/op_io.hpp"

namespace symcheck::report {

using nlohmann::json;

inline constexpr const char* kSchema = "symcheck-report/1";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kNoReferenceConstant = "no reference constant available; only stability is assessed";

enum Exit : int { kExitOk = 0, kExitHypothesis = 2, kExitBudget = 3, kExitInput = 4 };

struct CommandResult {
    json report;
    std::string summary;
    int exit_code = kExitOk;
};

/// "catalog:NAME[:N[:PARAM]]" or a path to an operator file.
inline DiffOp resolve_operator(const std::string& spec) {
    const std::string prefix = "catalog:";
    if (spec.rfind(prefix, 0) != 0) return load_op(spec);
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(prefix.size()));
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty() || parts.size() > 3) throw OperatorFormatError(spec + ": expected catalog:NAME[:N[:PARAM]]");
    try {
        const std::size_t N = parts.size() > 1 ? std::stoul(parts[1]) : 2;
        const int param = parts.size() > 2 ? std::stoi(parts[2]) : 0;
        return catalog(parts[0], N, param);
    } catch (const std::invalid_argument& e) {
        throw OperatorFormatError(spec + ": " + e.what());
    } catch (const std::out_of_range& e) {
        throw OperatorFormatError(spec + ": " + e.what());
    }
}

inline json gaussian_vector(const std::vector<GaussianRational>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(to_string(z));
    return out;
}

inline json rational_vector(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(to_string(z));
    return out;
}

inline json operator_ref(const DiffOp& op, const std::string& source) {
    return {{"name", op.name}, {"source", source}, {"hash", content_hash(op)}, {"N", op.N}, {"l", op.l}, {"d", op.d}, {"k", op.k}};
}

inline json envelope(const std::string& command, const json& config, const json& operators) {
    return {{"schema", kSchema}, {"tool_version", kToolVersion}, {"command", command}, {"config", config}, {"operators", operators}};
}

inline json profile_json(const RankProfile& p) {
    json j{{"generic_rank", p.generic_rank},
           {"r", p.kernel_dim},
           {"constant_rank_C", p.constant_rank_C},
           {"constant_rank_R", to_string(p.constant_rank_R)},
           {"real_samples", p.real_samples}};
    if (p.real_rank_drop) j["real_rank_drop"] = rational_vector(*p.real_rank_drop);
    return j;
}

inline json witness_json(const Witness& w) {
    return {{"xi", gaussian_vector(w.xi)}, {"v", gaussian_vector(w.v)}, {"residual", gaussian_vector(w.residual)}, {"real", w.real}};
}

inline json minor_json(const Minor& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"value", m.value.to_string("xi")}};
}

// ---------------------------------------------------------------- analyze

inline CommandResult analyze(const DiffOp& op, const std::string& source, const json& config, std::uint64_t seed) {
    CommandResult res;
    const auto profile = rank_profile(op, seed);
    const auto ell = is_elliptic(op);
    const auto w = compute_W(op, seed);
    json basis = json::array();
    for (const auto& v : w.basis) basis.push_back(rational_vector(v));
    json results{{"elliptic_C", ell.complex},
                 {"elliptic_R", to_string(ell.real)},
                 {"constant_rank_C", profile.constant_rank_C},
                 {"constant_rank_R", to_string(profile.constant_rank_R)},
                 {"r", profile.kernel_dim},
                 {"generic_rank", profile.generic_rank},
                 {"cancelling", w.cancelling},
                 {"dim_W", w.basis.size()},
                 {"W_basis", basis},
                 {"W_samples", w.samples}};
    if (ell.real_witness) results["elliptic_R_witness"] = rational_vector(*ell.real_witness);
    res.report = envelope("analyze", config, {{"op", operator_ref(op, source)}});
    res.report["results"] = results;
    res.report["status"] = "OK";
    std::ostringstream s;
    s << "operator " << op.name << " (N=" << op.N << ", l=" << op.l << ", d=" << op.d << ", k=" << op.k << ")\n"
      << "  elliptic over C: " << (ell.complex ? "yes" : "no") << "\n"
      << "  elliptic over R: " << to_string(ell.real) << "\n"
      << "  constant rank over C: " << (profile.constant_rank_C ? "yes" : "no") << "\n"
      << "  constant rank over R: " << to_string(profile.constant_rank_R) << "\n"
      << "  kernel dimension r: " << profile.kernel_dim << "\n"
      << "  cancelling: " << (w.cancelling ? "yes" : "no") << " (dim W = " << w.basis.size() << ")\n";
    res.summary = s.str();
    return res;
}

// ---------------------------------------------------------------- compare

inline CommandResult compare(const OperatorPair& pair, const std::string& calA_src, const std::string& A_src,
                             const json& config, int s_max, std::uint64_t seed) {
    CommandResult res;
    pair.validate();
    res.report = envelope("compare", config, {{"calA", operator_ref(pair.calA, calA_src)}, {"A", operator_ref(pair.A, A_src)}});
    const auto verdict = kernel_inclusion(pair, seed);
    json inc{{"minors_vanish", verdict.minors_vanish},
             {"minor_size", verdict.minor_size},
             {"minors_checked", verdict.minors_checked},
             {"profile", profile_json(verdict.profile)}};
    if (verdict.nonzero_minor) inc["nonzero_minor"] = minor_json(*verdict.nonzero_minor);
    json results{{"mode", to_string(pair.mode)}};
    std::ostringstream s;
    s << "pair calA = " << pair.calA.name << ", A = " << pair.A.name << " (" << to_string(pair.mode) << " mode)\n";
    if (verdict.status == Status::HypothesesNotMet) {
        inc["status"] = to_string(verdict.status);
        results["inclusion"] = inc;
        results["note"] =
            "calA does not have complex constant rank; kernel inclusion does not decide the estimate (e.g. calA = bilaplacian, A = D^2 laplacian)";
        res.report["results"] = results;
        res.report["status"] = to_string(Status::HypothesesNotMet);
        res.exit_code = kExitHypothesis;
        s << "  HYPOTHESES_NOT_MET: calA lacks complex constant rank\n"
          << "  (stacked minors vanish: " << (verdict.minors_vanish ? "yes" : "no") << ")\n";
        res.summary = s.str();
        return res;
    }
    inc["status"] = "OK";
    inc["holds"] = verdict.holds;
    results["inclusion"] = inc;
    std::string status = "OK";
    if (verdict.holds) {
        const auto cert = construct_L(pair, s_max, seed);
        json fac{{"status", to_string(cert.status)}};
        if (cert.status == Status::Ok) {
            fac["s"] = cert.s;
            fac["verified"] = cert.verified;
            fac["L"] = to_json(cert.L);
            const auto q = quotient_spec(pair, cert.s);
            results["quotient"] = {{"degree_bound", q.degree_bound}, {"dimension", q.dimension()}};
            s << "  kernel inclusion holds\n  factorization D^" << cert.s << " o A = L o calA (verified: "
              << (cert.verified ? "yes" : "no") << ")\n  quotient: polynomials of degree <= " << q.degree_bound
              << " (dimension " << q.dimension() << ")\n";
        } else {
            status = to_string(cert.status);
            res.exit_code = kExitBudget;
            s << "  kernel inclusion holds but no factorization with s <= " << s_max << " (raise --s-max)\n";
        }
        results["factorization"] = fac;
    } else {
        const auto w = find_witness(pair, seed);
        if (w.witness) {
            results["witness"] = witness_json(*w.witness);
            results["counterexample"] = {{"command", "experiment blowup"}, {"modes", {1, 2, 4, 8}}, {"grid", 256}};
            s << "  kernel inclusion FAILS\n  witness xi = " << gaussian_vector(w.witness->xi).dump()
              << ", v = " << gaussian_vector(w.witness->v).dump() << "\n";
        } else {
            status = to_string(w.status);
            res.exit_code = kExitBudget;
            s << "  kernel inclusion fails but no witness was found within the sample budget\n";
        }
        results["witness_search"] = {{"status", to_string(w.status)}, {"real_tried", w.real_tried}, {"complex_tried", w.complex_tried}};
    }
    res.report["results"] = results;
    res.report["status"] = status;
    res.summary = s.str();
    return res;
}

// ---------------------------------------------------------------- experiments

inline int exit_code_for(num::Outcome o) {
    switch (o) {
        case num::Outcome::Ok:
        case num::Outcome::Bounded: return kExitOk;
        case num::Outcome::SMaxExceeded:
        case num::Outcome::IllConditionedQuotient: return kExitBudget;
        case num::Outcome::InvalidInput:
        case num::Outcome::NyquistViolation: return kExitInput;
        default: return kExitHypothesis;
    }
}

inline CommandResult experiment_korn2(const OperatorPair& pair, const std::string& calA_src, const std::string& A_src,
                                      const json& config, std::size_t samples, std::size_t refine, std::uint64_t seed) {
    CommandResult res;
    res.report = envelope("experiment korn2", config, {{"calA", operator_ref(pair.calA, calA_src)}, {"A", operator_ref(pair.A, A_src)}});
    const auto est = num::korn_constant_p2(pair, samples, refine, seed);
    res.report["results"] = {{"constant", est.constant},
                             {"best_xi", est.best_xi},
                             {"evaluations", est.evaluations},
                             {"max_leakage", est.max_leakage},
                             {"running_sup", est.running_sup},
                             {"note", kNoReferenceConstant}};
    res.report["status"] = num::to_string(est.status);
    res.exit_code = exit_code_for(est.status);
    std::ostringstream s;
    s.precision(10);
    s << "p = 2 constant for calA = " << pair.calA.name << ", A = " << pair.A.name << ": " << est.constant << " ["
      << num::to_string(est.status) << "]\n";
    res.summary = s.str();
    return res;
}

inline CommandResult experiment_blowup(const OperatorPair& pair, const std::string& calA_src, const std::string& A_src,
                                       const json& config, const std::vector<int>& modes, std::size_t grid, std::uint64_t seed) {
    CommandResult res;
    res.report = envelope("experiment blowup", config, {{"calA", operator_ref(pair.calA, calA_src)}, {"A", operator_ref(pair.A, A_src)}});
    const auto w = find_witness(pair, seed);
    if (!w.witness) {
        res.report["results"] = {{"witness_search", to_string(w.status)}};
        res.report["status"] = to_string(w.status);
        res.exit_code = w.status == Status::SampleBudgetExceeded ? kExitBudget : kExitHypothesis;
        res.summary = std::string("no witness: ") + to_string(w.status) + "\n";
        return res;
    }
    const auto rep = num::counterexample_blowup(pair, *w.witness, modes, grid);
    json per_mode = json::array();
    for (const auto& m : rep.modes)
        per_mode.push_back({{"n", m.mode}, {"numerator_L2", m.numerator}, {"denominator_symbolic_zero", m.denominator_zero}, {"ratio", num::to_string(m.ratio)}});
    json results{{"witness", witness_json(*w.witness)},
                 {"domain", num::to_string(rep.domain)},
                 {"grid", rep.n_grid},
                 {"modes", per_mode},
                 {"dropped_modes", rep.dropped_modes},
                 {"gram_rank", rep.gram_rank}};
    if (rep.slope_available) results["slope"] = rep.slope;
    res.report["results"] = results;
    res.report["status"] = num::to_string(rep.status);
    res.exit_code = exit_code_for(rep.status);
    std::ostringstream s;
    s.precision(6);
    s << "plane-wave family for calA = " << pair.calA.name << ", A = " << pair.A.name << " [" << num::to_string(rep.status) << "]\n";
    for (const auto& m : rep.modes)
        s << "  n = " << m.mode << ": |A u_n| = " << m.numerator << ", calA u_n " << (m.denominator_zero ? "= 0 exactly" : "!= 0")
          << " -> " << num::to_string(m.ratio) << "\n";
    if (rep.slope_available) s << "  log-log slope: " << rep.slope << "\n";
    s << "  Gram rank: " << rep.gram_rank << "\n";
    res.summary = s.str();
    return res;
}

inline CommandResult experiment_bb(int k, std::size_t N, std::size_t trials, std::size_t grid, std::uint64_t seed,
                                   const json& config) {
    CommandResult res;
    res.report = envelope("experiment bb", config, json::object());
    const auto rep = num::bb_ratio_experiment(k, N, trials, grid, seed);
    res.report["results"] = {{"ratios", rep.ratios},
                             {"max_ratio", rep.max_ratio},
                             {"mean_ratio", rep.mean_ratio},
                             {"max_constraint_residual", rep.max_constraint_residual},
                             {"all_finite", rep.all_finite},
                             {"note", kNoReferenceConstant}};
    res.report["status"] = num::to_string(rep.status);
    res.exit_code = exit_code_for(rep.status);
    std::ostringstream s;
    s.precision(6);
    s << "duality ratio experiment N = " << N << ", k = " << k << ", " << trials << " trials [" << num::to_string(rep.status)
      << "]\n  max ratio " << rep.max_ratio << ", mean " << rep.mean_ratio << ", constraint residual "
      << rep.max_constraint_residual << "\n";
    res.summary = s.str();
    return res;
}

inline CommandResult experiment_sobolev(const OperatorPair& pair, const std::string& calA_src, const std::string& A_src,
                                        const json& config, double p, std::size_t trials, std::size_t grid,
                                        std::uint64_t seed, int s_max) {
    CommandResult res;
    res.report = envelope("experiment sobolev", config, {{"calA", operator_ref(pair.calA, calA_src)}, {"A", operator_ref(pair.A, A_src)}});
    const auto rep = num::sobolev_ratio_experiment(pair, p, trials, grid, seed, s_max);
    res.report["results"] = {{"p", rep.p},
                             {"p_star", rep.p_star},
                             {"s", rep.s},
                             {"degree_bound", rep.degree_bound},
                             {"quotient_dim", rep.quotient_dim},
                             {"image_dim", rep.image_dim},
                             {"gram_condition", rep.gram_condition},
                             {"ratios", rep.ratios},
                             {"max_ratio", rep.max_ratio},
                             {"max_ratio_refined", rep.max_ratio_refined},
                             {"note", kNoReferenceConstant}};
    res.report["status"] = num::to_string(rep.status);
    res.exit_code = exit_code_for(rep.status);
    std::ostringstream s;
    s.precision(6);
    s << "Sobolev ratio experiment p = " << p << " (p* = " << rep.p_star << ") [" << num::to_string(rep.status) << "]\n"
      << "  max ratio " << rep.max_ratio << " at grid " << grid << ", " << rep.max_ratio_refined << " at grid " << 2 * grid << "\n";
    res.summary = s.str();
    return res;
}

inline std::string dump(const json& report) { return report.dump(2) + "\n"; }

inline void write_report(const json& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << dump(report);
}

inline void write_csv(const std::vector<double>& ratios, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "trial,ratio\n";
    out.precision(17);
    for (std::size_t i = 0; i < ratios.size(); ++i) out << i << ',' << ratios[i] << '\n';
}

}  // namespace symcheck::report
