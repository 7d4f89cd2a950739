#include <CLI11.hpp>
#include <iostream>

#include "symcheck/report.hpp"

using namespace symcheck;
using report::CommandResult;
using report::json;

namespace {

struct Options {
    std::string op, calA, A, mode = "korn", out, csv;
    int s_max = kDefaultSMax;
    std::uint64_t seed = 1;
    std::size_t grid = 0;
    std::size_t trials = 0;
    std::size_t refine = 60;
    std::vector<int> modes{1, 2, 4, 8};
    int k = 1;
    std::size_t N = 2;
    double p = 1.0;
};

PairMode parse_mode(const std::string& m) {
    if (m == "korn") return PairMode::Korn;
    if (m == "sobolev") return PairMode::Sobolev;
    throw OperatorFormatError("--mode must be korn or sobolev");
}

OperatorPair load_pair(const Options& o, PairMode mode) {
    OperatorPair pair{report::resolve_operator(o.calA), report::resolve_operator(o.A), mode};
    pair.validate();
    return pair;
}

json pair_config(const Options& o) { return {{"calA", o.calA}, {"A", o.A}, {"seed", o.seed}}; }

int emit(const CommandResult& r, const Options& o) {
    std::cout << r.summary;
    if (!o.out.empty()) report::write_report(r.report, o.out);
    std::cout << "status: " << r.report.value("status", std::string("?")) << "\n";
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbol-level decision procedures and numerical checks for Korn- and Sobolev-type estimates"};
    app.require_subcommand(1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "ellipticity, constant rank and cancellation of one operator");
    analyze->add_option("--op", o.op, "operator file or catalog:NAME[:N[:PARAM]]")->required();
    analyze->add_option("--seed", o.seed, "random seed")->capture_default_str();
    analyze->add_option("--out", o.out, "JSON report path");

    auto add_pair = [&](CLI::App* c, bool with_mode) {
        c->add_option("-A,--calA", o.calA, "operator calA (file or catalog:...)")->required();
        c->add_option("-a,--target", o.A, "operator A (file or catalog:...)")->required();
        if (with_mode) c->add_option("--mode", o.mode, "korn or sobolev")->capture_default_str();
        c->add_option("--seed", o.seed, "random seed")->capture_default_str();
        c->add_option("--out", o.out, "JSON report path");
    };

    auto* compare = app.add_subcommand("compare", "kernel inclusion, factorization certificate or witness");
    add_pair(compare, true);
    compare->add_option("--s-max", o.s_max, "largest derivative count tried for D^s o A = L o calA")->capture_default_str();

    auto* experiment = app.add_subcommand("experiment", "numerical experiments");
    experiment->require_subcommand(1);
    auto* korn2 = experiment->add_subcommand("korn2", "p = 2 torus constant from the symbol");
    add_pair(korn2, true);
    korn2->add_option("--trials", o.trials, "random directions (default 2000)");
    korn2->add_option("--refine", o.refine, "golden-section refinement rounds")->capture_default_str();

    auto* blowup = experiment->add_subcommand("blowup", "plane-wave counterexample family");
    add_pair(blowup, true);
    blowup->add_option("--modes", o.modes, "mode numbers n")->delimiter(',')->capture_default_str();
    blowup->add_option("--grid", o.grid, "points per axis (default 256)");

    auto* bb = experiment->add_subcommand("bb", "duality ratio for higher-divergence-free fields");
    bb->add_option("--k", o.k, "divergence order")->capture_default_str();
    bb->add_option("--N", o.N, "space dimension")->capture_default_str();
    bb->add_option("--trials", o.trials, "trials (default 1000)");
    bb->add_option("--grid", o.grid, "points per axis (default 64)");
    bb->add_option("--seed", o.seed, "random seed")->capture_default_str();
    bb->add_option("--out", o.out, "JSON report path");
    bb->add_option("--csv", o.csv, "per-trial ratios as CSV");

    auto* sobolev = experiment->add_subcommand("sobolev", "Sobolev-type ratio sampling");
    add_pair(sobolev, false);
    sobolev->add_option("--p", o.p, "exponent, 1 <= p < N")->capture_default_str();
    sobolev->add_option("--trials", o.trials, "trials (default 500)");
    sobolev->add_option("--grid", o.grid, "points per axis (default 16; 2 * grid is the refinement)");
    sobolev->add_option("--s-max", o.s_max, "largest derivative count")->capture_default_str();
    sobolev->add_option("--csv", o.csv, "per-trial ratios as CSV");

    auto* cat = app.add_subcommand("catalog", "list catalog operators or write one to a file");
    std::string cat_name;
    int cat_param = 0;
    cat->add_option("name", cat_name, "operator name (omit to list)");
    cat->add_option("--N", o.N, "space dimension")->capture_default_str();
    cat->add_option("--param", cat_param, "field dimension (gradient, identity) or order (div_k)");
    cat->add_option("--out", o.out, "operator file path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return report::kExitInput;
    }

    try {
        if (*analyze) {
            const DiffOp op = report::resolve_operator(o.op);
            const json config{{"op", o.op}, {"seed", o.seed}};
            return emit(report::analyze(op, o.op, config, o.seed), o);
        }
        if (*compare) {
            const auto pair = load_pair(o, parse_mode(o.mode));
            json config = pair_config(o);
            config["mode"] = o.mode;
            config["s_max"] = o.s_max;
            return emit(report::compare(pair, o.calA, o.A, config, o.s_max, o.seed), o);
        }
        if (*korn2) {
            const auto pair = load_pair(o, parse_mode(o.mode));
            const std::size_t trials = o.trials ? o.trials : 2000;
            json config = pair_config(o);
            config["mode"] = o.mode;
            config["trials"] = trials;
            config["refine"] = o.refine;
            return emit(report::experiment_korn2(pair, o.calA, o.A, config, trials, o.refine, o.seed), o);
        }
        if (*blowup) {
            const auto pair = load_pair(o, parse_mode(o.mode));
            const std::size_t grid = o.grid ? o.grid : 256;
            json config = pair_config(o);
            config["mode"] = o.mode;
            config["modes"] = o.modes;
            config["grid"] = grid;
            return emit(report::experiment_blowup(pair, o.calA, o.A, config, o.modes, grid, o.seed), o);
        }
        if (*bb) {
            const std::size_t trials = o.trials ? o.trials : 1000;
            const std::size_t grid = o.grid ? o.grid : 64;
            const json config{{"k", o.k}, {"N", o.N}, {"trials", trials}, {"grid", grid}, {"seed", o.seed}};
            const auto r = report::experiment_bb(o.k, o.N, trials, grid, o.seed, config);
            if (!o.csv.empty()) report::write_csv(r.report["results"]["ratios"].get<std::vector<double>>(), o.csv);
            return emit(r, o);
        }
        if (*sobolev) {
            const auto pair = load_pair(o, PairMode::Sobolev);
            const std::size_t trials = o.trials ? o.trials : 500;
            const std::size_t grid = o.grid ? o.grid : 16;
            json config = pair_config(o);
            config["p"] = o.p;
            config["trials"] = trials;
            config["grid"] = grid;
            config["s_max"] = o.s_max;
            const auto r = report::experiment_sobolev(pair, o.calA, o.A, config, o.p, trials, grid, o.seed, o.s_max);
            if (!o.csv.empty()) report::write_csv(r.report["results"]["ratios"].get<std::vector<double>>(), o.csv);
            return emit(r, o);
        }
        if (*cat) {
            if (cat_name.empty()) {
                for (const auto& n : catalog_names()) std::cout << n << "\n";
                return report::kExitOk;
            }
            const DiffOp op = catalog(cat_name, o.N, cat_param);
            if (o.out.empty())
                std::cout << serialize_op(op);
            else
                save_op(op, o.out);
            return report::kExitOk;
        }
    } catch (const OperatorFormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return report::kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return report::kExitInput;
    }
    return report::kExitInput;
}
