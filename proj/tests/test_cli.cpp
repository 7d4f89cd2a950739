#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SYMCHECK_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    fs::path dir;
    void SetUp() override {
        dir = fs::temp_directory_path() / ("symcheck_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    json report(const std::string& args, int expected_code, const std::string& name = "r.json") {
        const auto r = run(args + " --out " + path(name));
        EXPECT_EQ(r.code, expected_code) << args << "\n" << r.out;
        return json::parse(slurp(path(name)));
    }
};

}  // namespace

TEST_F(Cli, AnalyzeExamples) {
    auto g = report("analyze --op catalog:gradient:2", 0)["results"];
    EXPECT_TRUE(g["elliptic_C"].get<bool>());
    EXPECT_TRUE(g["constant_rank_C"].get<bool>());
    EXPECT_TRUE(g["cancelling"].get<bool>());
    EXPECT_EQ(g["r"], 0);

    auto cr = report("analyze --op catalog:cauchy_riemann:2", 0)["results"];
    EXPECT_EQ(cr["elliptic_R"], "UNCERTIFIED_YES");
    EXPECT_FALSE(cr["elliptic_C"].get<bool>());
    EXPECT_FALSE(cr["constant_rank_C"].get<bool>());

    auto dv = report("analyze --op catalog:divergence:2", 0)["results"];
    EXPECT_FALSE(dv["cancelling"].get<bool>());
    EXPECT_EQ(dv["dim_W"], 1);
}

TEST_F(Cli, ReportEnvelope) {
    const auto r = report("analyze --op catalog:curl:3 --seed 7", 0);
    EXPECT_EQ(r["schema"], "symcheck-report/1");
    EXPECT_EQ(r["command"], "analyze");
    EXPECT_EQ(r["config"]["seed"], 7);
    EXPECT_EQ(r["config"]["op"], "catalog:curl:3");
    EXPECT_EQ(r["operators"]["op"]["hash"].get<std::string>().size(), 16u);
}

TEST_F(Cli, CompareExamples) {
    const auto holds = report("compare -A catalog:sym_gradient:2 -a catalog:gradient:2:2", 0)["results"];
    EXPECT_TRUE(holds["inclusion"]["holds"].get<bool>());
    EXPECT_EQ(holds["factorization"]["s"], 1);
    EXPECT_TRUE(holds["factorization"]["verified"].get<bool>());
    EXPECT_EQ(holds["quotient"]["degree_bound"], 3);

    const auto fails = report("compare -A catalog:divergence:2 -a catalog:gradient:2:2", 0)["results"];
    EXPECT_FALSE(fails["inclusion"]["holds"].get<bool>());
    EXPECT_EQ(fails["witness"]["xi"], json::array({"1", "0"}));
    EXPECT_EQ(fails["witness"]["v"], json::array({"0", "1"}));

    const auto guard = report("compare -A catalog:bilaplacian:2 -a catalog:d2_laplacian:2", 2);
    EXPECT_EQ(guard["status"], "HYPOTHESES_NOT_MET");
    EXPECT_FALSE(guard["results"]["inclusion"]["profile"]["constant_rank_C"].get<bool>());
    EXPECT_TRUE(guard["results"]["inclusion"]["minors_vanish"].get<bool>());
}

TEST_F(Cli, BudgetExitCode) {
    const auto r = report("compare -A catalog:sym_gradient:2 -a catalog:identity:2:2 --mode sobolev --s-max 1", 3);
    EXPECT_EQ(r["status"], "S_MAX_EXCEEDED");
}

TEST_F(Cli, InputErrors) {
    EXPECT_EQ(run("analyze --op " + path("missing.json")).code, 4);
    {
        std::ofstream bad(path("bad.json"));
        bad << "{\"name\": \"x\", \"N\": 2,\n  \"l\": 1 \"d\": 1}";
    }
    const auto r = run("analyze --op " + path("bad.json"));
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.out.find("malformed JSON at line 2"), std::string::npos) << r.out;
    EXPECT_EQ(run("analyze").code, 4);
    EXPECT_EQ(run("compare -A catalog:gradient:2 -a catalog:gradient:2 --mode sideways").code, 4);
    EXPECT_EQ(run("compare -A catalog:gradient:2 -a catalog:divergence:2").code, 4);
    EXPECT_EQ(run("analyze --op catalog:nonexistent").code, 4);
}

TEST_F(Cli, CatalogFileRoundTrip) {
    ASSERT_EQ(run("catalog sym_gradient --N 3 --out " + path("eps.json")).code, 0);
    const auto from_file = report("analyze --op " + path("eps.json"), 0, "f.json");
    const auto from_catalog = report("analyze --op catalog:sym_gradient:3", 0, "c.json");
    EXPECT_EQ(from_file["operators"]["op"]["hash"], from_catalog["operators"]["op"]["hash"]);
    EXPECT_EQ(from_file["results"], from_catalog["results"]);
    const auto list = run("catalog");
    EXPECT_EQ(list.code, 0);
    EXPECT_NE(list.out.find("cauchy_riemann"), std::string::npos);
}

TEST_F(Cli, Experiments) {
    const auto k = report("experiment korn2 -A catalog:sym_gradient:2 -a catalog:gradient:2:2", 0);
    EXPECT_NEAR(k["results"]["constant"].get<double>(), std::sqrt(2.0), 1e-6);
    const auto u = report("experiment korn2 -A catalog:divergence:2 -a catalog:gradient:2:2 --trials 100", 2);
    EXPECT_EQ(u["status"], "UNBOUNDED_SUSPECTED");

    const auto b = report("experiment blowup -A catalog:divergence:2 -a catalog:gradient:2:2", 0);
    EXPECT_NEAR(b["results"]["slope"].get<double>(), 1.0, 0.05);
    for (const auto& m : b["results"]["modes"]) EXPECT_EQ(m["ratio"], "INFINITE_RATIO");
    EXPECT_EQ(report("experiment blowup -A catalog:divergence:2 -a catalog:gradient:2:2 --grid 16", 4)["status"],
              "NYQUIST_VIOLATION");

    const auto bb = report("experiment bb --trials 50 --grid 32 --csv " + path("bb.csv"), 0);
    EXPECT_EQ(bb["status"], "OK");
    EXPECT_EQ(bb["results"]["ratios"].size(), 50u);
    EXPECT_NE(slurp(path("bb.csv")).find("trial,ratio"), std::string::npos);

    const auto sob = report("experiment sobolev -A catalog:gradient:2 -a catalog:identity:2 --trials 40", 0);
    EXPECT_EQ(sob["status"], "BOUNDED");
    EXPECT_EQ(report("experiment sobolev -A catalog:divergence:2 -a catalog:identity:2:2 --trials 5", 2)["status"],
              "INCLUSION_FAILS");
}

TEST_F(Cli, ByteIdenticalReruns) {
    const std::vector<std::string> commands{
        "analyze --op catalog:sym_gradient:3 --seed 5",
        "compare -A catalog:curl:3 -a catalog:gradient:3:3",
        "experiment korn2 -A catalog:sym_gradient:2 -a catalog:gradient:2:2 --trials 300",
        "experiment bb --trials 40 --grid 32 --seed 9",
        "experiment sobolev -A catalog:sym_gradient:2 -a catalog:identity:2:2 --trials 20",
    };
    for (const auto& c : commands) {
        run(c + " --out " + path("one.json"));
        run(c + " --out " + path("two.json"));
        const auto a = slurp(path("one.json"));
        EXPECT_FALSE(a.empty()) << c;
        EXPECT_EQ(a, slurp(path("two.json"))) << c;
    }
}
