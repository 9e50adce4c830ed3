#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "seqtest/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = fs::path("cli_scratch");

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p);
    out << text;
}

// Runs the CLI with the given arguments; stdout and stderr are captured into
// files under the scratch directory.
int run_cli(const std::string& args) {
    const std::string cmd = std::string(SEQTEST_CLI_PATH) + " " + args + " > " +
                            (kScratch / "stdout.txt").string() + " 2> " +
                            (kScratch / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

// The lambda1=0 fixture runs undamped so the constant response map converges
// in a single iteration; the interacting fixture keeps the default damping.
std::string base_config(double lambda1, double damping) {
    std::ostringstream ss;
    ss << R"({
  "loss": {"variant": "cross_entropy"},
  "signal": {"lambda0": 1.0, "lambda1": )"
       << lambda1 << R"(},
  "mollifier": {"width": 0.25},
  "c": 0.1,
  "T": 2.0,
  "prior": 0.5,
  "grid": {"n_space": 100, "n_time": 80},
  "mc": {"paths": 2500, "dt": 0.02, "seed": 20240811},
  "fixed_point": {"damping": )"
       << damping << R"(, "tol": 5e-3, "max_iter": 30}
})";
    return ss.str();
}

struct ScratchSetup {
    ScratchSetup() {
        fs::remove_all(kScratch);
        fs::create_directories(kScratch);
        spit(kScratch / "base.json", base_config(0.0, 1.0));
        spit(kScratch / "preempt.json", base_config(-0.3, 0.5));
    }
};

const ScratchSetup& scratch() {
    static ScratchSetup s;
    return s;
}

} // namespace

TEST_CASE("check: clean config exits 0 with a JSON report") {
    scratch();
    const int rc = run_cli("check --config " + (kScratch / "base.json").string());
    CHECK(rc == 0);
    const auto rep = nlohmann::json::parse(slurp(kScratch / "stdout.txt"));
    CHECK(rep.at("ok").get<bool>());
    CHECK(rep.at("g3_depth").get<bool>());
}

TEST_CASE("check: violated depth condition exits 2 and names G3") {
    scratch();
    const int rc = run_cli("check --config " + (kScratch / "base.json").string() +
                           " --set signal.lambda1=-0.5");
    CHECK(rc == 2);
    const auto rep = nlohmann::json::parse(slurp(kScratch / "stdout.txt"));
    CHECK_FALSE(rep.at("ok").get<bool>());
    CHECK(rep.at("violations").dump().find("G3") != std::string::npos);
}

TEST_CASE("malformed config exits 1 and names the key") {
    scratch();
    spit(kScratch / "broken.json",
         R"({"loss": {"variant": "cross_entropy"}, "signal": {"lambda0": 1.0, "lambda1": 0.0}})");
    const int rc = run_cli("check --config " + (kScratch / "broken.json").string());
    CHECK(rc == 1);
    CHECK(slurp(kScratch / "stderr.txt").find("mollifier") != std::string::npos);

    CHECK(run_cli("check --config " + (kScratch / "missing_file.json").string()) == 1);
    CHECK(run_cli("check --config " + (kScratch / "base.json").string() + " --set c=-1") == 1);
}

TEST_CASE("equilibrium: emits the four artifacts and round-trips byte-identically") {
    scratch();
    const fs::path out1 = kScratch / "eq1";
    const int rc = run_cli("equilibrium --config " + (kScratch / "base.json").string() +
                           " --out " + out1.string() + " --quiet");
    CHECK(rc == 0);
    for (const char* name : {"result.json", "boundaries.csv", "cdfs.csv", "value_t0.csv"}) {
        CHECK(fs::exists(out1 / name));
    }

    std::vector<std::string> header;
    const auto cols = seqtest::read_csv_columns((out1 / "boundaries.csv").string(), &header);
    REQUIRE(header.size() == 3);
    CHECK(header[0] == "t");
    CHECK(header[1] == "b");
    CHECK(header[2] == "B");
    REQUIRE(cols.size() == 3);
    CHECK(cols[0].size() == 81);

    const auto result = nlohmann::json::parse(slurp(out1 / "result.json"));
    CHECK(result.at("converged").get<bool>());
    CHECK(result.at("iterations").get<int>() == 1);

    // Feeding the emitted snapshot back reproduces the exact same bytes.
    const fs::path out2 = kScratch / "eq2";
    CHECK(run_cli("equilibrium --config " + (out1 / "result.json").string() + " --out " +
                  out2.string() + " --quiet") == 0);
    CHECK(slurp(out1 / "boundaries.csv") == slurp(out2 / "boundaries.csv"));
    CHECK(slurp(out1 / "cdfs.csv") == slurp(out2 / "cdfs.csv"));
    CHECK(slurp(out1 / "value_t0.csv") == slurp(out2 / "value_t0.csv"));
}

TEST_CASE("equilibrium: assumption violations downgrade the exit code to 2") {
    scratch();
    const fs::path out = kScratch / "eq_preempt";
    const int rc = run_cli("equilibrium --config " + (kScratch / "preempt.json").string() +
                           " --out " + out.string() + " --quiet");
    CHECK(rc == 2);
    CHECK(slurp(kScratch / "stderr.txt").find("G3") != std::string::npos);
    const auto result = nlohmann::json::parse(slurp(out / "result.json"));
    CHECK(result.at("converged").get<bool>());
}

TEST_CASE("seed flag and dotted override reach the sampler") {
    scratch();
    const fs::path a = kScratch / "seed_a";
    const fs::path b = kScratch / "seed_b";
    const fs::path c = kScratch / "seed_c";
    CHECK(run_cli("equilibrium --config " + (kScratch / "base.json").string() + " --out " +
                  a.string() + " --seed 1 --quiet") == 0);
    CHECK(run_cli("equilibrium --config " + (kScratch / "base.json").string() + " --out " +
                  b.string() + " --set mc.seed=1 --quiet") == 0);
    CHECK(run_cli("equilibrium --config " + (kScratch / "base.json").string() + " --out " +
                  c.string() + " --seed 2 --quiet") == 0);
    CHECK(slurp(a / "cdfs.csv") == slurp(b / "cdfs.csv"));
    CHECK(slurp(a / "cdfs.csv") != slurp(c / "cdfs.csv"));
}

TEST_CASE("sweep: one directory per value plus a manifest") {
    scratch();
    const fs::path out = kScratch / "sweep";
    const int rc = run_cli("sweep --config " + (kScratch / "base.json").string() + " --out " +
                           out.string() + " --values -0.3,0 --quiet");
    CHECK(rc == 2);  // the -0.3 leg violates the depth condition
    const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    CHECK(manifest.at("param").get<std::string>() == "signal.lambda1");
    REQUIRE(manifest.at("runs").size() == 2);
    for (const auto& run : manifest.at("runs")) {
        CHECK(run.at("converged").get<bool>());
        CHECK(fs::exists(out / run.at("dir").get<std::string>() / "result.json"));
        CHECK(fs::exists(out / run.at("dir").get<std::string>() / "cdfs.csv"));
    }
}

TEST_CASE("solve-agent and solve-infinite emit their artifacts") {
    scratch();
    const fs::path out = kScratch / "agent";
    CHECK(run_cli("solve-agent --config " + (kScratch / "base.json").string() + " --out " +
                  out.string() + " --quiet") == 0);
    for (const char* name : {"surface.csv", "boundaries.csv", "value_t0.csv"}) {
        CHECK(fs::exists(out / name));
    }
    const auto slice = seqtest::read_csv_columns((out / "value_t0.csv").string());
    REQUIRE(slice.size() == 2);
    CHECK(slice[0].size() == 101);
    CHECK(slice[0].front() == 0.0);
    CHECK(slice[0].back() == 1.0);
    CHECK(slice[1].front() == 0.0);

    const fs::path inf = kScratch / "inf";
    CHECK(run_cli("solve-infinite --config " + (kScratch / "base.json").string() + " --out " +
                  inf.string() + " --quiet") == 0);
    const auto j = nlohmann::json::parse(slurp(inf / "infinite.json"));
    REQUIRE(j.at("solutions").size() == 2);
    CHECK(j.at("solutions")[0].at("interior").get<bool>());
}

TEST_CASE("cross-check reports the sup distance between the two solvers") {
    scratch();
    const fs::path out = kScratch / "xcheck";
    CHECK(run_cli("cross-check --config " + (kScratch / "base.json").string() + " --out " +
                  out.string() + " --set grid.n_space=300 --set grid.n_time=300 --quiet") == 0);
    const auto j = nlohmann::json::parse(slurp(out / "cross_check.json"));
    CHECK(j.at("sup_distance").get<double>() <= 2e-3);
}
