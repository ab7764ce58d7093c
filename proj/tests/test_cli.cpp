// Drives the installed binary end to end: exit codes, output formats,
// config handling. TPJC_CLI_PATH is injected by the build.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("tpjc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CommandResult run_cli(const std::string& args) {
    const fs::path capture = scratch_dir() / "capture.txt";
    const std::string command =
        std::string(TPJC_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("simulate reports the operating point as json") {
    const CommandResult result = run_cli("simulate --preset epr --t1 3 --t2 3 --format json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(doc["config"]["convention"] == "angular");
    CHECK(doc["results"]["fidelity"].get<double>() > 0.95);
    CHECK(doc["results"]["fidelity"].get<double>() < 0.99);
    CHECK(doc["results"]["probability"].get<double>() > 0.35);
    CHECK(doc["results"]["probability"].get<double>() < 0.45);
    CHECK(doc["results"]["total_interaction_time_s"].get<double>() == 6e-6);
    CHECK(doc["results"]["interaction_to_decay_ratio"].get<double>() ==
          doctest::Approx(6e-5).epsilon(1e-12));
}

TEST_CASE("simulate accepts the cyclic reading") {
    const CommandResult result =
        run_cli("simulate --preset epr --t1 3 --t2 3 --convention cyclic --format json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(doc["config"]["convention"] == "cyclic");
}

TEST_CASE("simulate with an empty detection branch exits 2") {
    const CommandResult result = run_cli("simulate --preset epr --t1 0 --t2 0");
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("empty") != std::string::npos);
}

TEST_CASE("invalid invocations exit 1") {
    CHECK(run_cli("simulate --preset epr --t1 3").exit_code == 1);        // missing t2
    CHECK(run_cli("simulate --preset bogus --t1 1 --t2 1").exit_code == 1);
    CHECK(run_cli("simulate --no-such-flag").exit_code == 1);
    CHECK(run_cli("simulate --preset epr --t1 -3 --t2 3").exit_code == 1);
    CHECK(run_cli("sweep --preset epr --grid t1=0:1:4").exit_code == 1);  // t2 unspecified
    CHECK(run_cli("sweep --preset epr --grid oops=0:1:4 --t2 1").exit_code == 1);
}

TEST_CASE("config files are validated and flags override them") {
    const fs::path good = scratch_dir() / "good.json";
    std::ofstream(good) << R"({"preset": "epr", "t1": 1.0, "t2": 1.0})";
    const fs::path bad = scratch_dir() / "bad.json";
    std::ofstream(bad) << R"({"preset": "epr", "t1": 1.0, "t2": 1.0, "surprise": 7})";

    CHECK(run_cli("simulate --config " + bad.string()).exit_code == 1);

    const CommandResult overridden =
        run_cli("simulate --config " + good.string() + " --t1 3 --t2 3 --format json");
    REQUIRE(overridden.exit_code == 0);
    const json doc = json::parse(overridden.output);
    CHECK(doc["config"]["t1"].get<double>() == 3.0);

    const CommandResult direct = run_cli("simulate --preset epr --t1 3 --t2 3 --format json");
    CHECK(json::parse(direct.output)["results"] == doc["results"]);
}

TEST_CASE("sweep emits a deterministic csv") {
    const fs::path first = scratch_dir() / "sweep1.csv";
    const fs::path second = scratch_dir() / "sweep2.csv";
    const std::string args = "sweep --preset epr --grid t1=0:4:2 --grid t2=0:4:2 --out ";
    REQUIRE(run_cli(args + first.string()).exit_code == 0);
    REQUIRE(run_cli(args + second.string()).exit_code == 0);

    const std::string body = read_file(first);
    CHECK(body == read_file(second));

    std::stringstream lines(body);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# config ", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "t1,t2,fidelity,probability");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("sweep records an undefined fidelity as nan") {
    const CommandResult result =
        run_cli("sweep --preset epr --grid t1=0:1:2 --t2 0");
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("0,0,nan,0") != std::string::npos);
}

TEST_CASE("optimize over point bounds echoes simulate") {
    const CommandResult optimized =
        run_cli("optimize --preset w --t1 32 --t2 32 --t3 32 --format json");
    REQUIRE(optimized.exit_code == 0);
    const json opt_doc = json::parse(optimized.output);

    const CommandResult simulated =
        run_cli("simulate --preset w --t1 32 --t2 32 --t3 32 --format json");
    const json sim_doc = json::parse(simulated.output);

    CHECK(opt_doc["best"]["fidelity"] == sim_doc["results"]["fidelity"]);
    CHECK(opt_doc["best"]["probability"] == sim_doc["results"]["probability"]);
    CHECK(opt_doc["objective"] == "fidelity");
    CHECK(opt_doc["convention"] == "angular");
}

TEST_CASE("optimize reports an infeasible floor with exit 2") {
    const CommandResult result = run_cli(
        "optimize --preset epr --grid t1=0:0.01:4 --grid t2=0:0.01:4 --min-probability 0.9");
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("feasible") != std::string::npos);
}

TEST_CASE("validate passes and the perturbation hook trips it") {
    const CommandResult ok = run_cli("validate --trials 300");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("PASS  unitarity") != std::string::npos);
    CHECK(ok.output.find("max_residual=") != std::string::npos);

    const CommandResult broken = run_cli("validate --trials 300 --perturb-unitary 1e-4");
    CHECK(broken.exit_code == 3);
    CHECK(broken.output.find("FAIL  unitarity") != std::string::npos);
}
