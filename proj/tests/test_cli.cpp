#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"
#include "jetlab/lie_algebra.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      (env.empty() ? "" : "env " + env + " ") + std::string(JETLAB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
  const int status = pclose(pipe);
  RunResult r;
  r.output = output;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/jetlab_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("table subcommand") {
  SECTION("paper layout of the full jet algebra") {
    const RunResult r = run_cli("table --target j2 --paper-layout");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("E20:") != std::string::npos);
    CHECK(r.output.find("E21:") == std::string::npos);
    CHECK(r.output.find("-4 E16") != std::string::npos);
  }
  SECTION("jlc json output round-trips through the schema") {
    const RunResult r = run_cli("table --target jlc --c 1 --format json");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("dim") == 20);
    const auto algebra = jetlab::GradedLieAlgebra::from_json(j);
    CHECK(algebra.dim() == 20);
    json again;
    to_json(again, algebra);
    CHECK(again == j);
  }
  SECTION("missing --c is a usage error") {
    const RunResult r = run_cli("table --target jlc");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("--c") != std::string::npos);
  }
  SECTION("rational c literals are accepted") {
    const RunResult r = run_cli("table --target jlc --c 1/2 --paper-layout");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1/2 F16") != std::string::npos);
  }
  SECTION("byte-identical reruns") {
    const RunResult a = run_cli("table --target jlc --c 3/5 --format json");
    const RunResult b = run_cli("table --target jlc --c 3/5 --format json");
    CHECK(a.output == b.output);
  }
  SECTION("output file option writes the document") {
    const std::string path = "/tmp/jetlab_test_table_out.json";
    const RunResult r = run_cli("table --target j2 --format json -o " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    const json j = json::parse(in);
    CHECK(j.at("dim") == 21);
    CHECK(jetlab::GradedLieAlgebra::from_json(j).dim() == 21);  // reload revalidates
  }
}

TEST_CASE("invariants subcommand") {
  SECTION("distinct parameters are separated, reciprocal ones are not") {
    const RunResult r = run_cli("invariants --c 1 --c 2 --c 1/2 --trials 2 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    REQUIRE(j.at("reports").size() == 3);
    std::map<std::pair<std::string, std::string>, std::string> verdicts;
    for (const auto& v : j.at("verdicts"))
      verdicts[{v.at("a"), v.at("b")}] = v.at("verdict");
    CHECK(verdicts[{"1", "2"}] == "DISTINGUISHED-BY");
    CHECK(verdicts[{"1", "1/2"}] == "DISTINGUISHED-BY");
    CHECK(verdicts[{"2", "1/2"}] == "SAME-INVARIANTS");
  }
  SECTION("identical parameters give SAME-INVARIANTS") {
    const RunResult r = run_cli("invariants --c 1 --c 1 --trials 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("SAME-INVARIANTS") != std::string::npos);
  }
  SECTION("non-positive c is a usage error") {
    CHECK(run_cli("invariants --c 0 --trials 1").exit_code == 2);
    CHECK(run_cli("invariants --c -3/2 --trials 1").exit_code == 2);
  }
}

TEST_CASE("classify subcommand") {
  SECTION("identity file gives c = 1") {
    const std::string path = temp_file("id.csv", "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
    const RunResult r = run_cli("classify --matrix " + path + " --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(std::abs(j.at("c").get<double>() - 1.0) < 1e-12);
  }
  SECTION("diag(4,1,1,1) gives c = 0.5") {
    const std::string path = temp_file("d4.csv", "4,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
    const RunResult r = run_cli("classify --matrix " + path + " --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(std::abs(j.at("c").get<double>() - 0.5) < 1e-9);
  }
  SECTION("JSON input with rational strings") {
    const std::string path =
        temp_file("m.json", R"({"m": [["1","0","0","0"],["0","1/2","0","0"],["0","0","1","0"],["0","0","0","1/2"]]})");
    const RunResult r = run_cli("classify --matrix " + path + " --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(std::abs(j.at("c").get<double>() - 0.5) < 1e-9);
  }
  SECTION("non-symmetric input is a parse error") {
    const std::string path = temp_file("asym.csv", "1,1,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
    CHECK(run_cli("classify --matrix " + path).exit_code == 2);
  }
  SECTION("wrong size is a parse error") {
    const std::string path = temp_file("small.csv", "1,0\n0,1\n");
    CHECK(run_cli("classify --matrix " + path).exit_code == 2);
  }
  SECTION("missing file is a parse error") {
    CHECK(run_cli("classify --matrix /tmp/jetlab_does_not_exist.csv").exit_code == 2);
  }
  SECTION("indefinite input is a domain error") {
    const std::string path = temp_file("indef.csv", "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,-1\n");
    CHECK(run_cli("classify --matrix " + path).exit_code == 3);
  }
}

TEST_CASE("verify subcommand") {
  SECTION("jacobi suite passes") {
    CHECK(run_cli("verify --suite jacobi").exit_code == 0);
  }
  SECTION("tables suite passes") {
    CHECK(run_cli("verify --suite tables").exit_code == 0);
  }
  SECTION("swap suite passes") {
    CHECK(run_cli("verify --suite swap").exit_code == 0);
  }
  SECTION("harmonic and prolong suites pass") {
    CHECK(run_cli("verify --suite harmonic").exit_code == 0);
    CHECK(run_cli("verify --suite prolong").exit_code == 0);
  }
  SECTION("the full run prints one line per check") {
    const RunResult r = run_cli("verify --suite all");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("ok tables/E") != std::string::npos);
    CHECK(r.output.find("ok swap/fiber-conjugation") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("seed handling") {
  SECTION("explicit seed lands in the report") {
    const RunResult r = run_cli("invariants --c 1 --trials 1 --seed 31337 --format json");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.output).at("reports")[0].at("seed") == 31337);
  }
  SECTION("JETLAB_SEED overrides the default") {
    const RunResult r = run_cli("invariants --c 1 --trials 1 --format json",
                                "JETLAB_SEED=777");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.output).at("reports")[0].at("seed") == 777);
  }
  SECTION("invariants output is byte-identical across reruns") {
    const RunResult a = run_cli("invariants --c 2 --c 1/2 --trials 3 --format json");
    const RunResult b = run_cli("invariants --c 2 --c 1/2 --trials 3 --format json");
    CHECK(a.output == b.output);
  }
}
