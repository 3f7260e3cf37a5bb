// Drives the installed command-line binary end to end through a shell,
// checking exit codes, output text, and the stability of the JSON report
// serialization.  QKM_CLI_PATH and QKM_DATA_DIR are injected by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(QKM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int rc = pclose(pipe);
  REQUIRE(WIFEXITED(rc));
  return {WEXITSTATUS(rc), out};
}

std::string data_file(const std::string& name) {
  return std::string(QKM_DATA_DIR) + "/" + name;
}

std::string strip_wall(const std::string& json_text) {
  return std::regex_replace(
      json_text, std::regex(R"("wall_seconds": [0-9.eE+-]+)"),
      "\"wall_seconds\": 0");
}

}  // namespace

TEST_CASE("help and argument errors") {
  RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("verify") != std::string::npos);
  CHECK(help.output.find("mutate") == std::string::npos);  // hidden flag

  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("verify").exit_code == 2);  // missing matrix path
}

TEST_CASE("identity subcommand") {
  RunResult ok = run_cli("identity --name binom --m 3");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("PASS binom") != std::string::npos);

  CHECK(run_cli("identity --name ser2 --m 2").exit_code == 0);

  RunResult unknown = run_cli("identity --name nope --m 2");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("error:") != std::string::npos);

  CHECK(run_cli("identity --name ser2 --m 7").exit_code == 3);
  CHECK(run_cli("identity --name ser2").exit_code == 2);  // missing --m
}

TEST_CASE("hl subcommand") {
  RunResult pair = run_cli("hl --lambda 1,1 --vars 2");
  CHECK(pair.exit_code == 0);
  CHECK(pair.output == "z1 z2\n");

  RunResult row = run_cli("hl --lambda 2 --vars 2");
  CHECK(row.exit_code == 0);
  CHECK(row.output == "z1^2 + (1 + -1*q^2)*z1 z2 + z2^2\n");

  RunResult expand =
      run_cli("hl --expand-file " + data_file("expand_example.json"));
  CHECK(expand.exit_code == 0);
  CHECK(expand.output == "2: 1\n1,1: 1 + 1*q^2\n");

  CHECK(run_cli("hl").exit_code == 2);
  CHECK(run_cli("hl --lambda 1,1 --expand-file x.json").exit_code == 2);
  CHECK(run_cli("hl --expand-file /nonexistent.json").exit_code == 2);
  CHECK(run_cli("hl --lambda 3,1 --vars 9").exit_code == 3);
}

TEST_CASE("diff subcommand") {
  RunResult ok = run_cli("diff --n-max 2");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("PASS diff") != std::string::npos);
  CHECK(run_cli("diff --n-max 13").exit_code == 3);
  CHECK(run_cli("diff --n-max 0").exit_code == 2);
}

TEST_CASE("verify subcommand: pass, input errors, cost guards") {
  RunResult ok = run_cli("verify " + data_file("a1.json") +
                         " --relations R2,R5 --degree 1 --modes 1");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("PASS R2") != std::string::npos);
  CHECK(ok.output.find("PASS R5") != std::string::npos);
  CHECK(ok.output.find("PASS: 2 relation(s)") != std::string::npos);

  CHECK(run_cli("verify /nonexistent.json").exit_code == 2);
  CHECK(run_cli("verify " + data_file("bad_sym.json")).exit_code == 2);
  CHECK(run_cli("verify " + data_file("bad_sign.json")).exit_code == 2);
  CHECK(run_cli("verify " + data_file("bad_diag.json")).exit_code == 2);
  CHECK(run_cli("verify " + data_file("rank17.json")).exit_code == 3);

  RunResult serre_guard = run_cli("verify " + data_file("hyp4.json") +
                                  " --relations SERRE --degree 0 --box 0");
  CHECK(serre_guard.exit_code == 3);
  CHECK(serre_guard.output.find("error:") != std::string::npos);

  RunResult bad_rel =
      run_cli("verify " + data_file("a1.json") + " --relations R2,BOGUS");
  CHECK(bad_rel.exit_code == 2);
  CHECK(bad_rel.output.find("BOGUS") != std::string::npos);
}

TEST_CASE("verify subcommand: mutation probe fails with witnesses") {
  RunResult mutated = run_cli("verify " + data_file("a1.json") +
                              " --relations R6 --mutate-flip-half-power");
  CHECK(mutated.exit_code == 1);
  CHECK(mutated.output.find("FAIL R6") != std::string::npos);
  CHECK(mutated.output.find("witness") != std::string::npos);
}

TEST_CASE("verify subcommand: JSON output modes and determinism") {
  const std::string base = "verify " + data_file("a1.json") +
                           " --relations R2,R6 --degree 1 --modes 1";

  RunResult to_stdout = run_cli(base + " --json-out -");
  CHECK(to_stdout.exit_code == 0);
  REQUIRE(!to_stdout.output.empty());
  CHECK(to_stdout.output.front() == '{');
  nlohmann::json doc = nlohmann::json::parse(to_stdout.output);
  CHECK(doc["all_pass"] == true);
  CHECK(doc["fragments"].size() == 2);

  // file output: canonical serialization survives a parse/re-dump round trip
  const std::string path = "/tmp/qkm_cli_test_report.json";
  RunResult to_file = run_cli(base + " --json-out " + path);
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.output.find("PASS R2") != std::string::npos);
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string raw = buf.str();
  nlohmann::json parsed = nlohmann::json::parse(raw);
  CHECK(parsed.dump(2) + "\n" == raw);
  std::remove(path.c_str());

  // reports agree for any worker count (up to timing)
  RunResult serial = run_cli(base + " --json-out - --workers 1");
  RunResult parallel = run_cli(base + " --json-out - --workers 3");
  CHECK(serial.exit_code == 0);
  CHECK(parallel.exit_code == 0);
  CHECK(strip_wall(serial.output) == strip_wall(parallel.output));
}
