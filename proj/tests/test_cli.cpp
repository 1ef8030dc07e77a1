#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipbound/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWorkDir = fs::temp_directory_path() / "lipbound_cli_tests";

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

RunResult run_cli(const std::string& args) {
  fs::create_directories(kWorkDir);
  const fs::path out_file = kWorkDir / "stdout.txt";
  const fs::path err_file = kWorkDir / "stderr.txt";
  const std::string cmd = std::string(LIPBOUND_CLI_PATH) + " " + args + " >" +
                          out_file.string() + " 2>" + err_file.string();
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return RunResult{WEXITSTATUS(status), slurp(out_file), slurp(err_file)};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("bound on a zero-length segment prints zeros that hold") {
  RunResult r = run_cli(
      "--cmd bound --fn quad_shifted --xa 0.25,-0.5 --xb 0.25,-0.5");
  CHECK(r.exit_code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 13);
  CHECK(lines[0] == "variant,locality,value,delta_f,valid,strict_ok,slack");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CAPTURE(lines[i]);
    CHECK(lines[i].find(",global,0,0,true,false,0") != std::string::npos);
  }
}

TEST_CASE("bound covers the true change on a real segment") {
  RunResult r = run_cli(
      "--cmd bound --fn quad_shifted --xa 0,0 --xb 0.5,0.5");
  CHECK(r.exit_code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 13);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CAPTURE(lines[i]);
    CHECK(lines[i].find(",true,") != std::string::npos);
  }
}

TEST_CASE("identical invocations produce byte-identical reports") {
  const fs::path a = kWorkDir / "rep_a.csv";
  const fs::path b = kWorkDir / "rep_b.csv";
  const std::string base =
      "--cmd verify --fn sincos --pairs 50 --seed 9 --out ";
  CHECK(run_cli(base + a.string()).exit_code == 0);
  CHECK(run_cli(base + b.string()).exit_code == 0);
  const std::string text_a = slurp(a);
  CHECK(!text_a.empty());
  CHECK(text_a == slurp(b));

  const fs::path ma = kWorkDir / "min_a.csv";
  const fs::path mb = kWorkDir / "min_b.csv";
  const std::string mcmd =
      "--cmd minimize --fn quad_shifted --tol 1e-4 --out ";
  CHECK(run_cli(mcmd + ma.string()).exit_code == 0);
  CHECK(run_cli(mcmd + mb.string()).exit_code == 0);
  CHECK(slurp(ma) == slurp(mb));
}

TEST_CASE("verify summarizes on stderr and exits 2 on violations") {
  RunResult ok = run_cli("--cmd verify --fn quadratic_coupled --pairs 20");
  CHECK(ok.exit_code == 0);
  CHECK(ok.err.find("violations=0") != std::string::npos);

  const fs::path tiny = kWorkDir / "tiny_constants.csv";
  spit(tiny,
       "kappa,1,-0.05,0.05\n"
       "kappa,2,-0.05,0.05\n"
       "M,1,1,0,0\n"
       "M,2,2,0,0\n"
       "M,1,2,0,0\n");
  RunResult bad = run_cli(
      "--cmd verify --fn quad_shifted --pairs 20 --constants " +
      tiny.string());
  CHECK(bad.exit_code == 2);
}

TEST_CASE("usage and numeric failures map to exit codes 1 and 3") {
  CHECK(run_cli("--cmd bound --fn nosuch --xa 0 --xb 1").exit_code == 1);
  CHECK(run_cli("--cmd bound --fn quad_shifted").exit_code == 1);
  CHECK(run_cli("--cmd enclose --fn quad_shifted --box 1:-1,0:1").exit_code ==
        1);
  CHECK(run_cli("--cmd frobnicate --fn affine").exit_code == 1);
  CHECK(run_cli("--cmd bound --fn quad_shifted --xa 5,5 --xb 0,0").exit_code ==
        1);
  RunResult numeric =
      run_cli("--cmd estimate --fn 'expr:log(x1)' --box -1:1");
  CHECK(numeric.exit_code == 3);
  CHECK(numeric.err.find("error:") != std::string::npos);
}

TEST_CASE("estimated constants feed back in as a constants file") {
  const fs::path consts = kWorkDir / "estimated.csv";
  CHECK(run_cli("--cmd estimate --fn quad_shifted --out " + consts.string())
            .exit_code == 0);
  RunResult r = run_cli(
      "--cmd bound --fn quad_shifted --xa 0,0 --xb 0.5,0.5 --constants " +
      consts.string());
  CHECK(r.exit_code == 0);
  for (std::size_t i = 1; i < lines_of(r.out).size(); ++i)
    CHECK(lines_of(r.out)[i].find(",true,") != std::string::npos);
}

TEST_CASE("expression mode needs a box and then works end to end") {
  CHECK(run_cli("--cmd enclose --fn 'expr:x1^2'").exit_code == 1);
  RunResult r = run_cli("--cmd enclose --fn 'expr:x1^2' --box -1:1");
  CHECK(r.exit_code == 0);
  CHECK(lines_of(r.out).size() == 3);
}

TEST_CASE("jsonl rows parse and mirror the csv content") {
  RunResult r = run_cli(
      "--cmd verify --fn quad_shifted --pairs 5 --format jsonl");
  CHECK(r.exit_code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 5 * 12);
  for (const std::string& line : lines) {
    const nlohmann::json row = nlohmann::json::parse(line);
    CHECK(row.at("seed").get<std::uint64_t>() == 42);
    CHECK(row.at("function").get<std::string>() == "quad_shifted");
    CHECK(row.at("valid").get<bool>());
    CHECK(row.contains("bound_value"));
    CHECK(row.contains("slack"));
  }

  RunResult m = run_cli(
      "--cmd minimize --fn quad_shifted --tol 1e-3 --format jsonl");
  CHECK(m.exit_code == 0);
  std::vector<std::string> mlines = lines_of(m.out);
  REQUIRE(!mlines.empty());
  const nlohmann::json last = nlohmann::json::parse(mlines.back());
  CHECK(last.at("kind").get<std::string>() == "result");
  CHECK(last.at("converged").get<bool>());
}

TEST_CASE("config files supply values and flags override them") {
  fs::create_directories(kWorkDir);
  const fs::path cfg_path = kWorkDir / "run.cfg";
  spit(cfg_path,
       "# bound a fixed segment\n"
       "cmd = bound\n"
       "fn = quad_shifted\n"
       "xa = 0,0\n"
       "xb = 0.5,0.5\n");
  RunResult from_file = run_cli("--config " + cfg_path.string());
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.out.find(",global,") != std::string::npos);

  RunResult overridden =
      run_cli("--config " + cfg_path.string() + " --xb 0,0");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.out.find(",global,0,0,true,false,0") != std::string::npos);
}

TEST_CASE("apply_config_file parses keys, comments, and booleans") {
  fs::create_directories(kWorkDir);
  const fs::path p = kWorkDir / "unit.cfg";
  spit(p,
       "# comment\n"
       "cmd=verify\n"
       "fn=sincos\n"
       "seed=7\n"
       "pairs=25\n"
       "tol=1e-4\n"
       "budget=500\n"
       "format=jsonl\n"
       "local=true\n"
       "\n");
  lipbound::RunConfig cfg;
  lipbound::apply_config_file(cfg, p.string());
  CHECK(cfg.command == "verify");
  CHECK(cfg.function == "sincos");
  CHECK(cfg.seed == 7);
  CHECK(cfg.pairs == 25);
  CHECK(cfg.tol == 1e-4);
  CHECK(cfg.budget == 500);
  CHECK(cfg.format == "jsonl");
  CHECK(cfg.local);

  const fs::path bad = kWorkDir / "bad.cfg";
  spit(bad, "cmd=verify\nwidgets=4\n");
  lipbound::RunConfig cfg2;
  CHECK_THROWS_AS(lipbound::apply_config_file(cfg2, bad.string()),
                  std::invalid_argument);

  lipbound::RunConfig cfg3;
  CHECK_THROWS_AS(lipbound::apply_config_file(cfg3, "/nonexistent.cfg"),
                  std::invalid_argument);
}

TEST_CASE("local bound rows are tagged segment_local") {
  RunResult r = run_cli(
      "--cmd bound --fn cubic --xa 0 --xb 0.5 --local");
  CHECK(r.exit_code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 13);
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(lines[i].find(",segment_local,") != std::string::npos);
}
