#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" TPGABOR_CLI_PATH "\" " + args + " 2>/dev/null";
  Run r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kFast = " --x-grid 16 --ladder 8,16,32 --grid 128";

}  // namespace

TEST_CASE("diagnose exit codes") {
  CHECK(run("diagnose -w gaussian --alpha 1/2 --beta 1" + kFast).code == 0);
  const Run crit = run("diagnose -w gaussian --alpha 1 --beta 1" + kFast);
  CHECK(crit.code == 1);
  CHECK(crit.out.find("\"density\"") != std::string::npos);
  CHECK(crit.out.find("\"zak_zero\"") != std::string::npos);
  const Run over = run("diagnose -w gaussian --alpha 3/2 --beta 1" + kFast);
  CHECK(over.code == 1);
  CHECK(over.out.find("\"ladder_trace\": []") != std::string::npos);
}

TEST_CASE("configuration errors exit with 64") {
  CHECK(run("diagnose --alpha 1/0").code == 64);
  CHECK(run("diagnose --tail-tol -1").code == 64);
  CHECK(run("diagnose --x-grid 4").code == 64);
  CHECK(run("diagnose -w boxcar").code == 64);
  CHECK(run("diagnose --format xml").code == 64);
  CHECK(run("scan --alpha-grid 1:3:1").code == 64);
  CHECK(run("diagnose --config /nonexistent.json").code == 64);
  CHECK(run("frobnicate").code == 64);
  CHECK(run("").code == 64);
}

TEST_CASE("config file with flags taking precedence") {
  const std::string path = TPGABOR_TEST_TMP "/cli_config.json";
  {
    std::ofstream out(path);
    out << R"({"window": "gaussian", "alpha": "3/2", "x_grid_n": 16, "J_ladder": [8, 16, 32], "zak_grid_n": 128})";
  }
  CHECK(run("diagnose --config " + path).code == 1);
  CHECK(run("diagnose --config " + path + " --alpha 1/2").code == 0);
}

TEST_CASE("scan: header-only output for an empty grid, stable under TPGABOR_JOBS") {
  const Run empty = run("scan --alpha-grid 1:1/2:1/8" + kFast);
  CHECK(empty.code == 0);
  CHECK(empty.out == "# tpgabor scan csv v1\nalpha,beta,alphabeta,verdict,A_est,min_sigma,note\n");

  const std::string args = "scan -w two_sided_exp --alpha-grid 1/4:5/4:1/4" + kFast;
  const Run one = run(args + " --jobs 1");
  const Run env = run(args, "TPGABOR_JOBS=3");
  CHECK(one.code == 0);
  CHECK(one.out == env.out);
}

TEST_CASE("decimal alpha is rationalized") {
  const Run r = run("diagnose --alpha 0.5" + kFast);
  CHECK(r.code == 0);
  CHECK(r.out.find("\"alpha\": \"1/2\"") != std::string::npos);
}

TEST_CASE("data subcommands write files") {
  const std::string path = TPGABOR_TEST_TMP "/zak.csv";
  CHECK(run("zak -w gaussian --grid 128 -o " + path).code == 0);
  std::ifstream in(path);
  int count = 0;
  for (std::string line; std::getline(in, line);) count += line.empty() || line[0] == '#' ? 0 : 1;
  CHECK(count == 16384 + 1);
  CHECK(run("zzdet -w gaussian --alpha 2/3").code == 0);
  const Run wit = run("witness -w gaussian --alpha 2/3 --x 0.1 --format csv");
  CHECK(wit.code == 0);
  CHECK(wit.out.find("# nu=") != std::string::npos);
  CHECK(run("audit -w one_sided_exp --alpha 1/2 --trials 200").code == 0);
  CHECK(run("bounds -w gaussian --alpha 1/2" + kFast).code == 0);
  CHECK(run("zzdet -w gaussian --alpha 1").code == 64);
}
