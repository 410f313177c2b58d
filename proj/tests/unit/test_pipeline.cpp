#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "tpgabor/pipeline.hpp"

using namespace tpgabor;
using nlohmann::json;

namespace {

RunConfig fast_config(const char* window = "gaussian") {
  RunConfig cfg;
  cfg.window = window_spec_from_arg(window);
  cfg.x_grid_n = 16;
  cfg.J_ladder = {8, 16, 32};
  cfg.zak_grid_n = 128;
  return cfg;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

bool has_evidence(const FrameDiagnosis& d, const std::string& name) {
  for (const auto& e : d.evidence)
    if (e.name == name) return true;
  return false;
}

}  // namespace

TEST_CASE("diagnose: gaussian below, at and above critical density") {
  RunConfig cfg = fast_config();
  cfg.alpha = Rational(1, 2);
  const auto below = diagnose(cfg);
  CHECK(below.diagnosis.verdict == Verdict::Frame);
  CHECK(exit_code(below.diagnosis.verdict) == 0);
  CHECK(below.certificates_run);
  CHECK(below.min_sigma > 0.0);
  for (const char* name : {"zak_zero", "alternating_witness", "injectivity", "sigma_min_trace"})
    CHECK(has_evidence(below.diagnosis, name));

  cfg.alpha = Rational(1);
  const auto crit = diagnose(cfg);
  CHECK(crit.diagnosis.verdict == Verdict::NotFrame);
  CHECK(exit_code(crit.diagnosis.verdict) == 1);
  CHECK(has_evidence(crit.diagnosis, "density"));
  CHECK(has_evidence(crit.diagnosis, "zak_zero"));

  cfg.alpha = Rational(3, 2);
  const auto above = diagnose(cfg);
  CHECK(above.diagnosis.verdict == Verdict::NotFrame);
  CHECK(above.diagnosis.ladder_trace.empty());
  CHECK_FALSE(has_evidence(above.diagnosis, "zak_zero"));
  CHECK(std::isnan(above.min_sigma));
}

TEST_CASE("diagnose reduces (alpha, beta) to alpha * beta") {
  RunConfig cfg = fast_config();
  cfg.alpha = Rational(1);
  cfg.beta = Rational(1, 2);
  const auto r = diagnose(cfg);
  CHECK(r.lattice.p == 1);
  CHECK(r.lattice.q == 2);
  CHECK(r.diagnosis.verdict == Verdict::Frame);
  const json j = to_json(r);
  CHECK(j["alphabeta"] == "1/2");
  CHECK(j["verdict"] == "Frame");
}

TEST_CASE("one-sided exponential at critical density is not rejected") {
  RunConfig cfg = fast_config("one_sided_exp");
  cfg.alpha = Rational(1);
  const auto r = diagnose(cfg);
  CHECK(r.diagnosis.verdict != Verdict::NotFrame);
}

TEST_CASE("scan output") {
  RunConfig cfg = fast_config();
  cfg.alpha_grid = RationalRange::parse("1/2:3/2:1/2");
  const auto out = lines(render_scan(cfg));
  REQUIRE(out.size() == 5);
  CHECK(out[0].rfind("# tpgabor scan csv v", 0) == 0);
  CHECK(out[1] == "alpha,beta,alphabeta,verdict,A_est,min_sigma,note");
  CHECK(out[2].rfind("1/2,1,1/2,Frame,", 0) == 0);
  CHECK(out[3].rfind("1,1,1,NotFrame,", 0) == 0);
  CHECK(out[4].rfind("3/2,1,3/2,NotFrame,", 0) == 0);

  cfg.alpha_grid = RationalRange::parse("1:1/2:1/8");
  CHECK(lines(render_scan(cfg)).size() == 2);
}

TEST_CASE("scan output does not depend on the number of workers") {
  RunConfig cfg = fast_config("two_sided_exp");
  cfg.alpha_grid = RationalRange::parse("1/4:5/4:1/4");
  cfg.jobs = 1;
  const std::string serial = render_scan(cfg);
  cfg.jobs = 4;
  CHECK(render_scan(cfg) == serial);
}

TEST_CASE("data subcommands") {
  RunConfig cfg = fast_config();
  cfg.zak_grid_n = 128;
  const auto zak_lines = lines(render_zak(cfg));
  CHECK(zak_lines.size() == 2 + 16384);
  CHECK(zak_lines[1] == "x,xi,re,im,abs");

  cfg.alpha = Rational(2, 3);
  const auto zz = lines(render_zzdet(cfg));
  REQUIRE(zz.size() == 2 + 129);
  CHECK(zz[1] == "xi,abs_det,sigma_min");
  CHECK(zz[2].rfind("0,", 0) == 0);
  CHECK(zz.back().rfind("0.5,", 0) == 0);

  cfg.x = 0.1;
  const json wit = json::parse(render_witness(cfg));
  CHECK(wit["nu"].get<double>() > 0.0);
  CHECK(wit["sign_pattern_ok"] == true);
  cfg.format = "csv";
  CHECK(render_witness(cfg).find("# nu=") != std::string::npos);

  cfg.format = "json";
  cfg.trials = 500;
  const json audit = json::parse(render_audit(cfg));
  CHECK(audit["pass"] == true);

  int code = -1;
  const json bounds = json::parse(render_bounds(cfg, &code));
  CHECK(code == 0);
  for (const char* key : {"verdict", "A_est", "B_est", "worst_x", "ladder_trace"}) CHECK(bounds.contains(key));
}

TEST_CASE("rendered output is deterministic") {
  RunConfig cfg = fast_config("sech");
  cfg.alpha = Rational(3, 4);
  int c1 = 0, c2 = 0;
  CHECK(render_diagnose(cfg, &c1) == render_diagnose(cfg, &c2));
  CHECK(c1 == c2);
  CHECK(render_audit(cfg) == render_audit(cfg));
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}
