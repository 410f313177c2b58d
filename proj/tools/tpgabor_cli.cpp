// tpgabor: Gabor frame diagnostics for totally positive windows on rational lattices.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tpgabor/config.hpp"
#include "tpgabor/error.hpp"
#include "tpgabor/pipeline.hpp"

namespace {

constexpr int kExitConfig = 64;

struct Flags {
  std::optional<std::string> config_path;
  std::optional<std::string> window;
  std::optional<std::string> alpha, beta;
  std::optional<std::string> alpha_grid, beta_grid;
  std::optional<double> tail_tol, zero_tol, sigma_tol;
  std::optional<int> x_grid_n, xi_grid_n, zak_grid_n;
  std::optional<std::vector<int>> ladder;
  std::optional<std::string> format, output;
  std::optional<int> jobs;
  std::optional<double> x, period;
  std::optional<int> K, n_max;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (command-line flags take precedence)");
  cmd->add_option("--window,-w", f.window,
                  "window: gaussian | one_sided_exp | two_sided_exp | sech | JSON object");
  cmd->add_option("--alpha", f.alpha, "time shift, P/Q or decimal");
  cmd->add_option("--beta", f.beta, "frequency shift, R/S or decimal");
  cmd->add_option("--tail-tol", f.tail_tol, "truncation tolerance for lattice sums");
  cmd->add_option("--zero-tol", f.zero_tol, "tolerance of the Zak zero search");
  cmd->add_option("--sigma-tol", f.sigma_tol, "smallest singular value regarded as nonzero");
  cmd->add_option("--x-grid", f.x_grid_n, "x-grid size (>= 16)");
  cmd->add_option("--xi-grid", f.xi_grid_n, "xi-grid size (>= 128)");
  cmd->add_option("--grid", f.zak_grid_n, "Zak grid size per axis (>= 64)");
  cmd->add_option("--ladder", f.ladder, "truncation ladder sizes")->delimiter(',');
  cmd->add_option("--format", f.format, "json or csv");
  cmd->add_option("--output,-o", f.output, "output path, '-' for stdout");
}

void apply(const Flags& f, tpgabor::RunConfig& cfg) {
  using tpgabor::Rational;
  auto rational = [&](const std::string& text, const char* what) {
    bool approx = false;
    const Rational r = Rational::parse(text, &approx);
    if (approx) cfg.warnings.push_back(std::string(what) + " given as a decimal; using " + r.str());
    return r;
  };
  if (f.window) cfg.window = tpgabor::window_spec_from_arg(*f.window);
  if (f.alpha) cfg.alpha = rational(*f.alpha, "alpha");
  if (f.beta) cfg.beta = rational(*f.beta, "beta");
  if (f.alpha_grid) cfg.alpha_grid = tpgabor::RationalRange::parse(*f.alpha_grid, &cfg.warnings);
  if (f.beta_grid) cfg.beta_grid = tpgabor::RationalRange::parse(*f.beta_grid, &cfg.warnings);
  if (f.tail_tol) cfg.tail_tol = *f.tail_tol;
  if (f.zero_tol) cfg.zero_tol = *f.zero_tol;
  if (f.sigma_tol) cfg.sigma_tol = *f.sigma_tol;
  if (f.x_grid_n) cfg.x_grid_n = *f.x_grid_n;
  if (f.xi_grid_n) cfg.xi_grid_n = *f.xi_grid_n;
  if (f.zak_grid_n) cfg.zak_grid_n = *f.zak_grid_n;
  if (f.ladder) cfg.J_ladder = *f.ladder;
  if (f.format) cfg.format = *f.format;
  if (f.output) cfg.output = *f.output;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.x) cfg.x = *f.x;
  if (f.period) cfg.period = *f.period;
  if (f.K) cfg.K = *f.K;
  if (f.n_max) cfg.n_max = *f.n_max;
  if (f.trials) cfg.trials = *f.trials;
  if (f.seed) cfg.seed = *f.seed;
}

int emit(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return std::cout ? 0 : 1;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitConfig;
  }
  out << text;
  return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gabor frame diagnostics for totally positive windows on rational lattices"};
  app.require_subcommand(1);
  Flags f;

  auto* diag = app.add_subcommand("diagnose", "full frame analysis of one (alpha, beta) pair");
  auto* scan = app.add_subcommand("scan", "phase diagram over a rational (alpha, beta) grid");
  auto* zak = app.add_subcommand("zak", "Zak transform on a grid, CSV (x, xi, re, im, abs)");
  auto* zzdet = app.add_subcommand("zzdet", "injectivity landscape of A(xi), CSV (xi, abs_det, sigma_min)");
  auto* witness = app.add_subcommand("witness", "alternating-vector witness for one x");
  auto* audit = app.add_subcommand("audit", "random minor audit of the perturbed matrix G");
  auto* bounds = app.add_subcommand("bounds", "frame-bound estimate from the pre-Gramian ladder");
  for (auto* cmd : {diag, scan, zak, zzdet, witness, audit, bounds}) add_common(cmd, f);

  scan->add_option("--alpha-grid", f.alpha_grid, "START:STOP:STEP, inclusive");
  scan->add_option("--beta-grid", f.beta_grid, "START:STOP:STEP, inclusive");
  scan->add_option("--jobs,-j", f.jobs, "worker threads")->envname("TPGABOR_JOBS");
  zak->add_option("--period", f.period, "Zak period p");
  for (auto* cmd : {diag, zzdet, witness, audit}) cmd->add_option("--x", f.x, "lattice offset x in [0, 1)");
  for (auto* cmd : {diag, witness, audit}) cmd->add_option("--K", f.K, "section half-width");
  audit->add_option("--n-max", f.n_max, "largest minor order (<= 8)");
  audit->add_option("--trials", f.trials, "number of random minors");
  audit->add_option("--seed", f.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  tpgabor::RunConfig cfg;
  try {
    if (f.config_path) cfg = tpgabor::load_config_file(*f.config_path);
    apply(f, cfg);
    cfg.validate();
  } catch (const tpgabor::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';

  try {
    int code = 0;
    std::string text;
    if (diag->parsed())
      text = tpgabor::render_diagnose(cfg, &code);
    else if (scan->parsed())
      text = tpgabor::render_scan(cfg, &code);
    else if (zak->parsed())
      text = tpgabor::render_zak(cfg);
    else if (zzdet->parsed())
      text = tpgabor::render_zzdet(cfg);
    else if (witness->parsed())
      text = tpgabor::render_witness(cfg);
    else if (audit->parsed())
      text = tpgabor::render_audit(cfg);
    else
      text = tpgabor::render_bounds(cfg, &code);
    const int io = emit(text, cfg.output);
    return io != 0 ? io : code;
  } catch (const tpgabor::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}
