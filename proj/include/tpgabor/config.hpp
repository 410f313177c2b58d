#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tpgabor/error.hpp"
#include "tpgabor/lattice.hpp"
#include "tpgabor/window.hpp"

namespace tpgabor {

/// Invalid run configuration (maps to exit code 64 in the CLI).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Window from its JSON description, e.g. {"kind":"gaussian","gamma":3.14159}.
///
/// kinds: gaussian(gamma), one_sided_exp(gamma), finite_product(gamma, nus, nu, c),
/// sech / hyperbolic_secant(a), two_sided_exp(lambda); optional "amplitude".
TPWindow window_from_json(const nlohmann::json& spec);

/// Window from a CLI argument: a JSON object, or a bare kind name with defaults
/// (gaussian: gamma = pi, one_sided_exp: gamma = 1, two_sided_exp: lambda = 1, sech: a = pi).
nlohmann::json window_spec_from_arg(const std::string& arg);

/// Inclusive rational range start:stop:step.
struct RationalRange {
  Rational start{1};
  Rational stop{1};
  Rational step{1};

  static RationalRange parse(const std::string& text, std::vector<std::string>* warnings = nullptr);
  std::vector<Rational> values() const;
};

struct RunConfig {
  nlohmann::json window = {{"kind", "gaussian"}, {"gamma", 3.141592653589793}};
  Rational alpha{1, 2};
  Rational beta{1};
  std::optional<RationalRange> alpha_grid;
  std::optional<RationalRange> beta_grid;

  double tail_tol = 1e-10;
  double zero_tol = 1e-10;
  double sigma_tol = 1e-8;
  int x_grid_n = 64;
  int xi_grid_n = 128;
  int zak_grid_n = 256;
  std::vector<int> J_ladder{16, 32, 64};

  std::string format = "json";
  std::string output = "-";
  int jobs = 1;

  // per-subcommand knobs
  double x = 0.0;
  double period = 1.0;
  int K = 16;
  int n_max = 6;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0x5eed;

  std::vector<std::string> warnings;

  /// Throws ConfigError on the first violated constraint.
  void validate() const;

  /// Overlay keys present in a JSON config object.
  void merge_json(const nlohmann::json& j);
};

RunConfig load_config_file(const std::string& path);

}  // namespace tpgabor
