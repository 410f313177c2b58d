#include "tpgabor/config.hpp"

#include <fstream>
#include <numbers>

namespace tpgabor {

using nlohmann::json;

namespace {

double number(const json& spec, const char* key, double fallback) {
  if (!spec.contains(key)) return fallback;
  if (!spec.at(key).is_number()) throw ConfigError(std::string("window field '") + key + "' must be a number");
  return spec.at(key).get<double>();
}

double required(const json& spec, const char* key) {
  if (!spec.contains(key)) throw ConfigError(std::string("window field '") + key + "' is required");
  return number(spec, key, 0.0);
}

Rational parse_rational(const json& v, std::vector<std::string>& warnings, const std::string& what) {
  bool approx = false;
  Rational r;
  if (v.is_string())
    r = Rational::parse(v.get<std::string>(), &approx);
  else if (v.is_number_integer())
    r = Rational(v.get<std::int64_t>());
  else if (v.is_number()) {
    r = Rational::approximate(v.get<double>(), 1'000'000);
    approx = true;
  } else
    throw ConfigError(what + " must be a rational string or a number");
  if (approx) warnings.push_back(what + " given as a decimal; using " + r.str());
  return r;
}

}  // namespace

TPWindow window_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string())
    throw ConfigError("window spec must be an object with a string 'kind'");
  const std::string kind = spec.at("kind").get<std::string>();
  const double amplitude = number(spec, "amplitude", 1.0);
  try {
    if (kind == "gaussian") return TPWindow(Gaussian{required(spec, "gamma")}, amplitude);
    if (kind == "one_sided_exp") return TPWindow(OneSidedExp{required(spec, "gamma")}, amplitude);
    if (kind == "sech" || kind == "hyperbolic_secant") return TPWindow(HyperbolicSecant{required(spec, "a")}, amplitude);
    if (kind == "two_sided_exp") {
      const TPWindow base = TPWindow::two_sided_exp(required(spec, "lambda"));
      return TPWindow(base.kind(), amplitude);
    }
    if (kind == "finite_product") {
      if (!spec.contains("nus") || !spec.at("nus").is_array()) throw ConfigError("finite_product requires array 'nus'");
      FiniteProduct fp;
      fp.gamma = number(spec, "gamma", 0.0);
      fp.nu = number(spec, "nu", 0.0);
      fp.c = number(spec, "c", 1.0);
      for (const auto& v : spec.at("nus")) {
        if (!v.is_number()) throw ConfigError("finite_product 'nus' entries must be numbers");
        fp.nus.push_back(v.get<double>());
      }
      return TPWindow(std::move(fp), amplitude);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid window: ") + e.what());
  }
  throw ConfigError("unknown window kind '" + kind + "'");
}

json window_spec_from_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    try {
      return json::parse(arg);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("cannot parse window JSON: ") + e.what());
    }
  }
  if (arg == "gaussian") return {{"kind", "gaussian"}, {"gamma", std::numbers::pi}};
  if (arg == "one_sided_exp") return {{"kind", "one_sided_exp"}, {"gamma", 1.0}};
  if (arg == "two_sided_exp") return {{"kind", "two_sided_exp"}, {"lambda", 1.0}};
  if (arg == "sech" || arg == "hyperbolic_secant") return {{"kind", "sech"}, {"a", std::numbers::pi}};
  throw ConfigError("unknown window '" + arg + "'");
}

RationalRange RationalRange::parse(const std::string& text, std::vector<std::string>* warnings) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon - pos));
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 1 && parts.size() != 3) throw ConfigError("range must be VALUE or START:STOP:STEP");
  RationalRange r;
  bool any_approx = false;
  auto one = [&](const std::string& s) {
    bool approx = false;
    try {
      const Rational v = Rational::parse(s, &approx);
      any_approx = any_approx || approx;
      return v;
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  };
  r.start = one(parts[0]);
  r.stop = parts.size() == 3 ? one(parts[1]) : r.start;
  r.step = parts.size() == 3 ? one(parts[2]) : Rational(1);
  if (!(Rational(0) < r.step)) throw ConfigError("range step must be positive");
  if (any_approx && warnings) warnings->push_back("range '" + text + "' contains decimals; values were rationalized");
  return r;
}

std::vector<Rational> RationalRange::values() const {
  std::vector<Rational> out;
  for (Rational v = start; v <= stop; v = v + step) {
    out.push_back(v);
    if (out.size() > 100000) throw ConfigError("range has more than 100000 points");
  }
  return out;
}

void RunConfig::validate() const {
  if (!(tail_tol > 0.0) || !(zero_tol > 0.0) || !(sigma_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (x_grid_n < 16) throw ConfigError("x_grid_n must be >= 16");
  if (xi_grid_n < 128) throw ConfigError("xi_grid_n must be >= 128");
  if (zak_grid_n < 64) throw ConfigError("zak_grid_n must be >= 64");
  if (J_ladder.size() < 3) throw ConfigError("J_ladder needs at least 3 entries");
  for (std::size_t i = 0; i < J_ladder.size(); ++i)
    if (J_ladder[i] < 1 || (i > 0 && J_ladder[i] <= J_ladder[i - 1]))
      throw ConfigError("J_ladder must be strictly increasing positive integers");
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (!(Rational(0) < alpha) || !(Rational(0) < beta)) throw ConfigError("alpha and beta must be positive");
  if (!(period > 0.0)) throw ConfigError("period must be positive");
  if (K < 1) throw ConfigError("K must be >= 1");
  if (n_max < 1 || n_max > 8) throw ConfigError("n_max must be in [1, 8]");
  if (trials < 0) throw ConfigError("trials must be >= 0");
  if (alpha_grid || beta_grid) {
    const auto as = alpha_grid ? alpha_grid->values() : std::vector<Rational>{alpha};
    const auto bs = beta_grid ? beta_grid->values() : std::vector<Rational>{beta};
    for (const auto& a : as)
      for (const auto& b : bs) {
        const Rational ab = a * b;
        if (!(Rational(0) < a) || !(Rational(0) < b) || !(Rational(0) < ab) || Rational(2) < ab)
          throw ConfigError("scan point alpha*beta = " + ab.str() + " outside (0, 2]");
      }
  }
  (void)window_from_json(window);
}

void RunConfig::merge_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (j.contains("window")) window = j.at("window").is_string() ? window_spec_from_arg(j.at("window")) : j.at("window");
    if (j.contains("alpha")) alpha = parse_rational(j.at("alpha"), warnings, "alpha");
    if (j.contains("beta")) beta = parse_rational(j.at("beta"), warnings, "beta");
    if (j.contains("alpha_grid")) alpha_grid = RationalRange::parse(j.at("alpha_grid").get<std::string>(), &warnings);
    if (j.contains("beta_grid")) beta_grid = RationalRange::parse(j.at("beta_grid").get<std::string>(), &warnings);
    if (j.contains("tail_tol")) tail_tol = j.at("tail_tol").get<double>();
    if (j.contains("zero_tol")) zero_tol = j.at("zero_tol").get<double>();
    if (j.contains("sigma_tol")) sigma_tol = j.at("sigma_tol").get<double>();
    if (j.contains("x_grid_n")) x_grid_n = j.at("x_grid_n").get<int>();
    if (j.contains("xi_grid_n")) xi_grid_n = j.at("xi_grid_n").get<int>();
    if (j.contains("zak_grid_n")) zak_grid_n = j.at("zak_grid_n").get<int>();
    if (j.contains("J_ladder")) J_ladder = j.at("J_ladder").get<std::vector<int>>();
    if (j.contains("format")) format = j.at("format").get<std::string>();
    if (j.contains("output")) output = j.at("output").get<std::string>();
    if (j.contains("jobs")) jobs = j.at("jobs").get<int>();
    if (j.contains("x")) x = j.at("x").get<double>();
    if (j.contains("period")) period = j.at("period").get<double>();
    if (j.contains("K")) K = j.at("K").get<int>();
    if (j.contains("n_max")) n_max = j.at("n_max").get<int>();
    if (j.contains("trials")) trials = j.at("trials").get<std::int64_t>();
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse config file '" + path + "': " + e.what());
  }
  RunConfig cfg;
  cfg.merge_json(j);
  return cfg;
}

}  // namespace tpgabor
