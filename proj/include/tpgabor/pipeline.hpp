#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tpgabor/config.hpp"
#include "tpgabor/pregramian.hpp"

namespace tpgabor {

struct DiagnoseResult {
  Rational alpha;
  Rational beta;
  RationalLattice lattice;
  FrameDiagnosis diagnosis;
  double min_sigma = 0.0;     // min over the x-grid of sigma_min(A(xi)); NaN when not computed
  bool certificates_run = false;
};

/// Full analysis of one (alpha, beta) pair.
DiagnoseResult diagnose(const nlohmann::json& window_spec, const Rational& alpha, const Rational& beta,
                        const RunConfig& cfg);
DiagnoseResult diagnose(const RunConfig& cfg);

/// 0 = Frame, 1 = NotFrame, 2 = Inconclusive.
int exit_code(Verdict v);

nlohmann::json to_json(const DiagnoseResult& r);
nlohmann::json to_json(const FrameDiagnosis& d);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

// Subcommand renderers. Each returns the complete output text.
std::string render_diagnose(const RunConfig& cfg, int* code);
/// Sets *code to 2 if any grid point failed, 0 otherwise.
std::string render_scan(const RunConfig& cfg, int* code = nullptr);
std::string render_zak(const RunConfig& cfg);
std::string render_zzdet(const RunConfig& cfg);
std::string render_witness(const RunConfig& cfg);
std::string render_audit(const RunConfig& cfg);
std::string render_bounds(const RunConfig& cfg, int* code);

inline constexpr const char* kCsvSchemaVersion = "1";

}  // namespace tpgabor
