#pragma once

#include <map>
#include <string>
#include <vector>

#include "tpgabor/lattice.hpp"
#include "tpgabor/matrix_section.hpp"
#include "tpgabor/window.hpp"

namespace tpgabor {

enum class Verdict { Frame, NotFrame, Inconclusive };

std::string to_string(Verdict v);

/// Machine-readable evidence attached to a verdict.
struct CertificateRecord {
  std::string name;
  std::map<std::string, double> values;
  std::string note;
};

/// One rung of the truncation ladder.
struct LadderStep {
  int size = 0;        // interior column half-width
  int rows = 0;        // J, rows j in [-J, J]
  double A = 0.0;      // min over the x-grid of sigma_min^2
  double B = 0.0;      // max over the x-grid of sigma_max^2
  double worst_x = 0.0;
};

struct FrameDiagnosis {
  Verdict verdict = Verdict::Inconclusive;
  double lower_bound_est = 0.0;
  double upper_bound_est = 0.0;
  double worst_x = 0.0;
  std::vector<LadderStep> ladder_trace;
  std::vector<CertificateRecord> evidence;
};

struct FrameBoundsOptions {
  int x_grid_n = 64;
  std::vector<int> ladder{16, 32, 64};
  double tail_tol = 1e-10;
  double x_offset = 0.0;      // x-grid is x_offset + i / x_grid_n (mod 1)
  double stable_rel = 0.10;   // Frame needs |A_last - A_prev| / A_last below this
  double sigma_floor = 1e-12; // A at or below this counts as zero
};

/// Rows j in [-J, J], columns k in [-K, K] with K = ceil(alpha J) + R, entries g(x + alpha j - k).
MatrixSection pregramian_section(const TPWindow& w, const RationalLattice& lat, double x, int J,
                                 double tail_tol = 1e-10);

/// sigma_min^2 of the section restricted to the columns |k| <= K - buffer.
/// buffer < 0 selects the default buffer R = truncation_radius(w, tail_tol).
double lower_bound_at_x(const TPWindow& w, const RationalLattice& lat, double x, int J, double tail_tol = 1e-10,
                        int buffer = -1);

/// Frame-bound estimate from the pre-Gramian over an x-grid and a truncation ladder.
///
/// Ladder value L keeps the interior columns |k| <= L and takes enough rows
/// that every kept column sees all rows within the truncation radius, so the
/// restricted sigma_min converges to the infinite-matrix bound from above.
/// Lattices with alpha > 1, or alpha = 1 with a continuous window, are
/// reported as NotFrame without numerics.
FrameDiagnosis frame_bounds(const TPWindow& w, const RationalLattice& lat, const FrameBoundsOptions& opt = {});

/// Schur-test ceiling ceil(1/alpha) * S^2 with S = sum_k sup_{x in [0,1]} |g(x + k)|
/// (sup taken from the decay envelope); every upper-bound estimate must stay below it.
double upper_bound_ceiling(const TPWindow& w, const RationalLattice& lat, double tail_tol = 1e-10);

}  // namespace tpgabor
