#pragma once

#include <cstdint>
#include <vector>

#include "tpgabor/lattice.hpp"
#include "tpgabor/matrix_section.hpp"
#include "tpgabor/window.hpp"

namespace tpgabor {

/// (2K+1) x (2K+1) section of G_{kl} = g(k + delta_k - l), k, l in [-K, K].
///
/// The argument is formed as (k - l) + delta_k so that G_{k+p,l+p} and G_{kl}
/// go through identical floating-point operations.
MatrixSection build_G(const TPWindow& w, const PerturbationSeq& pert, int K);

struct AlternatingWitness {
  std::vector<long> ks;        // interior row indices
  std::vector<double> u;       // (G c)_k for c_l = (-1)^l
  std::vector<double> expected;// (-1)^k Zg(delta_k, 1/2)
  double nu = 0.0;             // min |u_k|
  double max_deviation = 0.0;  // max |u_k - expected_k|
  bool sign_pattern_ok = false;
};

struct WitnessOptions {
  double tail_tol = 1e-10;
  double nu_min = 1e-8;  // uniform gap below this is treated as a failure
  bool throw_on_failure = true;
};

/// u_k = sum_{|l| <= K + R} (-1)^l g(k + delta_k - l) for |k| <= K, compared with
/// (-1)^k Zg(delta_k, 1/2). Throws NumericalFailure (unless disabled) when the
/// sign pattern breaks, the gap nu falls below nu_min, or the identity deviates
/// by more than 10 * tail_tol.
AlternatingWitness alternating_witness(const TPWindow& w, const PerturbationSeq& pert, int K,
                                       const WitnessOptions& opt = {});

/// min |Zg(., 1/2)| over the closed admissible interval [x0 + M - 1 + eps, x0 + M - eps].
double witness_gap(const TPWindow& w, double x0, int M, double eps, int grid_n = 1024, double tail_tol = 1e-10);

struct DecayFit {
  double C = 0.0;       // |Ginv_{kl}| <= C (1 + |k - l|)^{-sigma} on the fitted range
  double sigma = 0.0;
  int max_distance = 0; // largest |k - l| used in the fit
  double condition = 0.0;
};

/// Inverts the section and fits the off-diagonal decay of the inverse by
/// log-log regression of the per-distance maxima over interior entries.
/// Throws NumericalFailure when the condition number exceeds 1e12.
DecayFit inverse_decay_profile(const MatrixSection& G);

struct MinorAuditReport {
  std::int64_t trials = 0;
  double min_normalized_det = 0.0;  // min over trials of det / scale
  double min_det = 0.0;
  std::vector<long> worst_rows;
  std::vector<long> worst_cols;
  bool pass = false;
};

/// Random increasing row/column subsets of size 1..n_max; pass iff every
/// determinant is >= -1e-10 * scale with scale = (max |entry| of the minor)^n.
MinorAuditReport tp_minor_audit(const MatrixSection& G, int n_max, std::int64_t trials, std::uint64_t seed = 0x5eed);

/// d = G c for finitely supported c (c_l for l = c_offset + i), on rows
/// [c_offset - R - 1, c_offset + c.size() + R]. Returns (row offset, values).
std::pair<long, std::vector<double>> apply_G(const TPWindow& w, const PerturbationSeq& pert, long c_offset,
                                             const std::vector<double>& c, double tail_tol = 1e-10);

}  // namespace tpgabor
