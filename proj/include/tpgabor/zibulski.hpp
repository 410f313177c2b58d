#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "tpgabor/lattice.hpp"
#include "tpgabor/window.hpp"

namespace tpgabor {

/// A(xi) with entries A_rs(xi) = Z_p g(r + delta_r - s, xi), r, s = 0..p-1.
struct ZZMatrix {
  double xi = 0.0;
  Eigen::MatrixXcd entries;
  double trunc_err = 0.0;  // aggregate bound, p^2 * tol
};

ZZMatrix zz_matrix(const TPWindow& w, const RationalLattice& lat, const PerturbationSeq& pert, double xi,
                   double tol = 1e-10);

struct FactorizationReport {
  double max_deviation = 0.0;
  double worst_xi = 0.0;
  long d_offset = 0;          // first row index of d = G c
  std::vector<double> d;      // time-side product G c
};

/// Compares y_r(xi) = sum_m d_{mp+r} e^{-2 pi i m p xi}, where d = G c,
/// against A(xi) x(xi), with x built from c the same way, on the given xi
/// values. c_l is given for l = c_offset + i. Throws NumericalFailure if the
/// deviation exceeds 100 * tol.
FactorizationReport fourier_factorization_check(const TPWindow& w, const RationalLattice& lat,
                                                const PerturbationSeq& pert, long c_offset,
                                                const std::vector<double>& c, const std::vector<double>& xi_grid,
                                                double tol = 1e-10);

enum class Injectivity { Invertible, Degenerate };

struct InjectivityCertificate {
  double min_abs_det = 0.0;
  double argmin_xi = 0.0;
  double min_sigma = 0.0;
  double min_sigma_coarse = 0.0;  // same scan at half the resolution
  double max_sigma = 0.0;
  int xi_grid_n = 0;
  Injectivity verdict = Injectivity::Degenerate;
};

struct InjectivityOptions {
  int xi_grid_n = 128;
  double sigma_tol = 1e-8;
  double tol = 1e-10;
  double stable_rel = 0.10;
};

/// Scans sigma_min(A(xi)) and |det A(xi)| over a uniform grid on [0, 1/p]
/// (two rounds of local refinement around the minimiser) at grid_n and 2 grid_n.
/// Invertible iff the minimum exceeds sigma_tol and is stable under the doubling.
InjectivityCertificate injectivity_scan(const TPWindow& w, const RationalLattice& lat, const PerturbationSeq& pert,
                                        const InjectivityOptions& opt = {});

/// q x p symbol of the pre-Gramian P(x): Phi_rs(x, xi) = Z_p g(x + alpha r - s, xi).
Eigen::MatrixXcd zz_symbol(const TPWindow& w, const RationalLattice& lat, double x, double xi, double tol = 1e-10);

/// min over an x-grid and xi-grid of sigma_min(Phi(x, xi))^2: the lower
/// frame bound of the infinite pre-Gramian, computed without truncating P.
double zz_lower_bound(const TPWindow& w, const RationalLattice& lat, int x_grid_n = 64, int xi_grid_n = 64,
                      double tol = 1e-10);

}  // namespace tpgabor
