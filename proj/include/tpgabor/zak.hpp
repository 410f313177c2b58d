#pragma once

#include <complex>

#include "tpgabor/window.hpp"

namespace tpgabor {

struct ZakValue {
  double re = 0.0;
  double im = 0.0;
  double trunc_err = 0.0;  // bound on |computed - exact|

  std::complex<double> value() const { return {re, im}; }
  double abs() const { return std::hypot(re, im); }
};

/// Truncated Zak transform Z_p g(x, xi) = sum_k g(x - p k) exp(2 pi i p k xi).
///
/// The summation radius is fixed once per (window, p, tol), so repeated
/// evaluation over a grid does not redo the tail-bound search.
class ZakEvaluator {
 public:
  ZakEvaluator(const TPWindow& w, double p, double tol);

  ZakValue operator()(double x, double xi) const;

  double period() const { return p_; }
  double radius() const { return radius_; }
  double trunc_err() const { return trunc_err_; }

 private:
  const TPWindow* w_;
  double p_;
  double radius_;
  double trunc_err_;
};

ZakValue zak(const TPWindow& w, double p, double x, double xi, double tol);

/// Zg(x, 1/2) as a real number. Throws NumericalFailure if the imaginary
/// part of the truncated sum exceeds tol.
double zak_on_half_line(const TPWindow& w, double x, double tol);

struct ZakZero {
  double x0 = 0.0;       // in [0, 1)
  double xi0 = 0.5;
  double residual = 0.0; // |Zg(x0, xi0)|
  bool at_jump = false;  // sign change across a jump of a discontinuous window
  double grid_x = 0.0;   // coarse grid minimiser of |Zg|
  double grid_xi = 0.0;
  int grid_n = 0;
};

/// Locates the unique zero of Zg in [0,1)^2.
///
/// Scans |Zg| on a grid_n x grid_n grid, then bisects the real section
/// x -> Zg(x, 1/2) on the unique bracketing cell. For windows with a jump the
/// section changes sign across the discontinuity instead of passing through
/// zero; that point is returned with at_jump set.
///
/// Throws NumericalFailure when no zero is found, when more than one sign
/// change or a second small grid value appears, or when the grid minimiser is
/// not on the line xi = 1/2.
ZakZero locate_zero(const TPWindow& w, int grid_n = 256, double zero_tol = 1e-10);

}  // namespace tpgabor
