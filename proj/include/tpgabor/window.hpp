#pragma once

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tpgabor/decay.hpp"
#include "tpgabor/matrix_section.hpp"

namespace tpgabor {

/// exp(-gamma t^2), gamma > 0
struct Gaussian {
  double gamma;
};

/// exp(-gamma t) on {gamma t >= 0}, zero elsewhere; gamma != 0
struct OneSidedExp {
  double gamma;
};

/// Window whose Fourier transform is the finite product
///
///   c exp(-gamma xi^2) exp(2 pi i nu xi) prod_j (1 + 2 pi i nu_j xi)^{-1} exp(-2 pi i nu_j xi)
///
/// with the convention ghat(xi) = int g(t) exp(-2 pi i t xi) dt. N is nus.size().
struct FiniteProduct {
  double gamma = 0.0;
  std::vector<double> nus;
  double nu = 0.0;
  double c = 1.0;
};

/// (exp(a t) + exp(-a t))^{-1}, a > 0
struct HyperbolicSecant {
  double a;
};

using WindowKind = std::variant<Gaussian, OneSidedExp, FiniteProduct, HyperbolicSecant>;

/// A totally positive window together with a certified decay envelope.
///
/// The window is g(t) = amplitude * g_kind(t). Construction validates the
/// parameters and precomputes whatever the evaluator needs (residue
/// polynomials for finite products), so evaluation
/// is cheap and the object is immutable afterwards.
class TPWindow {
 public:
  explicit TPWindow(WindowKind kind, double amplitude = 1.0);

  static TPWindow gaussian(double gamma);
  static TPWindow one_sided_exp(double gamma);
  static TPWindow finite_product(double gamma, std::vector<double> nus, double nu = 0.0, double c = 1.0);
  static TPWindow hyperbolic_secant(double a);
  /// exp(-lambda |t|) realized as a finite product with nus = {1/lambda, -1/lambda}.
  static TPWindow two_sided_exp(double lambda);

  double operator()(double t) const;

  const WindowKind& kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  const DecayProfile& decay() const { return decay_; }

  /// True for windows with a jump discontinuity (one-sided exponentials,
  /// including finite products with a single exponential factor and no
  /// Gaussian factor).
  bool has_jump() const { return has_jump_; }

  /// Location of the jump, if any.
  double jump_location() const { return jump_at_; }

  /// True for finite products with a Gaussian factor, which are evaluated by
  /// numerical convolution.
  bool uses_quadrature() const { return quadrature_; }

  /// beta^{-1/2} g(t / beta), expressed in the same family.
  TPWindow dilated(double beta) const;

  /// Fourier transform; available for every kind.
  std::complex<double> fourier(double xi) const;

  std::string name() const;

  /// Residue term exp(-tau/nu) * sum_i poly[i] tau^i, supported on sign(nu) * tau > 0.
  struct PoleTerm {
    double nu;
    std::vector<double> poly;
  };

 private:
  double evaluate_kind(double t) const;
  double evaluate_residues(double tau) const;
  double gaussian_smoothed_residues(double tau) const;
  friend double evaluate_by_quadrature(const TPWindow& w, double t);
  void prepare_finite_product();

  WindowKind kind_;
  double amplitude_ = 1.0;
  DecayProfile decay_;
  bool has_jump_ = false;
  double jump_at_ = 0.0;
  bool quadrature_ = false;
  double shift_ = 0.0;  // finite products: g(t) = c * h(t - shift_)
  std::vector<PoleTerm> poles_;
  int n_effective_ = 0;  // number of nonzero nu_j
};

/// g(t).
double evaluate(const TPWindow& w, double t);

/// Finite products with gamma > 0: the Gaussian kernel convolved with the
/// residue form, integrated on Gauss-Legendre panels. The integrand is
/// positive and log-concave on each half-line, so the result carries a
/// relative error near 1e-13 even deep in the tails.
double evaluate_by_quadrature(const TPWindow& w, double t);

/// Radius R with sum_{|k| > R} envelope(x - k) < tol for x in [0, 1].
double truncation_radius(const TPWindow& w, double tol);

/// The n x n matrix (g(x_j - y_k)); xs and ys strictly increasing, n <= 12.
MatrixSection tp_samples_matrix(const TPWindow& w, std::span<const double> xs, std::span<const double> ys);

}  // namespace tpgabor
