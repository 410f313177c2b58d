#pragma once

#include <variant>

namespace tpgabor {

/// C * exp(-lambda * |t|)
struct ExponentialRate {
  double lambda;
};

/// C * (1 + |t|)^(-sigma), sigma > 1
struct PolynomialRate {
  double sigma;
};

/// C * exp(-a * t^2)
struct GaussianRate {
  double a;
};

using DecayRate = std::variant<ExponentialRate, PolynomialRate, GaussianRate>;

/// Pointwise envelope |g(t)| <= envelope(t), nonincreasing in |t|.
///
/// All truncation decisions in the library go through this type, so the tail
/// bounds below are the only place where series error estimates originate.
struct DecayProfile {
  double C = 1.0;
  DecayRate rate = ExponentialRate{1.0};

  static DecayProfile exponential(double C, double lambda);
  static DecayProfile polynomial(double C, double sigma);
  static DecayProfile gaussian(double C, double a);

  double envelope(double t) const;

  /// Integral of the envelope over [a, inf), a >= 0.
  double tail_integral(double a) const;

  /// Upper bound for sum_{m >= 0} envelope(a + m * spacing), a >= 0.
  double lattice_tail(double a, double spacing) const;

  /// Throws InvalidArgument unless C > 0 and the rate parameter is admissible.
  void validate() const;
};

/// Smallest integer R >= 0 with sum_{|k| > R} envelope(x - k) < tol for every
/// x in [0, 1].
double truncation_radius(const DecayProfile& decay, double tol);

/// Smallest integer T >= 0 such that the envelope summed over any p-spaced
/// sequence of points outside [-T, T] stays below tol. Used by the Zak sums.
double lattice_radius(const DecayProfile& decay, double tol, double spacing);

}  // namespace tpgabor
