#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tpgabor {

/// Exact positive-or-zero rational in lowest terms, den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  /// Accepts "P/Q", integers and decimals. Decimals whose exact denominator
  /// exceeds max_den are replaced by the best approximation with
  /// denominator <= max_den; *approximated reports whether the input was a
  /// decimal (so callers can warn that only rational products are covered).
  static Rational parse(std::string_view text, bool* approximated = nullptr, std::int64_t max_den = 1'000'000);

  /// Best rational approximation with bounded denominator (continued fractions).
  static Rational approximate(double x, std::int64_t max_den);

  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator+(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

/// Lattice alpha Z x beta Z after the reduction to beta = 1: alpha = p/q.
struct RationalLattice {
  int p = 1;
  int q = 1;
  Rational beta{1};      // always 1 after reduction
  Rational dilation{1};  // original beta; the window is replaced by beta^{-1/2} g(t / beta)

  Rational alpha() const { return Rational(p, q); }
  double alpha_value() const { return static_cast<double>(p) / q; }
  /// alpha < 1, required by every operation that treats the lattice as a frame candidate.
  bool below_critical_density() const { return p < q; }
  void require_frame_candidate() const;
};

/// (alpha, beta) -> (alpha * beta, 1), with p/q in lowest terms.
RationalLattice reduce(const Rational& alpha, const Rational& beta);

/// One period of a p-periodic perturbation delta_k with {k + delta_k} in x + alpha Z
/// and delta_k in [x0 + M - 1 + eps, x0 + M - eps].
struct PerturbationSeq {
  std::vector<double> deltas;  // delta_0 .. delta_{p-1}
  std::vector<long> js;        // lattice indices: l + delta_l = x + alpha * j_l
  int M = 0;
  double eps = 0.0;
  double x = 0.0;
  double x0 = 0.0;
  int p = 1;
  int q = 1;

  /// delta_k for any integer k, by p-periodic extension.
  double delta(long k) const;
  /// Admissible interval for every delta_k.
  double lo() const { return x0 + M - 1 + eps; }
  double hi() const { return x0 + M - eps; }
};

/// Default eps = (1 - alpha) / 4.
double default_eps(const RationalLattice& lat);

/// M minimising |x0 + M - 1/2|, ties toward the smaller M.
int choose_M(double x0);

/// Periodic perturbation selection for rational alpha = p/q < 1.
///
/// For each residue l the lattice index j_l is searched over all integers;
/// among admissible candidates the one whose delta is closest to the middle of
/// the admissible interval is taken. Throws InvalidArgument when alpha >= 1
/// or eps >= (1 - alpha) / 2.
PerturbationSeq select_perturbation(const RationalLattice& lat, double x, double x0, double eps, int M);

}  // namespace tpgabor
