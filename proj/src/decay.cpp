#include "tpgabor/decay.hpp"

#include <cmath>
#include <numbers>

#include "tpgabor/error.hpp"

namespace tpgabor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Smallest integer r >= 0 with bound(r) < tol, where bound is nonincreasing.
template <class Bound>
double smallest_radius(Bound bound, double tol) {
  if (bound(0.0) < tol) return 0.0;
  double hi = 1.0;
  while (!(bound(hi) < tol)) {
    hi *= 2.0;
    if (hi > 1e15) throw InvalidArgument("truncation radius exceeds 1e15; tolerance too small for this decay");
  }
  double lo = hi / 2.0;  // bound(lo) >= tol unless lo == 0.5
  lo = std::floor(lo);
  while (hi - lo > 1.0) {
    const double mid = std::floor((lo + hi) / 2.0);
    if (bound(mid) < tol) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace

DecayProfile DecayProfile::exponential(double C, double lambda) {
  DecayProfile d{C, ExponentialRate{lambda}};
  d.validate();
  return d;
}

DecayProfile DecayProfile::polynomial(double C, double sigma) {
  DecayProfile d{C, PolynomialRate{sigma}};
  d.validate();
  return d;
}

DecayProfile DecayProfile::gaussian(double C, double a) {
  DecayProfile d{C, GaussianRate{a}};
  d.validate();
  return d;
}

void DecayProfile::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw InvalidArgument("decay constant C must be positive");
  std::visit(overloaded{
                 [](ExponentialRate r) {
                   if (!(r.lambda > 0.0)) throw InvalidArgument("exponential decay rate must be positive");
                 },
                 [](PolynomialRate r) {
                   if (!(r.sigma > 1.0)) throw InvalidArgument("polynomial decay exponent must exceed 1");
                 },
                 [](GaussianRate r) {
                   if (!(r.a > 0.0)) throw InvalidArgument("gaussian decay rate must be positive");
                 },
             },
             rate);
}

double DecayProfile::envelope(double t) const {
  const double s = std::abs(t);
  return std::visit(overloaded{
                        [&](ExponentialRate r) { return C * std::exp(-r.lambda * s); },
                        [&](PolynomialRate r) { return C * std::pow(1.0 + s, -r.sigma); },
                        [&](GaussianRate r) { return C * std::exp(-r.a * s * s); },
                    },
                    rate);
}

double DecayProfile::tail_integral(double a) const {
  a = std::max(a, 0.0);
  return std::visit(overloaded{
                        [&](ExponentialRate r) { return C * std::exp(-r.lambda * a) / r.lambda; },
                        [&](PolynomialRate r) { return C * std::pow(1.0 + a, 1.0 - r.sigma) / (r.sigma - 1.0); },
                        [&](GaussianRate r) {
                          const double sa = std::sqrt(r.a);
                          return C * 0.5 * std::sqrt(std::numbers::pi) / sa * std::erfc(sa * a);
                        },
                    },
                    rate);
}

double DecayProfile::lattice_tail(double a, double spacing) const {
  // monotone envelope: sum_{m>=0} f(a + m h) <= f(a) + (1/h) * int_a^inf f
  return envelope(a) + tail_integral(a) / spacing;
}

double truncation_radius(const DecayProfile& decay, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  // k >= R+1 gives |x-k| >= R, k <= -R-1 gives |x-k| >= R+1, for x in [0,1]
  return smallest_radius(
      [&](double r) { return decay.lattice_tail(r, 1.0) + decay.lattice_tail(r + 1.0, 1.0); }, tol);
}

double lattice_radius(const DecayProfile& decay, double tol, double spacing) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!(spacing > 0.0)) throw InvalidArgument("spacing must be positive");
  return smallest_radius([&](double r) { return 2.0 * decay.lattice_tail(r, spacing); }, tol);
}

}  // namespace tpgabor
