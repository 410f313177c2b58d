#include <doctest.h>

#include <cmath>

#include "tpgabor/decay.hpp"
#include "tpgabor/error.hpp"

using namespace tpgabor;

namespace {

// Brute-force sup over x in [0, 1] of sum_{|k| > R} envelope(x - k), using
// monotonicity of the envelope: the worst cases sit at the interval ends.
double brute_tail(const DecayProfile& d, long R, long terms) {
  double worst = 0.0;
  for (double x : {0.0, 1.0}) {
    double s = 0.0;
    for (long k = R + 1; k <= R + terms; ++k) s += d.envelope(x - k) + d.envelope(x + k);
    worst = std::max(worst, s);
  }
  return worst;
}

double trapezoid(const DecayProfile& d, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (d.envelope(a) + d.envelope(b));
  for (int i = 1; i < n; ++i) s += d.envelope(a + i * h);
  return s * h;
}

}  // namespace

TEST_CASE("envelope shapes") {
  const auto e = DecayProfile::exponential(2.0, 0.5);
  CHECK(e.envelope(0.0) == doctest::Approx(2.0));
  CHECK(e.envelope(-4.0) == doctest::Approx(2.0 * std::exp(-2.0)));
  const auto p = DecayProfile::polynomial(1.0, 3.0);
  CHECK(p.envelope(1.0) == doctest::Approx(0.125));
  const auto g = DecayProfile::gaussian(1.5, 2.0);
  CHECK(g.envelope(1.0) == doctest::Approx(1.5 * std::exp(-2.0)));
}

TEST_CASE("tail integrals agree with quadrature") {
  for (const auto& d : {DecayProfile::exponential(1.0, 1.3), DecayProfile::polynomial(2.0, 2.5),
                        DecayProfile::gaussian(1.0, 0.7)}) {
    for (double a : {0.0, 0.5, 3.0}) {
      const double upper = a + 400.0;
      const double numeric = trapezoid(d, a, upper, 400000);
      const double rest = d.tail_integral(upper);
      CHECK(d.tail_integral(a) == doctest::Approx(numeric + rest).epsilon(1e-6));
    }
  }
}

TEST_CASE("lattice_tail bounds the lattice sum") {
  for (const auto& d : {DecayProfile::exponential(1.0, 0.3), DecayProfile::polynomial(1.0, 1.5),
                        DecayProfile::gaussian(3.0, 0.1)}) {
    for (double h : {0.25, 1.0, 3.0}) {
      double s = 0.0;
      for (int m = 0; m < 200000; ++m) s += d.envelope(2.0 + m * h);
      CHECK(s <= d.lattice_tail(2.0, h));
    }
  }
}

TEST_CASE("truncation radius is sufficient and nearly minimal for exponential decay") {
  const auto d = DecayProfile::exponential(1.0, 1.0);
  for (double tol : {1e-3, 1e-8, 1e-12}) {
    const auto R = static_cast<long>(truncation_radius(d, tol));
    CHECK(brute_tail(d, R, 2000) < tol);
    CHECK(brute_tail(d, R - 3, 2000) >= tol);
  }
}

TEST_CASE("truncation radius for polynomial decay sigma = 2") {
  const auto d = DecayProfile::polynomial(1.0, 2.0);
  const double R = truncation_radius(d, 1e-3);
  CHECK(R >= 1000.0);
  CHECK(R <= 2100.0);
  CHECK(brute_tail(d, static_cast<long>(R), 10'000'000) < 1e-3);
}

TEST_CASE("lattice radius scales with spacing") {
  const auto d = DecayProfile::exponential(1.0, 2.0);
  const double T1 = lattice_radius(d, 1e-10, 1.0);
  const double T3 = lattice_radius(d, 1e-10, 3.0);
  CHECK(T3 <= T1);
  double s = 0.0;
  for (int m = 0; m < 1000; ++m) s += 2.0 * d.envelope(T1 + m);
  CHECK(s <= 1e-10);
}

TEST_CASE("invalid profiles are rejected") {
  CHECK_THROWS_AS(DecayProfile::exponential(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(DecayProfile::exponential(1.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(DecayProfile::polynomial(1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(DecayProfile::gaussian(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(truncation_radius(DecayProfile::exponential(1.0, 1.0), 0.0), InvalidArgument);
  CHECK_THROWS_AS(truncation_radius(DecayProfile::polynomial(1.0, 1.0001), 1e-300), InvalidArgument);
}
