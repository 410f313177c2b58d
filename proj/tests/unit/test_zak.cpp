#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "tpgabor/error.hpp"
#include "tpgabor/zak.hpp"

using namespace tpgabor;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

// Dual (Poisson) representation: Z_p g(x, xi) = (1/p) sum_n e^{2 pi i x (xi - n/p)} ghat(xi - n/p).
cd zak_dual(const TPWindow& w, double p, double x, double xi, int terms) {
  cd acc = 0.0;
  for (int n = -terms; n <= terms; ++n) {
    const double s = xi - static_cast<double>(n) / p;
    acc += std::polar(1.0, 2.0 * pi * x * s) * w.fourier(s);
  }
  return acc / p;
}

cd zak_direct(const TPWindow& w, double p, double x, double xi, int terms) {
  cd acc = 0.0;
  for (int k = -terms; k <= terms; ++k) acc += w(x - p * k) * std::polar(1.0, 2.0 * pi * p * k * xi);
  return acc;
}

}  // namespace

TEST_CASE("gaussian zak transform matches its Poisson dual") {
  const auto g = TPWindow::gaussian(pi);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double p : {1.0, 2.0, 3.0}) {
    const ZakEvaluator Z(g, p, 1e-13);
    for (int i = 0; i < 40; ++i) {
      const double x = 3.0 * u(rng) - 1.0, xi = u(rng);
      CHECK(std::abs(Z(x, xi).value() - zak_dual(g, p, x, xi, 40)) < 1e-12);
    }
  }
}

TEST_CASE("zak sums agree with long direct sums for every family") {
  const TPWindow windows[] = {TPWindow::two_sided_exp(1.0), TPWindow::hyperbolic_secant(pi),
                              TPWindow::one_sided_exp(1.0), TPWindow::finite_product(0.3, {0.7})};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& w : windows) {
    CAPTURE(w.name());
    const ZakEvaluator Z(w, 2.0, 1e-12);
    for (int i = 0; i < 20; ++i) {
      const double x = 2.0 * u(rng), xi = u(rng);
      CHECK(std::abs(Z(x, xi).value() - zak_direct(w, 2.0, x, xi, 200)) < 1e-11);
    }
  }
}

TEST_CASE("quasi-periodicity of Z_p") {
  const TPWindow windows[] = {TPWindow::gaussian(pi), TPWindow::two_sided_exp(1.0), TPWindow::hyperbolic_secant(1.0)};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double tol = 1e-10;
  for (const auto& w : windows) {
    for (double p : {1.0, 3.0}) {
      const ZakEvaluator Z(w, p, tol);
      for (int i = 0; i < 100; ++i) {
        const double x = u(rng), xi = u(rng);
        const cd z = Z(x, xi).value();
        CHECK(std::abs(Z(x + p, xi).value() - std::polar(1.0, 2.0 * pi * p * xi) * z) < 2.0 * tol);
        CHECK(std::abs(Z(x, xi + 1.0 / p).value() - z) < 2.0 * tol);
      }
    }
  }
}

TEST_CASE("half line section is real") {
  const auto g = TPWindow::hyperbolic_secant(2.0);
  for (double x : {0.0, 0.2, 0.77}) CHECK(std::isfinite(zak_on_half_line(g, x, 1e-10)));
}

TEST_CASE("gaussian zero sits at (1/2, 1/2)") {
  const auto z = locate_zero(TPWindow::gaussian(pi));
  CHECK(std::abs(z.x0 - 0.5) < 1e-6);
  CHECK(z.xi0 == 0.5);
  CHECK(z.residual < 1e-10);
  CHECK_FALSE(z.at_jump);
}

TEST_CASE("zero location for symmetric and one-sided windows") {
  for (const auto& w : {TPWindow::two_sided_exp(1.0), TPWindow::hyperbolic_secant(pi), TPWindow::gaussian(0.3)}) {
    const auto z = locate_zero(w, 128);
    CHECK(std::abs(z.x0 - 0.5) < 1e-6);
  }
  const auto eta = locate_zero(TPWindow::one_sided_exp(1.0), 128);
  CHECK(eta.at_jump);
  CHECK(eta.x0 == 0.0);
}

TEST_CASE("zero agrees with brute-force grid minimum and is stable under grid doubling") {
  for (const auto& w : {TPWindow::gaussian(pi), TPWindow::two_sided_exp(2.0), TPWindow::finite_product(0.0, {0.5, -0.25})}) {
    CAPTURE(w.name());
    const auto coarse = locate_zero(w, 64);
    const auto fine = locate_zero(w, 128);
    CHECK(std::abs(coarse.x0 - fine.x0) < 1.0 / 64);

    const int n = 64;
    double best = INFINITY, bx = 0, bxi = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = std::abs(zak_direct(w, 1.0, double(i) / n, double(j) / n, 100));
        if (v < best) best = v, bx = double(i) / n, bxi = double(j) / n;
      }
    CHECK(std::abs(bxi - 0.5) <= 1.0 / n + 1e-12);
    const double dx = std::abs(bx - coarse.x0);
    CHECK(std::min(dx, 1.0 - dx) <= 1.5 / n);
  }
}

TEST_CASE("zak argument checks") {
  const auto g = TPWindow::gaussian(1.0);
  CHECK_THROWS_AS(ZakEvaluator(g, 0.0, 1e-10), InvalidArgument);
  CHECK_THROWS_AS(ZakEvaluator(g, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(locate_zero(g, 32), InvalidArgument);
}
