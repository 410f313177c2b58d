#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "tpgabor/error.hpp"
#include "tpgabor/pregramian.hpp"

using namespace tpgabor;
using std::numbers::pi;

namespace {

// min over x, xi of sum_r |Zg(x + r/q, xi)|^2 by plain summation: the exact
// lower frame bound when alpha = 1/q and beta = 1.
double brute_symbol_bound(const TPWindow& w, int q, int n) {
  double best = INFINITY;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = double(i) / n, xi = double(j) / n;
      double s = 0.0;
      for (int r = 0; r < q; ++r) {
        std::complex<double> z = 0.0;
        for (int k = -60; k <= 60; ++k) z += w(x + double(r) / q - k) * std::polar(1.0, 2.0 * pi * k * xi);
        s += std::norm(z);
      }
      best = std::min(best, s);
    }
  return best;
}

FrameBoundsOptions quick() {
  FrameBoundsOptions o;
  o.x_grid_n = 16;
  o.ladder = {8, 16, 32};
  return o;
}

}  // namespace

TEST_CASE("pre-Gramian entries") {
  const auto w = TPWindow::gaussian(pi);
  const auto lat = reduce(Rational(2, 3), Rational(1));
  const auto s = pregramian_section(w, lat, 0.3, 5);
  CHECK(s.first_row() == -5);
  CHECK(s.last_row() == 5);
  CHECK(s.last_col() >= 4);
  for (long j = -5; j <= 5; ++j)
    for (long k = s.first_col(); k <= s.last_col(); ++k)
      CHECK(s.at(j, k) == doctest::Approx(w(0.3 + 2.0 * j / 3.0 - k)).epsilon(1e-14));
}

TEST_CASE("restricted lower bound equals a direct SVD") {
  const auto w = TPWindow::two_sided_exp(1.0);
  const auto lat = reduce(Rational(1, 2), Rational(1));
  const auto s = pregramian_section(w, lat, 0.4, 30);
  const int buffer = 5;
  const long kin = s.last_col() - buffer;
  const Eigen::MatrixXd inner = s.entries.block(0, (-kin) - s.first_col(), s.rows(), 2 * kin + 1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(inner);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  CHECK(lower_bound_at_x(w, lat, 0.4, 30, 1e-10, buffer) == doctest::Approx(smin * smin).epsilon(1e-9));
  CHECK_THROWS_AS(lower_bound_at_x(w, lat, 0.4, 2, 1e-10, 10000), InvalidArgument);
}

TEST_CASE("gaussian at alpha = 1/2: frame with a converging ladder") {
  const auto w = TPWindow::gaussian(pi);
  const auto lat = reduce(Rational(1, 2), Rational(1));
  const FrameDiagnosis d = frame_bounds(w, lat, quick());
  CHECK(d.verdict == Verdict::Frame);
  REQUIRE(d.ladder_trace.size() == 3);
  for (std::size_t i = 1; i < d.ladder_trace.size(); ++i)
    CHECK(d.ladder_trace[i].A <= d.ladder_trace[i - 1].A * (1.0 + 1e-12));
  CHECK(d.lower_bound_est > 0.0);
  CHECK(d.upper_bound_est >= d.lower_bound_est);
  CHECK(d.upper_bound_est <= upper_bound_ceiling(w, lat));
  const double exact = brute_symbol_bound(w, 2, 64);
  CHECK(d.lower_bound_est == doctest::Approx(exact).epsilon(0.10));
}

TEST_CASE("two-sided exponential at alpha = 1/3 against the symbol bound") {
  const auto w = TPWindow::two_sided_exp(1.0);
  const auto lat = reduce(Rational(1, 3), Rational(1));
  const FrameDiagnosis d = frame_bounds(w, lat, quick());
  CHECK(d.verdict == Verdict::Frame);
  CHECK(d.lower_bound_est == doctest::Approx(brute_symbol_bound(w, 3, 48)).epsilon(0.10));
}

TEST_CASE("density short-circuits") {
  const auto g = TPWindow::gaussian(pi);
  const auto over = frame_bounds(g, reduce(Rational(3, 2), Rational(1)), quick());
  CHECK(over.verdict == Verdict::NotFrame);
  CHECK(over.ladder_trace.empty());
  REQUIRE_FALSE(over.evidence.empty());
  CHECK(over.evidence.front().name == "density");
  const auto crit = frame_bounds(g, reduce(Rational(1), Rational(1)), quick());
  CHECK(crit.verdict == Verdict::NotFrame);
  CHECK(crit.ladder_trace.empty());
}

TEST_CASE("one-sided exponential at critical density runs the ladder") {
  const auto eta = TPWindow::one_sided_exp(1.0);
  const auto d = frame_bounds(eta, reduce(Rational(1), Rational(1)), quick());
  CHECK(d.ladder_trace.size() == 3);
  CHECK(d.verdict != Verdict::NotFrame);
  CHECK(d.lower_bound_est > 1e-3);
}

TEST_CASE("frame_bounds option checks") {
  const auto g = TPWindow::gaussian(pi);
  const auto lat = reduce(Rational(1, 2), Rational(1));
  FrameBoundsOptions o = quick();
  o.x_grid_n = 4;
  CHECK_THROWS_AS(frame_bounds(g, lat, o), InvalidArgument);
  o = quick();
  o.ladder = {8, 8, 16};
  CHECK_THROWS_AS(frame_bounds(g, lat, o), InvalidArgument);
  o.ladder = {8, 16};
  CHECK_THROWS_AS(frame_bounds(g, lat, o), InvalidArgument);
}
