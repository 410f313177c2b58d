#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "tpgabor/error.hpp"
#include "tpgabor/tp_matrix.hpp"
#include "tpgabor/zak.hpp"

using namespace tpgabor;
using std::numbers::pi;

namespace {

PerturbationSeq make_pert(const TPWindow& w, int p, int q, double x) {
  const auto lat = reduce(Rational(p, q), Rational(1));
  const ZakZero z = locate_zero(w, 128);
  return select_perturbation(lat, x, z.x0, default_eps(lat), choose_M(z.x0));
}

// Every n x n minor with contiguous-or-not index sets, enumerated exhaustively
// for a small matrix.
double min_normalized_minor(const Eigen::MatrixXd& A, int n) {
  const int m = static_cast<int>(A.rows());
  double worst = INFINITY;
  std::vector<int> rows(n), cols(n);
  std::vector<bool> rsel(m), csel(m);
  std::fill(rsel.begin(), rsel.begin() + n, true);
  do {
    int a = 0;
    for (int i = 0; i < m; ++i)
      if (rsel[i]) rows[a++] = i;
    std::fill(csel.begin(), csel.end(), false);
    std::fill(csel.begin(), csel.begin() + n, true);
    do {
      int b = 0;
      for (int i = 0; i < m; ++i)
        if (csel[i]) cols[b++] = i;
      Eigen::MatrixXd sub(n, n);
      double amax = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sub(i, j) = A(rows[i], cols[j]), amax = std::max(amax, std::abs(sub(i, j)));
      worst = std::min(worst, sub.determinant() / std::pow(amax, n));
    } while (std::prev_permutation(csel.begin(), csel.end()));
  } while (std::prev_permutation(rsel.begin(), rsel.end()));
  return worst;
}

}  // namespace

TEST_CASE("G entries and exact commutation with the shift by p") {
  const auto w = TPWindow::gaussian(pi);
  for (auto [p, q] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{5, 7}}) {
    const auto pert = make_pert(w, p, q, 0.21);
    const int K = 3 * p + 4;
    const auto G = build_G(w, pert, K);
    CHECK(G.rows() == 2 * K + 1);
    for (long k = -K; k <= K; ++k)
      for (long l = -K; l <= K; ++l) {
        CHECK(G.at(k, l) == w(static_cast<double>(k - l) + pert.delta(k)));
        if (k + p <= K && l + p <= K) CHECK(G.at(k + p, l + p) == G.at(k, l));
      }
  }
  CHECK_THROWS_AS(build_G(w, make_pert(w, 2, 3, 0.0), 1), InvalidArgument);
}

TEST_CASE("alternating witness identity") {
  for (const auto& w : {TPWindow::gaussian(pi), TPWindow::two_sided_exp(1.0), TPWindow::hyperbolic_secant(pi)}) {
    CAPTURE(w.name());
    for (auto [p, q] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{3, 8}}) {
      const auto pert = make_pert(w, p, q, 0.1);
      const auto wit = alternating_witness(w, pert, 12);
      CHECK(wit.max_deviation < 1e-8);
      CHECK(wit.sign_pattern_ok);
      CHECK(wit.nu > 0.0);
      for (std::size_t i = 0; i < wit.ks.size(); ++i) {
        const long k = wit.ks[i];
        const double z = zak(w, 1.0, pert.delta(k), 0.5, 1e-12).re;
        CHECK(wit.expected[i] == doctest::Approx((k % 2 == 0 ? 1.0 : -1.0) * z).epsilon(1e-9));
      }
      CHECK(wit.nu >= witness_gap(w, pert.x0, pert.M, pert.eps) - 1e-9);
    }
  }
}

TEST_CASE("apply_G agrees with the dense section") {
  const auto w = TPWindow::two_sided_exp(1.0);
  const auto pert = make_pert(w, 2, 5, 0.33);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  std::vector<double> c(9);
  for (auto& v : c) v = n01(rng);
  const long c_off = -4;
  auto [k_lo, d] = apply_G(w, pert, c_off, c);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const long k = k_lo + static_cast<long>(i);
    double want = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) want += w(k + pert.delta(k) - (c_off + static_cast<long>(j))) * c[j];
    CHECK(d[i] == doctest::Approx(want).epsilon(1e-13).scale(1e-15));
  }
}

TEST_CASE("minor audit passes on totally positive sections") {
  for (const auto& w : {TPWindow::gaussian(pi), TPWindow::one_sided_exp(1.0), TPWindow::two_sided_exp(1.0)}) {
    const auto G = build_G(w, make_pert(w, 2, 3, 0.4), 10);
    const auto rep = tp_minor_audit(G, 6, 3000);
    CHECK(rep.pass);
    CHECK(rep.trials == 3000);
  }
}

TEST_CASE("minor audit agrees with exhaustive enumeration on a small section") {
  const auto w = TPWindow::gaussian(1.0);
  const auto G = build_G(w, make_pert(w, 1, 2, 0.3), 3);  // 7 x 7
  for (int n = 1; n <= 3; ++n) CHECK(min_normalized_minor(G.entries, n) >= -1e-10);
  MatrixSection bad;
  bad.entries = Eigen::MatrixXd{{1.0, 2.0, 0.0}, {2.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  CHECK(min_normalized_minor(bad.entries, 2) < 0.0);
  const auto rep = tp_minor_audit(bad, 2, 500, 3);
  CHECK_FALSE(rep.pass);
  CHECK(rep.min_normalized_det == doctest::Approx(min_normalized_minor(bad.entries, 2)));
  CHECK(rep.worst_rows.size() == 2);
}

TEST_CASE("minor audit is reproducible for a fixed seed") {
  const auto w = TPWindow::gaussian(pi);
  const auto G = build_G(w, make_pert(w, 1, 2, 0.0), 8);
  const auto a = tp_minor_audit(G, 5, 800, 99), b = tp_minor_audit(G, 5, 800, 99);
  CHECK(a.min_normalized_det == b.min_normalized_det);
  CHECK(a.worst_rows == b.worst_rows);
  CHECK_THROWS_AS(tp_minor_audit(G, 9, 10), InvalidArgument);
}

TEST_CASE("inverse decay of invertible gaussian sections") {
  const auto w = TPWindow::gaussian(pi);
  const auto pert = make_pert(w, 1, 2, 0.2);
  const auto f16 = inverse_decay_profile(build_G(w, pert, 16));
  const auto f32 = inverse_decay_profile(build_G(w, pert, 32));
  CHECK(f16.sigma > 1.0);
  CHECK(f32.sigma > 1.0);
  CHECK(std::abs(f16.sigma - f32.sigma) <= 0.2 * std::max(f16.sigma, f32.sigma));
}

TEST_CASE("inverse decay profile of known matrices") {
  MatrixSection diag;
  diag.entries = Eigen::MatrixXd::Identity(12, 12) * 3.0;
  CHECK(std::isinf(inverse_decay_profile(diag).sigma));

  // tridiagonal Toeplitz (1, 4, 1): inverse entries decay like r^{|k-l|}, r = 2 - sqrt 3
  const int n = 40;
  MatrixSection tri;
  tri.entries = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    tri.entries(i, i) = 4.0;
    if (i + 1 < n) tri.entries(i, i + 1) = tri.entries(i + 1, i) = 1.0;
  }
  const auto fit = inverse_decay_profile(tri);
  CHECK(fit.sigma > 3.0);
  const Eigen::MatrixXd inv = tri.entries.inverse();
  for (int d = 1; d <= std::min(fit.max_distance, n / 4 - 1); ++d)
    CHECK(std::abs(inv(n / 2, n / 2 + d)) <= fit.C * std::pow(1.0 + d, -fit.sigma) * (1.0 + 1e-9));

  MatrixSection singular;
  singular.entries = Eigen::MatrixXd::Ones(5, 5);
  CHECK_THROWS_AS(inverse_decay_profile(singular), NumericalFailure);
}
