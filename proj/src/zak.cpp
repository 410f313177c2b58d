#include "tpgabor/zak.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tpgabor/error.hpp"

namespace tpgabor {

namespace {

// periodic distance on the unit circle
double circle_dist(double a, double b) {
  double d = std::abs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

double wrap01(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace

ZakEvaluator::ZakEvaluator(const TPWindow& w, double p, double tol) : w_(&w), p_(p) {
  if (!(p > 0.0)) throw InvalidArgument("zak: period p must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("zak: tolerance must be positive");
  radius_ = lattice_radius(w.decay(), tol, p);
  trunc_err_ = 2.0 * w.decay().lattice_tail(radius_, p);
}

ZakValue ZakEvaluator::operator()(double x, double xi) const {
  const auto k_lo = static_cast<long>(std::ceil((x - radius_) / p_));
  const auto k_hi = static_cast<long>(std::floor((x + radius_) / p_));
  double re = 0.0, im = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) {
    const double kp = p_ * static_cast<double>(k);
    const double g = (*w_)(x - kp);
    if (g == 0.0) continue;
    const double phase = kp * xi;
    const double ang = 2.0 * std::numbers::pi * (phase - std::floor(phase));
    re += g * std::cos(ang);
    im += g * std::sin(ang);
  }
  return {re, im, trunc_err_};
}

ZakValue zak(const TPWindow& w, double p, double x, double xi, double tol) {
  return ZakEvaluator(w, p, tol)(x, xi);
}

double zak_on_half_line(const TPWindow& w, double x, double tol) {
  const ZakValue z = zak(w, 1.0, x, 0.5, tol);
  if (std::abs(z.im) >= tol)
    throw NumericalFailure("zak_on_half_line: imaginary part " + std::to_string(z.im) + " exceeds tolerance");
  return z.re;
}

ZakZero locate_zero(const TPWindow& w, int grid_n, double zero_tol) {
  if (grid_n < 64) throw InvalidArgument("locate_zero: grid_n must be at least 64");
  if (!(zero_tol > 0.0)) throw InvalidArgument("locate_zero: zero_tol must be positive");

  const ZakEvaluator Z(w, 1.0, zero_tol / 100.0);
  const double h = 1.0 / grid_n;

  std::vector<double> absz(static_cast<std::size_t>(grid_n) * grid_n);
  std::size_t best = 0;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * grid_n + j;
      absz[idx] = Z(i * h, j * h).abs();
      if (absz[idx] < absz[best]) best = idx;
    }

  ZakZero out;
  out.grid_n = grid_n;
  out.grid_x = static_cast<double>(best / grid_n) * h;
  out.grid_xi = static_cast<double>(best % grid_n) * h;
  if (circle_dist(out.grid_xi, 0.5) > h * (1.0 + 1e-9))
    throw NumericalFailure("locate_zero: grid minimiser of |Zg| at xi = " + std::to_string(out.grid_xi) +
                           " is not on the line xi = 1/2");

  auto section = [&](double x) { return Z(x, 0.5).re; };
  std::vector<double> f(static_cast<std::size_t>(grid_n) + 1);
  for (int i = 0; i <= grid_n; ++i) f[i] = section(i * h);

  // sign changes of the real section over one period
  std::vector<int> brackets;
  std::vector<int> nodes;
  for (int i = 0; i < grid_n; ++i) {
    if (f[i] == 0.0)
      nodes.push_back(i);
    else if (f[i + 1] != 0.0 && (f[i] < 0.0) != (f[i + 1] < 0.0))
      brackets.push_back(i);
  }
  const std::size_t candidates = brackets.size() + nodes.size();
  if (candidates == 0) throw NumericalFailure("locate_zero: Zg(., 1/2) has no sign change; zero not found");
  if (candidates > 1)
    throw NumericalFailure("locate_zero: " + std::to_string(candidates) + " zero candidates on the line xi = 1/2");

  double x0;
  if (!nodes.empty()) {
    x0 = nodes.front() * h;
  } else {
    double a = brackets.front() * h, b = a + h;
    double fa = f[brackets.front()];
    for (int it = 0; it < 200 && b - a > 4e-16 * std::max(1.0, std::abs(a)); ++it) {
      const double m = 0.5 * (a + b);
      const double fm = section(m);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    x0 = std::abs(section(a)) <= std::abs(section(b)) ? a : b;
  }

  out.x0 = wrap01(x0);
  out.xi0 = 0.5;
  out.residual = Z(out.x0, 0.5).abs();
  if (out.residual > zero_tol) {
    if (w.has_jump() && circle_dist(x0, w.jump_location()) < 1e-9) {
      out.at_jump = true;
      out.x0 = wrap01(w.jump_location());
      out.residual = Z(out.x0, 0.5).abs();
    } else {
      throw NumericalFailure("locate_zero: section changes sign but |Zg| = " + std::to_string(out.residual) +
                             " at the crossing; zero not found");
    }
  }

  if (circle_dist(out.x0, out.grid_x) > 1.5 * h)
    throw NumericalFailure("locate_zero: refined zero is not adjacent to the grid minimiser");

  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      const double v = absz[static_cast<std::size_t>(i) * grid_n + j];
      if (v >= 10.0 * zero_tol) continue;
      const double dx = circle_dist(i * h, out.x0) / h, dxi = circle_dist(j * h, 0.5) / h;
      if (std::max(dx, dxi) > 1.0 + 1e-9)
        throw NumericalFailure("locate_zero: second near-zero of |Zg| at grid cell (" + std::to_string(i * h) + ", " +
                               std::to_string(j * h) + ")");
    }
  return out;
}

}  // namespace tpgabor
