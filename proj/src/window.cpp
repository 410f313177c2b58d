#include "tpgabor/window.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "tpgabor/error.hpp"

namespace tpgabor {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Truncated power-series product, degree < n.
std::vector<double> series_mul(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n && i < a.size(); ++i)
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Residue polynomials of prod_j (1 + nu_j s)^{-1} e^{s tau} for the inverse
// two-sided Laplace transform. Poles with nu > 0 give the tau > 0 part, poles
// with nu < 0 the tau < 0 part (with a sign flip).
std::vector<TPWindow::PoleTerm> residue_terms(const std::vector<double>& nus) {
  std::map<double, int> mult;
  for (double v : nus)
    if (v != 0.0) ++mult[v];

  std::vector<TPWindow::PoleTerm> terms;
  for (const auto& [nu, m] : mult) {
    const double s0 = -1.0 / nu;
    const auto n = static_cast<std::size_t>(m);
    std::vector<double> q(n, 0.0);
    q[0] = 1.0;
    for (const auto& [mu, mm] : mult) {
      if (mu == nu) continue;
      const double a = 1.0 + mu * s0;  // nonzero since mu != nu
      std::vector<double> f(n);
      double r = 1.0 / a;
      for (std::size_t k = 0; k < n; ++k) {
        f[k] = r;
        r *= -mu / a;
      }
      for (int rep = 0; rep < mm; ++rep) q = series_mul(q, f, n);
    }
    const double sign = nu > 0.0 ? 1.0 : -1.0;
    const double scale = sign * std::pow(nu, -m);
    TPWindow::PoleTerm term{nu, std::vector<double>(n)};
    double fact = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) fact *= static_cast<double>(i);
      term.poly[i] = scale * q[n - 1 - i] / fact;
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

double sech_half(double a, double t) {
  const double e = std::exp(-a * std::abs(t));
  return e / (1.0 + e * e);
}

}  // namespace

TPWindow::TPWindow(WindowKind kind, double amplitude) : kind_(std::move(kind)), amplitude_(amplitude) {
  if (!(amplitude_ > 0.0) || !std::isfinite(amplitude_)) throw InvalidArgument("window amplitude must be positive");
  std::visit(overloaded{
                 [&](const Gaussian& g) {
                   if (!(g.gamma > 0.0) || !std::isfinite(g.gamma))
                     throw InvalidArgument("gaussian window requires gamma > 0");
                   decay_ = DecayProfile{amplitude_, GaussianRate{g.gamma}};
                 },
                 [&](const OneSidedExp& e) {
                   if (e.gamma == 0.0 || !std::isfinite(e.gamma))
                     throw InvalidArgument("one-sided exponential requires gamma != 0");
                   decay_ = DecayProfile{amplitude_, ExponentialRate{std::abs(e.gamma)}};
                   has_jump_ = true;
                   jump_at_ = 0.0;
                 },
                 [&](const FiniteProduct&) { prepare_finite_product(); },
                 [&](const HyperbolicSecant& s) {
                   if (!(s.a > 0.0) || !std::isfinite(s.a))
                     throw InvalidArgument("hyperbolic secant requires a > 0");
                   decay_ = DecayProfile{amplitude_, ExponentialRate{s.a}};
                 },
             },
             kind_);
  decay_.validate();
}

void TPWindow::prepare_finite_product() {
  const auto& fp = std::get<FiniteProduct>(kind_);
  if (fp.nus.empty()) throw InvalidArgument("finite product requires N >= 1 factors");
  if (!(fp.c > 0.0) || !std::isfinite(fp.c)) throw InvalidArgument("finite product requires c > 0");
  if (!(fp.gamma >= 0.0) || !std::isfinite(fp.gamma)) throw InvalidArgument("finite product requires gamma >= 0");
  if (!std::isfinite(fp.nu)) throw InvalidArgument("finite product shift nu must be finite");
  double nu_sq = 0.0, nu_sum = 0.0;
  for (double v : fp.nus) {
    if (!std::isfinite(v)) throw InvalidArgument("finite product nu_j must be finite");
    nu_sq += v * v;
    nu_sum += v;
    if (v != 0.0) ++n_effective_;
  }
  if (!(fp.gamma + nu_sq > 0.0)) throw InvalidArgument("finite product requires gamma + sum nu_j^2 > 0");

  shift_ = nu_sum - fp.nu;
  quadrature_ = fp.gamma > 0.0;
  poles_ = residue_terms(fp.nus);
  has_jump_ = !quadrature_ && n_effective_ == 1;
  jump_at_ = shift_;

  const double scale = amplitude_ * fp.c;
  if (poles_.empty()) {
    // pure Gaussian factor, shifted: (t-S)^2 >= t^2/2 - S^2
    const double b = kPi * kPi / fp.gamma;
    const double peak = scale * std::sqrt(kPi / fp.gamma);
    if (shift_ == 0.0)
      decay_ = DecayProfile{peak, GaussianRate{b}};
    else
      decay_ = DecayProfile{peak * std::exp(b * shift_ * shift_), GaussianRate{b / 2.0}};
    return;
  }

  double lambda_min = INFINITY;
  bool repeated = false;
  for (const auto& p : poles_) {
    lambda_min = std::min(lambda_min, 1.0 / std::abs(p.nu));
    repeated = repeated || p.poly.size() > 1;
  }
  const double lambda = repeated ? lambda_min / 2.0 : lambda_min;
  double c_exp = 0.0;
  for (const auto& p : poles_) {
    const double slack = 1.0 / std::abs(p.nu) - lambda;
    for (std::size_t i = 0; i < p.poly.size(); ++i) {
      // sup_t t^i exp(-slack t) = (i / (e slack))^i
      const double b = i == 0 ? 1.0 : std::pow(static_cast<double>(i) / (std::numbers::e * slack), static_cast<double>(i));
      c_exp += std::abs(p.poly[i]) * b;
    }
  }
  double C = scale * c_exp * std::exp(lambda * std::abs(shift_));
  if (quadrature_) C *= 2.0 * std::exp(lambda * lambda * fp.gamma / (4.0 * kPi * kPi));
  decay_ = DecayProfile{C, ExponentialRate{lambda}};
}

TPWindow TPWindow::gaussian(double gamma) { return TPWindow(Gaussian{gamma}); }
TPWindow TPWindow::one_sided_exp(double gamma) { return TPWindow(OneSidedExp{gamma}); }
TPWindow TPWindow::finite_product(double gamma, std::vector<double> nus, double nu, double c) {
  return TPWindow(FiniteProduct{gamma, std::move(nus), nu, c});
}
TPWindow TPWindow::hyperbolic_secant(double a) { return TPWindow(HyperbolicSecant{a}); }
TPWindow TPWindow::two_sided_exp(double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("two-sided exponential requires lambda > 0");
  return TPWindow(FiniteProduct{0.0, {1.0 / lambda, -1.0 / lambda}, 0.0, 2.0 / lambda});
}

double TPWindow::evaluate_residues(double tau) const {
  if (tau == 0.0) {
    double right = 0.0, left = 0.0;
    for (const auto& p : poles_) (p.nu > 0.0 ? right : left) += p.poly[0];
    // a single exponential factor is closed on its supported side
    if (n_effective_ == 1) return right + left;
    return 0.5 * (right + left);
  }
  double sum = 0.0;
  for (const auto& p : poles_) {
    if ((tau > 0.0) != (p.nu > 0.0)) continue;
    double poly = 0.0;
    for (auto it = p.poly.rbegin(); it != p.poly.rend(); ++it) poly = poly * tau + *it;
    sum += std::exp(-tau / p.nu) * poly;
  }
  return sum;
}

double TPWindow::evaluate_kind(double t) const {
  return std::visit(overloaded{
                        [&](const Gaussian& g) { return std::exp(-g.gamma * t * t); },
                        [&](const OneSidedExp& e) { return e.gamma * t >= 0.0 ? std::exp(-e.gamma * t) : 0.0; },
                        [&](const FiniteProduct& fp) {
                          if (quadrature_) return evaluate_by_quadrature(*this, t) / amplitude_;
                          return fp.c * evaluate_residues(t - shift_);
                        },
                        [&](const HyperbolicSecant& s) { return sech_half(s.a, t); },
                    },
                    kind_);
}

double TPWindow::operator()(double t) const { return amplitude_ * evaluate_kind(t); }

std::complex<double> TPWindow::fourier(double xi) const {
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  const cd v = std::visit(
      overloaded{
          [&](const Gaussian& g) { return cd(std::sqrt(kPi / g.gamma) * std::exp(-kPi * kPi * xi * xi / g.gamma)); },
          [&](const OneSidedExp& e) {
            return e.gamma > 0.0 ? 1.0 / (e.gamma + 2.0 * kPi * I * xi) : 1.0 / (-e.gamma - 2.0 * kPi * I * xi);
          },
          [&](const FiniteProduct& fp) {
            cd prod = fp.c * std::exp(-fp.gamma * xi * xi) * std::exp(2.0 * kPi * I * fp.nu * xi);
            for (double nj : fp.nus) prod *= std::exp(-2.0 * kPi * I * nj * xi) / (1.0 + 2.0 * kPi * I * nj * xi);
            return prod;
          },
          [&](const HyperbolicSecant& s) { return cd(kPi / (2.0 * s.a) / std::cosh(kPi * kPi * xi / s.a)); },
      },
      kind_);
  return amplitude_ * v;
}

TPWindow TPWindow::dilated(double beta) const {
  if (!(beta > 0.0)) throw InvalidArgument("dilation factor must be positive");
  const double amp = amplitude_ / std::sqrt(beta);
  return std::visit(overloaded{
                        [&](const Gaussian& g) { return TPWindow(Gaussian{g.gamma / (beta * beta)}, amp); },
                        [&](const OneSidedExp& e) { return TPWindow(OneSidedExp{e.gamma / beta}, amp); },
                        [&](const FiniteProduct& fp) {
                          FiniteProduct d{fp.gamma * beta * beta, fp.nus, fp.nu * beta, fp.c * beta};
                          for (double& v : d.nus) v *= beta;
                          return TPWindow(std::move(d), amp);
                        },
                        [&](const HyperbolicSecant& s) { return TPWindow(HyperbolicSecant{s.a / beta}, amp); },
                    },
                    kind_);
}

std::string TPWindow::name() const {
  std::ostringstream os;
  os.precision(10);
  std::visit(overloaded{
                 [&](const Gaussian& g) { os << "gaussian(gamma=" << g.gamma << ")"; },
                 [&](const OneSidedExp& e) { os << "one_sided_exp(gamma=" << e.gamma << ")"; },
                 [&](const FiniteProduct& fp) {
                   os << "finite_product(gamma=" << fp.gamma << ", nus=[";
                   for (std::size_t i = 0; i < fp.nus.size(); ++i) os << (i ? "," : "") << fp.nus[i];
                   os << "], nu=" << fp.nu << ", c=" << fp.c << ")";
                 },
                 [&](const HyperbolicSecant& s) { os << "sech(a=" << s.a << ")"; },
             },
             kind_);
  if (amplitude_ != 1.0) os << "*" << amplitude_;
  return os.str();
}

double evaluate(const TPWindow& w, double t) { return w(t); }

double TPWindow::gaussian_smoothed_residues(double tau) const {
  const auto& fp = std::get<FiniteProduct>(kind_);
  // kernel k(x) = sqrt(pi/gamma) exp(-x^2 / (2 s^2)), s^2 = gamma / (2 pi^2)
  const double s2 = fp.gamma / (2.0 * kPi * kPi);
  const double kernel_peak = std::sqrt(kPi / fp.gamma);
  if (poles_.empty()) return kernel_peak * std::exp(-tau * tau / (2.0 * s2));

  double nu_min = INFINITY, nu_max = 0.0;
  for (const auto& p : poles_) {
    nu_min = std::min(nu_min, std::abs(p.nu));
    nu_max = std::max(nu_max, std::abs(p.nu) * static_cast<double>(p.poly.size()));
  }
  const double sigma = std::sqrt(s2);
  const double h = std::min(sigma, nu_min);

  using GL = boost::math::quadrature::gauss<double, 20>;
  double total = 0.0;
  for (const double side : {1.0, -1.0}) {
    bool present = false;
    for (const auto& p : poles_) present = present || (p.nu > 0.0) == (side > 0.0);
    if (!present) continue;

    // integrand on the half-line side * r > 0, in the variable r >= 0
    auto f = [&](double r) {
      const double s = side * r;
      return std::exp(-(tau - s) * (tau - s) / (2.0 * s2)) * evaluate_residues(s);
    };
    auto log_f = [&](double r) {
      const double v = f(r);
      return v > 0.0 ? std::log(v) : -INFINITY;
    };

    // the mode of a log-concave integrand, by golden section
    double lo = 0.0, hi = std::max(side * tau, 0.0) + nu_max + 12.0 * sigma;
    constexpr double g = 0.6180339887498949;
    double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    double f1 = log_f(m1), f2 = log_f(m2);
    for (int it = 0; it < 200 && hi - lo > 1e-3 * h; ++it) {
      if (f1 < f2) {
        lo = m1, m1 = m2, f1 = f2, m2 = lo + g * (hi - lo), f2 = log_f(m2);
      } else {
        hi = m2, m2 = m1, f2 = f1, m1 = hi - g * (hi - lo), f1 = log_f(m1);
      }
    }
    const double mode = 0.5 * (lo + hi);

    auto panel = [&](double a, double b) { return GL::integrate(f, a, b); };
    double part = 0.0;
    // rightward from the mode until geometric decay bounds the remainder
    double prev = INFINITY;
    for (double a = mode; a < mode + 1e6 * h; a += h) {
      const double v = panel(a, a + h);
      part += v;
      if (v == 0.0 || (v < 1e-18 * part && v < 0.5 * prev)) break;
      prev = v;
    }
    prev = INFINITY;
    for (double b = mode; b > 0.0; b -= h) {
      const double v = panel(std::max(b - h, 0.0), b);
      part += v;
      if (v == 0.0 || (v < 1e-18 * part && v < 0.5 * prev)) break;
      prev = v;
    }
    total += part;
  }
  return kernel_peak * total;
}

double evaluate_by_quadrature(const TPWindow& w, double t) {
  const auto* fp = std::get_if<FiniteProduct>(&w.kind());
  if (fp == nullptr) throw InvalidArgument("quadrature evaluation is defined for finite-product windows");
  if (!(fp->gamma > 0.0))
    throw InvalidArgument("quadrature evaluation requires a Gaussian factor (gamma > 0); use the residue form");
  return w.amplitude() * fp->c * w.gaussian_smoothed_residues(t - w.shift_);
}

double truncation_radius(const TPWindow& w, double tol) { return truncation_radius(w.decay(), tol); }

MatrixSection tp_samples_matrix(const TPWindow& w, std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("tp_samples_matrix: xs and ys must have equal length");
  if (xs.empty() || xs.size() > 12) throw InvalidArgument("tp_samples_matrix: size must be in [1, 12]");
  auto increasing = [](std::span<const double> v) {
    return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(a < b); }) == v.end();
  };
  if (!increasing(xs) || !increasing(ys)) throw InvalidArgument("tp_samples_matrix: nodes must be strictly increasing");

  const auto n = static_cast<Eigen::Index>(xs.size());
  MatrixSection s;
  s.entries.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) s.entries(j, k) = w(xs[j] - ys[k]);
  s.row_points.assign(xs.begin(), xs.end());
  s.col_points.assign(ys.begin(), ys.end());
  s.row_index_map = "j -> x_j";
  s.decay_cert = w.decay();
  return s;
}

}  // namespace tpgabor
