#include "tpgabor/zibulski.hpp"

#include <cmath>
#include <numbers>

#include "tpgabor/error.hpp"
#include "tpgabor/tp_matrix.hpp"
#include "tpgabor/zak.hpp"

namespace tpgabor {

namespace {

using cd = std::complex<double>;

cd unit_phase(double cycles) { return std::polar(1.0, 2.0 * std::numbers::pi * (cycles - std::floor(cycles))); }

Eigen::MatrixXcd assemble_A(const ZakEvaluator& Z, const PerturbationSeq& pert, double xi) {
  const int p = pert.p;
  Eigen::MatrixXcd A(p, p);
  for (int r = 0; r < p; ++r)
    for (int s = 0; s < p; ++s) A(r, s) = Z(static_cast<double>(r - s) + pert.deltas[r], xi).value();
  return A;
}

struct ScanPoint {
  double sigma;
  double abs_det;
  double sigma_max;
};

ScanPoint analyse(const Eigen::MatrixXcd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), std::abs(A.determinant()), sv(0)};
}

struct ScanResult {
  double min_sigma = INFINITY;
  double argmin_xi = 0.0;
  double min_abs_det = INFINITY;
  double max_sigma = 0.0;
};

ScanResult scan(const ZakEvaluator& Z, const PerturbationSeq& pert, int n) {
  const double period = 1.0 / pert.p;
  const double h = period / n;
  ScanResult res;
  auto visit = [&](double xi) {
    const ScanPoint pt = analyse(assemble_A(Z, pert, xi));
    if (pt.sigma < res.min_sigma) {
      res.min_sigma = pt.sigma;
      res.argmin_xi = xi;
    }
    res.min_abs_det = std::min(res.min_abs_det, pt.abs_det);
    res.max_sigma = std::max(res.max_sigma, pt.sigma_max);
  };
  for (int i = 0; i <= n; ++i) visit(i * h);
  double step = h;
  for (int round = 0; round < 2; ++round) {
    step /= 2.0;
    const double centre = res.argmin_xi;
    for (int m = -2; m <= 2; ++m) {
      if (m == 0) continue;
      const double xi = centre + m * step;
      if (xi >= 0.0 && xi <= period) visit(xi);
    }
  }
  return res;
}

}  // namespace

ZZMatrix zz_matrix(const TPWindow& w, const RationalLattice& lat, const PerturbationSeq& pert, double xi, double tol) {
  if (pert.p != lat.p) throw InvalidArgument("zz_matrix: perturbation period does not match the lattice");
  const ZakEvaluator Z(w, lat.p, tol);
  ZZMatrix out;
  out.xi = xi;
  out.entries = assemble_A(Z, pert, xi);
  out.trunc_err = static_cast<double>(lat.p) * lat.p * Z.trunc_err();
  return out;
}

FactorizationReport fourier_factorization_check(const TPWindow& w, const RationalLattice& lat,
                                                const PerturbationSeq& pert, long c_offset,
                                                const std::vector<double>& c, const std::vector<double>& xi_grid,
                                                double tol) {
  if (c.empty()) throw InvalidArgument("fourier_factorization_check: c must be nonempty");
  if (pert.p != lat.p) throw InvalidArgument("fourier_factorization_check: period mismatch");
  const int p = lat.p;
  const ZakEvaluator Z(w, p, tol);

  FactorizationReport rep;
  auto [d_off, d] = apply_G(w, pert, c_offset, c, tol);
  rep.d_offset = d_off;
  rep.d = d;

  auto residue = [p](long k) { return static_cast<int>(((k % p) + p) % p); };
  for (double xi : xi_grid) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(p), y = Eigen::VectorXcd::Zero(p);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const long l = c_offset + static_cast<long>(i);
      const int s = residue(l);
      const long n = (l - s) / p;
      x(s) += c[i] * unit_phase(-static_cast<double>(n) * p * xi);
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      const long k = d_off + static_cast<long>(i);
      const int r = residue(k);
      const long m = (k - r) / p;
      y(r) += d[i] * unit_phase(-static_cast<double>(m) * p * xi);
    }
    const Eigen::VectorXcd Ax = assemble_A(Z, pert, xi) * x;
    const double dev = (Ax - y).cwiseAbs().maxCoeff();
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_xi = xi;
    }
  }
  if (rep.max_deviation > 100.0 * tol)
    throw NumericalFailure("fourier_factorization_check: A(xi) x(xi) differs from y(xi) by " +
                           std::to_string(rep.max_deviation));
  return rep;
}

InjectivityCertificate injectivity_scan(const TPWindow& w, const RationalLattice& lat, const PerturbationSeq& pert,
                                        const InjectivityOptions& opt) {
  if (opt.xi_grid_n < 128) throw InvalidArgument("injectivity_scan: xi_grid_n must be >= 128");
  if (pert.p != lat.p) throw InvalidArgument("injectivity_scan: period mismatch");
  const ZakEvaluator Z(w, lat.p, opt.tol);
  const ScanResult coarse = scan(Z, pert, opt.xi_grid_n);
  const ScanResult fine = scan(Z, pert, 2 * opt.xi_grid_n);

  InjectivityCertificate cert;
  cert.xi_grid_n = opt.xi_grid_n;
  cert.min_sigma = fine.min_sigma;
  cert.min_sigma_coarse = coarse.min_sigma;
  cert.argmin_xi = fine.argmin_xi;
  cert.min_abs_det = std::min(fine.min_abs_det, coarse.min_abs_det);
  cert.max_sigma = std::max(fine.max_sigma, coarse.max_sigma);
  const bool positive = fine.min_sigma > opt.sigma_tol;
  const bool stable = positive && std::abs(fine.min_sigma - coarse.min_sigma) / fine.min_sigma < opt.stable_rel;
  cert.verdict = positive && stable ? Injectivity::Invertible : Injectivity::Degenerate;
  return cert;
}

Eigen::MatrixXcd zz_symbol(const TPWindow& w, const RationalLattice& lat, double x, double xi, double tol) {
  const ZakEvaluator Z(w, lat.p, tol);
  Eigen::MatrixXcd Phi(lat.q, lat.p);
  for (int r = 0; r < lat.q; ++r)
    for (int s = 0; s < lat.p; ++s)
      Phi(r, s) = Z(x + static_cast<double>(lat.p) * r / lat.q - s, xi).value();
  return Phi;
}

double zz_lower_bound(const TPWindow& w, const RationalLattice& lat, int x_grid_n, int xi_grid_n, double tol) {
  if (x_grid_n < 1 || xi_grid_n < 1) throw InvalidArgument("zz_lower_bound: grid sizes must be positive");
  const ZakEvaluator Z(w, lat.p, tol);
  double best = INFINITY;
  Eigen::MatrixXcd Phi(lat.q, lat.p);
  for (int i = 0; i < x_grid_n; ++i) {
    const double x = static_cast<double>(i) / x_grid_n;
    for (int j = 0; j < xi_grid_n; ++j) {
      const double xi = static_cast<double>(j) / (static_cast<double>(xi_grid_n) * lat.p);
      for (int r = 0; r < lat.q; ++r)
        for (int s = 0; s < lat.p; ++s)
          Phi(r, s) = Z(x + static_cast<double>(lat.p) * r / lat.q - s, xi).value();
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Phi);
      const double smin = svd.singularValues()(svd.singularValues().size() - 1);
      best = std::min(best, smin * smin);
    }
  }
  return best;
}

}  // namespace tpgabor
