#include "tpgabor/tp_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tpgabor/error.hpp"
#include "tpgabor/zak.hpp"

namespace tpgabor {

MatrixSection build_G(const TPWindow& w, const PerturbationSeq& pert, int K) {
  if (K < pert.p) throw InvalidArgument("build_G: K must be at least p");
  const long n = 2L * K + 1;
  MatrixSection s;
  s.row_offset = -K;
  s.col_offset = -K;
  s.row_index_map = "k -> k + delta_k";
  s.decay_cert = w.decay();
  s.entries.resize(n, n);
  s.row_points.resize(n);
  s.col_points.resize(n);
  for (long k = -K; k <= K; ++k) {
    const double dk = pert.delta(k);
    s.row_points[k + K] = static_cast<double>(k) + dk;
    s.col_points[k + K] = static_cast<double>(k);
    for (long l = -K; l <= K; ++l) s.entries(k + K, l + K) = w(static_cast<double>(k - l) + dk);
  }
  return s;
}

AlternatingWitness alternating_witness(const TPWindow& w, const PerturbationSeq& pert, int K,
                                       const WitnessOptions& opt) {
  if (K < 1) throw InvalidArgument("alternating_witness: K must be >= 1");
  const auto R = static_cast<long>(truncation_radius(w, opt.tail_tol));
  const auto [dmin, dmax] = std::minmax_element(pert.deltas.begin(), pert.deltas.end());
  const long l_lo = -K + static_cast<long>(std::floor(*dmin)) - R - 1;
  const long l_hi = K + static_cast<long>(std::ceil(*dmax)) + R + 1;
  const ZakEvaluator Z(w, 1.0, opt.tail_tol);

  AlternatingWitness out;
  out.nu = INFINITY;
  for (long k = -K; k <= K; ++k) {
    const double dk = pert.delta(k);
    double u = 0.0;
    for (long l = l_lo; l <= l_hi; ++l) {
      const double g = w(static_cast<double>(k - l) + dk);
      u += (l % 2 == 0) ? g : -g;
    }
    const double z = Z(dk, 0.5).re;
    const double expected = (k % 2 == 0) ? z : -z;
    out.ks.push_back(k);
    out.u.push_back(u);
    out.expected.push_back(expected);
    out.nu = std::min(out.nu, std::abs(u));
    out.max_deviation = std::max(out.max_deviation, std::abs(u - expected));
  }
  out.sign_pattern_ok = true;
  for (std::size_t i = 0; i + 1 < out.u.size(); ++i)
    out.sign_pattern_ok = out.sign_pattern_ok && out.u[i] * out.u[i + 1] < 0.0;

  if (opt.throw_on_failure) {
    if (out.max_deviation > 10.0 * opt.tail_tol)
      throw NumericalFailure("alternating_witness: (Gc)_k deviates from (-1)^k Zg(delta_k, 1/2) by " +
                             std::to_string(out.max_deviation));
    if (!out.sign_pattern_ok || out.nu < opt.nu_min)
      throw NumericalFailure("alternating_witness: not uniformly alternating (nu = " + std::to_string(out.nu) +
                             "); delta too close to the Zak zero or window outside the hypotheses");
  }
  return out;
}

double witness_gap(const TPWindow& w, double x0, int M, double eps, int grid_n, double tail_tol) {
  if (grid_n < 2) throw InvalidArgument("witness_gap: grid_n must be >= 2");
  const double lo = x0 + M - 1 + eps, hi = x0 + M - eps;
  if (!(lo <= hi)) throw InvalidArgument("witness_gap: empty interval");
  const ZakEvaluator Z(w, 1.0, tail_tol);
  double gap = INFINITY;
  for (int i = 0; i <= grid_n; ++i) gap = std::min(gap, std::abs(Z(lo + (hi - lo) * i / grid_n, 0.5).re));
  return gap;
}

DecayFit inverse_decay_profile(const MatrixSection& G) {
  if (G.rows() != G.cols() || G.rows() == 0) throw InvalidArgument("inverse_decay_profile: square section required");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G.entries);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), smin = sv(sv.size() - 1);
  DecayFit fit;
  fit.condition = smin > 0.0 ? smax / smin : INFINITY;
  if (!(fit.condition < 1e12)) throw NumericalFailure("inverse_decay_profile: section is numerically singular");

  const Eigen::MatrixXd inv = G.entries.fullPivLu().inverse();
  const long n = G.rows();
  const long a = n / 4, b = n - n / 4;  // interior block
  std::vector<double> m(static_cast<std::size_t>(b - a), 0.0);
  for (long i = a; i < b; ++i)
    for (long j = a; j < b; ++j) {
      const auto d = static_cast<std::size_t>(std::abs(i - j));
      m[d] = std::max(m[d], std::abs(inv(i, j)));
    }

  const double floor_v = 1e-12 * m[0];
  std::vector<double> lx, ly;
  for (std::size_t d = 1; d < m.size(); ++d) {
    if (!(m[d] > floor_v)) break;
    lx.push_back(std::log1p(static_cast<double>(d)));
    ly.push_back(std::log(m[d]));
    fit.max_distance = static_cast<int>(d);
  }
  if (lx.size() < 2) {
    // inverse is (numerically) diagonal
    fit.sigma = INFINITY;
    fit.C = m[0];
    return fit;
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  fit.sigma = -sxy / sxx;
  fit.C = m[0];
  for (std::size_t i = 0; i < lx.size(); ++i) fit.C = std::max(fit.C, std::exp(ly[i] + fit.sigma * lx[i]));
  return fit;
}

MinorAuditReport tp_minor_audit(const MatrixSection& G, int n_max, std::int64_t trials, std::uint64_t seed) {
  if (n_max < 1 || n_max > 8) throw InvalidArgument("tp_minor_audit: n_max must be in [1, 8]");
  if (trials < 0) throw InvalidArgument("tp_minor_audit: trials must be >= 0");
  const long rows = G.rows(), cols = G.cols();
  const int top = static_cast<int>(std::min<long>({n_max, rows, cols}));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(1, std::max(top, 1));
  std::vector<long> row_pool(rows), col_pool(cols);
  std::iota(row_pool.begin(), row_pool.end(), 0L);
  std::iota(col_pool.begin(), col_pool.end(), 0L);

  MinorAuditReport rep;
  rep.trials = trials;
  rep.min_normalized_det = INFINITY;
  rep.min_det = INFINITY;
  std::vector<long> r, c;
  for (std::int64_t t = 0; t < trials && top > 0; ++t) {
    const int n = size_dist(rng);
    r.clear();
    c.clear();
    std::sample(row_pool.begin(), row_pool.end(), std::back_inserter(r), n, rng);
    std::sample(col_pool.begin(), col_pool.end(), std::back_inserter(c), n, rng);
    Eigen::MatrixXd sub(n, n);
    double amax = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        sub(i, j) = G.entries(r[i], c[j]);
        amax = std::max(amax, std::abs(sub(i, j)));
      }
    const double det = n == 1 ? sub(0, 0) : sub.partialPivLu().determinant();
    const double scale = std::pow(amax, n);
    const double normalized = scale > 0.0 ? det / scale : 0.0;
    if (normalized < rep.min_normalized_det) {
      rep.min_normalized_det = normalized;
      rep.min_det = det;
      rep.worst_rows.clear();
      rep.worst_cols.clear();
      for (long i : r) rep.worst_rows.push_back(i + G.row_offset);
      for (long j : c) rep.worst_cols.push_back(j + G.col_offset);
    }
  }
  if (rep.trials == 0 || top == 0) rep.min_normalized_det = rep.min_det = 0.0;
  rep.pass = rep.min_normalized_det >= -1e-10;
  return rep;
}

std::pair<long, std::vector<double>> apply_G(const TPWindow& w, const PerturbationSeq& pert, long c_offset,
                                             const std::vector<double>& c, double tail_tol) {
  const auto R = static_cast<long>(truncation_radius(w, tail_tol));
  const auto [dmin, dmax] = std::minmax_element(pert.deltas.begin(), pert.deltas.end());
  const long n = static_cast<long>(c.size());
  const long k_lo = c_offset - static_cast<long>(std::ceil(*dmax)) - R - 1;
  const long k_hi = c_offset + n - 1 - static_cast<long>(std::floor(*dmin)) + R + 1;
  std::vector<double> d(static_cast<std::size_t>(k_hi - k_lo + 1), 0.0);
  for (long k = k_lo; k <= k_hi; ++k) {
    const double dk = pert.delta(k);
    double acc = 0.0;
    for (long i = 0; i < n; ++i) acc += c[i] * w(static_cast<double>(k - (c_offset + i)) + dk);
    d[k - k_lo] = acc;
  }
  return {k_lo, d};
}

}  // namespace tpgabor
