#include "tpgabor/pregramian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tpgabor/error.hpp"

namespace tpgabor {

namespace {

struct SectionSpectrum {
  double sigma_min_sq;  // restricted columns
  double sigma_max_sq;  // all columns
};

SectionSpectrum spectrum(const MatrixSection& s, long k_lo, long k_hi) {
  const Eigen::MatrixXd gram = s.entries.transpose() * s.entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(gram, Eigen::EigenvaluesOnly);
  const auto c0 = static_cast<Eigen::Index>(k_lo - s.col_offset);
  const auto n = static_cast<Eigen::Index>(k_hi - k_lo + 1);
  double lo = 0.0;
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> inner(gram.block(c0, c0, n, n), Eigen::EigenvaluesOnly);
    lo = std::max(0.0, inner.eigenvalues()(0));
  }
  return {lo, full.eigenvalues()(full.eigenvalues().size() - 1)};
}

int radius_of(const TPWindow& w, double tail_tol) { return static_cast<int>(truncation_radius(w, tail_tol)); }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Frame: return "Frame";
    case Verdict::NotFrame: return "NotFrame";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

MatrixSection pregramian_section(const TPWindow& w, const RationalLattice& lat, double x, int J, double tail_tol) {
  if (J < 1) throw InvalidArgument("pregramian_section: J must be >= 1");
  const int R = radius_of(w, tail_tol);
  const auto K = static_cast<long>(std::ceil(static_cast<double>(lat.p) * J / lat.q)) + R;

  MatrixSection s;
  s.row_offset = -J;
  s.col_offset = -K;
  s.row_index_map = "j -> x + alpha*j";
  s.decay_cert = w.decay();
  s.entries.resize(2 * J + 1, 2 * K + 1);
  s.row_points.resize(2 * J + 1);
  s.col_points.resize(2 * K + 1);
  for (long k = -K; k <= K; ++k) s.col_points[k + K] = static_cast<double>(k);
  for (long j = -J; j <= J; ++j) {
    const double y = x + static_cast<double>(static_cast<long long>(lat.p) * j) / lat.q;
    s.row_points[j + J] = y;
    for (long k = -K; k <= K; ++k) s.entries(j + J, k + K) = w(y - static_cast<double>(k));
  }
  return s;
}

double lower_bound_at_x(const TPWindow& w, const RationalLattice& lat, double x, int J, double tail_tol, int buffer) {
  const MatrixSection s = pregramian_section(w, lat, x, J, tail_tol);
  if (buffer < 0) buffer = radius_of(w, tail_tol);
  const long K = s.last_col();
  const long k_inner = K - buffer;
  if (k_inner < 0) throw InvalidArgument("lower_bound_at_x: buffer removes every column");
  return spectrum(s, -k_inner, k_inner).sigma_min_sq;
}

double upper_bound_ceiling(const TPWindow& w, const RationalLattice& lat, double tail_tol) {
  const DecayProfile& d = w.decay();
  const int R = radius_of(w, tail_tol);
  // intervals [k, k+1]: sup of the envelope sits at the endpoint nearest 0
  double S = 2.0 * d.C;  // k = -1, 0
  for (int k = 1; k <= R + 1; ++k) S += 2.0 * d.envelope(k);
  S += 2.0 * d.lattice_tail(R + 2, 1.0);
  return std::ceil(static_cast<double>(lat.q) / lat.p) * S * S;
}

FrameDiagnosis frame_bounds(const TPWindow& w, const RationalLattice& lat, const FrameBoundsOptions& opt) {
  if (opt.x_grid_n < 16) throw InvalidArgument("frame_bounds: x_grid_n must be >= 16");
  if (opt.ladder.size() < 3) throw InvalidArgument("frame_bounds: ladder needs at least 3 sizes");
  if (!std::is_sorted(opt.ladder.begin(), opt.ladder.end()) ||
      std::adjacent_find(opt.ladder.begin(), opt.ladder.end()) != opt.ladder.end() || opt.ladder.front() < 1)
    throw InvalidArgument("frame_bounds: ladder must be strictly increasing positive sizes");

  FrameDiagnosis diag;
  const double alpha = lat.alpha_value();
  if (lat.p > lat.q || (lat.p == lat.q && !w.has_jump())) {
    diag.verdict = Verdict::NotFrame;
    CertificateRecord rec{"density", {{"alphabeta", alpha}}, ""};
    rec.note = lat.p > lat.q ? "alpha*beta > 1: density theorem excludes frames"
                             : "alpha*beta = 1 with a continuous window: no frame at critical density";
    diag.evidence.push_back(rec);
    return diag;
  }

  const int R = radius_of(w, opt.tail_tol);
  for (int L : opt.ladder) {
    const auto J = static_cast<int>(std::ceil((L + R + 1) / alpha));
    LadderStep step;
    step.size = L;
    step.rows = J;
    step.A = std::numeric_limits<double>::infinity();
    for (int i = 0; i < opt.x_grid_n; ++i) {
      double x = opt.x_offset + static_cast<double>(i) / opt.x_grid_n;
      x -= std::floor(x);
      const MatrixSection s = pregramian_section(w, lat, x, J, opt.tail_tol);
      const SectionSpectrum sp = spectrum(s, -L, L);
      if (sp.sigma_min_sq < step.A) {
        step.A = sp.sigma_min_sq;
        step.worst_x = x;
      }
      step.B = std::max(step.B, sp.sigma_max_sq);
    }
    diag.ladder_trace.push_back(step);
  }

  const auto& tr = diag.ladder_trace;
  const LadderStep& last = tr.back();
  const LadderStep& prev = tr[tr.size() - 2];
  diag.lower_bound_est = last.A;
  diag.upper_bound_est = last.B;
  diag.worst_x = last.worst_x;

  const bool positive = last.A > opt.sigma_floor;
  const double rel = positive ? std::abs(last.A - prev.A) / last.A : INFINITY;
  bool shrinking = true;
  for (std::size_t i = 1; i < tr.size(); ++i) shrinking = shrinking && tr[i].A < (1.0 - opt.stable_rel) * tr[i - 1].A;

  if (positive && rel < opt.stable_rel)
    diag.verdict = Verdict::Frame;
  else if (shrinking || !positive)
    diag.verdict = Verdict::NotFrame;
  else
    diag.verdict = Verdict::Inconclusive;

  CertificateRecord rec{"sigma_min_trace", {}, ""};
  for (const auto& st : tr) rec.values["A_L" + std::to_string(st.size)] = st.A;
  rec.values["relative_change"] = rel;
  rec.note = diag.verdict == Verdict::Frame      ? "lower bound stable across the truncation ladder"
             : diag.verdict == Verdict::NotFrame ? "lower bound decays toward zero with truncation size"
                                                 : "lower bound neither stable nor monotonically decaying";
  diag.evidence.push_back(rec);
  return diag;
}

}  // namespace tpgabor
