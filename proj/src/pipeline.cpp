#include "tpgabor/pipeline.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "tpgabor/tp_matrix.hpp"
#include "tpgabor/zak.hpp"
#include "tpgabor/zibulski.hpp"

namespace tpgabor {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Frame: return 0;
    case Verdict::NotFrame: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_header(const std::string& what, const std::string& columns) {
  return "# tpgabor " + what + " csv v" + kCsvSchemaVersion + "\n" + columns + "\n";
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

TPWindow reduced_window(const json& spec, const RationalLattice& lat) {
  const TPWindow w = window_from_json(spec);
  return lat.dilation == Rational(1) ? w : w.dilated(lat.dilation.value());
}

struct LatticeContext {
  RationalLattice lat;
  TPWindow w;
  ZakZero zero;
  int M;
  double eps;
};

LatticeContext frame_candidate(const RunConfig& cfg) {
  const RationalLattice lat = reduce(cfg.alpha, cfg.beta);
  lat.require_frame_candidate();
  TPWindow w = reduced_window(cfg.window, lat);
  const ZakZero zero = locate_zero(w, cfg.zak_grid_n, cfg.zero_tol);
  return {lat, w, zero, choose_M(zero.x0), default_eps(lat)};
}

}  // namespace

DiagnoseResult diagnose(const json& window_spec, const Rational& alpha, const Rational& beta, const RunConfig& cfg) {
  DiagnoseResult out;
  out.alpha = alpha;
  out.beta = beta;
  out.lattice = reduce(alpha, beta);
  out.min_sigma = kNaN;
  const RationalLattice& lat = out.lattice;
  const TPWindow w = reduced_window(window_spec, lat);
  FrameDiagnosis& diag = out.diagnosis;

  FrameBoundsOptions fb;
  fb.x_grid_n = cfg.x_grid_n;
  fb.ladder = cfg.J_ladder;
  fb.tail_tol = cfg.tail_tol;

  if (lat.p > lat.q) {
    diag = frame_bounds(w, lat, fb);
    return out;
  }

  const ZakZero zero = locate_zero(w, cfg.zak_grid_n, cfg.zero_tol);
  CertificateRecord zrec{"zak_zero",
                         {{"x0", zero.x0},
                          {"xi0", zero.xi0},
                          {"residual", zero.residual},
                          {"at_jump", zero.at_jump ? 1.0 : 0.0},
                          {"grid_n", static_cast<double>(zero.grid_n)}},
                         zero.at_jump ? "sign change across the window discontinuity" : "unique zero on xi = 1/2"};

  if (lat.p == lat.q && !w.has_jump()) {
    diag = frame_bounds(w, lat, fb);
    zrec.note = "Zg vanishes at (x0, 1/2), so the symbol of the pre-Gramian is singular at critical density";
    diag.evidence.insert(diag.evidence.begin(), zrec);
    return out;
  }

  std::vector<CertificateRecord> certs{zrec};
  bool witness_ok = true;
  bool all_invertible = true;
  if (lat.p < lat.q) {
    out.certificates_run = true;
    const int M = choose_M(zero.x0);
    const double eps = default_eps(lat);
    WitnessOptions wo;
    wo.tail_tol = cfg.tail_tol;
    wo.throw_on_failure = false;
    InjectivityOptions io;
    io.xi_grid_n = cfg.xi_grid_n;
    io.sigma_tol = cfg.sigma_tol;
    io.tol = cfg.tail_tol;

    double nu = INFINITY, max_dev = 0.0, min_det = INFINITY, worst_x = 0.0, argmin_xi = 0.0;
    double min_sigma = INFINITY;
    int invertible = 0;
    for (int i = 0; i < cfg.x_grid_n; ++i) {
      const double x = static_cast<double>(i) / cfg.x_grid_n;
      const PerturbationSeq pert = select_perturbation(lat, x, zero.x0, eps, M);
      const AlternatingWitness wit = alternating_witness(w, pert, std::max(cfg.K, 2 * lat.p), wo);
      nu = std::min(nu, wit.nu);
      max_dev = std::max(max_dev, wit.max_deviation);
      witness_ok = witness_ok && wit.sign_pattern_ok && wit.nu >= wo.nu_min && wit.max_deviation <= 10.0 * wo.tail_tol;

      const InjectivityCertificate ic = injectivity_scan(w, lat, pert, io);
      if (ic.verdict == Injectivity::Invertible) ++invertible;
      min_det = std::min(min_det, ic.min_abs_det);
      if (ic.min_sigma < min_sigma) {
        min_sigma = ic.min_sigma;
        worst_x = x;
        argmin_xi = ic.argmin_xi;
      }
    }
    all_invertible = invertible == cfg.x_grid_n;
    out.min_sigma = min_sigma;
    certs.push_back({"alternating_witness",
                     {{"nu", nu}, {"max_deviation", max_dev}, {"M", static_cast<double>(M)}, {"eps", eps}},
                     witness_ok ? "G maps the alternating sequence to a uniformly alternating sequence"
                                : "alternating witness failed"});
    certs.push_back({"injectivity",
                     {{"min_sigma", min_sigma},
                      {"min_abs_det", min_det},
                      {"worst_x", worst_x},
                      {"argmin_xi", argmin_xi},
                      {"invertible_fraction", static_cast<double>(invertible) / cfg.x_grid_n}},
                     all_invertible ? "A(xi) invertible on every x-grid point" : "A(xi) degenerate somewhere"});
  }

  fb.x_offset = zero.x0;
  diag = frame_bounds(w, lat, fb);
  diag.evidence.insert(diag.evidence.begin(), certs.begin(), certs.end());

  if (out.certificates_run) {
    const bool frame = diag.verdict == Verdict::Frame;
    if (!witness_ok || frame != all_invertible) {
      diag.evidence.push_back({"consistency",
                               {{"witness_ok", witness_ok ? 1.0 : 0.0},
                                {"invertible", all_invertible ? 1.0 : 0.0},
                                {"bounds_frame", frame ? 1.0 : 0.0}},
                               "certificates disagree; verdict withheld"});
      diag.verdict = Verdict::Inconclusive;
    }
  }
  return out;
}

DiagnoseResult diagnose(const RunConfig& cfg) { return diagnose(cfg.window, cfg.alpha, cfg.beta, cfg); }

json to_json(const FrameDiagnosis& d) {
  json j;
  j["verdict"] = to_string(d.verdict);
  j["A_est"] = finite_or_null(d.lower_bound_est);
  j["B_est"] = finite_or_null(d.upper_bound_est);
  j["worst_x"] = d.worst_x;
  json trace = json::array();
  for (const auto& s : d.ladder_trace)
    trace.push_back({{"size", s.size}, {"rows", s.rows}, {"A", finite_or_null(s.A)}, {"B", finite_or_null(s.B)},
                     {"worst_x", s.worst_x}});
  j["ladder_trace"] = trace;
  json ev = json::array();
  for (const auto& rec : d.evidence) {
    json values = json::object();
    for (const auto& [k, v] : rec.values) values[k] = finite_or_null(v);
    ev.push_back({{"name", rec.name}, {"values", values}, {"note", rec.note}});
  }
  j["evidence"] = ev;
  return j;
}

json to_json(const DiagnoseResult& r) {
  json j = to_json(r.diagnosis);
  j["alpha"] = r.alpha.str();
  j["beta"] = r.beta.str();
  j["alphabeta"] = r.lattice.alpha().str();
  j["min_sigma"] = finite_or_null(r.min_sigma);
  return j;
}

namespace {

std::string scan_row(const Rational& a, const Rational& b, const std::string& verdict, double A, double min_sigma,
                     const std::string& note) {
  auto opt = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
  std::string clean = note;
  for (char& ch : clean)
    if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
  return a.str() + "," + b.str() + "," + (a * b).str() + "," + verdict + "," + opt(A) + "," + opt(min_sigma) + "," +
         clean + "\n";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int resolve_jobs(const RunConfig& cfg) { return std::max(1, cfg.jobs); }

}  // namespace

std::string render_diagnose(const RunConfig& cfg, int* code) {
  const DiagnoseResult r = diagnose(cfg);
  if (code) *code = exit_code(r.diagnosis.verdict);
  if (cfg.format == "csv")
    return csv_header("diagnose", "alpha,beta,alphabeta,verdict,A_est,min_sigma,note") +
           scan_row(r.alpha, r.beta, to_string(r.diagnosis.verdict), r.diagnosis.lower_bound_est, r.min_sigma, "");
  json j = to_json(r);
  j["window"] = cfg.window;
  return dump(j);
}

std::string render_scan(const RunConfig& cfg, int* code) {
  const auto as = cfg.alpha_grid ? cfg.alpha_grid->values() : std::vector<Rational>{cfg.alpha};
  const auto bs = cfg.beta_grid ? cfg.beta_grid->values() : std::vector<Rational>{cfg.beta};
  std::vector<std::pair<Rational, Rational>> points;
  for (const auto& b : bs)
    for (const auto& a : as) points.emplace_back(a, b);

  std::vector<std::string> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const auto& [a, b] = points[i];
      try {
        const DiagnoseResult r = diagnose(cfg.window, a, b, cfg);
        rows[i] = scan_row(a, b, to_string(r.diagnosis.verdict), r.diagnosis.lower_bound_est, r.min_sigma, "");
      } catch (const std::exception& e) {
        rows[i] = scan_row(a, b, "Error", kNaN, kNaN, e.what());
        failed = true;
      }
    }
  };
  const int jobs = std::min<int>(resolve_jobs(cfg), std::max<int>(1, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string out = csv_header("scan", "alpha,beta,alphabeta,verdict,A_est,min_sigma,note");
  for (const auto& r : rows) out += r;
  if (code) *code = failed ? 2 : 0;
  return out;
}

std::string render_zak(const RunConfig& cfg) {
  const RationalLattice lat = reduce(cfg.alpha, cfg.beta);
  const TPWindow w = reduced_window(cfg.window, lat);
  const int n = cfg.zak_grid_n;
  const ZakEvaluator Z(w, cfg.period, cfg.tail_tol);
  std::ostringstream os;
  os << csv_header("zak", "x,xi,re,im,abs");
  for (int i = 0; i < n; ++i) {
    const double x = cfg.period * i / n;
    for (int j = 0; j < n; ++j) {
      const double xi = static_cast<double>(j) / (n * cfg.period);
      const ZakValue z = Z(x, xi);
      os << format_double(x) << ',' << format_double(xi) << ',' << format_double(z.re) << ',' << format_double(z.im)
         << ',' << format_double(z.abs()) << '\n';
    }
  }
  return os.str();
}

std::string render_zzdet(const RunConfig& cfg) {
  const LatticeContext ctx = frame_candidate(cfg);
  const PerturbationSeq pert = select_perturbation(ctx.lat, cfg.x, ctx.zero.x0, ctx.eps, ctx.M);
  const int n = cfg.xi_grid_n;
  const double period = 1.0 / ctx.lat.p;
  std::ostringstream os;
  os << csv_header("zzdet", "xi,abs_det,sigma_min");
  for (int i = 0; i <= n; ++i) {
    const double xi = period * i / n;
    const ZZMatrix A = zz_matrix(ctx.w, ctx.lat, pert, xi, cfg.tail_tol);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A.entries);
    const auto& sv = svd.singularValues();
    os << format_double(xi) << ',' << format_double(std::abs(A.entries.determinant())) << ','
       << format_double(sv(sv.size() - 1)) << '\n';
  }
  return os.str();
}

std::string render_witness(const RunConfig& cfg) {
  const LatticeContext ctx = frame_candidate(cfg);
  const PerturbationSeq pert = select_perturbation(ctx.lat, cfg.x, ctx.zero.x0, ctx.eps, ctx.M);
  WitnessOptions wo;
  wo.tail_tol = cfg.tail_tol;
  const AlternatingWitness wit = alternating_witness(ctx.w, pert, cfg.K, wo);
  if (cfg.format == "csv") {
    std::string out = "# tpgabor witness csv v" + std::string(kCsvSchemaVersion) + "\n";
    out += "# nu=" + format_double(wit.nu) + " max_deviation=" + format_double(wit.max_deviation) + "\n";
    out += "k,delta,u,expected\n";
    for (std::size_t i = 0; i < wit.ks.size(); ++i)
      out += std::to_string(wit.ks[i]) + "," + format_double(pert.delta(wit.ks[i])) + "," + format_double(wit.u[i]) +
             "," + format_double(wit.expected[i]) + "\n";
    return out;
  }
  json j;
  j["alpha"] = ctx.lat.alpha().str();
  j["x"] = cfg.x;
  j["x0"] = ctx.zero.x0;
  j["M"] = ctx.M;
  j["eps"] = ctx.eps;
  j["deltas"] = pert.deltas;
  j["ks"] = wit.ks;
  j["u"] = wit.u;
  j["expected"] = wit.expected;
  j["nu"] = wit.nu;
  j["max_deviation"] = wit.max_deviation;
  j["sign_pattern_ok"] = wit.sign_pattern_ok;
  return dump(j);
}

std::string render_audit(const RunConfig& cfg) {
  const LatticeContext ctx = frame_candidate(cfg);
  const PerturbationSeq pert = select_perturbation(ctx.lat, cfg.x, ctx.zero.x0, ctx.eps, ctx.M);
  const MatrixSection G = build_G(ctx.w, pert, std::max(cfg.K, ctx.lat.p));
  const MinorAuditReport rep = tp_minor_audit(G, cfg.n_max, cfg.trials, cfg.seed);
  json j;
  j["alpha"] = ctx.lat.alpha().str();
  j["x"] = cfg.x;
  j["K"] = std::max(cfg.K, ctx.lat.p);
  j["n_max"] = cfg.n_max;
  j["trials"] = rep.trials;
  j["seed"] = cfg.seed;
  j["min_normalized_det"] = rep.min_normalized_det;
  j["min_det"] = rep.min_det;
  j["worst_rows"] = rep.worst_rows;
  j["worst_cols"] = rep.worst_cols;
  j["pass"] = rep.pass;
  return dump(j);
}

std::string render_bounds(const RunConfig& cfg, int* code) {
  const RationalLattice lat = reduce(cfg.alpha, cfg.beta);
  const TPWindow w = reduced_window(cfg.window, lat);
  FrameBoundsOptions fb;
  fb.x_grid_n = cfg.x_grid_n;
  fb.ladder = cfg.J_ladder;
  fb.tail_tol = cfg.tail_tol;
  const FrameDiagnosis d = frame_bounds(w, lat, fb);
  if (code) *code = exit_code(d.verdict);
  if (cfg.format == "csv") {
    std::string out = csv_header("bounds", "size,rows,A,B,worst_x");
    for (const auto& s : d.ladder_trace)
      out += std::to_string(s.size) + "," + std::to_string(s.rows) + "," + format_double(s.A) + "," +
             format_double(s.B) + "," + format_double(s.worst_x) + "\n";
    return out;
  }
  json j = to_json(d);
  j.erase("evidence");
  return dump(j);
}

}  // namespace tpgabor
