#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tpgabor/config.hpp"
#include "tpgabor/error.hpp"
#include "tpgabor/pipeline.hpp"
#include "tpgabor/tp_matrix.hpp"
#include "tpgabor/zak.hpp"
#include "tpgabor/zibulski.hpp"

namespace py = pybind11;
using namespace tpgabor;

namespace {

RationalLattice lattice_of(const std::string& alpha, const std::string& beta) {
  return reduce(Rational::parse(alpha), Rational::parse(beta));
}

TPWindow reduced(const TPWindow& w, const RationalLattice& lat) {
  return lat.dilation == Rational(1) ? w : w.dilated(lat.dilation.value());
}

PerturbationSeq perturbation(const TPWindow& w, const RationalLattice& lat, double x, double eps) {
  const ZakZero z = locate_zero(w);
  return select_perturbation(lat, x, z.x0, eps > 0.0 ? eps : default_eps(lat), choose_M(z.x0));
}

RunConfig config_from(const std::string& window, const py::kwargs& opts) {
  RunConfig cfg;
  cfg.window = window_spec_from_arg(window);
  nlohmann::json overlay = nlohmann::json::object();
  for (const auto& [k, v] : opts) {
    const std::string key = py::str(k);
    if (py::isinstance<py::bool_>(v))
      overlay[key] = v.cast<bool>();
    else if (py::isinstance<py::int_>(v))
      overlay[key] = v.cast<long long>();
    else if (py::isinstance<py::float_>(v))
      overlay[key] = v.cast<double>();
    else if (py::isinstance<py::str>(v))
      overlay[key] = v.cast<std::string>();
    else
      overlay[key] = v.cast<std::vector<int>>();
  }
  cfg.merge_json(overlay);
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gabor frame diagnostics for totally positive windows on rational lattices";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

  py::class_<TPWindow>(m, "Window")
      .def_static("gaussian", &TPWindow::gaussian, py::arg("gamma"))
      .def_static("one_sided_exp", &TPWindow::one_sided_exp, py::arg("gamma"))
      .def_static("two_sided_exp", &TPWindow::two_sided_exp, py::arg("lam"))
      .def_static("sech", &TPWindow::hyperbolic_secant, py::arg("a"))
      .def_static("finite_product", &TPWindow::finite_product, py::arg("gamma"), py::arg("nus"), py::arg("nu") = 0.0,
                  py::arg("c") = 1.0)
      .def_static(
          "from_spec", [](const std::string& spec) { return window_from_json(window_spec_from_arg(spec)); },
          py::arg("spec"), "Window from a shorthand name or a JSON object string.")
      .def("__call__", [](const TPWindow& w, double t) { return w(t); })
      .def("__call__",
           [](const TPWindow& w, const Eigen::VectorXd& t) {
             Eigen::VectorXd out(t.size());
             for (Eigen::Index i = 0; i < t.size(); ++i) out(i) = w(t(i));
             return out;
           })
      .def("fourier", &TPWindow::fourier, py::arg("xi"))
      .def("dilated", &TPWindow::dilated, py::arg("beta"))
      .def("truncation_radius", [](const TPWindow& w, double tol) { return truncation_radius(w, tol); },
           py::arg("tol") = 1e-10)
      .def_property_readonly("has_jump", &TPWindow::has_jump)
      .def_property_readonly("name", &TPWindow::name)
      .def("__repr__", [](const TPWindow& w) { return "<Window " + w.name() + ">"; });

  m.def(
      "zak",
      [](const TPWindow& w, double x, double xi, double p, double tol) { return zak(w, p, x, xi, tol).value(); },
      py::arg("window"), py::arg("x"), py::arg("xi"), py::arg("p") = 1.0, py::arg("tol") = 1e-10);

  m.def(
      "zak_grid",
      [](const TPWindow& w, int n, double p, double tol) {
        const ZakEvaluator Z(w, p, tol);
        Eigen::MatrixXcd out(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) out(i, j) = Z(p * i / n, static_cast<double>(j) / (n * p)).value();
        return out;
      },
      py::arg("window"), py::arg("n") = 128, py::arg("p") = 1.0, py::arg("tol") = 1e-10,
      "Z_p g on the grid x = p i / n, xi = j / (n p).");

  m.def(
      "locate_zero",
      [](const TPWindow& w, int grid_n, double zero_tol) {
        const ZakZero z = locate_zero(w, grid_n, zero_tol);
        py::dict d;
        d["x0"] = z.x0;
        d["xi0"] = z.xi0;
        d["residual"] = z.residual;
        d["at_jump"] = z.at_jump;
        d["grid_n"] = z.grid_n;
        return d;
      },
      py::arg("window"), py::arg("grid_n") = 256, py::arg("zero_tol") = 1e-10);

  m.def(
      "perturbation",
      [](const TPWindow& w, const std::string& alpha, double x, double eps) {
        const PerturbationSeq s = perturbation(w, lattice_of(alpha, "1"), x, eps);
        py::dict d;
        d["deltas"] = s.deltas;
        d["js"] = s.js;
        d["M"] = s.M;
        d["eps"] = s.eps;
        d["x0"] = s.x0;
        d["interval"] = py::make_tuple(s.lo(), s.hi());
        return d;
      },
      py::arg("window"), py::arg("alpha"), py::arg("x") = 0.0, py::arg("eps") = 0.0);

  m.def(
      "build_G",
      [](const TPWindow& w, const std::string& alpha, double x, int K) {
        return build_G(w, perturbation(w, lattice_of(alpha, "1"), x, 0.0), K).entries;
      },
      py::arg("window"), py::arg("alpha"), py::arg("x") = 0.0, py::arg("K") = 16,
      "Section G_kl = g(k + delta_k - l), |k|, |l| <= K.");

  m.def(
      "pregramian",
      [](const TPWindow& w, const std::string& alpha, double x, int J, double tol) {
        return pregramian_section(w, lattice_of(alpha, "1"), x, J, tol).entries;
      },
      py::arg("window"), py::arg("alpha"), py::arg("x") = 0.0, py::arg("J") = 16, py::arg("tol") = 1e-10);

  m.def(
      "alternating_witness",
      [](const TPWindow& w, const std::string& alpha, double x, int K) {
        const auto pert = perturbation(w, lattice_of(alpha, "1"), x, 0.0);
        WitnessOptions o;
        o.throw_on_failure = false;
        const AlternatingWitness a = alternating_witness(w, pert, K, o);
        py::dict d;
        d["ks"] = a.ks;
        d["u"] = a.u;
        d["expected"] = a.expected;
        d["nu"] = a.nu;
        d["max_deviation"] = a.max_deviation;
        d["sign_pattern_ok"] = a.sign_pattern_ok;
        return d;
      },
      py::arg("window"), py::arg("alpha"), py::arg("x") = 0.0, py::arg("K") = 16);

  m.def(
      "injectivity_scan",
      [](const TPWindow& w, const std::string& alpha, double x, int xi_grid_n) {
        const auto lat = lattice_of(alpha, "1");
        InjectivityOptions o;
        o.xi_grid_n = xi_grid_n;
        const auto c = injectivity_scan(w, lat, perturbation(w, lat, x, 0.0), o);
        py::dict d;
        d["invertible"] = c.verdict == Injectivity::Invertible;
        d["min_sigma"] = c.min_sigma;
        d["min_abs_det"] = c.min_abs_det;
        d["argmin_xi"] = c.argmin_xi;
        d["max_sigma"] = c.max_sigma;
        return d;
      },
      py::arg("window"), py::arg("alpha"), py::arg("x") = 0.0, py::arg("xi_grid_n") = 128);

  m.def(
      "minor_audit",
      [](const Eigen::MatrixXd& A, int n_max, std::int64_t trials, std::uint64_t seed) {
        MatrixSection s;
        s.entries = A;
        const auto r = tp_minor_audit(s, n_max, trials, seed);
        py::dict d;
        d["pass"] = r.pass;
        d["min_normalized_det"] = r.min_normalized_det;
        d["min_det"] = r.min_det;
        d["worst_rows"] = r.worst_rows;
        d["worst_cols"] = r.worst_cols;
        return d;
      },
      py::arg("matrix"), py::arg("n_max") = 6, py::arg("trials") = 10000, py::arg("seed") = 0x5eed);

  m.def(
      "zz_lower_bound",
      [](const TPWindow& w, const std::string& alpha, int x_grid_n, int xi_grid_n) {
        return zz_lower_bound(w, lattice_of(alpha, "1"), x_grid_n, xi_grid_n);
      },
      py::arg("window"), py::arg("alpha"), py::arg("x_grid_n") = 64, py::arg("xi_grid_n") = 64);

  m.def(
      "_diagnose_json",
      [](const std::string& window, const std::string& alpha, const std::string& beta, const py::kwargs& opts) {
        RunConfig cfg = config_from(window, opts);
        cfg.alpha = Rational::parse(alpha);
        cfg.beta = Rational::parse(beta);
        py::gil_scoped_release release;
        return to_json(diagnose(cfg)).dump();
      },
      py::arg("window"), py::arg("alpha"), py::arg("beta") = "1");

  m.def(
      "_bounds_json",
      [](const std::string& window, const std::string& alpha, const std::string& beta, const py::kwargs& opts) {
        RunConfig cfg = config_from(window, opts);
        cfg.alpha = Rational::parse(alpha);
        cfg.beta = Rational::parse(beta);
        py::gil_scoped_release release;
        return render_bounds(cfg, nullptr);
      },
      py::arg("window"), py::arg("alpha"), py::arg("beta") = "1");

  m.def(
      "scan_csv",
      [](const std::string& window, const std::string& alpha_grid, const std::string& beta, int jobs,
         const py::kwargs& opts) {
        RunConfig cfg = config_from(window, opts);
        cfg.alpha_grid = RationalRange::parse(alpha_grid);
        cfg.beta = Rational::parse(beta);
        cfg.jobs = jobs;
        cfg.validate();
        py::gil_scoped_release release;
        return render_scan(cfg);
      },
      py::arg("window"), py::arg("alpha_grid"), py::arg("beta") = "1", py::arg("jobs") = 1,
      "Phase-diagram CSV over an inclusive START:STOP:STEP grid of alpha.");
}
