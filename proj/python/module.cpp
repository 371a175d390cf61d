#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rieszlab/cache.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/experiment.hpp"
#include "rieszlab/hermite.hpp"
#include "rieszlab/laguerre.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/quadrature.hpp"
#include "rieszlab/rational.hpp"
#include "rieszlab/scaling.hpp"
#include "rieszlab/sharpness.hpp"
#include "rieszlab/weighted.hpp"

namespace py = pybind11;
using namespace rieszlab;

namespace {

NormMethod parse_method(const std::string& name) {
  if (name == "automatic") return NormMethod::automatic;
  if (name == "radial") return NormMethod::radial;
  if (name == "cartesian") return NormMethod::cartesian;
  if (name == "dual_svd") return NormMethod::dual_svd;
  throw std::invalid_argument("unknown method '" + name + "'");
}

py::dict scaling_dict(const ScalingReport& r) {
  py::dict d;
  d["slope"] = r.slope;
  d["intercept"] = r.intercept;
  d["residual"] = r.residual;
  d["slope_stderr"] = r.slope_stderr;
  d["k_min"] = r.k_min;
  d["k_max"] = r.k_max;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "riesz-lab core routines";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  m.def("hermite", &hermite_1d, py::arg("k"), py::arg("t"), "Normalized Hermite function h_k(t).");
  m.def(
      "hermite_upto",
      [](int K, double t) {
        if (K < 0) throw std::invalid_argument("hermite_upto: negative degree");
        std::vector<double> out(static_cast<std::size_t>(K) + 1);
        hermite_upto(K, t, out);
        return out;
      },
      py::arg("K"), py::arg("t"), "[h_0(t), ..., h_K(t)].");
  m.def(
      "build_rule",
      [](int K, double weight_exponent) {
        const auto r = build_rule(K, weight_exponent);
        return py::make_tuple(std::vector<double>(r.nodes().begin(), r.nodes().end()),
                              std::vector<double>(r.weights().begin(), r.weights().end()));
      },
      py::arg("K"), py::arg("weight_exponent") = 0.0, "(nodes, weights) of the rule for degree K.");
  m.def("hermite_weighted_moment", &hermite_weighted_moment, py::arg("k"), py::arg("alpha"), py::arg("sign"),
        "int h_k^2 (1+|x|)^(sign*alpha) dx.");
  m.def(
      "band_projection_weighted_norm",
      [](int k, int n, double alpha, const std::string& method) {
        return band_projection_weighted_norm(k, n, alpha, parse_method(method)).value;
      },
      py::arg("k"), py::arg("n"), py::arg("alpha"), py::arg("method") = "automatic");
  m.def("local_band_mass", &local_band_mass, py::arg("k"), py::arg("n"), py::arg("M"));
  m.def("laguerre_fn", &laguerre_fn, py::arg("k"), py::arg("a"), py::arg("x"));
  m.def("frak_laguerre", &frak_laguerre, py::arg("k"), py::arg("n"), py::arg("r"));
  m.def("riesz_factor", &riesz_factor, py::arg("E"), py::arg("lam"), py::arg("R"));
  m.def("critical_index", &critical_index, py::arg("p"), py::arg("n"));
  m.def("ae_threshold", &ae_threshold, py::arg("p"), py::arg("n"));
  m.def(
      "critical_index_exact",
      [](std::int64_t inv_p_num, std::int64_t inv_p_den, int n) {
        const auto r = critical_index_exact(Rational(inv_p_num, inv_p_den), n);
        return py::make_tuple(r.num(), r.den());
      },
      py::arg("inv_p_num"), py::arg("inv_p_den"), py::arg("n"), "Exact critical index as (num, den) from 1/p.");
  m.def("cosine_set_measure", &cosine_set_measure, py::arg("k"), py::arg("a"), py::arg("lo") = 0.5,
        py::arg("hi") = 1.0);
  m.def(
      "hermite_cosine_set_measure",
      [](int N, bool absolute) {
        HermiteCosineOptions o;
        o.absolute = absolute;
        return hermite_cosine_set_measure(N, o);
      },
      py::arg("N"), py::arg("absolute") = false);
  m.def(
      "counterexample_fk",
      [](double p, int n, int k) {
        const auto r = counterexample_fk(p, n, k);
        py::dict d;
        d["pairing"] = r.pairing;
        d["lq_power"] = r.lq_power;
        d["fk_norm"] = r.fk_norm;
        d["quantity"] = r.quantity;
        d["reference_exponent"] = r.reference_exponent;
        return d;
      },
      py::arg("p"), py::arg("n"), py::arg("k"));
  m.def(
      "counterexample_gk",
      [](int k, double alpha, int n) {
        const auto r = counterexample_gk(k, alpha, n);
        py::dict d;
        d["l2_sq"] = r.l2_sq;
        d["weighted_sq"] = r.weighted_sq;
        d["pairing"] = r.pairing;
        d["ratio"] = r.ratio;
        return d;
      },
      py::arg("k"), py::arg("alpha"), py::arg("n"));
  m.def(
      "fit_slope",
      [](const std::vector<double>& k, const std::vector<double>& values) { return scaling_dict(fit_slope(k, values)); },
      py::arg("k"), py::arg("values"), "Least-squares slope of log(values) against log(k).");
  m.def(
      "run_config",
      [](const std::string& json_text, std::optional<std::string> cache_dir) {
        const auto cfg = parse_config(json_text);
        ArtifactCache cache = cache_dir ? ArtifactCache(*cache_dir) : ArtifactCache();
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = run_experiment(cfg, cache);
        }
        std::ostringstream csv, summary;
        write_csv(csv, result);
        write_summary_json(summary, result);
        py::dict d;
        d["run_id"] = result.run_id;
        d["verdict"] = to_string(result.summary.verdict);
        d["csv"] = csv.str();
        d["summary"] = summary.str();
        return d;
      },
      py::arg("json_text"), py::arg("cache_dir") = py::none(),
      "Runs one experiment config; returns run_id, verdict, csv and summary text. No files are written.");
}
