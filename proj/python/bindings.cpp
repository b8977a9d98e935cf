#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geomopt/harness.hpp"

namespace py = pybind11;
using namespace geomopt;

namespace {

// Gradient sequences cross the boundary as (n, d) arrays.
std::vector<Vector> rows_of(const Matrix& m) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
  return out;
}

Matrix stack(const std::vector<Vector>& vs) {
  if (vs.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Index>(vs.size()), vs.front().size());
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Index>(i)) = vs[i].transpose();
  return m;
}

Exponent ex(double p) { return Exponent::from_double(p); }

Vector theta0_or_zero(const std::optional<Vector>& t, Index d) {
  return t ? *t : Vector::Zero(d);
}

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_geomopt, m) {
  m.doc() = "Geometry-aware online and stochastic convex optimization";

  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("lp_norm", [](const Vector& x, double p) { return lp_norm(x, ex(p)); });

  py::class_<NormDescriptor>(m, "Norm")
      .def_static("lp", [](double p) { return NormDescriptor::lp(ex(p)); })
      .def_static("weighted",
                  [](double r, const Vector& beta) { return NormDescriptor::weighted(ex(r), beta); })
      .def("__call__", &NormDescriptor::operator())
      .def("dual", &NormDescriptor::dual)
      .def("dual_value", [](const NormDescriptor& n, const Vector& x) { return dual_norm(n, x); })
      .def_property_readonly("exponent", [](const NormDescriptor& n) { return n.exponent().value(); })
      .def_property_readonly("quadratically_convex", &NormDescriptor::quadratically_convex)
      .def("to_json", [](const NormDescriptor& n) { return json_to_py(norm_to_json(n)); });

  py::class_<SetDescriptor>(m, "Set")
      .def_static("lp_ball",
                  [](double p, double radius, Index d) { return SetDescriptor::lp_ball(ex(p), radius, d); },
                  py::arg("p"), py::arg("radius"), py::arg("d"))
      .def_static("weighted_ball",
                  [](double r, const Vector& w, double radius) {
                    return SetDescriptor::weighted_ball(ex(r), w, radius);
                  },
                  py::arg("r"), py::arg("weights"), py::arg("radius") = 1.0)
      .def_static("box", &SetDescriptor::box)
      .def_property_readonly("dimension", &SetDescriptor::dimension)
      .def_property_readonly("quadratically_convex", &SetDescriptor::quadratically_convex)
      .def("gauge", &SetDescriptor::gauge)
      .def("contains", &SetDescriptor::contains)
      .def("rotated", &SetDescriptor::rotated)
      .def("to_json", [](const SetDescriptor& s) { return json_to_py(set_to_json(s)); });

  m.def("support_value", &support_value);
  m.def("best_in_hindsight", [](const SetDescriptor& s, const Vector& G) {
    const Comparator c = best_in_hindsight(s, G);
    return py::make_tuple(c.theta, c.value);
  });
  m.def("retract", &retract);
  m.def("random_rotation", &random_rotation, py::arg("d"), py::arg("seed"));

  py::class_<MirrorMap>(m, "MirrorMap")
      .def_static("euclidean", &MirrorMap::euclidean)
      .def_static("full", &MirrorMap::full)
      .def_static("pnorm", &MirrorMap::pnorm)
      .def("value", &MirrorMap::value)
      .def("grad", &MirrorMap::grad)
      .def("grad_star", &MirrorMap::grad_star)
      .def("bregman", &MirrorMap::bregman)
      .def("dual_norm_sq", &MirrorMap::dual_norm_sq);
  m.def("log_dimension_exponent", &log_dimension_exponent);

  py::class_<OptimizerSpec>(m, "Optimizer")
      .def_property_readonly("name", [](const OptimizerSpec& s) { return algorithm_name(s.algorithm); })
      .def("play", [](const OptimizerSpec& s, const Matrix& gs) { return stack(play(s, rows_of(gs))); },
           "Iterates played against the rows of gs.");
  auto spec = [](Algorithm a, Vector t0) {
    OptimizerSpec s{std::move(a), std::move(t0)};
    validate(s);
    return s;
  };
  m.def("ogd", [spec](double alpha, Index d, std::optional<Vector> t0) {
    return spec(Ogd{alpha}, theta0_or_zero(t0, d));
  }, py::arg("alpha"), py::arg("d"), py::arg("theta0") = py::none());
  m.def("diag_scaled", [spec](const Vector& lambda, std::optional<Vector> t0) {
    return spec(DiagScaled{lambda}, theta0_or_zero(t0, lambda.size()));
  }, py::arg("lambda_"), py::arg("theta0") = py::none());
  m.def("full_euclidean", [spec](const Matrix& A, double alpha, std::optional<Vector> t0) {
    return spec(FullEuclidean{MirrorMap::full(A), alpha}, theta0_or_zero(t0, A.rows()));
  }, py::arg("A"), py::arg("alpha"), py::arg("theta0") = py::none());
  m.def("pnorm_md", [spec](double a, double alpha, Index d, std::optional<Vector> t0) {
    return spec(PNormMd{a, alpha}, theta0_or_zero(t0, d));
  }, py::arg("a"), py::arg("alpha"), py::arg("d"), py::arg("theta0") = py::none());
  m.def("dual_averaging", [spec](const MirrorMap& map, double alpha, Index d,
                                 std::optional<Vector> t0, std::optional<StepSchedule> schedule) {
    return spec(DualAveraging{map, alpha, schedule ? *schedule : StepSchedule{}}, theta0_or_zero(t0, d));
  }, py::arg("map"), py::arg("alpha"), py::arg("d"), py::arg("theta0") = py::none(),
     py::arg("schedule") = py::none());
  m.def("adagrad", [spec](double eta, Index d, double eps, std::optional<Vector> box,
                          std::optional<Vector> t0) {
    return spec(AdaGradDiag{eta, eps, box}, theta0_or_zero(t0, d));
  }, py::arg("eta"), py::arg("d"), py::arg("eps") = 1e-12, py::arg("box") = py::none(),
     py::arg("theta0") = py::none());

  m.def("linear_regret", [](const Matrix& played, const Matrix& gs, const Vector& theta) {
    return linear_regret(rows_of(played), rows_of(gs), theta);
  });
  m.def("md_regret_bound", [](const MirrorMap& map, double alpha, const Vector& theta,
                              const Vector& theta0, const Matrix& gs) {
    return md_regret_bound(map, alpha, theta, theta0, rows_of(gs));
  });
  m.def("adagrad_bound", [](const Matrix& gs) { return adagrad_bound(rows_of(gs)); });
  m.def("pnorm_default_stepsize", &pnorm_default_stepsize);

  py::class_<AdversarialInstance>(m, "AdversarialInstance")
      .def_property_readonly("gradients", [](const AdversarialInstance& a) { return stack(a.gradients); })
      .def_readonly("comparator_set", &AdversarialInstance::comparator_set)
      .def_readonly("gradient_norm", &AdversarialInstance::gradient_norm)
      .def_readonly("certified_lower_bound", &AdversarialInstance::certified_lower_bound)
      .def_readonly("delta_used", &AdversarialInstance::delta_used)
      .def_readonly("heuristic", &AdversarialInstance::heuristic)
      .def("max_linear_regret", [](const AdversarialInstance& a, const Matrix& played) {
        return max_linear_regret(a, rows_of(played));
      });
  m.def("lp_hard_instance", &lp_hard_instance, py::arg("lambda_"), py::arg("p"), py::arg("n"));
  m.def("lp_hard_instance_general", &lp_hard_instance_general, py::arg("A"), py::arg("p"),
        py::arg("n"), py::arg("seed") = 0);
  m.def("wlp_hard_instance", &wlp_hard_instance, py::arg("beta"), py::arg("alpha"), py::arg("n"));
  m.def("rotate", &rotate);

  py::class_<StochasticInstance>(m, "StochasticInstance")
      .def_readonly("comparator_set", &StochasticInstance::comparator_set)
      .def_property_readonly("dimension", &StochasticInstance::dimension)
      .def("sample", [](const StochasticInstance& s, std::uint64_t seed, std::uint64_t i) {
        return sample(s, seed, i);
      })
      .def("loss", [](const StochasticInstance& s, const Vector& t, const Vector& x) { return loss(s, t, x); })
      .def("subgradient", [](const StochasticInstance& s, const Vector& t, const Vector& x) {
        return subgradient(s, t, x);
      })
      .def("population_value", [](const StochasticInstance& s, const Vector& t) { return population_value(s, t); })
      .def("population_gap", [](const StochasticInstance& s, const Vector& t) { return population_gap(s, t); })
      .def("population_infimum", [](const StochasticInstance& s) { return population_infimum(s); })
      .def("population_minimizer", [](const StochasticInstance& s) { return population_minimizer(s); });
  m.def("sparse_coord", [](const Vector& v, double delta, double p, double r) {
    return sparse_coord(v, delta, ex(p), ex(r));
  }, py::arg("v"), py::arg("delta"), py::arg("p"), py::arg("r"));
  m.def("dense_sign", [](const Vector& v, double delta, double p, double r, double eta) {
    return dense_sign(v, delta, ex(p), ex(r), eta);
  }, py::arg("v"), py::arg("delta"), py::arg("p"), py::arg("r"), py::arg("eta") = 0.0);
  m.def("rect_abs", &rect_abs, py::arg("v"), py::arg("delta"), py::arg("a"), py::arg("gamma"),
        py::arg("p_weights") = Vector());
  m.def("one_dim", &one_dim, py::arg("v"), py::arg("delta"));
  m.def("hamming_separation", &hamming_separation);

  m.def("minimax_rate", [](const SetDescriptor& s, const NormDescriptor& n, Index d, Index nn) {
    const RateBound r = minimax_rate(s, n, d, nn);
    py::dict out;
    out["lower"] = r.lower;
    out["upper"] = r.upper;
    out["regime"] = r.regime;
    out["constants_included"] = r.constants_included;
    return out;
  });
  m.def("optimal_lambda", &optimal_lambda);
  m.def("preconditioned_bound", &preconditioned_bound);
  m.def("gv_packing", [](Index d, std::uint64_t seed) { return stack(gv_packing(d, seed)); },
        py::arg("d"), py::arg("seed") = 0);
  m.def("separation_and_kl", [](double p, Index d, double delta, Index ham) {
    const SeparationKl s = separation_and_kl(ex(p), d, delta, ham);
    return py::make_tuple(s.separation, s.kl);
  });

  m.def("fit_exponent", [](const std::vector<double>& x, const std::vector<double>& y) {
    const ExponentFit f = fit_exponent(x, y);
    return py::make_tuple(f.slope, f.intercept, f.r_squared);
  });
  m.def("_run_config", [](const std::string& text) {
    const ExperimentConfig cfg = parse_config(Json::parse(text));
    const RegretTrace t = run_experiment(cfg);
    py::dict out = json_to_py(trace_sidecar(t));
    py::dict series;
    for (const auto& r : t.runs) series[py::str(r.name)] = r.series;
    out["series"] = series;
    return out;
  });
  m.def("_sweep_csv", [](const std::string& text) {
    std::ostringstream os;
    write_sweep_csv(os, sweep(parse_config(Json::parse(text))));
    return os.str();
  });
}
