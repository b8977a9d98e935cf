#include "geomopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <variant>

#include "geomopt/csv.hpp"

namespace geomopt {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Matrix matrix_from_json(const Json& j, Index d, const std::string& path) {
  if (!j.is_array() || static_cast<Index>(j.size()) != d) {
    fail(path, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " array of rows");
  }
  Matrix A(d, d);
  for (Index i = 0; i < d; ++i) {
    const Vector row =
        vector_from_json(j[static_cast<std::size_t>(i)], d, path + "[" + std::to_string(i) + "]");
    A.row(i) = row.transpose();
  }
  return A;
}

bool is_default(const Json& obj, const std::string& key) {
  return !obj.contains(key) || (obj[key].is_string() && obj[key].get<std::string>() == "default");
}

struct Cell {
  explicit Cell(std::variant<AdversarialInstance, StochasticInstance> p) : problem(std::move(p)) {}
  std::variant<AdversarialInstance, StochasticInstance> problem;
  SetDescriptor set = SetDescriptor::box(Vector::Ones(1));
  NormDescriptor norm = NormDescriptor::lp(Exponent::finite(2.0));
  std::vector<std::pair<std::string, OptimizerSpec>> optimizers;
};

double scalar_delta(const Json& inst, double minimax, const std::string& path) {
  if (!inst.contains("delta")) fail(path + ".delta", "missing required field");
  const Json& j = inst["delta"];
  if (j.is_string() && j.get<std::string>() == "minimax") return minimax;
  return get_number(inst, "delta", path);
}

std::variant<AdversarialInstance, StochasticInstance> build_problem(const Json& inst, Index d,
                                                                    Index n) {
  const std::string path = "config.instance";
  const std::string type = get_string(inst, "type", path);
  const std::string kind = get_string(inst, "kind", path);
  if (type == "adversarial") {
    AdversarialInstance out = [&]() -> AdversarialInstance {
      if (kind == "lp") {
        const double p = get_number(inst, "p", path);
        if (inst.contains("A")) {
          const Matrix A = matrix_from_json(inst["A"], d, path + ".A");
          const auto seed = static_cast<std::uint64_t>(get_index_or(inst, "search_seed", 0, path));
          return wrap(path, [&] { return lp_hard_instance_general(A, p, n, seed); });
        }
        const Vector lambda =
            inst.contains("lambda") ? vector_from_json(inst["lambda"], d, path + ".lambda")
                                    : Vector::Ones(d);
        return wrap(path, [&] { return lp_hard_instance(lambda, p, n); });
      }
      if (kind == "wlp") {
        const Vector beta = vector_from_json(inst.contains("beta") ? inst["beta"] : Json("index"),
                                             d, path + ".beta");
        const double alpha = get_number(inst, "alpha", path);
        return wrap(path, [&] { return wlp_hard_instance(beta, alpha, n); });
      }
      if (kind == "file") {
        const std::string file = get_string(inst, "path", path);
        const CsvTable t = read_csv_file(file);
        if (t.header.empty() || t.header[0] != "step") {
          fail(path + ".path", file + ": expected header step,g_1,...,g_d");
        }
        const Index dim = static_cast<Index>(t.header.size()) - 1;
        if (dim != d) {
          fail(path + ".path", file + " has dimension " + std::to_string(dim) +
                                   " but the config asks for d = " + std::to_string(d));
        }
        std::vector<Vector> gs;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
          if (static_cast<Index>(t.rows[i].size()) != dim + 1) {
            fail(path + ".path", file + ": ragged row " + std::to_string(i + 2));
          }
          Vector g(dim);
          for (Index j = 0; j < dim; ++j) {
            try {
              g[j] = std::stod(t.rows[i][static_cast<std::size_t>(j + 1)]);
            } catch (const std::exception&) {
              fail(path + ".path", file + ": non-numeric entry on row " + std::to_string(i + 2));
            }
          }
          gs.push_back(g);
        }
        if (static_cast<Index>(gs.size()) != n) {
          fail(path + ".path", file + " has " + std::to_string(gs.size()) +
                                   " steps but the config asks for n = " + std::to_string(n));
        }
        if (!inst.contains("set")) fail(path + ".set", "missing required field");
        if (!inst.contains("norm")) fail(path + ".norm", "missing required field");
        return AdversarialInstance{std::move(gs), set_from_json(inst["set"], d, path + ".set"),
                                   norm_from_json(inst["norm"], d, path + ".norm"),
                                   get_number_or(inst, "bound", 0.0, path), 0.0,
                                   AdversaryFamily::Lp, 0.0, Vector(), false, std::nullopt};
      }
      fail(path + ".kind", "unknown adversarial kind \"" + kind + "\" (expected lp, wlp or file)");
    }();
    if (inst.contains("rotation_seed")) {
      const auto seed = static_cast<std::uint64_t>(get_index(inst, "rotation_seed", path));
      out = rotate(out, random_rotation(d, seed));
    }
    return out;
  }
  if (type == "stochastic") {
    const Vector v = vector_from_json(inst.contains("v") ? inst["v"] : Json("ones"),
                                      kind == "one_dim" ? 1 : d, path + ".v");
    if (kind == "sparse_coord" || kind == "dense_sign") {
      const Exponent p = exponent_from_json(inst.contains("p") ? inst["p"] : Json(2), path + ".p");
      const Exponent r = exponent_from_json(inst.contains("r") ? inst["r"] : Json(2), path + ".r");
      if (kind == "sparse_coord") {
        const double delta = scalar_delta(inst, sparse_minimax_delta(d, n), path);
        return wrap(path, [&] { return sparse_coord(v, delta, p, r); });
      }
      const double delta = scalar_delta(inst, dense_minimax_delta(n), path);
      const double eta = get_number_or(inst, "eta", 0.0, path);
      return wrap(path, [&] { return dense_sign(v, delta, p, r, eta); });
    }
    if (kind == "rect_abs") {
      const Vector a = vector_from_json(inst.contains("a") ? inst["a"] : Json(1.0), d, path + ".a");
      if (!inst.contains("delta")) fail(path + ".delta", "missing required field");
      const Vector delta = vector_from_json(inst["delta"], d, path + ".delta");
      const NormDescriptor gamma =
          inst.contains("gamma") ? norm_from_json(inst["gamma"], d, path + ".gamma")
                                 : NormDescriptor::lp(Exponent::finite(2.0));
      const Vector pw = inst.contains("p_weights")
                            ? vector_from_json(inst["p_weights"], d, path + ".p_weights")
                            : Vector();
      return wrap(path, [&] { return rect_abs(v, delta, a, gamma, pw); });
    }
    if (kind == "one_dim") {
      const double delta = scalar_delta(inst, one_dim_minimax_delta(n), path);
      return wrap(path, [&] { return one_dim(v[0], delta); });
    }
    fail(path + ".kind", "unknown stochastic kind \"" + kind + "\"");
  }
  fail(path + ".type", "expected \"adversarial\" or \"stochastic\"");
}

// sup_Θ ‖θ‖_t; rotation-invariant only for t = 2, so other exponents need Θ unrotated.
double set_radius(const SetDescriptor& set, Exponent t) {
  if (set.rotation() && !(t == Exponent::finite(2.0))) {
    throw UnsupportedError("non-Euclidean radius of a rotated set");
  }
  return sup_norm_over_set(set.unrotated(), Vector::Ones(set.dimension()), t);
}

double gradient_radius_l2(const NormDescriptor& norm, Index d) {
  return sup_norm_over_set(norm_ball(norm, d), Vector::Ones(d), Exponent::finite(2.0));
}

MirrorMap map_from_json(const Json& j, Index d, const std::string& path) {
  const std::string kind = get_string(j, "kind", path);
  if (kind == "euclidean") {
    const Vector lambda =
        j.contains("lambda") ? vector_from_json(j["lambda"], d, path + ".lambda") : Vector::Ones(d);
    return wrap(path, [&] { return MirrorMap::euclidean(lambda); });
  }
  if (kind == "full") {
    const Matrix A = matrix_from_json(j.contains("A") ? j["A"] : Json(), d, path + ".A");
    return wrap(path, [&] { return MirrorMap::full(A); });
  }
  if (kind == "pnorm") {
    const double a = j.contains("a") && j["a"].is_string() && j["a"] == "log_dim"
                         ? log_dimension_exponent(d)
                         : get_number(j, "a", path);
    return wrap(path, [&] { return MirrorMap::pnorm(a); });
  }
  fail(path + ".kind", "unknown mirror map kind \"" + kind + "\"");
}

OptimizerSpec build_optimizer(const Json& j, const SetDescriptor& set, const NormDescriptor& norm,
                              Index d, Index n, const std::string& path) {
  const std::string kind = get_string(j, "kind", path);
  const Vector theta0 =
      j.contains("theta0") ? vector_from_json(j["theta0"], d, path + ".theta0") : Vector::Zero(d);
  const double sn = std::sqrt(static_cast<double>(n));
  auto euclid_default = [&] {
    return set_radius(set, Exponent::finite(2.0)) / (gradient_radius_l2(norm, d) * sn);
  };
  auto pnorm_a = [&](const Json& obj) {
    if (!obj.contains("a") || (obj["a"].is_string() && obj["a"] == "log_dim")) {
      return log_dimension_exponent(d);
    }
    return get_number(obj, "a", path);
  };

  OptimizerSpec spec{Ogd{1.0}, theta0};
  if (kind == "ogd") {
    spec.algorithm = Ogd{is_default(j, "alpha") ? euclid_default() : get_number(j, "alpha", path)};
  } else if (kind == "diag_scaled") {
    Vector lambda;
    if (j.contains("lambda") && j["lambda"].is_string() && j["lambda"] == "optimal") {
      lambda = wrap(path + ".lambda", [&] { return optimal_lambda(set, norm, n); });
    } else if (j.contains("lambda")) {
      lambda = vector_from_json(j["lambda"], d, path + ".lambda");
    } else {
      fail(path + ".lambda", "missing required field");
    }
    spec.algorithm = DiagScaled{lambda};
  } else if (kind == "full_euclidean") {
    const Matrix A = matrix_from_json(j.contains("A") ? j["A"] : Json(), d, path + ".A");
    const MirrorMap map = wrap(path + ".A", [&] { return MirrorMap::full(A); });
    spec.algorithm = FullEuclidean{map, get_number_or(j, "alpha", 1.0, path)};
  } else if (kind == "pnorm_md") {
    const double a = pnorm_a(j);
    const double alpha = is_default(j, "alpha") ? wrap(path + ".alpha", [&] {
      return pnorm_default_stepsize(set, norm, a, n, theta0);
    })
                                                : get_number(j, "alpha", path);
    spec.algorithm = PNormMd{a, alpha};
  } else if (kind == "dual_averaging") {
    if (!j.contains("map")) fail(path + ".map", "missing required field");
    const MirrorMap map = map_from_json(j["map"], d, path + ".map");
    double alpha = 0.0;
    if (!is_default(j, "alpha")) {
      alpha = get_number(j, "alpha", path);
    } else if (map.kind() == MirrorMap::Kind::PNorm) {
      alpha = wrap(path + ".alpha", [&] {
        return pnorm_default_stepsize(set, norm, map.pnorm_exponent(), n, theta0);
      });
    } else if (map.kind() == MirrorMap::Kind::Euclidean && (map.diagonal().array() == 1.0).all()) {
      alpha = euclid_default();
    } else {
      fail(path + ".alpha", "no default stepsize for this map; give a number");
    }
    spec.algorithm = DualAveraging{map, alpha, {}};
  } else if (kind == "adagrad") {
    AdaGradDiag ada{1.0, get_number_or(j, "eps", 1e-12, path), std::nullopt};
    const bool project = j.contains("project") && j["project"].get<bool>();
    if (project) {
      const SetDescriptor base = set.unrotated();
      if (set.rotation()) fail(path + ".project", "projection needs an unrotated box");
      if (base.kind() == SetKind::Box) {
        ada.box = base.half_widths();
      } else if (base.exponent().is_infinite()) {
        const Vector w =
            base.kind() == SetKind::WeightedLrBall ? base.weights() : Vector::Ones(d);
        ada.box = base.radius() * w.cwiseInverse();
      } else {
        fail(path + ".project", "projection is only available for box-shaped sets");
      }
    }
    if (is_default(j, "eta")) {
      const double linf = set_radius(set, Exponent::infinity());
      // With projection, η = D∞/√2 where D∞ = 2 sup‖θ‖∞ is the box diameter.
      ada.eta = project ? 2.0 * linf / std::sqrt(2.0) : linf;
    } else {
      ada.eta = get_number(j, "eta", path);
    }
    spec.algorithm = ada;
  } else {
    fail(path + ".kind", "unknown optimizer kind \"" + kind + "\"");
  }
  wrap(path, [&] {
    validate(spec);
    return 0;
  });
  return spec;
}

Cell build_cell(const ExperimentConfig& config, Index d, Index n) {
  Cell cell(build_problem(config.instance, d, n));
  if (auto* a = std::get_if<AdversarialInstance>(&cell.problem)) {
    cell.set = a->comparator_set;
    cell.norm = a->gradient_norm;
  } else {
    const auto& s = std::get<StochasticInstance>(cell.problem);
    cell.set = s.comparator_set;
    cell.norm = s.gamma;
  }
  const Index dim = cell.set.dimension();
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < config.optimizers.size(); ++i) {
    const std::string path = "config.optimizers[" + std::to_string(i) + "]";
    const Json& j = config.optimizers[i];
    OptimizerSpec spec = build_optimizer(j, cell.set, cell.norm, dim, n, path);
    std::string name = j.contains("name") ? get_string(j, "name", path)
                                          : algorithm_name(spec.algorithm);
    if (std::find(seen.begin(), seen.end(), name) != seen.end()) {
      name += "#" + std::to_string(i);
    }
    seen.push_back(name);
    cell.optimizers.emplace_back(name, std::move(spec));
  }
  return cell;
}

std::optional<RateBound> try_rate(const SetDescriptor& set, const NormDescriptor& norm, Index d,
                                  Index n) {
  try {
    return minimax_rate(set, norm, d, n);
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
}

std::vector<Index> index_list(const Json& doc, const std::string& key, Index fallback) {
  const std::string path = "config." + key;
  if (!doc.contains(key)) return {fallback};
  const Json& j = doc[key];
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of integers");
  std::vector<Index> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<Index>() < 1) {
      fail(path + "[" + std::to_string(i) + "]", "expected an integer >= 1");
    }
    out.push_back(j[i].get<Index>());
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const Json& doc) {
  const std::string path = "config";
  if (!doc.is_object()) fail(path, "expected a JSON object");
  ExperimentConfig c;
  if (!doc.contains("instance")) fail(path + ".instance", "missing required field");
  c.instance = doc["instance"];
  if (!doc.contains("optimizers")) fail(path + ".optimizers", "missing required field");
  c.optimizers = doc["optimizers"];
  if (!c.optimizers.is_array() || c.optimizers.empty()) {
    fail(path + ".optimizers", "expected a non-empty array");
  }
  c.d_list = index_list(doc, "d_list", doc.contains("d") ? get_index(doc, "d", path) : 0);
  c.n_list = index_list(doc, "n_list", doc.contains("n") ? get_index(doc, "n", path) : 0);
  c.d = doc.contains("d") ? get_index(doc, "d", path) : c.d_list.front();
  c.n = doc.contains("n") ? get_index(doc, "n", path) : c.n_list.front();
  if (c.d < 1) fail(path + ".d", "must be >= 1 (or give d_list)");
  if (c.n < 1) fail(path + ".n", "must be >= 1 (or give n_list)");
  if (!doc.contains("seed") || !doc["seed"].is_number_integer() ||
      (!doc["seed"].is_number_unsigned() && doc["seed"].get<std::int64_t>() < 0)) {
    fail(path + ".seed", "required non-negative integer");
  }
  c.seed = doc["seed"].get<std::uint64_t>();
  c.repetitions = get_index_or(doc, "repetitions", 1, path);
  if (c.repetitions < 1) fail(path + ".repetitions", "must be >= 1");
  const Index workers = get_index_or(doc, "workers", 1, path);
  if (workers < 1) fail(path + ".workers", "must be >= 1");
  c.workers = static_cast<unsigned>(workers);
  for (Index d : c.d_list) {
    for (Index n : c.n_list) build_cell(c, d, n);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_json_file(path)); }

std::uint64_t repetition_seed(std::uint64_t seed, Index repetition) {
  // splitmix64 finalizer over seed + golden-ratio increments.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(repetition) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RegretTrace run_experiment(const ExperimentConfig& config, Index d, Index n, Index repetition) {
  const Cell cell = build_cell(config, d, n);
  RegretTrace trace;
  trace.d = d;
  trace.n = n;
  trace.repetition = repetition;
  trace.rate = try_rate(cell.set, cell.norm, cell.set.dimension(), n);

  if (auto* adv = std::get_if<AdversarialInstance>(&cell.problem)) {
    const bool from_file = get_string(config.instance, "kind", "config.instance") == "file";
    if (!from_file || config.instance.contains("bound")) {
      trace.certified_lower_bound = adv->certified_lower_bound;
    }
    const std::vector<Vector>& gs = adv->gradients;
    Vector G = Vector::Zero(adv->dimension());
    for (const Vector& g : gs) G += g;
    const Comparator best = best_in_hindsight(adv->comparator_set, G);
    for (const auto& [name, spec] : cell.optimizers) {
      OptimizerTrace run;
      run.name = name;
      run.series = cumulative_linear_regret(play(spec, gs), gs, best.theta);
      run.final_metric = run.series.empty() ? 0.0 : run.series.back();
      if (std::holds_alternative<AdaGradDiag>(spec.algorithm)) {
        run.upper_bound = adagrad_bound(gs);
      } else if (const auto* da = std::get_if<DualAveraging>(&spec.algorithm); !da || !da->schedule) {
        const MatchedMap mm = matching_map(spec);
        run.upper_bound = md_regret_bound(mm.map, mm.alpha, best.theta, spec.theta0, gs);
      }
      trace.runs.push_back(std::move(run));
    }
    return trace;
  }

  trace.stochastic = true;
  const auto& inst = std::get<StochasticInstance>(cell.problem);
  const std::uint64_t stream = repetition_seed(config.seed, repetition);
  std::vector<Vector> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) xs.push_back(sample(inst, stream, static_cast<std::uint64_t>(i)));
  for (const auto& [name, spec] : cell.optimizers) {
    OptimizerTrace run;
    run.name = name;
    OptimizerState state = initial_state(spec);
    Vector sum = Vector::Zero(state.theta.size());
    for (Index i = 0; i < n; ++i) {
      sum += state.theta;
      const Vector avg = sum / static_cast<double>(i + 1);
      run.series.push_back(population_gap(inst, retract(inst.comparator_set, avg)));
      const Vector g = subgradient(inst, state.theta, xs[static_cast<std::size_t>(i)]);
      state = step(spec, state, g);
    }
    run.final_metric = run.series.empty() ? 0.0 : run.series.back();
    trace.runs.push_back(std::move(run));
  }
  return trace;
}

RegretTrace run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, config.d, config.n, 0);
}

void write_trace_csv(std::ostream& out, const RegretTrace& trace) {
  CsvWriter w(out);
  std::vector<std::string> header{"step"};
  for (const auto& r : trace.runs) header.push_back(r.name);
  w.row(header);
  const std::size_t steps = trace.runs.empty() ? 0 : trace.runs.front().series.size();
  for (std::size_t i = 0; i < steps; ++i) {
    std::vector<std::string> fields{std::to_string(i + 1)};
    for (const auto& r : trace.runs) fields.push_back(format_double(r.series[i]));
    w.row(fields);
  }
}

Json trace_sidecar(const RegretTrace& trace) {
  Json j;
  j["metric"] = trace.stochastic ? "averaged_iterate_gap" : "cumulative_regret";
  j["d"] = trace.d;
  j["n"] = trace.n;
  j["repetition"] = trace.repetition;
  if (trace.certified_lower_bound) j["certified_lower_bound"] = *trace.certified_lower_bound;
  if (trace.rate) {
    j["minimax_rate"] = {{"lower", trace.rate->lower},
                         {"upper", trace.rate->upper},
                         {"regime", trace.rate->regime},
                         {"constants_included", trace.rate->constants_included}};
  }
  Json runs = Json::array();
  for (const auto& r : trace.runs) {
    Json e{{"name", r.name}, {"final_metric", r.final_metric}};
    if (r.upper_bound) e["upper_bound"] = *r.upper_bound;
    runs.push_back(e);
  }
  j["optimizers"] = runs;
  return j;
}

std::vector<SweepRow> sweep(const ExperimentConfig& config) {
  struct Key {
    Index d, n, rep;
  };
  std::vector<Key> cells;
  for (Index d : config.d_list)
    for (Index n : config.n_list)
      for (Index rep = 0; rep < config.repetitions; ++rep) cells.push_back({d, n, rep});

  std::vector<std::vector<SweepRow>> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const RegretTrace t = run_experiment(config, cells[i].d, cells[i].n, cells[i].rep);
        for (std::size_t k = 0; k < t.runs.size(); ++k) {
          SweepRow row;
          row.d = t.d;
          row.n = t.n;
          row.repetition = t.repetition;
          row.optimizer_index = k;
          row.optimizer = t.runs[k].name;
          row.final_metric = t.runs[k].final_metric;
          row.upper_bound = t.runs[k].upper_bound;
          row.certified_lower_bound = t.certified_lower_bound;
          if (t.rate) {
            row.rate_lower = t.rate->lower;
            row.rate_upper = t.rate->upper;
          }
          results[i].push_back(std::move(row));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(cells.size());
        return;
      }
    }
  };
  const unsigned nthreads =
      std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<SweepRow> rows;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(rows));
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.d, a.n, a.repetition, a.optimizer_index) <
           std::tie(b.d, b.n, b.repetition, b.optimizer_index);
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  CsvWriter w(out);
  w.row({"d", "n", "rep", "optimizer", "final_metric", "upper_bound", "certified_lower_bound",
         "rate_lower", "rate_upper"});
  auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  for (const SweepRow& r : rows) {
    w.row({std::to_string(r.d), std::to_string(r.n), std::to_string(r.repetition), r.optimizer,
           format_double(r.final_metric), opt(r.upper_bound), opt(r.certified_lower_bound),
           opt(r.rate_lower), opt(r.rate_upper)});
  }
}

ExponentFit fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_exponent: x and y differ in length");
  if (x.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 points");
  const std::size_t m = x.size();
  double sx = 0, sy = 0;
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw std::invalid_argument("fit_exponent: data must be positive and finite");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponent: x values are all equal");
  ExponentFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = ly[i] - (f.intercept + f.slope * lx[i]);
    ss_res += e * e;
  }
  f.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  return m % 2 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

}  // namespace geomopt
