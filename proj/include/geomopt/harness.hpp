#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geomopt/optimizers.hpp"
#include "geomopt/rates.hpp"
#include "geomopt/serialization.hpp"
#include "geomopt/stochastic.hpp"

namespace geomopt {

/// Parsed experiment document; see docs/config.md for the schema. Instance
/// and optimizer blocks stay as JSON because vector-valued fields may be
/// rules ("index", "optimal", ...) that depend on the (d, n) cell.
struct ExperimentConfig {
  Json instance;
  Json optimizers;
  Index d = 0;
  Index n = 0;
  std::uint64_t seed = 0;
  Index repetitions = 1;
  std::vector<Index> d_list;
  std::vector<Index> n_list;
  unsigned workers = 1;
};

/// Validates every field and builds each (d, n) cell once so descriptor
/// errors surface before any run. Errors are ConfigError with a field path.
ExperimentConfig parse_config(const Json& doc);
ExperimentConfig load_config(const std::string& path);

struct OptimizerTrace {
  std::string name;
  /// Cumulative regret after each step (adversarial) or the averaged-iterate
  /// optimality gap after each step (stochastic).
  std::vector<double> series;
  double final_metric = 0.0;
  /// md_regret_bound or adagrad_bound at the best comparator in hindsight.
  std::optional<double> upper_bound;
};

struct RegretTrace {
  bool stochastic = false;
  Index d = 0;
  Index n = 0;
  Index repetition = 0;
  std::vector<OptimizerTrace> runs;
  std::optional<double> certified_lower_bound;
  std::optional<RateBound> rate;
};

/// One cell. Deterministic in (config, d, n, repetition).
RegretTrace run_experiment(const ExperimentConfig& config, Index d, Index n, Index repetition);
/// The configured (d, n), repetition 0.
RegretTrace run_experiment(const ExperimentConfig& config);

/// Header step,<optimizer names>.
void write_trace_csv(std::ostream& out, const RegretTrace& trace);
Json trace_sidecar(const RegretTrace& trace);

struct SweepRow {
  Index d = 0;
  Index n = 0;
  Index repetition = 0;
  std::size_t optimizer_index = 0;
  std::string optimizer;
  double final_metric = 0.0;
  std::optional<double> upper_bound;
  std::optional<double> certified_lower_bound;
  std::optional<double> rate_lower;
  std::optional<double> rate_upper;
};

/// Every (d, n, repetition) cell, run on config.workers threads, sorted by
/// (d, n, repetition, optimizer).
std::vector<SweepRow> sweep(const ExperimentConfig& config);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log y on log x. Needs >= 3 points with x, y > 0.
ExponentFit fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

/// Per-repetition stream seed, mixed so nearby seeds give unrelated streams.
std::uint64_t repetition_seed(std::uint64_t seed, Index repetition);

}  // namespace geomopt
