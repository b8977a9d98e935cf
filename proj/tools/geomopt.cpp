// geomopt command-line interface.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "geomopt/csv.hpp"
#include "geomopt/harness.hpp"
#include "geomopt/plot.hpp"

using namespace geomopt;

namespace {

// A descriptor argument is inline JSON, or a path to a JSON file.
Json descriptor_arg(const std::string& text, const std::string& what) {
  if (std::filesystem::exists(text)) return read_json_file(text);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(what + ": neither an existing file nor valid JSON (" + e.what() + ")");
  }
}

std::string sidecar_path(const std::string& out) {
  return std::filesystem::path(out).replace_extension(".json").string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  return f;
}

Vector vector_file(const std::string& path, const std::string& what, std::optional<Index> d) {
  if (std::filesystem::path(path).extension() == ".csv") {
    const CsvTable t = read_csv_file(path);
    std::vector<double> xs;
    auto take = [&](const std::string& s) { xs.push_back(std::stod(s)); };
    // Either a single column with a header, or a single header-less row of numbers.
    try {
      for (const auto& h : t.header) take(h);
    } catch (const std::exception&) {
      xs.clear();
    }
    for (const auto& row : t.rows) {
      for (const auto& f : row) take(f);
    }
    Vector v(static_cast<Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<Index>(i)] = xs[i];
    if (d && v.size() != *d) {
      throw ConfigError(what + ": expected " + std::to_string(*d) + " entries, got " +
                        std::to_string(v.size()));
    }
    return v;
  }
  return vector_from_json(read_json_file(path), d, what);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry-aware online and stochastic convex optimization experiments"};
  app.require_subcommand(1);

  std::string set_desc, norm_desc;
  Index d = 0, n = 0;
  auto* rates = app.add_subcommand("rates", "Minimax rate and optimal diagonal scaling for (set, norm)");
  rates->add_option("--set", set_desc, "Set descriptor (JSON text or file)")->required();
  rates->add_option("--norm", norm_desc, "Gradient norm descriptor (JSON text or file)")->required();
  rates->add_option("--d", d, "Dimension")->required()->check(CLI::PositiveNumber);
  rates->add_option("--n", n, "Sample size")->required()->check(CLI::PositiveNumber);

  std::string kind, beta_file, lambda_file, out;
  double p = 1.0, alpha = 0.0;
  auto* adv = app.add_subcommand("adversary", "Write a hard gradient sequence as CSV plus a JSON sidecar");
  adv->add_option("--kind", kind, "lp or wlp")->required()->check(CLI::IsMember({"lp", "wlp"}));
  auto* p_opt = adv->add_option("--p", p, "Set exponent in [1, 2] (lp)");
  auto* beta_opt = adv->add_option("--beta", beta_file, "Weights file, JSON array or CSV (wlp)");
  adv->add_option("--lambda", lambda_file, "Diagonal scaling file of the targeted method (lp)");
  adv->add_option("--alpha", alpha, "OGD stepsize to target (wlp); 0 selects delta = 1");
  adv->add_option("--d", d, "Dimension")->required()->check(CLI::PositiveNumber);
  adv->add_option("--n", n, "Sequence length")->required()->check(CLI::Range(Index{4}, Index{1} << 40));
  adv->add_option("--out", out, "Output CSV")->required();

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one experiment; writes a trace CSV and JSON sidecar");
  run->add_option("--config", config_path, "Config JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output CSV")->required();

  auto* sw = app.add_subcommand("sweep", "Run a (d, n, repetition) sweep; writes a CSV table");
  sw->add_option("--config", config_path, "Config JSON")->required()->check(CLI::ExistingFile);
  sw->add_option("--out", out, "Output CSV")->required();

  std::string in;
  auto* plot = app.add_subcommand("plot", "Render a trace or sweep CSV as an SVG line chart");
  plot->add_option("--in", in, "Input CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", out, "Output SVG")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*rates) {
      const SetDescriptor set = set_from_json(descriptor_arg(set_desc, "--set"), d, "set");
      const NormDescriptor norm = norm_from_json(descriptor_arg(norm_desc, "--norm"), d, "norm");
      if (set.dimension() != d) throw ConfigError("set: dimension differs from --d");
      Json j;
      const RateBound r = minimax_rate(set, norm, d, n);
      j["lower"] = r.lower;
      j["upper"] = r.upper;
      j["regime"] = r.regime;
      j["constants_included"] = r.constants_included;
      if (set.quadratically_convex() && !set.rotation()) {
        const Vector lam = optimal_lambda(set, norm, n);
        j["lambda_star"] = std::vector<double>(lam.data(), lam.data() + lam.size());
        j["preconditioned_bound"] = preconditioned_bound(set, norm, lam, n);
      }
      std::cout << j.dump(2) << "\n";
    } else if (*adv) {
      AdversarialInstance inst = [&] {
        if (kind == "lp") {
          if (!*p_opt) throw ConfigError("--p is required for --kind lp");
          const Vector lambda = lambda_file.empty() ? Vector::Ones(d)
                                                    : vector_file(lambda_file, "--lambda", d);
          return lp_hard_instance(lambda, p, n);
        }
        if (!*beta_opt) throw ConfigError("--beta is required for --kind wlp");
        return wlp_hard_instance(vector_file(beta_file, "--beta", d), alpha, n);
      }();
      auto f = open_out(out);
      write_gradient_csv(f, inst.gradients);
      Json side = instance_sidecar(inst);
      write_json_file(sidecar_path(out), side);
    } else if (*run) {
      if (std::filesystem::exists(sidecar_path(out)) &&
          std::filesystem::equivalent(sidecar_path(out), config_path)) {
        throw ConfigError("--out: the JSON sidecar would overwrite the config file");
      }
      const ExperimentConfig cfg = load_config(config_path);
      const RegretTrace t = run_experiment(cfg);
      auto f = open_out(out);
      write_trace_csv(f, t);
      write_json_file(sidecar_path(out), trace_sidecar(t));
    } else if (*sw) {
      const ExperimentConfig cfg = load_config(config_path);
      const std::vector<SweepRow> rows = sweep(cfg);
      auto f = open_out(out);
      write_sweep_csv(f, rows);
    } else if (*plot) {
      plot_csv_file(in, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
