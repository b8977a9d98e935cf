#include "geomopt/serialization.hpp"

#include <cmath>
#include <fstream>

namespace geomopt {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

Index need_dim(std::optional<Index> d, const std::string& path) {
  if (!d) fail(path, "dimension is not known here; give an explicit array");
  return *d;
}

// Wraps descriptor constructors so their validation messages carry the path.
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

}  // namespace

Exponent exponent_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return Exponent::infinity();
    fail(path, "expected a number >= 1 or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) fail(path, "expected a number >= 1 or \"inf\"");
  return wrap(path, [&] { return Exponent::from_double(j.get<double>()); });
}

Json exponent_to_json(Exponent e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

Vector vector_from_json(const Json& j, std::optional<Index> d, const std::string& path) {
  if (j.is_array()) {
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
      v[static_cast<Index>(i)] = j[i].get<double>();
    }
    if (d && v.size() != *d) {
      fail(path, "expected " + std::to_string(*d) + " entries, got " + std::to_string(v.size()));
    }
    return v;
  }
  if (j.is_number()) return Vector::Constant(need_dim(d, path), j.get<double>());
  if (j.is_string()) {
    const auto rule = j.get<std::string>();
    const Index n = need_dim(d, path);
    if (rule == "ones") return Vector::Ones(n);
    if (rule == "index") return Vector::LinSpaced(n, 1.0, static_cast<double>(n));
    fail(path, "unknown vector rule \"" + rule + "\" (expected \"ones\" or \"index\")");
  }
  fail(path, "expected an array, a number or a rule name");
}

SetDescriptor set_from_json(const Json& j, std::optional<Index> d, const std::string& path) {
  const std::string kind = get_string(j, "kind", path);
  if (kind == "lp_ball") {
    const Exponent p = exponent_from_json(member(j, "p", path), path + ".p");
    const double radius = get_number_or(j, "radius", 1.0, path);
    const Index dim = j.contains("d") ? get_index(j, "d", path) : need_dim(d, path);
    if (d && dim != *d) fail(path + ".d", "does not match the experiment dimension");
    return wrap(path, [&] { return SetDescriptor::lp_ball(p, radius, dim); });
  }
  if (kind == "weighted_ball") {
    const Exponent r = exponent_from_json(member(j, "r", path), path + ".r");
    const Vector w = vector_from_json(member(j, "weights", path), d, path + ".weights");
    const double radius = get_number_or(j, "radius", 1.0, path);
    return wrap(path, [&] { return SetDescriptor::weighted_ball(r, w, radius); });
  }
  if (kind == "box") {
    const Vector a = vector_from_json(member(j, "a", path), d, path + ".a");
    return wrap(path, [&] { return SetDescriptor::box(a); });
  }
  fail(path + ".kind", "unknown set kind \"" + kind + "\"");
}

Json set_to_json(const SetDescriptor& set) {
  Json j;
  switch (set.kind()) {
    case SetKind::LpBall:
      j = {{"kind", "lp_ball"},
           {"p", exponent_to_json(set.exponent())},
           {"radius", set.radius()},
           {"d", set.dimension()}};
      break;
    case SetKind::WeightedLrBall:
      j = {{"kind", "weighted_ball"},
           {"r", exponent_to_json(set.exponent())},
           {"weights", std::vector<double>(set.weights().begin(), set.weights().end())},
           {"radius", set.radius()}};
      break;
    case SetKind::Box:
      j = {{"kind", "box"},
           {"a", std::vector<double>(set.half_widths().begin(), set.half_widths().end())}};
      break;
  }
  if (set.rotation()) {
    const Matrix& U = *set.rotation();
    Json rows = Json::array();
    for (Index i = 0; i < U.rows(); ++i) {
      Json row = Json::array();
      for (Index k = 0; k < U.cols(); ++k) row.push_back(U(i, k));
      rows.push_back(row);
    }
    j["rotation"] = rows;
  }
  return j;
}

NormDescriptor norm_from_json(const Json& j, std::optional<Index> d, const std::string& path) {
  const std::string kind = get_string(j, "kind", path);
  if (kind == "lp") {
    return NormDescriptor::lp(exponent_from_json(member(j, "p", path), path + ".p"));
  }
  if (kind == "weighted") {
    const Exponent r = exponent_from_json(member(j, "r", path), path + ".r");
    const Vector beta = vector_from_json(member(j, "beta", path), d, path + ".beta");
    return wrap(path, [&] { return NormDescriptor::weighted(r, beta); });
  }
  fail(path + ".kind", "unknown norm kind \"" + kind + "\"");
}

Json norm_to_json(const NormDescriptor& norm) {
  if (!norm.is_weighted()) return {{"kind", "lp"}, {"p", exponent_to_json(norm.exponent())}};
  return {{"kind", "weighted"},
          {"r", exponent_to_json(norm.exponent())},
          {"beta", std::vector<double>(norm.weights().begin(), norm.weights().end())}};
}

Json instance_sidecar(const AdversarialInstance& instance) {
  Json j;
  j["bound"] = instance.certified_lower_bound;
  j["delta"] = instance.delta_used;
  if (instance.family == AdversaryFamily::Lp) {
    j["p_or_beta"] = instance.p;
    j["family"] = "lp";
  } else {
    j["p_or_beta"] = std::vector<double>(instance.beta.begin(), instance.beta.end());
    j["family"] = "wlp";
  }
  j["set"] = set_to_json(instance.comparator_set);
  j["gradient_norm"] = norm_to_json(instance.gradient_norm);
  j["n"] = instance.gradients.size();
  j["d"] = instance.dimension();
  j["heuristic"] = instance.heuristic;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

double get_number(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path + "." + key, "expected a finite number");
  return x;
}

double get_number_or(const Json& obj, const std::string& key, double fallback,
                     const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return get_number(obj, key, path);
}

Index get_index(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<Index>();
}

Index get_index_or(const Json& obj, const std::string& key, Index fallback,
                   const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return get_index(obj, key, path);
}

std::string get_string(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace geomopt
