#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "geomopt/adversaries.hpp"
#include "geomopt/geometry.hpp"

namespace geomopt {

using Json = nlohmann::json;

/// Configuration or descriptor error. The message starts with the JSON path of
/// the offending field, e.g. "config.optimizers[1].alpha: ...".
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponents are numbers >= 1 or the string "inf".
Exponent exponent_from_json(const Json& j, const std::string& path);
Json exponent_to_json(Exponent e);

/// A vector field: an explicit array, a scalar broadcast to dimension d, or the
/// rules "ones" and "index" (v_j = j, 1-based).
Vector vector_from_json(const Json& j, std::optional<Index> d, const std::string& path);

///   {"kind": "lp_ball", "p": 2, "radius": 1}
///   {"kind": "weighted_ball", "r": 2, "weights": [...], "radius": 1}
///   {"kind": "box", "a": [...] | 1.0}
/// d is required when the descriptor does not carry its own dimension.
SetDescriptor set_from_json(const Json& j, std::optional<Index> d, const std::string& path = "set");
Json set_to_json(const SetDescriptor& set);

///   {"kind": "lp", "p": 2}
///   {"kind": "weighted", "r": 1, "beta": [...] | "index"}
NormDescriptor norm_from_json(const Json& j, std::optional<Index> d,
                              const std::string& path = "norm");
Json norm_to_json(const NormDescriptor& norm);

/// {bound, delta, p_or_beta, set} plus a few descriptive fields.
Json instance_sidecar(const AdversarialInstance& instance);

/// Reads a JSON document; parse errors are reported with the file name.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Typed field access with path-qualified errors.
double get_number(const Json& obj, const std::string& key, const std::string& path);
double get_number_or(const Json& obj, const std::string& key, double fallback,
                     const std::string& path);
Index get_index(const Json& obj, const std::string& key, const std::string& path);
Index get_index_or(const Json& obj, const std::string& key, Index fallback,
                   const std::string& path);
std::string get_string(const Json& obj, const std::string& key, const std::string& path);

}  // namespace geomopt
