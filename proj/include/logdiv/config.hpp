#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "logdiv/verify.hpp"

namespace logdiv {

/// A parsed batch-run configuration. Family literals:
///   {"family":"gaussian","c":1.0,"A":[[...]]}
///   {"family":"cosh"}
///   {"family":"quartic"}
///   {"family":"scaled","inner":{...},"factor":2.0}
///   {"family":"linear-composed","inner":{...},"T":[[...]]}
/// Generator literals: {"kind":"power","lambda":0.5}, {"kind":"log"},
/// {"kind":"log+"}, {"kind":"tv"}.
/// Quadrature literals: {"scheme":"gauss-hermite","order":40} or
/// {"scheme":"monte-carlo","samples":2000000,"seed":42}.
struct RunConfig {
  int dimension = 2;
  FunctionVector functions;
  GeneratorVector generators;
  QuadratureSpec quad;
  std::vector<std::string> checks;
  std::vector<std::string> families;
  std::string output_dir = ".";
  std::uint64_t seed = 42;
  std::optional<double> n_w;
  bool paper_n = false;
};

LogConcaveFunction parse_function(const nlohmann::json& j, int dimension);
Generator parse_generator(const nlohmann::json& j);
QuadratureSpec parse_quadrature(const nlohmann::json& j);

/// Throws ConfigError on schema violations.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

nlohmann::json report_to_json(const InequalityReport& report);
InequalityReport report_from_json(const nlohmann::json& j);

}  // namespace logdiv
