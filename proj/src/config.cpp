#include "logdiv/config.hpp"

#include <fstream>

#include "logdiv/errors.hpp"

namespace logdiv {

namespace {

Eigen::MatrixXd parse_matrix(const nlohmann::json& j, int dimension, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dimension) {
    throw ConfigError(std::string(what) + " must be a " + std::to_string(dimension) + "x" +
                      std::to_string(dimension) + " row-major array");
  }
  Eigen::MatrixXd m(dimension, dimension);
  for (int r = 0; r < dimension; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dimension) {
      throw ConfigError(std::string(what) + ": row " + std::to_string(r) + " has wrong length");
    }
    for (int c = 0; c < dimension; ++c) {
      if (!row[c].is_number()) throw ConfigError(std::string(what) + ": non-numeric entry");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

}  // namespace

LogConcaveFunction parse_function(const nlohmann::json& j, int dimension) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw ConfigError("function literal needs a \"family\" string");
  }
  const std::string family = j["family"].get<std::string>();
  try {
    if (family == "gaussian") {
      const double c = j.value("c", 1.0);
      if (!j.contains("A")) throw ConfigError("gaussian needs matrix \"A\"");
      return LogConcaveFunction::gaussian(c, parse_matrix(j["A"], dimension, "A"));
    }
    if (family == "cosh") {
      LogConcaveFunction f = LogConcaveFunction::cosh_family(dimension);
      if (j.contains("c")) f = f.scaled(j["c"].get<double>());
      return f;
    }
    if (family == "quartic") {
      LogConcaveFunction f = LogConcaveFunction::quartic(dimension);
      if (j.contains("c")) f = f.scaled(j["c"].get<double>());
      return f;
    }
    if (family == "scaled") {
      if (!j.contains("inner") || !j.contains("factor")) {
        throw ConfigError("scaled needs \"inner\" and \"factor\"");
      }
      return parse_function(j["inner"], dimension).scaled(j["factor"].get<double>());
    }
    if (family == "linear-composed") {
      if (!j.contains("inner") || !j.contains("T")) {
        throw ConfigError("linear-composed needs \"inner\" and \"T\"");
      }
      return apply_selfadjoint(parse_function(j["inner"], dimension),
                               parse_matrix(j["T"], dimension, "T"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid ") + family + " literal: " + e.what());
  }
  throw ConfigError("unknown family: " + family);
}

Generator parse_generator(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("generator literal needs a \"kind\" string");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "power") {
    if (!j.contains("lambda") || !j["lambda"].is_number()) {
      throw ConfigError("power generator needs numeric \"lambda\"");
    }
    return Generator::power(j["lambda"].get<double>());
  }
  if (kind == "log") return Generator::log();
  if (kind == "log+") return Generator::log_plus();
  if (kind == "tv") return Generator::total_variation();
  throw ConfigError("unknown generator kind: " + kind);
}

QuadratureSpec parse_quadrature(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("scheme") || !j["scheme"].is_string()) {
    throw ConfigError("quadrature literal needs a \"scheme\" string");
  }
  QuadratureSpec spec;
  const std::string scheme = j["scheme"].get<std::string>();
  if (scheme == "gauss-hermite") {
    spec.scheme = Scheme::GaussHermite;
    spec.order = j.value("order", spec.order);
  } else if (scheme == "monte-carlo") {
    spec.scheme = Scheme::MonteCarlo;
    spec.samples = j.value("samples", spec.samples);
    spec.seed = j.value("seed", spec.seed);
  } else {
    throw ConfigError("unknown quadrature scheme: " + scheme);
  }
  spec.target_rel_error = j.value("target_rel_error", spec.target_rel_error);
  if (spec.order < 1 || spec.samples < 1 || !(spec.target_rel_error > 0.0)) {
    throw ConfigError("invalid quadrature parameters");
  }
  return spec;
}

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig config;
  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
    throw ConfigError("config needs integer \"dimension\"");
  }
  config.dimension = j["dimension"].get<int>();
  if (config.dimension < 1 || config.dimension > 10) {
    throw ConfigError("dimension must be in [1, 10]");
  }

  if (j.contains("functions")) {
    if (!j["functions"].is_array()) throw ConfigError("\"functions\" must be an array");
    for (const auto& fj : j["functions"]) {
      config.functions.push_back(parse_function(fj, config.dimension));
    }
  }
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) throw ConfigError("\"generators\" must be an array");
    for (const auto& gj : j["generators"]) {
      config.generators.push_back(parse_generator(gj));
    }
  }
  config.quad = j.contains("quadrature")
                    ? parse_quadrature(j["quadrature"])
                    : QuadratureSpec::defaults_for_dimension(config.dimension);
  if (j.contains("checks")) {
    for (const auto& c : j["checks"]) config.checks.push_back(c.get<std::string>());
  }
  if (j.contains("families")) {
    for (const auto& f : j["families"]) config.families.push_back(f.get<std::string>());
  }
  config.output_dir = j.value("output", config.output_dir);
  config.seed = j.value("seed", config.seed);
  if (j.contains("n_w")) config.n_w = j["n_w"].get<double>();
  config.paper_n = j.value("paper_n", false);

  if (config.paper_n && !config.functions.empty() &&
      static_cast<int>(config.functions.size()) != config.dimension) {
    throw ConfigError("paper-constant mode requires the function count to equal the dimension");
  }
  config.quad.validate(config.dimension);
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

nlohmann::json report_to_json(const InequalityReport& report) {
  return nlohmann::json{{"check", report.check},
                        {"lhs", report.lhs},
                        {"rhs", report.rhs},
                        {"slack", report.slack},
                        {"tolerance", report.tolerance},
                        {"equality_tolerance", report.equality_tolerance},
                        {"quad_error", report.quad_error},
                        {"verdict", verdict_name(report.verdict)},
                        {"fingerprint", report.fingerprint}};
}

InequalityReport report_from_json(const nlohmann::json& j) {
  InequalityReport report;
  report.check = j.at("check").get<std::string>();
  report.lhs = j.at("lhs").get<double>();
  report.rhs = j.at("rhs").get<double>();
  report.slack = j.at("slack").get<double>();
  report.tolerance = j.at("tolerance").get<double>();
  report.equality_tolerance = j.at("equality_tolerance").get<double>();
  report.quad_error = j.at("quad_error").get<double>();
  report.fingerprint = j.at("fingerprint").get<std::string>();
  const std::string verdict = j.at("verdict").get<std::string>();
  if (verdict == "holds") {
    report.verdict = Verdict::Holds;
  } else if (verdict == "equality") {
    report.verdict = Verdict::Equality;
  } else if (verdict == "violated") {
    report.verdict = Verdict::Violated;
  } else if (verdict == "inconclusive") {
    report.verdict = Verdict::Inconclusive;
  } else {
    throw ConfigError("unknown verdict: " + verdict);
  }
  return report;
}

}  // namespace logdiv
