// Command-line interface: batch computations of divergences and affine
// surface areas of log-concave functions, the numeric Legendre dual,
// inequality verification suites, and lambda sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "logdiv/config.hpp"
#include "logdiv/conjugate.hpp"
#include "logdiv/divergence.hpp"
#include "logdiv/errors.hpp"
#include "logdiv/surface.hpp"
#include "logdiv/verify.hpp"

namespace {

constexpr int kExitConfigError = 64;
constexpr int kExitComputeError = 65;

using logdiv::RunConfig;

RunConfig load_required_config(const std::string& path) {
  if (path.empty()) throw logdiv::ConfigError("--config is required for this subcommand");
  return logdiv::load_config_file(path);
}

void require_paper_n(const RunConfig& config) {
  if (config.paper_n &&
      static_cast<int>(config.functions.size()) != config.dimension) {
    throw logdiv::ConfigError(
        "paper-constant mode: function count must equal the dimension");
  }
}

nlohmann::json result_record(const std::string& op, const logdiv::IntegrationResult& r) {
  return nlohmann::json{{"op", op},
                        {"value", r.value},
                        {"error", r.error},
                        {"evaluations", r.evaluations},
                        {"scheme", logdiv::scheme_name(r.scheme)}};
}

Eigen::VectorXd parse_point(const std::string& text, int dimension) {
  Eigen::VectorXd y(dimension);
  std::stringstream in(text);
  std::string item;
  int i = 0;
  while (std::getline(in, item, ',')) {
    if (i >= dimension) throw logdiv::ConfigError("--at has too many components");
    try {
      y[i++] = std::stod(item);
    } catch (const std::exception&) {
      throw logdiv::ConfigError("--at component is not a number: " + item);
    }
  }
  if (i != dimension) throw logdiv::ConfigError("--at needs one component per dimension");
  return y;
}

int run_verify(const RunConfig& config, const std::vector<std::string>& checks,
               std::uint64_t seed, int trials, const std::string& output_dir) {
  logdiv::SuiteConfig suite;
  suite.dimension = config.dimension;
  suite.checks = checks.empty() ? config.checks : checks;
  suite.families = config.families;
  suite.quad = config.quad;
  suite.trials = trials;
  suite.seed = seed;

  const std::vector<logdiv::InequalityReport> reports = logdiv::run_suite(suite);

  const std::filesystem::path dir = output_dir.empty() ? config.output_dir : output_dir;
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / "reports.jsonl";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw logdiv::ConfigError("cannot write " + path.string());
  for (const auto& report : reports) {
    out << logdiv::report_to_json(report).dump() << "\n";
  }
  out.close();

  int holds = 0, equality = 0, violated = 0, inconclusive = 0;
  for (const auto& report : reports) {
    switch (report.verdict) {
      case logdiv::Verdict::Holds:
        ++holds;
        break;
      case logdiv::Verdict::Equality:
        ++equality;
        break;
      case logdiv::Verdict::Violated:
        ++violated;
        break;
      case logdiv::Verdict::Inconclusive:
        ++inconclusive;
        break;
    }
  }
  std::cout << "reports: " << reports.size() << " (holds " << holds << ", equality "
            << equality << ", violated " << violated << ", inconclusive " << inconclusive
            << ") -> " << path.string() << "\n";
  return logdiv::exit_code_for(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divergences and affine surface areas of log-concave functions"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration")->envname("LOGDIV_CONFIG");
  bool paper_n_flag = false;
  app.add_flag("--paper-n", paper_n_flag,
               "assert that the function count equals the dimension");

  // divergence mixed|classical|ith|kl
  auto* divergence = app.add_subcommand("divergence", "compute a divergence");
  divergence->require_subcommand(1);
  auto* div_mixed = divergence->add_subcommand("mixed", "mixed divergence of the vector");
  auto* div_classical =
      divergence->add_subcommand("classical", "classical divergence (first pair)");
  auto* div_ith = divergence->add_subcommand("ith", "i-th mixed divergence (first two)");
  auto* div_kl = divergence->add_subcommand("kl", "vector Kullback-Leibler divergence");
  double ith_i = 0.0;
  double opt_n_w = 0.0;
  div_ith->add_option("--i", ith_i, "interpolation parameter")->required();
  div_ith->add_option("--n-w", opt_n_w, "weight denominator (default: dimension)");

  // surface --lambda L [--i I]
  auto* surface = app.add_subcommand("surface", "mixed affine surface area");
  double surface_lambda = 0.0;
  double surface_i = -1.0;
  bool surface_has_i = false;
  surface->add_option("--lambda", surface_lambda, "surface-area exponent")->required();
  surface->add_option("--i", surface_i, "i-th variant (first two functions)")
      ->each([&surface_has_i](const std::string&) { surface_has_i = true; });
  surface->add_option("--n-w", opt_n_w, "weight denominator (default: dimension)");

  // conjugate --at y
  auto* conjugate = app.add_subcommand("conjugate", "Legendre transform at a point");
  std::string at_text;
  conjugate->add_option("--at", at_text, "comma-separated point")->required();

  // omega
  auto* omega = app.add_subcommand("omega", "scale-derivative invariant");

  // verify
  auto* verify = app.add_subcommand("verify", "run inequality checks on seeded instances");
  std::vector<std::string> check_names;
  std::uint64_t verify_seed = 42;
  int verify_trials = 1;
  std::string verify_output;
  verify->add_option("--check", check_names, "check name (repeatable)");
  verify->add_option("--seed", verify_seed, "suite seed");
  verify->add_option("--trials", verify_trials, "instances per check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--output", verify_output, "report directory");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "lambda sweep of the surface area, CSV output");
  double lambda_from = 0.0;
  double lambda_to = 1.0;
  int steps = 11;
  std::string sweep_output;
  sweep->add_option("--lambda-from", lambda_from, "first lambda")->required();
  sweep->add_option("--lambda-to", lambda_to, "last lambda")->required();
  sweep->add_option("--steps", steps, "number of grid points")->check(CLI::PositiveNumber);
  sweep->add_option("--output", sweep_output, "CSV path (default <output>/sweep.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      RunConfig config;
      if (!config_path.empty()) config = logdiv::load_config_file(config_path);
      return run_verify(config, check_names, verify_seed, verify_trials, verify_output);
    }

    RunConfig config = load_required_config(config_path);
    if (paper_n_flag) config.paper_n = true;
    require_paper_n(config);
    const double n_w = opt_n_w > 0.0
                           ? opt_n_w
                           : config.n_w.value_or(static_cast<double>(config.dimension));

    if (divergence->parsed()) {
      if (config.functions.empty()) throw logdiv::ConfigError("config has no functions");
      logdiv::IntegrationResult result;
      std::string op;
      if (div_mixed->parsed()) {
        op = "mixed";
        result = logdiv::mixed_f_divergence(
            logdiv::DivergenceInstance(config.functions, config.generators, config.n_w),
            config.quad);
      } else if (div_classical->parsed()) {
        op = "classical";
        if (config.generators.empty()) throw logdiv::ConfigError("config has no generators");
        result = logdiv::f_divergence(config.generators.front(), config.functions.front(),
                                      config.quad);
      } else if (div_ith->parsed()) {
        op = "ith";
        if (config.functions.size() < 2 || config.generators.size() < 2) {
          throw logdiv::ConfigError("the i-th form needs two functions and two generators");
        }
        result = logdiv::ith_mixed_f_divergence(config.generators[0], config.generators[1],
                                                config.functions[0], config.functions[1],
                                                ith_i, n_w, config.quad);
      } else {
        op = "kl";
        result = logdiv::mixed_kl_divergence(config.functions, config.quad);
      }
      std::cout << result_record(op, result).dump() << "\n";
      return 0;
    }

    if (surface->parsed()) {
      if (config.functions.empty()) throw logdiv::ConfigError("config has no functions");
      logdiv::IntegrationResult result;
      if (surface_has_i) {
        if (config.functions.size() < 2) {
          throw logdiv::ConfigError("the i-th form needs two functions");
        }
        result = logdiv::as_lambda_i(config.functions[0], config.functions[1], surface_lambda,
                                     surface_i, n_w, config.quad);
      } else {
        result = logdiv::as_lambda(config.functions, surface_lambda, config.quad);
      }
      nlohmann::json record = result_record("surface", result);
      record["lambda"] = surface_lambda;
      if (surface_has_i) record["i"] = surface_i;
      std::cout << record.dump() << "\n";
      return 0;
    }

    if (conjugate->parsed()) {
      if (config.functions.empty()) throw logdiv::ConfigError("config has no functions");
      const Eigen::VectorXd y = parse_point(at_text, config.dimension);
      const logdiv::ConjugateResult result = logdiv::legendre(config.functions.front(), y);
      nlohmann::json record{{"op", "conjugate"},
                            {"value", result.value},
                            {"iterations", result.iterations},
                            {"residual", result.residual}};
      record["maximizer"] = std::vector<double>(
          result.maximizer.data(), result.maximizer.data() + result.maximizer.size());
      std::cout << record.dump() << "\n";
      return 0;
    }

    if (omega->parsed()) {
      if (config.functions.empty()) throw logdiv::ConfigError("config has no functions");
      const logdiv::IntegrationResult result =
          logdiv::omega_invariant(config.functions, config.quad);
      std::cout << result_record("omega", result).dump() << "\n";
      return 0;
    }

    if (sweep->parsed()) {
      if (config.functions.empty()) throw logdiv::ConfigError("config has no functions");
      if (steps < 2) throw logdiv::ConfigError("--steps must be at least 2");
      std::filesystem::path path = sweep_output.empty()
                                       ? std::filesystem::path(config.output_dir) / "sweep.csv"
                                       : std::filesystem::path(sweep_output);
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      std::ofstream out(path, std::ios::binary);
      if (!out) throw logdiv::ConfigError("cannot write " + path.string());
      out << "lambda,value,error,evals\n";
      for (int s = 0; s < steps; ++s) {
        const double lambda =
            lambda_from + (lambda_to - lambda_from) * s / static_cast<double>(steps - 1);
        const logdiv::IntegrationResult r =
            logdiv::as_lambda(config.functions, lambda, config.quad);
        out << nlohmann::json(lambda).dump() << "," << nlohmann::json(r.value).dump() << ","
            << nlohmann::json(r.error).dump() << "," << r.evaluations << "\n";
      }
      std::cout << "wrote " << path.string() << "\n";
      return 0;
    }
  } catch (const logdiv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const logdiv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputeError;
  }
  return 0;
}
