#include "logdiv/gaussian_oracle.hpp"

#include <cmath>

#include "logdiv/errors.hpp"

namespace logdiv {

namespace {

/// log det of an SPD matrix via Cholesky; throws NotSPD on failure.
double log_det_spd(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw NotSPD(what);
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

int GaussianVector::dimension() const {
  if (components.empty()) throw DimensionMismatch("gaussian vector must be nonempty");
  const int d = components.front().dimension();
  for (const auto& g : components) {
    if (g.dimension() != d) {
      throw DimensionMismatch("gaussian vector entries must share one dimension");
    }
  }
  return d;
}

FunctionVector GaussianVector::functions() const {
  FunctionVector out;
  out.reserve(components.size());
  for (const auto& g : components) out.push_back(LogConcaveFunction::gaussian(g));
  return out;
}

double oracle_mixed(const GaussianVector& gv, const GeneratorVector& generators) {
  const int d = gv.dimension();
  const int n = gv.size();
  if (static_cast<int>(generators.size()) != n) {
    throw DimensionMismatch("one generator per gaussian component required");
  }
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  double log_prod = 0.0;
  for (int i = 0; i < n; ++i) {
    const GaussianParams& g = gv.components[i];
    sum += g.matrix;
    const double log_arg = log_det_spd(g.matrix, "component matrix not SPD") -
                           2.0 * std::log(g.scale);
    const double log_f = generators[i].log_eval_given_log(log_arg);
    if (std::isnan(log_f)) {
      throw NegativeFactor("generator factor " + generators[i].name() +
                           " is negative on this gaussian instance");
    }
    log_prod += (std::log(g.scale) + log_f) / n;
  }
  const double log_pref = 0.5 * d * std::log(2.0 * M_PI * n) -
                          0.5 * log_det_spd(sum, "sum of component matrices not SPD");
  return std::exp(log_pref + log_prod);
}

double oracle_as_lambda(const GaussianVector& gv, double lambda) {
  const int d = gv.dimension();
  const int n = gv.size();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  double log_prod = 0.0;
  for (const GaussianParams& g : gv.components) {
    sum += g.matrix;
    log_prod += ((1.0 - 2.0 * lambda) * std::log(g.scale) +
                 lambda * log_det_spd(g.matrix, "component matrix not SPD")) /
                n;
  }
  const double log_pref = 0.5 * d * std::log(2.0 * M_PI * n) -
                          0.5 * log_det_spd(sum, "sum of component matrices not SPD");
  return std::exp(log_pref + log_prod);
}

double oracle_as_lambda_i(const GaussianParams& g1, const GaussianParams& g2, double lambda,
                          double i, double n_w) {
  if (g1.dimension() != g2.dimension()) {
    throw DimensionMismatch("gaussian pair dimensions differ");
  }
  const int d = g1.dimension();
  const double n = n_w;
  const double log_scales =
      (1.0 - 2.0 * lambda) * (i * std::log(g1.scale) + (n - i) * std::log(g2.scale)) / n;
  const double log_dets = lambda *
                          (i * log_det_spd(g1.matrix, "A1 not SPD") +
                           (n - i) * log_det_spd(g2.matrix, "A2 not SPD")) /
                          n;
  const Eigen::MatrixXd mix = i * g1.matrix + (n - i) * g2.matrix;
  const double log_pref = 0.5 * d * std::log(2.0 * M_PI * n) -
                          0.5 * log_det_spd(mix, "i A1 + (n-i) A2 not SPD");
  return std::exp(log_scales + log_dets + log_pref);
}

GaussianParams oracle_dual(const GaussianParams& g) { return g.dual(); }

MatrixChainReport matrix_bm_check(const std::vector<Eigen::MatrixXd>& matrices) {
  if (matrices.empty()) throw NotSPD("matrix list must be nonempty");
  const int d = static_cast<int>(matrices.front().rows());
  const int n = static_cast<int>(matrices.size());

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  double log_gm = 0.0;       // log prod det^{1/n}
  double root_sum = 0.0;     // sum det^{1/n}
  for (const Eigen::MatrixXd& m : matrices) {
    if (m.rows() != d || m.cols() != d) throw NotSPD("matrices must share one size");
    if (((m - m.transpose()).array().abs() > 1e-10).any()) {
      throw NotSPD("matrices must be symmetric");
    }
    const double log_det = log_det_spd(m, "matrix not SPD");
    log_gm += log_det / n;
    root_sum += std::exp(log_det / n);
    sum += m;
  }
  const double log_det_sum = log_det_spd(sum, "matrix sum not SPD");

  MatrixChainReport report;
  report.minkowski_lhs = std::exp(log_det_sum / n);
  report.minkowski_rhs = root_sum;
  report.minkowski_slack = report.minkowski_lhs - report.minkowski_rhs;
  report.gm_value = std::exp(log_gm);
  report.am_value = std::exp(n * std::log(root_sum) - n * std::log(double(n)));
  report.det_value = std::exp(log_det_sum - n * std::log(double(n)));
  report.gm_am_slack = report.am_value - report.gm_value;
  report.am_det_slack = report.det_value - report.am_value;
  return report;
}

}  // namespace logdiv
