#include "logdiv/function.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "logdiv/errors.hpp"

namespace logdiv {

namespace {

void require_dim(const Eigen::VectorXd& x, int d, const char* where) {
  if (x.size() != d) {
    throw DimensionMismatch(std::string(where) + ": point has dimension " +
                            std::to_string(x.size()) + ", function has " + std::to_string(d));
  }
}

}  // namespace

GaussianParams::GaussianParams(double c, Eigen::MatrixXd a) : scale(c), matrix(std::move(a)) {
  if (!(scale > 0.0)) throw NotSPD("gaussian scale must be positive");
  if (matrix.rows() != matrix.cols()) throw NotSPD("gaussian matrix must be square");
  if (((matrix - matrix.transpose()).array().abs() > 1e-12).any()) {
    throw NotSPD("gaussian matrix must be symmetric within 1e-12");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(matrix);
  if (llt.info() != Eigen::Success) {
    throw NotSPD("gaussian matrix must have positive Cholesky pivots");
  }
}

GaussianParams GaussianParams::dual() const {
  const int d = dimension();
  Eigen::MatrixXd inv = matrix.llt().solve(Eigen::MatrixXd::Identity(d, d));
  inv = ((inv + inv.transpose()) / 2.0).eval();
  return GaussianParams(1.0 / scale, inv);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Gaussian:
      return "gaussian";
    case Family::Cosh:
      return "cosh";
    case Family::Quartic:
      return "quartic";
    case Family::Scaled:
      return "scaled";
    case Family::ComposedLinear:
      return "linear-composed";
    case Family::Custom:
      return "custom";
  }
  return "?";
}

struct LogConcaveFunction::Impl {
  int dimension;
  double log_scale;
  Family family;
  bool closed_form_dual;
  JetFn jet;
  std::shared_ptr<const GaussianParams> gaussian;
  std::string label;
};

LogConcaveFunction LogConcaveFunction::gaussian(const GaussianParams& params) {
  auto impl = std::make_shared<Impl>();
  impl->dimension = params.dimension();
  impl->log_scale = std::log(params.scale);
  impl->family = Family::Gaussian;
  impl->closed_form_dual = true;
  impl->gaussian = std::make_shared<const GaussianParams>(params);
  const Eigen::MatrixXd a = params.matrix;
  impl->jet = [a](const Eigen::VectorXd& x) {
    PotentialJet jet;
    Eigen::VectorXd ax = a * x;
    jet.value = 0.5 * x.dot(ax);
    jet.gradient = std::move(ax);
    jet.hessian = a;
    return jet;
  };
  impl->label = "gaussian";
  return LogConcaveFunction(std::move(impl));
}

LogConcaveFunction LogConcaveFunction::gaussian(double c, Eigen::MatrixXd a) {
  return gaussian(GaussianParams(c, std::move(a)));
}

LogConcaveFunction LogConcaveFunction::standard_gaussian(int d) {
  return gaussian(1.0, Eigen::MatrixXd::Identity(d, d));
}

LogConcaveFunction LogConcaveFunction::cosh_family(int d) {
  auto impl = std::make_shared<Impl>();
  impl->dimension = d;
  impl->log_scale = 0.0;
  impl->family = Family::Cosh;
  impl->closed_form_dual = false;
  impl->jet = [d](const Eigen::VectorXd& x) {
    PotentialJet jet;
    jet.value = 0.0;
    jet.gradient.resize(d);
    jet.hessian = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < d; ++j) {
      jet.value += std::cosh(x[j]) - 1.0;
      jet.gradient[j] = std::sinh(x[j]);
      jet.hessian(j, j) = std::cosh(x[j]);
    }
    return jet;
  };
  impl->label = "cosh";
  return LogConcaveFunction(std::move(impl));
}

LogConcaveFunction LogConcaveFunction::quartic(int d) {
  auto impl = std::make_shared<Impl>();
  impl->dimension = d;
  impl->log_scale = 0.0;
  impl->family = Family::Quartic;
  impl->closed_form_dual = false;
  impl->jet = [d](const Eigen::VectorXd& x) {
    PotentialJet jet;
    const double r2 = x.squaredNorm();
    jet.value = 0.5 * r2 + 0.25 * r2 * r2;
    jet.gradient = (1.0 + r2) * x;
    jet.hessian = 2.0 * (x * x.transpose());
    jet.hessian.diagonal().array() += 1.0 + r2;
    return jet;
  };
  impl->label = "quartic";
  return LogConcaveFunction(std::move(impl));
}

LogConcaveFunction LogConcaveFunction::make(int d, JetFn jet, double log_scale, Family family,
                                            std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->dimension = d;
  impl->log_scale = log_scale;
  impl->family = family;
  impl->closed_form_dual = false;
  impl->jet = std::move(jet);
  impl->label = std::move(label);
  return LogConcaveFunction(std::move(impl));
}

LogConcaveFunction LogConcaveFunction::custom(int d, JetFn jet, double log_scale,
                                              std::string label) {
  return make(d, std::move(jet), log_scale, Family::Custom, std::move(label));
}

int LogConcaveFunction::dimension() const { return impl_->dimension; }
double LogConcaveFunction::log_scale() const { return impl_->log_scale; }
Family LogConcaveFunction::family() const { return impl_->family; }
bool LogConcaveFunction::has_closed_form_dual() const { return impl_->closed_form_dual; }

const GaussianParams* LogConcaveFunction::gaussian_params() const {
  return impl_->gaussian.get();
}

std::string LogConcaveFunction::describe() const {
  std::ostringstream out;
  out << impl_->label;
  if (impl_->gaussian) {
    out << "(c=" << impl_->gaussian->scale << ",trA=" << impl_->gaussian->matrix.trace()
        << ",detA=" << impl_->gaussian->matrix.determinant() << ")";
  } else if (impl_->log_scale != 0.0) {
    out << "(logc=" << impl_->log_scale << ")";
  }
  return out.str();
}

double LogConcaveFunction::potential(const Eigen::VectorXd& x) const {
  require_dim(x, impl_->dimension, "potential");
  return impl_->jet(x).value;
}

Eigen::VectorXd LogConcaveFunction::gradient(const Eigen::VectorXd& x) const {
  require_dim(x, impl_->dimension, "gradient");
  return impl_->jet(x).gradient;
}

Eigen::MatrixXd LogConcaveFunction::hessian(const Eigen::VectorXd& x) const {
  require_dim(x, impl_->dimension, "hessian");
  return impl_->jet(x).hessian;
}

PotentialJet LogConcaveFunction::jet(const Eigen::VectorXd& x) const {
  require_dim(x, impl_->dimension, "jet");
  return impl_->jet(x);
}

double LogConcaveFunction::log_value(const Eigen::VectorXd& x) const {
  require_dim(x, impl_->dimension, "log_value");
  return impl_->log_scale - impl_->jet(x).value;
}

double LogConcaveFunction::value(const Eigen::VectorXd& x) const {
  return std::exp(log_value(x));
}

LogConcaveFunction LogConcaveFunction::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->log_scale += std::log(factor);
  if (impl->family == Family::Gaussian && impl->gaussian) {
    // stays a closed-form gaussian, only c changes
    impl->gaussian = std::make_shared<const GaussianParams>(
        impl->gaussian->scale * factor, impl->gaussian->matrix);
  } else {
    impl->family = Family::Scaled;
    impl->closed_form_dual = false;
  }
  return LogConcaveFunction(std::move(impl));
}

void validate_function_vector(const FunctionVector& functions) {
  if (functions.empty()) throw DimensionMismatch("function vector must be nonempty");
  const int d = functions.front().dimension();
  for (const auto& f : functions) {
    if (f.dimension() != d) {
      throw DimensionMismatch("function vector entries must share one dimension");
    }
  }
}

PotentialJet potential_jet(const LogConcaveFunction& f, const Eigen::VectorXd& x) {
  PotentialJet jet = f.jet(x);
  Eigen::MatrixXd sym = (jet.hessian + jet.hessian.transpose()) / 2.0;
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw NonConvexPotential("Hessian is not positive definite at the evaluated point");
  }
  jet.hessian = std::move(sym);
  return jet;
}

DensityPair density_pair(const LogConcaveFunction& f, const Eigen::VectorXd& x) {
  const LogDensityData data = log_density_data(f, x);
  DensityPair pair;
  pair.q = std::exp(data.log_q);
  pair.p = std::exp(data.log_q + data.log_ratio);  // = 0 where det Hess psi = 0
  return pair;
}

LogDensityData log_density_data(const LogConcaveFunction& f, const Eigen::VectorXd& x) {
  LogDensityData data;
  data.jet = f.jet(x);
  const double total = data.jet.value - f.log_scale();
  data.log_q = -total;
  Eigen::LLT<Eigen::MatrixXd> llt(data.jet.hessian);
  double log_det;
  if (llt.info() != Eigen::Success) {
    log_det = -std::numeric_limits<double>::infinity();
  } else {
    log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  }
  data.log_ratio = 2.0 * total - x.dot(data.jet.gradient) + log_det;
  return data;
}

LogConcaveFunction apply_selfadjoint(const LogConcaveFunction& f, const Eigen::MatrixXd& t) {
  const int d = f.dimension();
  if (t.rows() != d || t.cols() != d) {
    throw DimensionMismatch("transform must be d x d");
  }
  if (((t - t.transpose()).array().abs() > 1e-10).any()) {
    throw NotSelfAdjoint("transform must be symmetric");
  }
  if (std::abs(std::abs(t.determinant()) - 1.0) > 1e-10) {
    throw NotUnimodular("transform must have |det| = 1");
  }
  auto inner_jet = [f, t](const Eigen::VectorXd& x) {
    PotentialJet jet = f.jet(t * x);
    PotentialJet out;
    out.value = jet.value;
    out.gradient = t.transpose() * jet.gradient;
    out.hessian = t.transpose() * jet.hessian * t;
    return out;
  };
  return LogConcaveFunction::make(d, std::move(inner_jet), f.log_scale(),
                                  Family::ComposedLinear, f.describe() + "+composed");
}

}  // namespace logdiv
