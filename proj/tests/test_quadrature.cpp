#include <doctest.h>

#include <cmath>

#include "logdiv/errors.hpp"
#include "logdiv/quadrature.hpp"
#include "logdiv/rng.hpp"

using namespace logdiv;

namespace {

QuadratureSpec gh(int order) {
  QuadratureSpec spec;
  spec.scheme = Scheme::GaussHermite;
  spec.order = order;
  return spec;
}

/// (k-1)!! for even k: the k-th moment of the standard 1-D gaussian
/// int x^k e^{-x^2/(2 s^2)} dx = s^{k+1} sqrt(2 pi) (k-1)!!.
double double_factorial_odd(int k) {
  double v = 1.0;
  for (int j = k - 1; j >= 1; j -= 2) v *= j;
  return v;
}

}  // namespace

TEST_CASE("gauss-hermite reference integrals") {
  // gaussian normalization in 2-D
  auto g2 = [](const Eigen::VectorXd& x) { return std::exp(-0.5 * x.squaredNorm()); };
  const IntegrationResult r2 = integrate(g2, LaplaceFrame::standard(2), gh(20));
  CHECK(r2.value == doctest::Approx(2.0 * M_PI).epsilon(1e-10));

  // second moment of the standard 1-D gaussian
  auto m2 = [](const Eigen::VectorXd& x) {
    return x[0] * x[0] * std::exp(-0.5 * x.squaredNorm());
  };
  const IntegrationResult r1 = integrate(m2, LaplaceFrame::standard(1), gh(10));
  CHECK(r1.value == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-12));

  // kernel of two quadratics: exponent <(A1+A2)x, x>/4 with A1 = I, A2 = 2I
  auto kernel = [](const Eigen::VectorXd& x) { return std::exp(-0.75 * x.squaredNorm()); };
  const IntegrationResult rk = integrate(kernel, LaplaceFrame::standard(2), gh(40));
  CHECK(rk.value == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-8));
}

TEST_CASE("gauss-hermite exactness for polynomial times frame gaussian") {
  const double mean = 0.7;
  const double var = 1.9;
  const LaplaceFrame frame =
      LaplaceFrame::from(Eigen::VectorXd::Constant(1, mean),
                         Eigen::MatrixXd::Constant(1, 1, var));
  const int order = 8;
  for (int k = 0; k <= 2 * order - 1; ++k) {
    auto integrand = [k, mean, var](const Eigen::VectorXd& x) {
      const double u = x[0] - mean;
      return std::pow(u, k) * std::exp(-0.5 * u * u / var);
    };
    QuadratureSpec spec = gh(order);
    spec.target_rel_error = 1.0;  // single pass, no escalation interference
    const IntegrationResult r = integrate(integrand, frame, spec);
    const double expected =
        k % 2 == 1 ? 0.0
                   : std::pow(std::sqrt(var), k + 1) * std::sqrt(2.0 * M_PI) *
                         double_factorial_odd(k);
    // odd moments cancel exactly in exact arithmetic; roundoff scales with
    // the magnitude of the |u|^k terms, i.e. the neighboring even moment
    const double scale = std::pow(std::sqrt(var), k + 2) * std::sqrt(2.0 * M_PI) *
                         double_factorial_odd(k + 1 + (k % 2));
    if (expected == 0.0) {
      CHECK(std::abs(r.value) <= 1e-12 * scale);
    } else {
      CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("laplace fit closed forms") {
  // quadratic <Ax,x>/2: mode 0, covariance A^{-1}
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 0.3, 0.3, 1.0;
  auto quad_jet = [&a](const Eigen::VectorXd& x) {
    PotentialJet jet;
    jet.value = 0.5 * x.dot(a * x);
    jet.gradient = a * x;
    jet.hessian = a;
    return jet;
  };
  const LaplaceFrame f1 = laplace_fit(2, quad_jet);
  CHECK(f1.mode.norm() <= 1e-10);
  CHECK((f1.covariance - a.inverse()).cwiseAbs().maxCoeff() <= 1e-12);

  // mean of a cosh potential and a quadratic in 1-D: Sigma = (1/2 + 1/2)^{-1}
  auto mix_jet = [](const Eigen::VectorXd& x) {
    PotentialJet jet;
    jet.value = 0.5 * (std::cosh(x[0]) - 1.0) + 0.25 * x[0] * x[0];
    jet.gradient = Eigen::VectorXd::Constant(1, 0.5 * std::sinh(x[0]) + 0.5 * x[0]);
    jet.hessian = Eigen::MatrixXd::Constant(1, 1, 0.5 * std::cosh(x[0]) + 0.5);
    return jet;
  };
  const LaplaceFrame f2 = laplace_fit(1, mix_jet);
  CHECK(std::abs(f2.mode[0]) <= 1e-10);
  CHECK(f2.covariance(0, 0) == doctest::Approx(1.0).epsilon(1e-10));

  // shifted quadratic |x - v|^2/2: mode v, covariance I
  Eigen::VectorXd v(2);
  v << -0.4, 1.2;
  auto shifted_jet = [&v](const Eigen::VectorXd& x) {
    PotentialJet jet;
    jet.value = 0.5 * (x - v).squaredNorm();
    jet.gradient = x - v;
    jet.hessian = Eigen::MatrixXd::Identity(2, 2);
    return jet;
  };
  const LaplaceFrame f3 = laplace_fit(2, shifted_jet);
  CHECK((f3.mode - v).norm() <= 1e-10);
  CHECK((f3.covariance - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("maximize: constants, quadratics, grid-refined optima") {
  const LaplaceFrame frame = LaplaceFrame::standard(2);
  const QuadratureSpec spec = gh(20);

  auto constant = [](const Eigen::VectorXd&) { return 3.25; };
  const MaximizeResult mc = maximize(constant, frame, spec);
  CHECK(mc.value == doctest::Approx(3.25));

  auto bowl = [](const Eigen::VectorXd& x) { return -x.squaredNorm(); };
  const MaximizeResult mb = maximize(bowl, frame, spec);
  CHECK(mb.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mb.argmax.norm() <= 1e-6);

  // asymmetric smooth objective with known maximizer
  auto shifted = [](const Eigen::VectorXd& x) {
    return std::exp(-(x[0] - 1.5) * (x[0] - 1.5) - 0.5 * (x[1] + 0.5) * (x[1] + 0.5));
  };
  const MaximizeResult ms = maximize(shifted, frame, spec);
  CHECK(ms.argmax[0] == doctest::Approx(1.5).epsilon(1e-5));
  CHECK(ms.argmax[1] == doctest::Approx(-0.5).epsilon(1e-5));
}

TEST_CASE("affine invariance of the integral") {
  // integrating g o T |det T| in the pulled-back frame equals integrating g
  Rng rng(5);
  auto g = [](const Eigen::VectorXd& x) {
    return std::exp(-0.5 * x.squaredNorm() - 0.1 * x[0] * x[0] * x[1] * x[1]);
  };
  const LaplaceFrame frame = LaplaceFrame::standard(2);
  const IntegrationResult base = integrate(g, frame, gh(40));

  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd t(2, 2);
    const double a = rng.uniform(0.6, 1.5);
    const double b = rng.uniform(-0.3, 0.3);
    t << a, b, b, (1.0 + b * b) / a;  // symmetric, det 1
    const double det = t.determinant();
    auto gt = [&g, &t, det](const Eigen::VectorXd& x) { return g(t * x) * std::abs(det); };
    const Eigen::MatrixXd tinv = t.inverse();
    const LaplaceFrame pulled = LaplaceFrame::from(
        tinv * frame.mode, tinv * frame.covariance * tinv.transpose());
    const IntegrationResult transformed = integrate(gt, pulled, gh(40));
    CHECK(transformed.value == doctest::Approx(base.value).epsilon(1e-9));
  }
}

TEST_CASE("monte carlo is bit-reproducible per seed") {
  auto g = [](const Eigen::VectorXd& x) { return std::exp(-0.5 * x.squaredNorm()); };
  QuadratureSpec spec;
  spec.scheme = Scheme::MonteCarlo;
  spec.samples = 20'000;
  spec.seed = 1234;
  spec.target_rel_error = 1.0;  // single pass
  const LaplaceFrame frame = LaplaceFrame::standard(5);
  const IntegrationResult a = integrate(g, frame, spec);
  const IntegrationResult b = integrate(g, frame, spec);
  CHECK(a.value == b.value);  // exact bit equality
  CHECK(a.error == b.error);
  const double expected = std::pow(2.0 * M_PI, 2.5);
  CHECK(a.value == doctest::Approx(expected).epsilon(0.05));

  QuadratureSpec other = spec;
  other.seed = 99;
  const IntegrationResult c = integrate(g, frame, other);
  CHECK(c.value != a.value);
}

TEST_CASE("escalation: halving the target never raises the error estimate") {
  auto g = [](const Eigen::VectorXd& x) { return std::exp(-std::cosh(x[0]) + 1.0); };
  const LaplaceFrame frame = LaplaceFrame::standard(1);
  double target = 1e-2;
  double last_error = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 6; ++step) {
    QuadratureSpec spec = gh(4);
    spec.target_rel_error = target;
    const IntegrationResult r = integrate(g, frame, spec);
    CHECK(r.error <= last_error + 1e-18);
    last_error = r.error;
    target /= 2.0;
  }
}

TEST_CASE("diverging integrands raise after escalating to the cap") {
  auto bad = [](const Eigen::VectorXd& x) { return std::exp(0.5 * x.squaredNorm()); };
  QuadratureSpec spec = gh(8);
  CHECK_THROWS_AS(integrate(bad, LaplaceFrame::standard(1), spec), IntegralDiverged);

  auto nan_at_origin = [](const Eigen::VectorXd& x) { return std::log(x.squaredNorm()); };
  CHECK_THROWS_AS(integrate(nan_at_origin, LaplaceFrame::standard(2), spec),
                  IntegralDiverged);
}

TEST_CASE("spec validation") {
  QuadratureSpec spec = gh(40);
  CHECK_NOTHROW(spec.validate(2));
  CHECK_THROWS_AS(spec.validate(5), ConfigError);  // GH limited to d <= 4
  QuadratureSpec big = gh(400);
  CHECK_THROWS_AS(big.validate(3), ConfigError);  // order^d above the node cap
  QuadratureSpec mc;
  mc.scheme = Scheme::MonteCarlo;
  mc.samples = 100;
  CHECK_THROWS_AS(mc.validate(5), ConfigError);  // too few samples
}
