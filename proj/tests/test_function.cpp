#include <doctest.h>

#include <cmath>

#include "logdiv/errors.hpp"
#include "logdiv/function.hpp"
#include "logdiv/quadrature.hpp"
#include "logdiv/rng.hpp"

using namespace logdiv;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

/// Central finite differences of the potential, the independent oracle for
/// the analytic gradient and Hessian evaluators.
Eigen::VectorXd fd_gradient(const LogConcaveFunction& f, const Eigen::VectorXd& x) {
  const int d = f.dimension();
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + x.norm());
  Eigen::VectorXd g(d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd hi = x, lo = x;
    hi[j] += h;
    lo[j] -= h;
    g[j] = (f.potential(hi) - f.potential(lo)) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const LogConcaveFunction& f, const Eigen::VectorXd& x) {
  const int d = f.dimension();
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + x.norm());
  Eigen::MatrixXd m(d, d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd hi = x, lo = x;
    hi[j] += h;
    lo[j] -= h;
    m.col(j) = (f.gradient(hi) - f.gradient(lo)) / (2.0 * h);
  }
  return ((m + m.transpose()) / 2.0).eval();
}

std::vector<LogConcaveFunction> shipped_families() {
  Eigen::MatrixXd t(2, 2);
  t << 2.0, 0.0, 0.0, 0.5;
  return {LogConcaveFunction::gaussian(1.3, diag2(1.0, 4.0)),
          LogConcaveFunction::cosh_family(2),
          LogConcaveFunction::quartic(2),
          LogConcaveFunction::cosh_family(2).scaled(2.5),
          apply_selfadjoint(LogConcaveFunction::gaussian(1.0, diag2(2.0, 0.5)), t)};
}

}  // namespace

TEST_CASE("potential jet closed-form examples") {
  const LogConcaveFunction g = LogConcaveFunction::standard_gaussian(2);
  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  const PotentialJet jet = potential_jet(g, x);
  CHECK(jet.value == doctest::Approx(0.5));
  CHECK(jet.gradient[0] == doctest::Approx(1.0));
  CHECK(jet.gradient[1] == doctest::Approx(0.0));
  CHECK(jet.hessian.isApprox(Eigen::MatrixXd::Identity(2, 2)));

  const LogConcaveFunction c = LogConcaveFunction::cosh_family(1);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  const PotentialJet cjet = potential_jet(c, zero);
  CHECK(cjet.value == doctest::Approx(0.0));
  CHECK(cjet.gradient[0] == doctest::Approx(0.0));
  CHECK(cjet.hessian(0, 0) == doctest::Approx(1.0));

  // psi = <Ax,x>/2 with A = diag(1,4) at (1,1)
  const LogConcaveFunction a = LogConcaveFunction::gaussian(1.0, diag2(1.0, 4.0));
  Eigen::VectorXd ones(2);
  ones << 1.0, 1.0;
  const PotentialJet ajet = potential_jet(a, ones);
  CHECK(ajet.value == doctest::Approx(2.5));
  CHECK(ajet.gradient[0] == doctest::Approx(1.0));
  CHECK(ajet.gradient[1] == doctest::Approx(4.0));
  CHECK(ajet.hessian.isApprox(diag2(1.0, 4.0)));

  Eigen::VectorXd wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(potential_jet(a, wrong), DimensionMismatch);
}

TEST_CASE("potential_jet rejects non-convex custom potentials") {
  auto bad_jet = [](const Eigen::VectorXd& x) {
    PotentialJet jet;
    jet.value = -0.5 * x.squaredNorm();
    jet.gradient = -x;
    jet.hessian = -Eigen::MatrixXd::Identity(x.size(), x.size());
    return jet;
  };
  const LogConcaveFunction bad = LogConcaveFunction::custom(2, bad_jet);
  CHECK_THROWS_AS(potential_jet(bad, Eigen::VectorXd::Zero(2)), NonConvexPotential);
}

TEST_CASE("analytic derivatives match finite differences at seeded points") {
  Rng rng(42);
  for (const LogConcaveFunction& f : shipped_families()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = 1.5 * rng.normal_vector(f.dimension());
      const Eigen::VectorXd g = f.gradient(x);
      const Eigen::VectorXd g_fd = fd_gradient(f, x);
      CHECK((g - g_fd).norm() <= 1e-5 * (1.0 + g.norm()));
      const Eigen::MatrixXd h = f.hessian(x);
      const Eigen::MatrixXd h_fd = fd_hessian(f, x);
      CHECK((h - h_fd).norm() <= 1e-5 * (1.0 + h.norm()));
    }
  }
}

TEST_CASE("density pair on gaussians and at the cosh minimum") {
  // q = e^{-psi} exactly, ratio constant det A / c^2
  const LogConcaveFunction std2 = LogConcaveFunction::standard_gaussian(2);
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd x = 2.0 * rng.normal_vector(2);
    const DensityPair pair = density_pair(std2, x);
    CHECK(pair.p / pair.q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.q == doctest::Approx(std::exp(-std2.potential(x))).epsilon(1e-14));
  }

  const LogConcaveFunction g = LogConcaveFunction::gaussian(1.7, diag2(2.0, 0.5));
  const double expected_ratio = (2.0 * 0.5) / (1.7 * 1.7);
  double first_ratio = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd x = 2.0 * rng.normal_vector(2);
    const DensityPair pair = density_pair(g, x);
    const double ratio = pair.p / pair.q;
    CHECK(ratio == doctest::Approx(expected_ratio).epsilon(1e-12));
    if (trial == 0) {
      first_ratio = ratio;
    } else {
      CHECK(ratio == doctest::Approx(first_ratio).epsilon(1e-12));
    }
  }

  const LogConcaveFunction c = LogConcaveFunction::cosh_family(1);
  const DensityPair pair = density_pair(c, Eigen::VectorXd::Zero(1));
  CHECK(pair.p == doctest::Approx(1.0));
  CHECK(pair.q == doctest::Approx(1.0));
}

TEST_CASE("self-adjoint composition") {
  Eigen::MatrixXd t(2, 2);
  t << 2.0, 0.0, 0.0, 0.5;

  const LogConcaveFunction g = LogConcaveFunction::standard_gaussian(2);
  const LogConcaveFunction gt = apply_selfadjoint(g, t);
  const LogConcaveFunction expected = LogConcaveFunction::gaussian(1.0, diag2(4.0, 0.25));
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd x = rng.normal_vector(2);
    CHECK(gt.potential(x) == doctest::Approx(expected.potential(x)).epsilon(1e-12));
    CHECK((gt.gradient(x) - expected.gradient(x)).norm() <= 1e-12 * (1.0 + x.norm()));
  }

  // identity leaves the function unchanged
  const LogConcaveFunction gi = apply_selfadjoint(g, Eigen::MatrixXd::Identity(2, 2));
  const Eigen::VectorXd x = rng.normal_vector(2);
  CHECK(gi.potential(x) == doctest::Approx(g.potential(x)));

  // composing with T then T^{-1} reproduces pointwise values
  const Eigen::MatrixXd tinv = t.inverse();
  const LogConcaveFunction round = apply_selfadjoint(gt, tinv);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd p = rng.normal_vector(2);
    CHECK(round.potential(p) == doctest::Approx(g.potential(p)).epsilon(1e-12));
  }

  Eigen::MatrixXd skew(2, 2);
  skew << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(apply_selfadjoint(g, skew), NotSelfAdjoint);
  Eigen::MatrixXd not_uni = Eigen::MatrixXd::Identity(2, 2) * 1.5;
  CHECK_THROWS_AS(apply_selfadjoint(g, not_uni), NotUnimodular);
}

TEST_CASE("barycenter of even families vanishes; shifts are recovered") {
  const QuadratureSpec spec = QuadratureSpec::defaults_for_dimension(2);
  for (const LogConcaveFunction& f :
       {LogConcaveFunction::gaussian(1.4, diag2(1.0, 4.0)), LogConcaveFunction::cosh_family(2),
        LogConcaveFunction::quartic(2)}) {
    const BarycenterResult b = barycenter(f, spec);
    CHECK(b.value.cwiseAbs().maxCoeff() <= 1e-8);
  }

  // translate a gaussian (test-only composition): barycenter equals the shift
  Eigen::VectorXd shift(2);
  shift << 0.7, -0.3;
  const LogConcaveFunction base = LogConcaveFunction::standard_gaussian(2);
  auto shifted_jet = [base, shift](const Eigen::VectorXd& x) {
    PotentialJet jet = base.jet(x - shift);
    return jet;
  };
  const LogConcaveFunction shifted = LogConcaveFunction::custom(2, shifted_jet);
  const BarycenterResult b = barycenter(shifted, spec);
  CHECK((b.value - shift).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("scaling bookkeeping") {
  const LogConcaveFunction c = LogConcaveFunction::cosh_family(2);
  const LogConcaveFunction c2 = c.scaled(2.0);
  CHECK(c2.family() == Family::Scaled);
  CHECK(c2.log_scale() == doctest::Approx(std::log(2.0)));
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(2, 0.4);
  CHECK(c2.value(x) == doctest::Approx(2.0 * c.value(x)));
  // potential itself is unchanged (normalization kept)
  CHECK(c2.potential(x) == doctest::Approx(c.potential(x)));

  const LogConcaveFunction g = LogConcaveFunction::gaussian(1.5, diag2(1.0, 2.0)).scaled(2.0);
  CHECK(g.family() == Family::Gaussian);  // stays closed-form
  REQUIRE(g.gaussian_params() != nullptr);
  CHECK(g.gaussian_params()->scale == doctest::Approx(3.0));
}

TEST_CASE("function vector validation") {
  FunctionVector ok{LogConcaveFunction::standard_gaussian(2),
                    LogConcaveFunction::cosh_family(2)};
  CHECK_NOTHROW(validate_function_vector(ok));
  FunctionVector empty;
  CHECK_THROWS_AS(validate_function_vector(empty), DimensionMismatch);
  FunctionVector mixed_dims{LogConcaveFunction::standard_gaussian(2),
                            LogConcaveFunction::cosh_family(3)};
  CHECK_THROWS_AS(validate_function_vector(mixed_dims), DimensionMismatch);
}
