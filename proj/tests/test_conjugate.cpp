#include <doctest.h>

#include <cmath>

#include "logdiv/conjugate.hpp"
#include "logdiv/errors.hpp"
#include "logdiv/function.hpp"
#include "logdiv/rng.hpp"

using namespace logdiv;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

/// Analytic conjugate of the cosh potential: sum_j [y asinh y - sqrt(1+y^2)] + d.
double cosh_conjugate(const Eigen::VectorXd& y) {
  double v = static_cast<double>(y.size());
  for (int j = 0; j < y.size(); ++j) {
    v += y[j] * std::asinh(y[j]) - std::sqrt(1.0 + y[j] * y[j]);
  }
  return v;
}

}  // namespace

TEST_CASE("legendre closed-form examples") {
  // standard gaussian is self-dual
  const LogConcaveFunction g = LogConcaveFunction::standard_gaussian(3);
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd y = 2.0 * rng.normal_vector(3);
    const ConjugateResult r = legendre(g, y);
    CHECK(r.value == doctest::Approx(0.5 * y.squaredNorm()).epsilon(1e-12));
    CHECK((r.maximizer - y).norm() <= 1e-9 * (1.0 + y.norm()));
    CHECK(r.residual <= 1e-10 * (1.0 + y.norm()));
  }

  // psi* = <A^{-1} y, y>/2 for the quadratic potential
  const LogConcaveFunction a = LogConcaveFunction::gaussian(1.0, diag2(2.0, 0.5));
  Eigen::VectorXd y(2);
  y << 1.0, 1.0;
  const ConjugateResult r = legendre(a, y);
  CHECK(r.value == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(r.maximizer[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.maximizer[1] == doctest::Approx(2.0).epsilon(1e-10));

  // cosh in 1-D at y = 1
  const LogConcaveFunction c = LogConcaveFunction::cosh_family(1);
  const ConjugateResult rc = legendre(c, Eigen::VectorXd::Constant(1, 1.0));
  CHECK(rc.value == doctest::Approx(std::asinh(1.0) - std::sqrt(2.0) + 1.0).epsilon(1e-12));
  CHECK(rc.maximizer[0] == doctest::Approx(std::asinh(1.0)).epsilon(1e-10));

  Eigen::VectorXd wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(legendre(a, wrong), DimensionMismatch);
}

TEST_CASE("cosh conjugate matches the analytic formula at 100 points") {
  const LogConcaveFunction c = LogConcaveFunction::cosh_family(2);
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd y = 4.0 * rng.normal_vector(2);
    const ConjugateResult r = legendre(c, y);
    CHECK(r.value == doctest::Approx(cosh_conjugate(y)).epsilon(1e-10));
  }
}

TEST_CASE("fenchel identity holds at the reported maximizer") {
  Rng rng(13);
  for (const LogConcaveFunction& f :
       {LogConcaveFunction::gaussian(1.0, diag2(1.0, 4.0)), LogConcaveFunction::cosh_family(2),
        LogConcaveFunction::quartic(2)}) {
    for (int trial = 0; trial < 25; ++trial) {
      const Eigen::VectorXd y = 2.0 * rng.normal_vector(2);
      const ConjugateResult r = legendre(f, y);
      const double lhs = f.potential(r.maximizer) + r.value;
      const double rhs = r.maximizer.dot(y);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("dual function closed forms and scaling rule") {
  // gaussian(c, A) -> gaussian(1/c, A^{-1})
  const LogConcaveFunction g = LogConcaveFunction::gaussian(2.0, diag2(2.0, 0.5));
  const LogConcaveFunction gd = dual_function(g);
  CHECK(gd.has_closed_form_dual());
  REQUIRE(gd.gaussian_params() != nullptr);
  CHECK(gd.gaussian_params()->scale == doctest::Approx(0.5));
  CHECK(gd.gaussian_params()->matrix.isApprox(diag2(0.5, 2.0), 1e-12));

  // standard gaussian is pointwise self-dual
  const LogConcaveFunction s = LogConcaveFunction::standard_gaussian(2);
  const LogConcaveFunction sd = dual_function(s);
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd x = 2.0 * rng.normal_vector(2);
    CHECK(sd.log_value(x) == doctest::Approx(s.log_value(x)).epsilon(1e-10));
  }

  // (lambda phi)^dual = phi^dual / lambda on the cosh family
  const LogConcaveFunction c = LogConcaveFunction::cosh_family(2);
  const LogConcaveFunction cd = dual_function(c);
  const LogConcaveFunction scaled_dual = dual_function(c.scaled(2.0));
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd y = 2.0 * rng.normal_vector(2);
    CHECK(scaled_dual.value(y) == doctest::Approx(cd.value(y) / 2.0).epsilon(1e-8));
  }
}

TEST_CASE("duality identity residuals on gaussian and cosh") {
  Rng rng(29);
  std::vector<Eigen::VectorXd> points;
  for (int i = 0; i < 50; ++i) points.push_back(2.0 * rng.normal_vector(2));

  const DualityResiduals g =
      check_duality_identities(LogConcaveFunction::gaussian(1.0, diag2(1.0, 4.0)), points);
  CHECK(g.max() <= 1e-9);

  const DualityResiduals c =
      check_duality_identities(LogConcaveFunction::cosh_family(2), points);
  CHECK(c.max() <= 1e-8);

  // symmetry: the gradient of the dual vanishes at the origin for even families
  const ConjugateResult at0 =
      legendre(LogConcaveFunction::cosh_family(2), Eigen::VectorXd::Zero(2));
  CHECK(at0.maximizer.norm() <= 1e-10);
}

TEST_CASE("double conjugation returns the primal potential") {
  Rng rng(31);
  for (const LogConcaveFunction& f :
       {LogConcaveFunction::gaussian(1.5, diag2(1.0, 4.0)),
        LogConcaveFunction::cosh_family(2)}) {
    const LogConcaveFunction ff = dual_function(dual_function(f));
    CHECK(ff.log_scale() == doctest::Approx(f.log_scale()).epsilon(1e-12));
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::VectorXd x = 1.5 * rng.normal_vector(2);
      CHECK(ff.potential(x) ==
            doctest::Approx(f.potential(x)).epsilon(1e-7));
    }
  }
}

TEST_CASE("gradient map is strictly monotone") {
  Rng rng(37);
  for (const LogConcaveFunction& f :
       {LogConcaveFunction::gaussian(1.0, diag2(2.0, 0.5)), LogConcaveFunction::cosh_family(2),
        LogConcaveFunction::quartic(2)}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x1 = 2.0 * rng.normal_vector(2);
      Eigen::VectorXd x2 = 2.0 * rng.normal_vector(2);
      if ((x1 - x2).norm() < 1e-12) x2.array() += 0.5;
      const double inner = (f.gradient(x1) - f.gradient(x2)).dot(x1 - x2);
      CHECK(inner > 0.0);
    }
  }
}

TEST_CASE("legendre value is midpoint-convex in y") {
  Rng rng(41);
  const LogConcaveFunction c = LogConcaveFunction::cosh_family(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd y1 = 3.0 * rng.normal_vector(2);
    const Eigen::VectorXd y2 = 3.0 * rng.normal_vector(2);
    const Eigen::VectorXd mid = (y1 + y2) / 2.0;
    const double lhs = legendre(c, mid).value;
    const double rhs = 0.5 * (legendre(c, y1).value + legendre(c, y2).value);
    CHECK(rhs - lhs >= -1e-9);
  }
}
