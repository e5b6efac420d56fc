#include <doctest.h>

#include <cmath>

#include "logdiv/divergence.hpp"
#include "logdiv/errors.hpp"
#include "logdiv/gaussian_oracle.hpp"
#include "logdiv/rng.hpp"
#include "logdiv/surface.hpp"

using namespace logdiv;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Eigen::MatrixXd random_spd(Rng& rng, int d, double lo, double hi) {
  Eigen::MatrixXd m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = rng.normal();
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd eigs(d);
  for (int j = 0; j < d; ++j) eigs[j] = rng.log_uniform(lo, hi);
  Eigen::MatrixXd a = q * eigs.asDiagonal() * q.transpose();
  return ((a + a.transpose()) / 2.0).eval();
}

}  // namespace

TEST_CASE("oracle_mixed closed-form examples") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);

  // identical standard pairs with any power generator give 2 pi
  GaussianVector std_pair{{GaussianParams(1.0, id), GaussianParams(1.0, id)}};
  const GeneratorVector powers{Generator::power(0.4), Generator::power(0.4)};
  CHECK(oracle_mixed(std_pair, powers) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));

  // c = (1,2), A = (I, 2I), f(t) = t
  GaussianVector pair{{GaussianParams(1.0, id), GaussianParams(2.0, 2.0 * id)}};
  const GeneratorVector linear{Generator::power(1.0), Generator::power(1.0)};
  CHECK(oracle_mixed(pair, linear) ==
        doctest::Approx(4.0 * std::sqrt(2.0) * M_PI / 3.0).epsilon(1e-12));
  CHECK(oracle_mixed(pair, linear) == doctest::Approx(5.92384).epsilon(1e-5));

  // all equal (c, A): (2 pi)^{n/2} / sqrt(det A) * prod [c f(det A / c^2)]^{1/n}
  const Eigen::MatrixXd a = diag2(1.0, 4.0);
  GaussianVector equal{{GaussianParams(1.5, a), GaussianParams(1.5, a)}};
  const GeneratorVector logp{Generator::log_plus(), Generator::log_plus()};
  const double expected =
      (2.0 * M_PI) / 2.0 * 1.5 * std::max(std::log(4.0 / 2.25), 0.0);
  CHECK(oracle_mixed(equal, logp) == doctest::Approx(expected).epsilon(1e-12));

  // a negative factor is rejected
  GaussianVector small{{GaussianParams(2.0, id), GaussianParams(2.0, id)}};
  const GeneratorVector logs{Generator::log(), Generator::log()};
  CHECK_THROWS_AS(oracle_mixed(small, logs), NegativeFactor);
}

TEST_CASE("oracle_as_lambda closed forms") {
  // single gaussian: (2 pi)^{d/2} det(A)^{lambda - 1/2}
  GaussianVector single{{GaussianParams(1.0, diag2(1.0, 4.0))}};
  CHECK(oracle_as_lambda(single, 1.0) == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  CHECK(oracle_as_lambda(single, 0.5) == doctest::Approx(2.0 * M_PI).epsilon(1e-12));

  // standard gaussian: (2 pi)^{d/2} for every lambda
  for (int d : {1, 2, 3}) {
    GaussianVector std_g{{GaussianParams(1.0, Eigen::MatrixXd::Identity(d, d))}};
    for (double lambda : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      CHECK(oracle_as_lambda(std_g, lambda) ==
            doctest::Approx(std::pow(2.0 * M_PI, d / 2.0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("oracle_as_lambda_i boundary collapses and examples") {
  const GaussianParams g1(1.3, diag2(2.0, 0.5));
  const GaussianParams g2(0.8, diag2(1.0, 3.0));
  for (double lambda : {0.0, 0.3, 1.0}) {
    CHECK(oracle_as_lambda_i(g1, g2, lambda, 0.0, 2.0) ==
          doctest::Approx(oracle_as_lambda(GaussianVector{{g2, g2}}, lambda)).epsilon(1e-12));
    CHECK(oracle_as_lambda_i(g1, g2, lambda, 2.0, 2.0) ==
          doctest::Approx(oracle_as_lambda(GaussianVector{{g1, g1}}, lambda)).epsilon(1e-12));
  }
}

TEST_CASE("oracle_dual") {
  const GaussianParams g(2.0, diag2(2.0, 0.5));
  const GaussianParams gd = oracle_dual(g);
  CHECK(gd.scale == doctest::Approx(0.5));
  CHECK(gd.matrix.isApprox(diag2(0.5, 2.0), 1e-12));

  const GaussianParams id(1.0, Eigen::MatrixXd::Identity(2, 2));
  const GaussianParams idd = oracle_dual(id);
  CHECK(idd.scale == doctest::Approx(1.0));
  CHECK(idd.matrix.isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-12));

  const GaussianParams round = oracle_dual(oracle_dual(g));
  CHECK(round.scale == doctest::Approx(g.scale).epsilon(1e-14));
  CHECK(round.matrix.isApprox(g.matrix, 1e-12));
}

TEST_CASE("matrix chain inequality report") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);

  // identical matrices: both slacks vanish
  const MatrixChainReport eq = matrix_bm_check({id, id});
  CHECK(std::abs(eq.minkowski_slack) <= 1e-12);
  CHECK(std::abs(eq.gm_am_slack) <= 1e-12);
  CHECK(std::abs(eq.am_det_slack) <= 1e-12);

  // diag(1,4) with I: sqrt(10) >= 1 + 2
  const MatrixChainReport mixed = matrix_bm_check({diag2(1.0, 4.0), id});
  CHECK(mixed.minkowski_lhs == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(mixed.minkowski_rhs == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(mixed.minkowski_slack == doctest::Approx(std::sqrt(10.0) - 3.0).epsilon(1e-10));

  // proportional with different determinants: Minkowski tight, mean gap open
  const MatrixChainReport prop = matrix_bm_check({2.0 * id, id});
  CHECK(std::abs(prop.minkowski_slack) <= 1e-12);
  CHECK(prop.gm_am_slack > 1e-3);

  CHECK_THROWS_AS(matrix_bm_check({-id}), NotSPD);
}

TEST_CASE("matrix chain equality exactly for equal matrices with equal determinants") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd a = random_spd(rng, 2, 0.5, 3.0);
    const MatrixChainReport same = matrix_bm_check({a, a});
    CHECK(std::abs(same.minkowski_slack) <= 1e-12 * same.minkowski_lhs);
    CHECK(std::abs(same.gm_am_slack) <= 1e-12 * same.am_value);
    CHECK(std::abs(same.am_det_slack) <= 1e-12 * same.det_value);

    // proportional but unequal determinants: only the determinant leg is tight
    const MatrixChainReport scaled = matrix_bm_check({1.7 * a, a});
    CHECK(std::abs(scaled.minkowski_slack) <= 1e-12 * scaled.minkowski_lhs);
    CHECK(scaled.gm_am_slack > 0.0);
  }
}

TEST_CASE("oracle invariant under det-1 congruence") {
  Rng rng(59);
  const GeneratorVector gens{Generator::power(0.3), Generator::power(0.8)};
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd a1 = random_spd(rng, 2, 0.5, 3.0);
    const Eigen::MatrixXd a2 = random_spd(rng, 2, 0.5, 3.0);
    Eigen::MatrixXd t = random_spd(rng, 2, 0.7, 1.4);
    t /= std::sqrt(t.determinant());
    const GaussianVector base{{GaussianParams(1.2, a1), GaussianParams(0.9, a2)}};
    const GaussianVector moved{{GaussianParams(1.2, t * a1 * t), GaussianParams(0.9, t * a2 * t)}};
    CHECK(oracle_mixed(moved, gens) ==
          doctest::Approx(oracle_mixed(base, gens)).epsilon(1e-12));
  }
}

TEST_CASE("quadrature reproduces the oracle on gaussian instances") {
  Rng rng(61);
  for (int d : {2, 3}) {
    const QuadratureSpec spec = QuadratureSpec::defaults_for_dimension(d);
    for (int trial = 0; trial < 3; ++trial) {
      GaussianVector gv;
      GeneratorVector gens;
      FunctionVector functions;
      for (int i = 0; i < d; ++i) {
        gv.components.emplace_back(rng.log_uniform(0.5, 2.0), random_spd(rng, d, 0.5, 3.0));
        gens.push_back(Generator::power(rng.uniform(0.1, 0.9)));
        functions.push_back(LogConcaveFunction::gaussian(gv.components.back()));
      }
      const double exact = oracle_mixed(gv, gens);
      const IntegrationResult numeric =
          mixed_f_divergence(DivergenceInstance(functions, gens), spec);
      CHECK(numeric.value == doctest::Approx(exact).epsilon(1e-6));

      const double lambda = rng.uniform(-0.5, 1.5);
      const IntegrationResult surf = as_lambda(functions, lambda, spec);
      CHECK(surf.value == doctest::Approx(oracle_as_lambda(gv, lambda)).epsilon(1e-6));
    }
  }
}
