#include "logdiv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "logdiv/errors.hpp"
#include "logdiv/newton.hpp"
#include "logdiv/rng.hpp"

namespace logdiv {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr long kMaxGhNodes = 1'000'000;  // escalation ceiling, not the spec cap
constexpr int kMaxGhOrder = 300;

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > kMaxGhNodes * 16) return r;  // avoid overflow, already beyond any cap
    r *= base;
  }
  return r;
}

}  // namespace

std::string scheme_name(Scheme s) {
  return s == Scheme::GaussHermite ? "gauss-hermite" : "monte-carlo";
}

QuadratureSpec QuadratureSpec::defaults_for_dimension(int d) {
  QuadratureSpec spec;
  if (d <= 2) {
    spec.order = 40;
  } else if (d == 3) {
    spec.order = 24;
  } else if (d == 4) {
    spec.order = 20;
  } else {
    spec.scheme = Scheme::MonteCarlo;
    spec.target_rel_error = 1e-2;
  }
  return spec;
}

void QuadratureSpec::validate(int d) const {
  if (d < 1) throw ConfigError("dimension must be positive");
  if (scheme == Scheme::GaussHermite) {
    if (order < 1) throw ConfigError("gauss-hermite order must be positive");
    if (d > 4) throw ConfigError("gauss-hermite is limited to d <= 4; use monte-carlo");
    if (ipow(order, d) > 10'000'000) {
      throw ConfigError("gauss-hermite node count order^d exceeds 1e7");
    }
  } else {
    if (samples < 10'000) throw ConfigError("monte-carlo requires samples >= 1e4");
  }
  if (!(target_rel_error > 0.0)) throw ConfigError("target relative error must be positive");
}

LaplaceFrame LaplaceFrame::standard(int d) {
  return from(Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d));
}

LaplaceFrame LaplaceFrame::from(Eigen::VectorXd mode, Eigen::MatrixXd covariance) {
  LaplaceFrame frame;
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw NotSPD("frame covariance must be symmetric positive definite");
  }
  frame.mode = std::move(mode);
  frame.covariance = std::move(covariance);
  frame.chol = llt.matrixL();
  return frame;
}

LaplaceFrame laplace_fit(int dim, const std::function<PotentialJet(const Eigen::VectorXd&)>& jet,
                         const Eigen::VectorXd* start) {
  Eigen::VectorXd x0 = start ? *start : Eigen::VectorXd::Zero(dim);
  NewtonResult fit = newton_minimize(jet, std::move(x0), 1e-10);
  Eigen::MatrixXd cov = fit.hessian.llt().solve(Eigen::MatrixXd::Identity(dim, dim));
  cov = ((cov + cov.transpose()) / 2.0).eval();
  return LaplaceFrame::from(std::move(fit.argmin), std::move(cov));
}

const GaussHermiteRule& gauss_hermite_rule(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return *it->second;

  // Golub-Welsch: symmetric tridiagonal Jacobi matrix for the (physicists')
  // Hermite recurrence, off-diagonal sqrt(k/2); weights from the first
  // eigenvector components with mu0 = int e^{-u^2} du = sqrt(pi).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = std::sqrt(k / 2.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw OptimizationFailed("gauss-hermite eigen decomposition failed");
  }
  auto rule = std::make_unique<GaussHermiteRule>();
  rule->nodes.resize(order);
  rule->weights.resize(order);
  const double mu0 = std::sqrt(M_PI);
  for (int i = 0; i < order; ++i) {
    rule->nodes[i] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    rule->weights[i] = mu0 * v0 * v0;
  }
  auto& slot = cache[order];
  slot = std::move(rule);
  return *slot;
}

namespace {

struct PassResult {
  double value;
  long evaluations;
};

PassResult gauss_hermite_pass(const std::function<double(const Eigen::VectorXd&)>& g,
                              const LaplaceFrame& frame, int order) {
  const int d = frame.dimension();
  const GaussHermiteRule& rule = gauss_hermite_rule(order);

  // weights with the axis Gaussian divided out: w_j * e^{u_j^2}
  std::vector<double> wexp(order);
  for (int j = 0; j < order; ++j) {
    wexp[j] = rule.weights[j] * std::exp(rule.nodes[j] * rule.nodes[j]);
  }
  // prefactor 2^{d/2} det L from x = m + sqrt(2) L u
  double log_pref = 0.5 * d * std::log(2.0);
  for (int j = 0; j < d; ++j) log_pref += std::log(frame.chol(j, j));
  const double pref = std::exp(log_pref);

  const long total = ipow(order, d);
  std::vector<double> terms(static_cast<std::size_t>(total));
  std::vector<int> idx(d, 0);
  Eigen::VectorXd u(d);
  for (long flat = 0; flat < total; ++flat) {
    double w = 1.0;
    for (int j = 0; j < d; ++j) {
      u[j] = rule.nodes[idx[j]];
      w *= wexp[idx[j]];
    }
    const Eigen::VectorXd x = frame.mode + kSqrt2 * (frame.chol * u);
    const double gval = g(x);
    if (!std::isfinite(gval)) {
      throw IntegralDiverged("nonfinite integrand value at a quadrature node");
    }
    terms[static_cast<std::size_t>(flat)] = gval * w;
    for (int j = d - 1; j >= 0; --j) {
      if (++idx[j] < order) break;
      idx[j] = 0;
    }
  }
  return PassResult{pref * pairwise_sum(terms.data(), terms.size()), total};
}

IntegrationResult integrate_gauss_hermite(const std::function<double(const Eigen::VectorXd&)>& g,
                                          const LaplaceFrame& frame,
                                          const QuadratureSpec& spec) {
  const int d = frame.dimension();
  const long node_cap = std::max(kMaxGhNodes, ipow(spec.order, d));
  const int order_cap = std::max(kMaxGhOrder, spec.order);

  int order = spec.order;
  IntegrationResult result;
  result.scheme = Scheme::GaussHermite;
  while (true) {
    const PassResult fine = gauss_hermite_pass(g, frame, order);
    const PassResult coarse = gauss_hermite_pass(g, frame, std::max(1, order / 2));
    result.value = fine.value;
    result.error = std::abs(fine.value - coarse.value);
    result.evaluations += fine.evaluations + coarse.evaluations;
    if (result.error <= spec.target_rel_error * (1.0 + std::abs(result.value))) {
      return result;
    }
    const int next = std::max(order + 1, static_cast<int>(order * 1.5));
    if (next > order_cap || ipow(next, d) > node_cap) {
      throw IntegralDiverged("error estimate " + std::to_string(result.error) +
                             " still exceeds target at the gauss-hermite order cap");
    }
    order = next;
  }
}

IntegrationResult integrate_monte_carlo(const std::function<double(const Eigen::VectorXd&)>& g,
                                        const LaplaceFrame& frame, const QuadratureSpec& spec) {
  const int d = frame.dimension();
  const long sample_cap = std::max(spec.samples * 8, 16'000'000L);

  double log_pref = 0.5 * d * std::log(2.0 * M_PI);
  for (int j = 0; j < d; ++j) log_pref += std::log(frame.chol(j, j));
  const double pref = std::exp(log_pref);

  long samples = spec.samples;
  IntegrationResult result;
  result.scheme = Scheme::MonteCarlo;
  while (true) {
    Rng rng(spec.seed);
    double mean = 0.0;
    double m2 = 0.0;
    for (long i = 0; i < samples; ++i) {
      const Eigen::VectorXd z = rng.normal_vector(d);
      const Eigen::VectorXd x = frame.mode + frame.chol * z;
      const double gval = g(x);
      if (!std::isfinite(gval)) {
        throw IntegralDiverged("nonfinite integrand value at a monte-carlo sample");
      }
      const double term = gval * pref * std::exp(0.5 * z.squaredNorm());
      const double delta = term - mean;
      mean += delta / static_cast<double>(i + 1);
      m2 += delta * (term - mean);
    }
    result.value = mean;
    result.error = 3.0 * std::sqrt(m2 / static_cast<double>(samples)) /
                   std::sqrt(static_cast<double>(samples));
    result.evaluations += samples;
    if (result.error <= spec.target_rel_error * (1.0 + std::abs(result.value))) {
      return result;
    }
    if (samples * 2 > sample_cap) {
      throw IntegralDiverged("error estimate still exceeds target at the sample cap");
    }
    samples *= 2;
  }
}

}  // namespace

IntegrationResult integrate(const std::function<double(const Eigen::VectorXd&)>& g,
                            const LaplaceFrame& frame, const QuadratureSpec& spec) {
  spec.validate(frame.dimension());
  if (spec.scheme == Scheme::GaussHermite) {
    return integrate_gauss_hermite(g, frame, spec);
  }
  return integrate_monte_carlo(g, frame, spec);
}

namespace {

double simplex_diameter(const std::vector<Eigen::VectorXd>& pts) {
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      diam = std::max(diam, (pts[i] - pts[j]).norm());
    }
  }
  return diam;
}

}  // namespace

MaximizeResult maximize(const std::function<double(const Eigen::VectorXd&)>& g,
                        const LaplaceFrame& frame, const QuadratureSpec& spec) {
  (void)spec;
  const int d = frame.dimension();
  const Eigen::VectorXd sigma = frame.covariance.diagonal().array().sqrt();

  // coarse scan, 9 points per axis for d <= 3
  Eigen::VectorXd best = frame.mode;
  double best_val = g(best);
  if (d <= 3) {
    const int per_axis = 9;
    std::vector<int> idx(d, 0);
    const long total = ipow(per_axis, d);
    for (long flat = 0; flat < total; ++flat) {
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) {
        x[j] = frame.mode[j] + sigma[j] * 5.0 * (2.0 * idx[j] / (per_axis - 1.0) - 1.0);
      }
      const double v = g(x);
      if (v > best_val) {
        best_val = v;
        best = x;
      }
      for (int j = d - 1; j >= 0; --j) {
        if (++idx[j] < per_axis) break;
        idx[j] = 0;
      }
    }
  }

  // Nelder-Mead on -g
  auto h = [&g](const Eigen::VectorXd& x) { return -g(x); };
  std::vector<Eigen::VectorXd> pts;
  std::vector<double> vals;
  pts.push_back(best);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd p = best;
    p[j] += 0.1 * std::max(sigma[j], 1e-3);
    pts.push_back(p);
  }
  for (const auto& p : pts) vals.push_back(h(p));

  constexpr int kMaxIter = 5000;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    // sort vertices by value
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&vals](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> spts;
    std::vector<double> svals;
    for (std::size_t k : perm) {
      spts.push_back(pts[k]);
      svals.push_back(vals[k]);
    }
    pts = std::move(spts);
    vals = std::move(svals);

    if (simplex_diameter(pts) <= 1e-8) {
      return MaximizeResult{pts[0], -vals[0]};
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) centroid += pts[k];
    centroid /= static_cast<double>(pts.size() - 1);
    const Eigen::VectorXd& worst = pts.back();

    const Eigen::VectorXd xr = centroid + (centroid - worst);
    const double fr = h(xr);
    if (fr < vals[0]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst);
      const double fe = h(xe);
      if (fe < fr) {
        pts.back() = xe;
        vals.back() = fe;
      } else {
        pts.back() = xr;
        vals.back() = fr;
      }
    } else if (fr < vals[vals.size() - 2]) {
      pts.back() = xr;
      vals.back() = fr;
    } else {
      const Eigen::VectorXd xc =
          fr < vals.back() ? (centroid + 0.5 * (xr - centroid)).eval()
                           : (centroid + 0.5 * (worst - centroid)).eval();
      const double fc = h(xc);
      if (fc < vals.back()) {
        pts.back() = xc;
        vals.back() = fc;
      } else {
        for (std::size_t k = 1; k < pts.size(); ++k) {
          pts[k] = pts[0] + 0.5 * (pts[k] - pts[0]);
          vals[k] = h(pts[k]);
        }
      }
    }
  }
  throw OptimizationFailed("simplex refinement did not converge");
}

BarycenterResult barycenter(const LogConcaveFunction& f, const QuadratureSpec& spec) {
  const int d = f.dimension();
  const LaplaceFrame frame =
      laplace_fit(d, [&f](const Eigen::VectorXd& x) { return f.jet(x); });
  auto density = [&f](const Eigen::VectorXd& x) { return std::exp(f.log_value(x)); };
  const IntegrationResult mass = integrate(density, frame, spec);
  if (!(mass.value > 0.0)) throw IntegralDiverged("function has nonpositive mass");

  BarycenterResult result;
  result.value.resize(d);
  for (int j = 0; j < d; ++j) {
    auto moment = [&density, j](const Eigen::VectorXd& x) { return x[j] * density(x); };
    const IntegrationResult mj = integrate(moment, frame, spec);
    result.value[j] = mj.value / mass.value;
    const double err =
        (mj.error + std::abs(result.value[j]) * mass.error) / mass.value;
    result.error = std::max(result.error, err);
  }
  return result;
}

}  // namespace logdiv
