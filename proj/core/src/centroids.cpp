#include "skewjensen/centroids.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skewjensen/divergences.hpp"
#include "skewjensen/error.hpp"

namespace skewjensen {

namespace {

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void require_domain(const Generator& f, std::span<const double> c, std::string_view what) {
  if (!f.in_domain(c)) throw DomainError(std::string(what) + ": point outside generator domain");
}

// Damped Newton on the separable endpoint objective
//   O(c) = sum_i w_i sum_j (c_j - p_ij)(g(c_j) - g(p_ij)) / 2,  g = F'.
// Per coordinate: O'(c) = [g(c) - gbar + (c - a) g'(c)] / 2,
//                 O''(c) = [2 g'(c) + (c - a) g''(c)] / 2.
CentroidResult solve_endpoint(const CentroidProblem& problem, std::vector<double> c,
                              const CentroidOptions& options) {
  const auto base = problem.generator().separable_base();
  if (!base) throw ConfigError("endpoint centroid (alpha in {0,1}) requires a separable generator");
  const std::size_t d = problem.dimension();
  std::vector<double> mean(d, 0.0);
  std::vector<double> gbar(d, 0.0);
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const double w = problem.weights()[i];
    for (std::size_t j = 0; j < d; ++j) {
      mean[j] += w * problem.points()[i][j];
      gbar[j] += w * base->grad(problem.points()[i][j]);
    }
  }

  CentroidResult result;
  result.endpoint = true;
  double current = energy(problem, c);
  result.energy_trace.push_back(current);

  std::vector<double> dir(d);
  std::vector<double> trial(d);
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    for (std::size_t j = 0; j < d; ++j) {
      const double g1 = base->hessian(c[j]);
      const double slope = 0.5 * (base->grad(c[j]) - gbar[j] + (c[j] - mean[j]) * g1);
      const double curv = 0.5 * (2.0 * g1 + (c[j] - mean[j]) * base->third_derivative(c[j]));
      dir[j] = -slope / (curv > 0.0 ? curv : g1);
    }
    double t = 1.0;
    bool accepted = false;
    double next = current;
    for (int k = 0; k < 80; ++k, t *= 0.5) {
      for (std::size_t j = 0; j < d; ++j) trial[j] = c[j] + t * dir[j];
      if (!problem.generator().in_domain(trial)) continue;
      next = energy(problem, trial);
      if (next <= current) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // no descent left at double precision
      result.iterations = it - 1;
      result.residual = 0.0;
      result.converged = true;
      break;
    }
    const double step = sup_distance(trial, c);
    c = trial;
    current = next;
    result.energy_trace.push_back(current);
    result.iterations = it;
    result.residual = step;
    if (step <= options.tol) {
      result.converged = true;
      break;
    }
  }
  result.center = std::move(c);
  return result;
}

}  // namespace

CentroidProblem::CentroidProblem(std::vector<std::vector<double>> points,
                                 std::vector<double> weights, SkewParameter alpha,
                                 std::shared_ptr<const Generator> generator)
    : points_(std::move(points)),
      weights_(std::move(weights)),
      alpha_(alpha),
      generator_(std::move(generator)) {
  if (!generator_) throw ConfigError("centroid problem without generator");
  if (points_.empty()) throw ConfigError("centroid problem needs at least one point");
  if (weights_.size() != points_.size()) {
    throw ConfigError("centroid problem: number of weights differs from number of points");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("centroid weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("centroid weights must sum to 1");
  const std::size_t d = points_.front().size();
  if (d == 0) throw DimensionError("centroid points must be non-empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != d) throw DimensionError("centroid points have ragged dimensions");
    if (!generator_->in_domain(points_[i])) {
      throw DomainError("centroid point " + std::to_string(i) + " outside generator domain");
    }
  }
}

CentroidProblem CentroidProblem::uniform(std::vector<std::vector<double>> points,
                                         SkewParameter alpha,
                                         std::shared_ptr<const Generator> generator) {
  const std::size_t n = points.size();
  std::vector<double> w(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return CentroidProblem(std::move(points), std::move(w), alpha, std::move(generator));
}

CentroidInit parse_centroid_init(std::string_view name) {
  if (name == "arith" || name == "arithmetic") return CentroidInit::arithmetic;
  if (name == "quasi" || name == "quasi-arithmetic") return CentroidInit::quasi_arithmetic;
  throw ConfigError("unknown centroid initialization '" + std::string(name) +
                    "' (expected arith or quasi)");
}

double energy(const CentroidProblem& problem, std::span<const double> c) {
  if (c.size() != problem.dimension()) throw DimensionError("energy: dimension mismatch");
  const auto& f = problem.generator();
  const SkewParameter alpha = problem.alpha();
  double e = 0.0;
  if (alpha.is_endpoint()) {
    for (std::size_t i = 0; i < problem.size(); ++i) {
      e += problem.weights()[i] * sym_skew_jensen(f, problem.points()[i], c, alpha);
    }
    return e;
  }
  const double a = alpha.value();
  if (auto base = f.separable_base()) {
    double fc = 0.0;
    for (double v : c) fc += base->eval(v);
    for (std::size_t i = 0; i < problem.size(); ++i) {
      const auto& p = problem.points()[i];
      double s = fc;
      for (std::size_t j = 0; j < c.size(); ++j) {
        s += base->eval(p[j]) - base->eval(a * p[j] + (1.0 - a) * c[j]) -
             base->eval(a * c[j] + (1.0 - a) * p[j]);
      }
      e += problem.weights()[i] * s;
    }
    return e;
  }
  const double fc = f.eval(c);
  std::vector<double> m1(c.size());
  std::vector<double> m2(c.size());
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const auto& p = problem.points()[i];
    for (std::size_t j = 0; j < c.size(); ++j) {
      m1[j] = a * p[j] + (1.0 - a) * c[j];
      m2[j] = a * c[j] + (1.0 - a) * p[j];
    }
    e += problem.weights()[i] * (f.eval(p) + fc - f.eval(m1) - f.eval(m2));
  }
  return e;
}

std::vector<double> init_arithmetic(const CentroidProblem& problem) {
  std::vector<double> c(problem.dimension(), 0.0);
  for (std::size_t i = 0; i < problem.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += problem.weights()[i] * problem.points()[i][j];
  }
  return c;
}

std::vector<double> init_quasi_arithmetic(const CentroidProblem& problem) {
  const auto& f = problem.generator();
  std::vector<double> acc(problem.dimension(), 0.0);
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const auto g = f.grad(problem.points()[i]);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += problem.weights()[i] * g[j];
  }
  return f.grad_inv(acc);
}

std::vector<double> cccp_step(const CentroidProblem& problem, std::span<const double> c) {
  if (problem.alpha().is_endpoint()) throw ConfigError("cccp_step requires alpha in (0, 1)");
  if (c.size() != problem.dimension()) throw DimensionError("cccp_step: dimension mismatch");
  const auto& f = problem.generator();
  require_domain(f, c, "cccp_step");
  const double a = problem.alpha().value();
  std::vector<double> out(c.size(), 0.0);

  if (auto base = f.separable_base()) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < problem.size(); ++i) {
        const double p = problem.points()[i][j];
        s += problem.weights()[i] * ((1.0 - a) * base->grad(a * p + (1.0 - a) * c[j]) +
                                     a * base->grad(a * c[j] + (1.0 - a) * p));
      }
      out[j] = base->grad_inv(s);
    }
  } else {
    std::vector<double> m1(c.size());
    std::vector<double> m2(c.size());
    for (std::size_t i = 0; i < problem.size(); ++i) {
      const auto& p = problem.points()[i];
      for (std::size_t j = 0; j < c.size(); ++j) {
        m1[j] = a * p[j] + (1.0 - a) * c[j];
        m2[j] = a * c[j] + (1.0 - a) * p[j];
      }
      const auto g1 = f.grad(m1);
      const auto g2 = f.grad(m2);
      const double w = problem.weights()[i];
      for (std::size_t j = 0; j < c.size(); ++j) out[j] += w * ((1.0 - a) * g1[j] + a * g2[j]);
    }
    out = f.grad_inv(out);
  }
  require_domain(f, out, "cccp_step result");
  return out;
}

std::vector<double> geometric_update(const std::vector<std::vector<double>>& points,
                                     std::span<const double> c) {
  const double n = static_cast<double>(points.size());
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    double prod = 1.0;
    for (const auto& p : points) prod *= std::pow(0.5 * (c[j] + p[j]), 1.0 / n);
    out[j] = prod;
  }
  return out;
}

std::vector<double> harmonic_update(const std::vector<std::vector<double>>& points,
                                    std::span<const double> c) {
  const double n = static_cast<double>(points.size());
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    double s = 0.0;
    for (const auto& p : points) s += 2.0 / (c[j] + p[j]);
    out[j] = n / s;
  }
  return out;
}

CentroidResult solve_centroid(const CentroidProblem& problem, const CentroidOptions& options) {
  if (!(options.tol > 0.0)) throw ConfigError("solve_centroid: tol must be positive");
  if (options.max_iter < 1) throw ConfigError("solve_centroid: max_iter must be at least 1");

  std::vector<double> c;
  if (options.start) {
    c = *options.start;
    if (c.size() != problem.dimension()) throw DimensionError("solve_centroid: bad start dimension");
    require_domain(problem.generator(), c, "solve_centroid start");
  } else if (options.init == CentroidInit::quasi_arithmetic) {
    c = init_quasi_arithmetic(problem);
  } else {
    c = init_arithmetic(problem);
  }

  if (problem.alpha().is_endpoint()) return solve_endpoint(problem, std::move(c), options);

  CentroidResult result;
  double current = energy(problem, c);
  result.energy_trace.push_back(current);
  double previous_step = 0.0;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    auto next = cccp_step(problem, c);
    const double e = energy(problem, next);
    if (e > current + 1e-12 * std::max(1.0, std::abs(current))) {
      std::ostringstream os;
      os.precision(17);
      os << "CCCP energy increased at iteration " << it << ": " << current << " -> " << e
         << " (generator " << problem.generator().name() << ", alpha " << problem.alpha().value()
         << ")";
      throw NumericalError(os.str());
    }
    const double step = sup_distance(next, c);
    c = std::move(next);
    current = e;
    result.energy_trace.push_back(e);
    result.iterations = it;
    result.residual = step;
    if (step <= options.tol) {
      // linear convergence: remaining error ~ step * r / (1 - r)
      const double rate = previous_step > 0.0 ? std::min(step / previous_step, 0.9999) : 0.0;
      if (step * rate / (1.0 - rate) <= options.tol) {
        result.converged = true;
        break;
      }
    }
    previous_step = step;
  }
  result.center = std::move(c);
  return result;
}

ExpfamCentroid centroid_expfam(const std::vector<NaturalParam>& members,
                               std::vector<double> weights, SkewParameter alpha,
                               const CentroidOptions& options) {
  if (members.empty()) throw ConfigError("centroid_expfam: no members");
  const auto& family = members.front().family_ptr();
  std::vector<std::vector<double>> points;
  points.reserve(members.size());
  for (const auto& m : members) {
    if (m.family().id() != family->id()) {
      throw ConfigError("centroid_expfam: family mismatch (" + family->id() + " vs " +
                        m.family().id() + ")");
    }
    points.push_back(m.values());
  }
  const CentroidProblem problem(std::move(points), std::move(weights), alpha,
                                family->log_normalizer_ptr());
  auto details = solve_centroid(problem, options);
  NaturalParam center(family, details.center);
  return {std::move(center), std::move(details)};
}

}  // namespace skewjensen
