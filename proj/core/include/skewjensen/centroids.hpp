#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "skewjensen/expfam.hpp"
#include "skewjensen/generators.hpp"
#include "skewjensen/histogram.hpp"

namespace skewjensen {

/// Weighted point set whose barycenter under sym_skew_jensen is sought.
class CentroidProblem {
 public:
  /// Throws ConfigError unless n >= 1, all weights > 0 and sum(w) = 1 within
  /// 1e-12; DimensionError/DomainError for ragged or out-of-domain points.
  CentroidProblem(std::vector<std::vector<double>> points, std::vector<double> weights,
                  SkewParameter alpha, std::shared_ptr<const Generator> generator);

  /// Equal weights 1/n.
  static CentroidProblem uniform(std::vector<std::vector<double>> points, SkewParameter alpha,
                                 std::shared_ptr<const Generator> generator);

  const std::vector<std::vector<double>>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  SkewParameter alpha() const { return alpha_; }
  const Generator& generator() const { return *generator_; }
  const std::shared_ptr<const Generator>& generator_ptr() const { return generator_; }
  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return points_.front().size(); }

 private:
  std::vector<std::vector<double>> points_;
  std::vector<double> weights_;
  SkewParameter alpha_;
  std::shared_ptr<const Generator> generator_;
};

enum class CentroidInit { arithmetic, quasi_arithmetic };

/// Accepts "arith", "arithmetic", "quasi", "quasi-arithmetic".
CentroidInit parse_centroid_init(std::string_view name);

struct CentroidOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  CentroidInit init = CentroidInit::arithmetic;
  /// Explicit starting point; overrides `init` when set.
  std::optional<std::vector<double>> start;
};

struct CentroidResult {
  std::vector<double> center;
  std::size_t iterations = 0;
  /// Objective after 0, 1, ..., iterations updates; non-increasing.
  std::vector<double> energy_trace;
  bool converged = false;
  /// Sup-norm of the last update.
  double residual = std::numeric_limits<double>::infinity();
  /// Set when alpha is 0 or 1 and the Jeffreys-type objective was minimized
  /// by the endpoint solver instead of the CCCP update.
  bool endpoint = false;
};

/// E(c) = sum_i w_i [F(p_i) + F(c) - F(a p_i + (1-a) c) - F(a c + (1-a) p_i)],
/// i.e. 2 a (1-a) times the weighted sym_skew_jensen objective. At a in {0, 1}
/// returns the endpoint objective sum_i w_i (B_F(p_i:c) + B_F(c:p_i)) / 2.
double energy(const CentroidProblem& problem, std::span<const double> c);

/// Weighted arithmetic mean.
std::vector<double> init_arithmetic(const CentroidProblem& problem);
/// (grad F)^-1(sum_i w_i grad F(p_i)): geometric mean for shannon, harmonic for burg.
std::vector<double> init_quasi_arithmetic(const CentroidProblem& problem);

/// One CCCP update
///   c' = (grad F)^-1( sum_i w_i [(1-a) grad F(a p_i + (1-a) c) + a grad F(a c + (1-a) p_i)] ).
/// Requires alpha in (0, 1).
std::vector<double> cccp_step(const CentroidProblem& problem, std::span<const double> c);

/// Closed forms of cccp_step for a = 1/2 and equal weights, applied per coordinate.
std::vector<double> geometric_update(const std::vector<std::vector<double>>& points,
                                     std::span<const double> c);
std::vector<double> harmonic_update(const std::vector<std::vector<double>>& points,
                                    std::span<const double> c);

/// Iterates cccp_step from the chosen start until the update is below `tol`
/// (and the geometric-rate estimate of the remaining error is too) or
/// `max_iter` is reached; the latter is reported through `converged = false`.
///
/// For alpha in {0, 1} the CCCP map degenerates to the identity, so the
/// endpoint objective is minimized with a damped Newton iteration instead
/// (separable generators only).
///
/// Throws NumericalError if the energy increases by more than
/// 1e-12 * max(1, |E|) between iterations.
CentroidResult solve_centroid(const CentroidProblem& problem, const CentroidOptions& options = {});

struct ExpfamCentroid {
  NaturalParam center;
  CentroidResult details;
};

/// Centroid of family members under the symmetrized skew Bhattacharyya
/// divergence, computed as the sym_skew_jensen centroid of their natural
/// parameters on the log-normalizer.
ExpfamCentroid centroid_expfam(const std::vector<NaturalParam>& members,
                               std::vector<double> weights, SkewParameter alpha,
                               const CentroidOptions& options = {});

}  // namespace skewjensen
