#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skewjensen/generators.hpp"
#include "skewjensen/histogram.hpp"

namespace skewjensen {

/// Exponential family in canonical form
///   p(x; theta) = exp(<t(x), theta> - F(theta) + k(x)),
/// described by its log-normalizer F over the natural parameter space.
///
/// Families:
///   multinomial(d)  theta_i = log(p_i / p_d), i < d;  F = log(1 + sum_i e^theta_i)
///   gaussian1d      theta = (mu / s2, -1 / (2 s2));   F = -theta1^2/(4 theta2) + log(-pi/theta2)/2
///   poisson         theta = log lambda;                F = e^theta
class ExponentialFamily {
 public:
  virtual ~ExponentialFamily() = default;

  const std::string& id() const { return id_; }
  std::size_t natural_dim() const { return natural_dim_; }
  std::size_t source_dim() const { return source_dim_; }
  const std::string& sufficient_statistic() const { return sufficient_statistic_; }
  const std::string& carrier() const { return carrier_; }

  const Generator& log_normalizer() const { return *log_normalizer_; }
  std::shared_ptr<const Generator> log_normalizer_ptr() const { return log_normalizer_; }

  bool in_natural_space(std::span<const double> theta) const;

  /// Throws DomainError for invalid source parameters.
  virtual std::vector<double> natural_from_source(std::span<const double> source) const = 0;
  /// Throws DomainError when theta lies outside the natural space.
  virtual std::vector<double> source_from_natural(std::span<const double> theta) const = 0;

  /// Whether log_density is available (scalar observations).
  virtual bool has_density() const { return false; }
  virtual double log_density(double x, std::span<const double> theta) const;

 protected:
  ExponentialFamily(std::string id, std::size_t natural_dim, std::size_t source_dim,
                    std::string sufficient_statistic, std::string carrier,
                    std::shared_ptr<const Generator> log_normalizer);

 private:
  std::string id_;
  std::size_t natural_dim_;
  std::size_t source_dim_;
  std::string sufficient_statistic_;
  std::string carrier_;
  std::shared_ptr<const Generator> log_normalizer_;
};

/// Family by name: "multinomial" (needs `bins` >= 2), "gaussian" / "gaussian1d",
/// "poisson". Throws ConfigError otherwise.
std::shared_ptr<const ExponentialFamily> make_family(std::string_view name, std::size_t bins = 0);

/// A member of a family, identified by its natural parameter.
class NaturalParam {
 public:
  NaturalParam(std::shared_ptr<const ExponentialFamily> family, std::vector<double> theta);

  const ExponentialFamily& family() const { return *family_; }
  const std::shared_ptr<const ExponentialFamily>& family_ptr() const { return family_; }
  std::span<const double> theta() const { return theta_; }
  const std::vector<double>& values() const { return theta_; }

 private:
  std::shared_ptr<const ExponentialFamily> family_;
  std::vector<double> theta_;
};

NaturalParam to_natural(const std::shared_ptr<const ExponentialFamily>& family,
                        std::span<const double> source);
std::vector<double> to_source(const NaturalParam& theta);

/// B_F(theta_q : theta_p) on the family's log-normalizer.
double bregman(const NaturalParam& theta_q, const NaturalParam& theta_p);

/// KL(p : q) = B_F(theta_q : theta_p).
double kl_expfam(const NaturalParam& theta_p, const NaturalParam& theta_q);

/// Jeffreys divergence <theta_p - theta_q, grad F(theta_p) - grad F(theta_q)>.
double jeffreys_expfam(const NaturalParam& theta_p, const NaturalParam& theta_q);

/// Skew Bhattacharyya divergence -log integral p^a q^(1-a), in closed form as
/// the Jensen gap a F(theta_p) + (1-a) F(theta_q) - F(a theta_p + (1-a) theta_q).
///
/// The weight a sits on theta_p, matching the integral; this equals
/// a (1-a) * skew_jensen(F, theta_q, theta_p, a). Quadrature confirms this
/// orientation for a != 1/2.
double bhattacharyya_alpha(const NaturalParam& theta_p, const NaturalParam& theta_q,
                           SkewParameter alpha);

/// (B^a(p:q) + B^a(q:p)) / 2 = a (1-a) * sym_skew_jensen(F, theta_p, theta_q, a).
double sym_bhattacharyya(const NaturalParam& theta_p, const NaturalParam& theta_q,
                         SkewParameter alpha);

/// Grid for quadrature_bhattacharyya. Unset bounds are chosen automatically:
/// Gaussian windows extend 12 standard deviations beyond both means; Poisson
/// sums run until the tail mass of both members is below `tail_tolerance`.
struct QuadratureSpec {
  std::optional<double> lo;
  std::optional<double> hi;
  double step = 1e-3;
  std::optional<std::size_t> max_count;
  double tail_tolerance = 1e-12;
};

/// -log of the trapezoid integral (Gaussian) or truncated sum (Poisson) of
/// p^a q^(1-a). Throws DomainError when the grid leaves more than
/// `tail_tolerance` of either density uncovered, ConfigError for other families.
double quadrature_bhattacharyya(const NaturalParam& theta_p, const NaturalParam& theta_q,
                                SkewParameter alpha, const QuadratureSpec& spec = {});

}  // namespace skewjensen
