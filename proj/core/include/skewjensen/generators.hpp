#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skewjensen {

/// Strictly convex scalar function F together with its derivative and the
/// inverse of the derivative.
///
/// Built-in generators (natural logarithm throughout):
///   shannon    F(x) = x log x - x   on (0, inf), grad = log x,  grad_inv = exp
///   xlogx      F(x) = x log x       on (0, inf), grad = 1 + log x
///   burg       F(x) = -log x        on (0, inf), grad = -1/x,   grad_inv = -1/y
///   quadratic  F(x) = x^2           on R,        grad = 2x,     grad_inv = y/2
///   exp        F(x) = e^x           on R,        grad = e^x,    grad_inv = log y
///
/// `shannon` and `xlogx` differ by a linear term and therefore induce the same
/// Jensen gaps and Bregman divergences. Both Shannon variants are extended
/// continuously to x = 0 (0 log 0 = 0) for evaluation only; their gradient is
/// undefined there.
///
/// Instances are immutable values.
class ConvexGenerator {
 public:
  enum class Kind { shannon, xlogx, burg, quadratic, exp };

  explicit ConvexGenerator(Kind kind) : kind_(kind) {}

  Kind kind() const { return kind_; }
  std::string_view name() const;

  /// Open interval (lo, hi) on which grad is defined.
  double domain_lo() const;
  double domain_hi() const;
  bool in_domain(double x) const;

  double eval(double x) const;
  double grad(double x) const;
  double grad_inv(double y) const;
  /// Second and third derivatives of F.
  double hessian(double x) const;
  double third_derivative(double x) const;

  friend bool operator==(const ConvexGenerator&, const ConvexGenerator&) = default;

 private:
  Kind kind_;
};

/// Looks up a scalar generator by name; throws ConfigError for unknown names.
ConvexGenerator make_generator(std::string_view name);

/// Names accepted by make_generator.
std::vector<std::string> generator_names();

/// lambda F(x) + (1 - lambda) F(y) - F(lambda x + (1 - lambda) y).
double jensen_gap(const ConvexGenerator& f, double x, double y, double lambda);

/// Strictly convex function on R^d with gradient and inverse gradient.
///
/// Separable generators sum a scalar generator over coordinates; exponential
/// family log-normalizers (multinomial, Gaussian) are not separable.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual std::string name() const = 0;
  virtual bool in_domain(std::span<const double> x) const = 0;
  virtual double eval(std::span<const double> x) const = 0;
  virtual std::vector<double> grad(std::span<const double> x) const = 0;
  virtual std::vector<double> grad_inv(std::span<const double> y) const = 0;

  /// Vector Jensen gap, same convention as the scalar jensen_gap.
  virtual double jensen_gap(std::span<const double> x, std::span<const double> y,
                            double lambda) const;

  /// The scalar generator when the function is a coordinate sum.
  virtual std::optional<ConvexGenerator> separable_base() const { return std::nullopt; }
};

/// F(x) = sum_i f(x_i). A dimension of 0 accepts vectors of any length.
class SeparableGenerator final : public Generator {
 public:
  explicit SeparableGenerator(ConvexGenerator base, std::size_t dimension = 0)
      : base_(base), dimension_(dimension) {}

  const ConvexGenerator& base() const { return base_; }
  std::size_t dimension() const { return dimension_; }

  std::string name() const override { return std::string(base_.name()); }
  bool in_domain(std::span<const double> x) const override;
  double eval(std::span<const double> x) const override;
  std::vector<double> grad(std::span<const double> x) const override;
  std::vector<double> grad_inv(std::span<const double> y) const override;
  double jensen_gap(std::span<const double> x, std::span<const double> y,
                    double lambda) const override;
  std::optional<ConvexGenerator> separable_base() const override { return base_; }

 private:
  void check_dimension(std::size_t n) const;

  ConvexGenerator base_;
  std::size_t dimension_;
};

/// Shared separable generator for the named scalar generator.
std::shared_ptr<const Generator> make_separable(std::string_view name, std::size_t dimension = 0);

}  // namespace skewjensen
