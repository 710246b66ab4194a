#include "skewjensen/generators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "skewjensen/error.hpp"

namespace skewjensen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_shannon(ConvexGenerator::Kind k) {
  return k == ConvexGenerator::Kind::shannon || k == ConvexGenerator::Kind::xlogx;
}

[[noreturn]] void domain_failure(std::string_view gen, std::string_view what, double x) {
  std::ostringstream os;
  os << gen << ": " << what << " outside domain at x = " << x;
  throw DomainError(os.str());
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

std::string_view ConvexGenerator::name() const {
  switch (kind_) {
    case Kind::shannon: return "shannon";
    case Kind::xlogx: return "xlogx";
    case Kind::burg: return "burg";
    case Kind::quadratic: return "quadratic";
    case Kind::exp: return "exp";
  }
  return "unknown";
}

double ConvexGenerator::domain_lo() const {
  return (kind_ == Kind::quadratic || kind_ == Kind::exp) ? -kInf : 0.0;
}

double ConvexGenerator::domain_hi() const { return kInf; }

bool ConvexGenerator::in_domain(double x) const {
  return std::isfinite(x) && x > domain_lo() && x < domain_hi();
}

double ConvexGenerator::eval(double x) const {
  if (is_shannon(kind_) && x == 0.0) return 0.0;
  if (!in_domain(x)) domain_failure(name(), "eval", x);
  switch (kind_) {
    case Kind::shannon: return xlogx(x) - x;
    case Kind::xlogx: return xlogx(x);
    case Kind::burg: return -std::log(x);
    case Kind::quadratic: return x * x;
    case Kind::exp: return std::exp(x);
  }
  return 0.0;
}

double ConvexGenerator::grad(double x) const {
  if (!in_domain(x)) domain_failure(name(), "grad", x);
  switch (kind_) {
    case Kind::shannon: return std::log(x);
    case Kind::xlogx: return 1.0 + std::log(x);
    case Kind::burg: return -1.0 / x;
    case Kind::quadratic: return 2.0 * x;
    case Kind::exp: return std::exp(x);
  }
  return 0.0;
}

double ConvexGenerator::grad_inv(double y) const {
  switch (kind_) {
    case Kind::shannon:
      if (!std::isfinite(y)) domain_failure(name(), "grad_inv", y);
      return std::exp(y);
    case Kind::xlogx:
      if (!std::isfinite(y)) domain_failure(name(), "grad_inv", y);
      return std::exp(y - 1.0);
    case Kind::burg:
      // grad(x) = -1/x maps (0, inf) onto (-inf, 0)
      if (!(y < 0.0) || !std::isfinite(y)) domain_failure(name(), "grad_inv", y);
      return -1.0 / y;
    case Kind::quadratic:
      if (!std::isfinite(y)) domain_failure(name(), "grad_inv", y);
      return 0.5 * y;
    case Kind::exp:
      if (!(y > 0.0) || !std::isfinite(y)) domain_failure(name(), "grad_inv", y);
      return std::log(y);
  }
  return 0.0;
}

double ConvexGenerator::hessian(double x) const {
  if (!in_domain(x)) domain_failure(name(), "hessian", x);
  switch (kind_) {
    case Kind::shannon:
    case Kind::xlogx: return 1.0 / x;
    case Kind::burg: return 1.0 / (x * x);
    case Kind::quadratic: return 2.0;
    case Kind::exp: return std::exp(x);
  }
  return 0.0;
}

double ConvexGenerator::third_derivative(double x) const {
  if (!in_domain(x)) domain_failure(name(), "third_derivative", x);
  switch (kind_) {
    case Kind::shannon:
    case Kind::xlogx: return -1.0 / (x * x);
    case Kind::burg: return -2.0 / (x * x * x);
    case Kind::quadratic: return 0.0;
    case Kind::exp: return std::exp(x);
  }
  return 0.0;
}

ConvexGenerator make_generator(std::string_view name) {
  using K = ConvexGenerator::Kind;
  if (name == "shannon") return ConvexGenerator(K::shannon);
  if (name == "xlogx") return ConvexGenerator(K::xlogx);
  if (name == "burg") return ConvexGenerator(K::burg);
  if (name == "quadratic") return ConvexGenerator(K::quadratic);
  if (name == "exp") return ConvexGenerator(K::exp);
  throw ConfigError("unknown generator '" + std::string(name) +
                    "' (expected shannon, xlogx, burg, quadratic or exp)");
}

std::vector<std::string> generator_names() {
  return {"shannon", "xlogx", "burg", "quadratic", "exp"};
}

double jensen_gap(const ConvexGenerator& f, double x, double y, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("jensen_gap: lambda must lie in [0, 1]");
  }
  const double gap =
      lambda * f.eval(x) + (1.0 - lambda) * f.eval(y) - f.eval(lambda * x + (1.0 - lambda) * y);
  return x == y ? 0.0 : gap;
}

double Generator::jensen_gap(std::span<const double> x, std::span<const double> y,
                             double lambda) const {
  if (x.size() != y.size()) throw DimensionError("jensen_gap: dimension mismatch");
  std::vector<double> mix(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mix[i] = lambda * x[i] + (1.0 - lambda) * y[i];
  return lambda * eval(x) + (1.0 - lambda) * eval(y) - eval(mix);
}

void SeparableGenerator::check_dimension(std::size_t n) const {
  if (dimension_ != 0 && n != dimension_) {
    std::ostringstream os;
    os << name() << ": expected dimension " << dimension_ << ", got " << n;
    throw DimensionError(os.str());
  }
}

bool SeparableGenerator::in_domain(std::span<const double> x) const {
  if (dimension_ != 0 && x.size() != dimension_) return false;
  for (double v : x) {
    if (!base_.in_domain(v)) return false;
  }
  return true;
}

double SeparableGenerator::eval(std::span<const double> x) const {
  check_dimension(x.size());
  double s = 0.0;
  for (double v : x) s += base_.eval(v);
  return s;
}

std::vector<double> SeparableGenerator::grad(std::span<const double> x) const {
  check_dimension(x.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = base_.grad(x[i]);
  return out;
}

std::vector<double> SeparableGenerator::grad_inv(std::span<const double> y) const {
  check_dimension(y.size());
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = base_.grad_inv(y[i]);
  return out;
}

double SeparableGenerator::jensen_gap(std::span<const double> x, std::span<const double> y,
                                      double lambda) const {
  if (x.size() != y.size()) throw DimensionError("jensen_gap: dimension mismatch");
  check_dimension(x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += skewjensen::jensen_gap(base_, x[i], y[i], lambda);
  return s;
}

std::shared_ptr<const Generator> make_separable(std::string_view name, std::size_t dimension) {
  return std::make_shared<SeparableGenerator>(make_generator(name), dimension);
}

}  // namespace skewjensen
