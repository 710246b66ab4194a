#include "skewjensen/expfam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "skewjensen/divergences.hpp"
#include "skewjensen/error.hpp"

namespace skewjensen {

namespace {

void require_finite(std::span<const double> v, std::string_view what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite parameter");
  }
}

void require_dim(std::span<const double> v, std::size_t n, std::string_view what) {
  if (v.size() != n) {
    std::ostringstream os;
    os << what << ": expected " << n << " parameters, got " << v.size();
    throw DimensionError(os.str());
  }
}

/// F(theta) = log(1 + sum_i exp(theta_i)) on R^(d-1).
class MultinomialLogNormalizer final : public Generator {
 public:
  explicit MultinomialLogNormalizer(std::size_t order) : order_(order) {}

  std::string name() const override { return "multinomial-log-normalizer"; }

  bool in_domain(std::span<const double> x) const override {
    return x.size() == order_ && std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
  }

  double eval(std::span<const double> x) const override {
    check(x);
    const double m = std::max(0.0, *std::max_element(x.begin(), x.end()));
    double s = std::exp(-m);
    for (double v : x) s += std::exp(v - m);
    return m + std::log(s);
  }

  std::vector<double> grad(std::span<const double> x) const override {
    check(x);
    const double m = std::max(0.0, *std::max_element(x.begin(), x.end()));
    double s = std::exp(-m);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i] = std::exp(x[i] - m);
      s += out[i];
    }
    for (double& v : out) v /= s;
    return out;
  }

  std::vector<double> grad_inv(std::span<const double> eta) const override {
    require_dim(eta, order_, name());
    double total = 0.0;
    for (double v : eta) {
      if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(name() + ": grad_inv outside domain");
      total += v;
    }
    const double rest = 1.0 - total;
    if (!(rest > 0.0)) throw DomainError(name() + ": grad_inv outside domain");
    std::vector<double> out(eta.size());
    const double log_rest = std::log(rest);
    for (std::size_t i = 0; i < eta.size(); ++i) out[i] = std::log(eta[i]) - log_rest;
    return out;
  }

 private:
  void check(std::span<const double> x) const {
    require_dim(x, order_, name());
    require_finite(x, name());
  }

  std::size_t order_;
};

/// F(theta) = -theta1^2 / (4 theta2) + log(-pi / theta2) / 2 on R x (-inf, 0).
class GaussianLogNormalizer final : public Generator {
 public:
  std::string name() const override { return "gaussian-log-normalizer"; }

  bool in_domain(std::span<const double> x) const override {
    return x.size() == 2 && std::isfinite(x[0]) && std::isfinite(x[1]) && x[1] < 0.0;
  }

  double eval(std::span<const double> x) const override {
    check(x);
    return -x[0] * x[0] / (4.0 * x[1]) + 0.5 * std::log(-std::numbers::pi / x[1]);
  }

  // (E[x], E[x^2]) = (mu, mu^2 + s2)
  std::vector<double> grad(std::span<const double> x) const override {
    check(x);
    const double mu = -x[0] / (2.0 * x[1]);
    const double s2 = -1.0 / (2.0 * x[1]);
    return {mu, mu * mu + s2};
  }

  std::vector<double> grad_inv(std::span<const double> eta) const override {
    require_dim(eta, 2, name());
    require_finite(eta, name());
    const double s2 = eta[1] - eta[0] * eta[0];
    if (!(s2 > 0.0)) throw DomainError(name() + ": grad_inv outside domain (variance <= 0)");
    return {eta[0] / s2, -1.0 / (2.0 * s2)};
  }

 private:
  void check(std::span<const double> x) const {
    if (!in_domain(x)) throw DomainError(name() + ": natural parameter outside domain");
  }
};

class MultinomialFamily final : public ExponentialFamily {
 public:
  explicit MultinomialFamily(std::size_t bins)
      : ExponentialFamily("multinomial(" + std::to_string(bins) + ")", bins - 1, bins,
                          "t(x) = indicator of categories 1..d-1", "k(x) = 0",
                          std::make_shared<MultinomialLogNormalizer>(bins - 1)) {}

  std::vector<double> natural_from_source(std::span<const double> source) const override {
    require_dim(source, source_dim(), id());
    const Histogram p{std::vector<double>(source.begin(), source.end())};
    std::vector<double> theta(natural_dim());
    const double log_last = std::log(p[natural_dim()]);
    for (std::size_t i = 0; i < natural_dim(); ++i) theta[i] = std::log(p[i]) - log_last;
    return theta;
  }

  std::vector<double> source_from_natural(std::span<const double> theta) const override {
    auto eta = log_normalizer().grad(theta);
    // reference bin 1 / (1 + sum e^theta) = exp(-F), avoids 1 - sum(eta)
    eta.push_back(std::exp(-log_normalizer().eval(theta)));
    return eta;
  }
};

class GaussianFamily final : public ExponentialFamily {
 public:
  GaussianFamily()
      : ExponentialFamily("gaussian1d", 2, 2, "t(x) = (x, x^2)", "k(x) = 0",
                          std::make_shared<GaussianLogNormalizer>()) {}

  std::vector<double> natural_from_source(std::span<const double> source) const override {
    require_dim(source, 2, id());
    require_finite(source, id());
    const double mu = source[0];
    const double s2 = source[1];
    if (!(s2 > 0.0)) throw DomainError("gaussian1d: variance must be positive");
    return {mu / s2, -1.0 / (2.0 * s2)};
  }

  std::vector<double> source_from_natural(std::span<const double> theta) const override {
    if (!in_natural_space(theta)) throw DomainError("gaussian1d: theta outside natural space");
    const double s2 = -1.0 / (2.0 * theta[1]);
    return {theta[0] * s2, s2};
  }

  bool has_density() const override { return true; }

  double log_density(double x, std::span<const double> theta) const override {
    return theta[0] * x + theta[1] * x * x - log_normalizer().eval(theta);
  }
};

class PoissonFamily final : public ExponentialFamily {
 public:
  PoissonFamily()
      : ExponentialFamily("poisson", 1, 1, "t(x) = x", "k(x) = -log x!",
                          std::make_shared<SeparableGenerator>(make_generator("exp"), 1)) {}

  std::vector<double> natural_from_source(std::span<const double> source) const override {
    require_dim(source, 1, id());
    if (!(source[0] > 0.0) || !std::isfinite(source[0])) {
      throw DomainError("poisson: rate must be positive");
    }
    return {std::log(source[0])};
  }

  std::vector<double> source_from_natural(std::span<const double> theta) const override {
    if (!in_natural_space(theta)) throw DomainError("poisson: theta outside natural space");
    return {std::exp(theta[0])};
  }

  bool has_density() const override { return true; }

  double log_density(double x, std::span<const double> theta) const override {
    return x * theta[0] - std::exp(theta[0]) - std::lgamma(x + 1.0);
  }
};

void require_same_family(const NaturalParam& a, const NaturalParam& b, std::string_view what) {
  if (a.family().id() != b.family().id()) {
    throw ConfigError(std::string(what) + ": family mismatch (" + a.family().id() + " vs " +
                      b.family().id() + ")");
  }
}

double gaussian_tail_outside(double lo, double hi, double mu, double s2) {
  const double s = std::sqrt(2.0 * s2);
  return 0.5 * std::erfc((hi - mu) / s) + 0.5 * std::erfc((mu - lo) / s);
}

double quadrature_gaussian(const NaturalParam& p, const NaturalParam& q, double a,
                           const QuadratureSpec& spec) {
  const auto sp = to_source(p);
  const auto sq = to_source(q);
  const double sdp = std::sqrt(sp[1]);
  const double sdq = std::sqrt(sq[1]);
  const double lo = spec.lo.value_or(std::min(sp[0] - 12.0 * sdp, sq[0] - 12.0 * sdq));
  const double hi = spec.hi.value_or(std::max(sp[0] + 12.0 * sdp, sq[0] + 12.0 * sdq));
  if (!(hi > lo) || !(spec.step > 0.0)) throw ConfigError("quadrature: invalid grid");
  const double tail = std::max(gaussian_tail_outside(lo, hi, sp[0], sp[1]),
                               gaussian_tail_outside(lo, hi, sq[0], sq[1]));
  if (tail > spec.tail_tolerance) {
    std::ostringstream os;
    os << "quadrature: grid [" << lo << ", " << hi << "] leaves tail mass " << tail
       << " uncovered";
    throw DomainError(os.str());
  }
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / spec.step));
  const double h = (hi - lo) / static_cast<double>(n);
  const auto& fam = p.family();
  auto integrand = [&](double x) {
    return std::exp(a * fam.log_density(x, p.theta()) + (1.0 - a) * fam.log_density(x, q.theta()));
  };
  double sum = 0.5 * (integrand(lo) + integrand(hi));
  for (std::size_t i = 1; i < n; ++i) sum += integrand(lo + h * static_cast<double>(i));
  return -std::log(sum * h);
}

double quadrature_poisson(const NaturalParam& p, const NaturalParam& q, double a,
                          const QuadratureSpec& spec) {
  const double lp = to_source(p)[0];
  const double lq = to_source(q)[0];
  const auto& fam = p.family();
  std::size_t kmax = 0;
  if (spec.max_count) {
    kmax = *spec.max_count;
  } else {
    const double lam = std::max(lp, lq);
    kmax = static_cast<std::size_t>(std::ceil(lam + 40.0 * std::sqrt(lam) + 50.0));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const double x = static_cast<double>(k);
    sum += std::exp(a * fam.log_density(x, p.theta()) + (1.0 - a) * fam.log_density(x, q.theta()));
  }
  // mass beyond kmax, accumulated until the terms underflow
  double tail = 0.0;
  for (std::size_t k = kmax + 1;; ++k) {
    const double x = static_cast<double>(k);
    const double term = std::max(std::exp(fam.log_density(x, p.theta())),
                                 std::exp(fam.log_density(x, q.theta())));
    tail += term;
    if ((x > std::max(lp, lq) && term < 1e-300) || k > kmax + 100000) break;
  }
  if (tail > spec.tail_tolerance) {
    std::ostringstream os;
    os << "quadrature: truncation at count " << kmax << " leaves tail mass " << tail;
    throw DomainError(os.str());
  }
  return -std::log(sum);
}

}  // namespace

ExponentialFamily::ExponentialFamily(std::string id, std::size_t natural_dim,
                                     std::size_t source_dim, std::string sufficient_statistic,
                                     std::string carrier,
                                     std::shared_ptr<const Generator> log_normalizer)
    : id_(std::move(id)),
      natural_dim_(natural_dim),
      source_dim_(source_dim),
      sufficient_statistic_(std::move(sufficient_statistic)),
      carrier_(std::move(carrier)),
      log_normalizer_(std::move(log_normalizer)) {}

bool ExponentialFamily::in_natural_space(std::span<const double> theta) const {
  return theta.size() == natural_dim_ && log_normalizer_->in_domain(theta);
}

double ExponentialFamily::log_density(double, std::span<const double>) const {
  throw ConfigError(id_ + ": pointwise density not available");
}

std::shared_ptr<const ExponentialFamily> make_family(std::string_view name, std::size_t bins) {
  if (name == "multinomial") {
    if (bins < 2) throw ConfigError("multinomial family needs at least 2 bins");
    return std::make_shared<MultinomialFamily>(bins);
  }
  if (name == "gaussian" || name == "gaussian1d") return std::make_shared<GaussianFamily>();
  if (name == "poisson") return std::make_shared<PoissonFamily>();
  throw ConfigError("unknown exponential family '" + std::string(name) +
                    "' (expected multinomial, gaussian or poisson)");
}

NaturalParam::NaturalParam(std::shared_ptr<const ExponentialFamily> family,
                           std::vector<double> theta)
    : family_(std::move(family)), theta_(std::move(theta)) {
  if (!family_) throw ConfigError("natural parameter without family");
  if (theta_.size() != family_->natural_dim()) {
    std::ostringstream os;
    os << family_->id() << ": natural parameter needs " << family_->natural_dim()
       << " entries, got " << theta_.size();
    throw DimensionError(os.str());
  }
  if (!family_->in_natural_space(theta_)) {
    throw DomainError(family_->id() + ": natural parameter outside the natural space");
  }
}

NaturalParam to_natural(const std::shared_ptr<const ExponentialFamily>& family,
                        std::span<const double> source) {
  if (!family) throw ConfigError("to_natural: null family");
  return NaturalParam(family, family->natural_from_source(source));
}

std::vector<double> to_source(const NaturalParam& theta) {
  return theta.family().source_from_natural(theta.theta());
}

double bregman(const NaturalParam& theta_q, const NaturalParam& theta_p) {
  require_same_family(theta_q, theta_p, "bregman");
  return bregman(theta_q.family().log_normalizer(), theta_q.theta(), theta_p.theta());
}

double kl_expfam(const NaturalParam& theta_p, const NaturalParam& theta_q) {
  return bregman(theta_q, theta_p);
}

double jeffreys_expfam(const NaturalParam& theta_p, const NaturalParam& theta_q) {
  require_same_family(theta_p, theta_q, "jeffreys_expfam");
  const auto& f = theta_p.family().log_normalizer();
  const auto gp = f.grad(theta_p.theta());
  const auto gq = f.grad(theta_q.theta());
  double s = 0.0;
  for (std::size_t i = 0; i < gp.size(); ++i) {
    s += (theta_p.theta()[i] - theta_q.theta()[i]) * (gp[i] - gq[i]);
  }
  return s;
}

double bhattacharyya_alpha(const NaturalParam& theta_p, const NaturalParam& theta_q,
                           SkewParameter alpha) {
  require_same_family(theta_p, theta_q, "bhattacharyya_alpha");
  return theta_p.family().log_normalizer().jensen_gap(theta_p.theta(), theta_q.theta(),
                                                      alpha.value());
}

double sym_bhattacharyya(const NaturalParam& theta_p, const NaturalParam& theta_q,
                         SkewParameter alpha) {
  return 0.5 * (bhattacharyya_alpha(theta_p, theta_q, alpha) +
                bhattacharyya_alpha(theta_q, theta_p, alpha));
}

double quadrature_bhattacharyya(const NaturalParam& theta_p, const NaturalParam& theta_q,
                                SkewParameter alpha, const QuadratureSpec& spec) {
  require_same_family(theta_p, theta_q, "quadrature_bhattacharyya");
  const auto& id = theta_p.family().id();
  if (id == "gaussian1d") return quadrature_gaussian(theta_p, theta_q, alpha.value(), spec);
  if (id == "poisson") return quadrature_poisson(theta_p, theta_q, alpha.value(), spec);
  throw ConfigError("quadrature_bhattacharyya: unsupported family " + id);
}

}  // namespace skewjensen
