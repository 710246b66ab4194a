#include "skewjensen/divergences.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "skewjensen/error.hpp"

namespace skewjensen {

namespace {

void require_same_size(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(os.str());
  }
}

double plogp(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

double entropy_of(std::span<const double> v) {
  double h = 0.0;
  for (double x : v) h -= plogp(x);
  return h;
}

std::vector<double> mixture(std::span<const double> p, std::span<const double> q, double wp) {
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = wp * p[i] + (1.0 - wp) * q[i];
  return m;
}

// (B_F(p:q) + B_F(q:p)) / 2 = <p - q, grad F(p) - grad F(q)> / 2
double symmetric_bregman_half(const Generator& f, std::span<const double> p,
                              std::span<const double> q) {
  if (auto base = f.separable_base()) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != q[i]) s += (p[i] - q[i]) * (base->grad(p[i]) - base->grad(q[i]));
    }
    return 0.5 * s;
  }
  const auto gp = f.grad(p);
  const auto gq = f.grad(q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (gp[i] - gq[i]);
  return 0.5 * s;
}

// F(p) + F(q) - F(a p + (1-a) q) - F((1-a) p + a q), accumulated per
// coordinate for separable generators.
double symmetric_gap_sum(const Generator& f, std::span<const double> p, std::span<const double> q,
                         double a) {
  if (auto base = f.separable_base()) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == q[i]) {
        (void)base->eval(p[i]);  // domain check only
        continue;
      }
      const double m1 = a * p[i] + (1.0 - a) * q[i];
      const double m2 = (1.0 - a) * p[i] + a * q[i];
      s += (base->eval(p[i]) + base->eval(q[i])) - (base->eval(m1) + base->eval(m2));
    }
    return s;
  }
  const auto m1 = mixture(p, q, a);
  const auto m2 = mixture(p, q, 1.0 - a);
  return (f.eval(p) + f.eval(q)) - (f.eval(m1) + f.eval(m2));
}

}  // namespace

double entropy(const Histogram& p) { return entropy_of(p.bins()); }

double cross_entropy(const Histogram& p, const Histogram& q) {
  require_same_size(p.size(), q.size(), "cross_entropy");
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) h -= p[i] * std::log(q[i]);
  return h;
}

double kl(const Histogram& p, const Histogram& q) {
  require_same_size(p.size(), q.size(), "kl");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += p[i] * std::log(p[i] / q[i]);
  return d;
}

double ekl(const PositiveMeasure& p, const PositiveMeasure& q) {
  require_same_size(p.size(), q.size(), "ekl");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] == 0.0) return std::numeric_limits<double>::infinity();
    d += plogp(p[i]) - (p[i] > 0.0 ? p[i] * std::log(q[i]) : 0.0) + q[i] - p[i];
  }
  return d;
}

double jeffreys(const Histogram& p, const Histogram& q) {
  require_same_size(p.size(), q.size(), "jeffreys");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += (p[i] - q[i]) * std::log(p[i] / q[i]);
  return d;
}

double js(const Histogram& p, const Histogram& q) {
  require_same_size(p.size(), q.size(), "js");
  const auto m = mixture(p.bins(), q.bins(), 0.5);
  return entropy_of(m) - 0.5 * (entropy(p) + entropy(q));
}

double k_div(const Histogram& p, const Histogram& q) {
  require_same_size(p.size(), q.size(), "k_div");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += p[i] * std::log(2.0 * p[i] / (p[i] + q[i]));
  return d;
}

double k_alpha(const Histogram& p, const Histogram& q, SkewParameter alpha) {
  require_same_size(p.size(), q.size(), "k_alpha");
  const double a = alpha.value();
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d += p[i] * std::log(p[i] / ((1.0 - a) * p[i] + a * q[i]));
  }
  return d;
}

double js_alpha(const Histogram& p, const Histogram& q, SkewParameter alpha) {
  return 0.5 * (k_alpha(p, q, alpha) + k_alpha(q, p, alpha));
}

PhiGenerator::PhiGenerator(std::string label, std::function<double(double)> phi)
    : label_(std::move(label)), phi_(std::move(phi)) {
  if (!phi_) throw ConfigError("phi generator '" + label_ + "' is empty");
  if (std::abs(phi_(1.0)) > 1e-12) {
    throw ConfigError("phi generator '" + label_ + "' must satisfy phi(1) = 0");
  }
}

PhiGenerator make_phi(std::string_view name) {
  if (name == "neg-log") return {"neg-log", [](double u) { return -std::log(u); }};
  if (name == "u-log-u") return {"u-log-u", [](double u) { return u * std::log(u); }};
  if (name == "jeffreys") return {"jeffreys", [](double u) { return (u - 1.0) * std::log(u); }};
  if (name == "half-k") {
    return {"half-k", [](double u) { return 0.5 * u * std::log(2.0 * u / (1.0 + u)); }};
  }
  throw ConfigError("unknown phi generator '" + std::string(name) +
                    "' (expected neg-log, u-log-u, jeffreys or half-k)");
}

std::vector<std::string> phi_names() { return {"neg-log", "u-log-u", "jeffreys", "half-k"}; }

double phi_divergence(const PhiGenerator& phi, const Histogram& p, const Histogram& q) {
  require_same_size(p.size(), q.size(), "phi_divergence");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = phi(p[i] / q[i]);
    if (!std::isfinite(v)) {
      throw DomainError("phi generator '" + phi.label() + "' undefined at ratio of bin " +
                        std::to_string(i));
    }
    d += q[i] * v;
  }
  return d;
}

PhiGenerator couple_phi(const PhiGenerator& phi) {
  std::string label = phi.label();
  if (label.ends_with('*')) {
    label.pop_back();
  } else {
    label.push_back('*');
  }
  return {std::move(label), [phi](double u) { return u * phi(1.0 / u); }};
}

double bregman(const Generator& f, std::span<const double> x, std::span<const double> y) {
  require_same_size(x.size(), y.size(), "bregman");
  const auto gy = f.grad(y);
  double inner = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) inner += (x[i] - y[i]) * gy[i];
  return f.eval(x) - f.eval(y) - inner;
}

double skew_jensen(const Generator& f, std::span<const double> p, std::span<const double> q,
                   SkewParameter alpha) {
  require_same_size(p.size(), q.size(), "skew_jensen");
  const double a = alpha.value();
  if (a == 0.0) return bregman(f, q, p);
  if (a == 1.0) return bregman(f, p, q);
  return f.jensen_gap(p, q, 1.0 - a) / (a * (1.0 - a));
}

double sym_skew_jensen(const Generator& f, std::span<const double> p, std::span<const double> q,
                       SkewParameter alpha) {
  require_same_size(p.size(), q.size(), "sym_skew_jensen");
  const double a = alpha.value();
  if (alpha.is_endpoint()) return symmetric_bregman_half(f, p, q);
  return symmetric_gap_sum(f, p, q, a) / (2.0 * a * (1.0 - a));
}

double skl_alpha(const Histogram& p, const Histogram& q, SkewParameter alpha) {
  require_same_size(p.size(), q.size(), "skl_alpha");
  if (alpha.is_endpoint()) return 0.5 * jeffreys(p, q);
  const double a = alpha.value();
  const auto m1 = mixture(p.bins(), q.bins(), a);
  const auto m2 = mixture(p.bins(), q.bins(), 1.0 - a);
  const double num = (entropy_of(m1) + entropy_of(m2)) - (entropy(p) + entropy(q));
  return num / (2.0 * a * (1.0 - a));
}

double l_alpha(const Histogram& p, const Histogram& q, SkewParameter alpha) {
  require_same_size(p.size(), q.size(), "l_alpha");
  if (alpha.is_endpoint()) throw ConfigError("l_alpha requires alpha in (0, 1)");
  const double a = alpha.value();
  const auto m = mixture(p.bins(), q.bins(), 1.0 - a);
  return (entropy_of(m) - entropy(p)) / (a * (1.0 - a));
}

double s_param(const Generator& f, std::span<const double> p, std::span<const double> q,
               double alpha_prime) {
  if (!(alpha_prime >= -1.0 && alpha_prime <= 1.0)) {
    throw ConfigError("s_param: alpha' must lie in [-1, 1]");
  }
  require_same_size(p.size(), q.size(), "s_param");
  if (std::abs(alpha_prime) == 1.0) return symmetric_bregman_half(f, p, q);
  const double wp = 0.5 * (1.0 - alpha_prime);
  return 2.0 / (1.0 - alpha_prime * alpha_prime) * symmetric_gap_sum(f, p, q, wp);
}

double sym_skew_jensen_scalar(const ConvexGenerator& f, double x, double y, SkewParameter alpha) {
  const SeparableGenerator g(f, 1);
  const double xs[1] = {x};
  const double ys[1] = {y};
  return sym_skew_jensen(g, xs, ys, alpha);
}

std::vector<ProfileRow> scalar_profile(const ConvexGenerator& f, double x, double y,
                                       std::span<const double> alphas, std::span<const double> ts) {
  if (alphas.empty() || ts.empty()) throw ConfigError("scalar_profile: grids must be non-empty");
  std::vector<ProfileRow> rows;
  rows.reserve(alphas.size() * ts.size());
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 0.5)) throw ConfigError("scalar_profile: alpha must lie in (0, 1/2]");
    for (double t : ts) {
      const double xt = (1.0 - t) * x + t * y;
      rows.push_back({a, t, sym_skew_jensen_scalar(f, xt, y, SkewParameter(a))});
    }
  }
  return rows;
}

}  // namespace skewjensen
