#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skewjensen/generators.hpp"
#include "skewjensen/histogram.hpp"

namespace skewjensen {

// Information measures on histograms. Natural logarithm (nats) throughout.

/// H(p) = -sum p_i log p_i.
double entropy(const Histogram& p);
/// H(p:q) = -sum p_i log q_i.
double cross_entropy(const Histogram& p, const Histogram& q);
/// Kullback-Leibler divergence KL(p:q).
double kl(const Histogram& p, const Histogram& q);
/// Extended KL for unnormalized measures: sum p log(p/q) + q - p.
/// Returns +infinity when some q_i = 0 < p_i.
double ekl(const PositiveMeasure& p, const PositiveMeasure& q);
/// Jeffreys divergence KL(p:q) + KL(q:p).
double jeffreys(const Histogram& p, const Histogram& q);
/// Jensen-Shannon divergence H((p+q)/2) - (H(p)+H(q))/2; bounded by log 2.
double js(const Histogram& p, const Histogram& q);
/// K(p:q) = KL(p : (p+q)/2).
double k_div(const Histogram& p, const Histogram& q);
/// K_alpha(p:q) = sum p log(p / ((1-alpha) p + alpha q)).
double k_alpha(const Histogram& p, const Histogram& q, SkewParameter alpha);
/// (K_alpha(p:q) + K_alpha(q:p)) / 2.
double js_alpha(const Histogram& p, const Histogram& q, SkewParameter alpha);

/// Convex phi with phi(1) = 0, defining I_phi(p:q) = sum q phi(p/q).
class PhiGenerator {
 public:
  /// Throws ConfigError if |phi(1)| > 1e-12.
  PhiGenerator(std::string label, std::function<double(double)> phi);

  const std::string& label() const { return label_; }
  double operator()(double u) const { return phi_(u); }

 private:
  std::string label_;
  std::function<double(double)> phi_;
};

/// Named phi generators:
///   neg-log    -log u                   (I_phi(p:q) = KL(q:p))
///   u-log-u    u log u                  (I_phi(p:q) = KL(p:q))
///   jeffreys   (u - 1) log u            (Jeffreys divergence)
///   half-k     (u/2) log(2u / (1 + u))  (K(p:q)/2)
PhiGenerator make_phi(std::string_view name);
std::vector<std::string> phi_names();

/// I_phi(p:q) = sum q_i phi(p_i / q_i).
double phi_divergence(const PhiGenerator& phi, const Histogram& p, const Histogram& q);

/// Coupled generator phi*(u) = u phi(1/u), so that I_phi*(p:q) = I_phi(q:p).
PhiGenerator couple_phi(const PhiGenerator& phi);

/// Bregman divergence B_F(x:y) = F(x) - F(y) - <x - y, grad F(y)>.
double bregman(const Generator& f, std::span<const double> x, std::span<const double> y);

/// alpha-skew Jensen divergence
///   J_F^a(p:q) = [(1-a) F(p) + a F(q) - F((1-a) p + a q)] / (a (1-a)).
/// At the endpoints the limit is taken: a = 0 gives B_F(q:p), a = 1 gives B_F(p:q).
double skew_jensen(const Generator& f, std::span<const double> p, std::span<const double> q,
                   SkewParameter alpha);

/// Symmetrized skew Jensen divergence (J_F^a(p:q) + J_F^a(q:p)) / 2.
/// Symmetric in (p, q) and in a <-> 1-a. At a in {0, 1} returns the limit
/// (B_F(p:q) + B_F(q:p)) / 2, which is J/2 for the Shannon generator.
double sym_skew_jensen(const Generator& f, std::span<const double> p, std::span<const double> q,
                       SkewParameter alpha);

/// Symmetric KL family via entropies:
///   [H(a p + (1-a) q) + H((1-a) p + a q) - H(p) - H(q)] / (2 a (1-a)).
/// Equals 4 js at a = 1/2; endpoints return jeffreys / 2.
double skl_alpha(const Histogram& p, const Histogram& q, SkewParameter alpha);

/// L_a(p:q) = [H((1-a) p + a q) - H(p)] / (a (1-a)), a in (0, 1).
///
/// Only the symmetric combination is guaranteed non-negative:
/// skl_alpha(p, q, a) = (L_a(p:q) + L_a(q:p)) / 2. L_a alone can be negative
/// when q has lower entropy than p.
double l_alpha(const Histogram& p, const Histogram& q, SkewParameter alpha);

/// Alternative parametrization with a' in [-1, 1]:
///   S_F^a'(p,q) = 2/(1-a'^2) [F(p) + F(q) - F((1-a')/2 p + (1+a')/2 q)
///                                         - F((1+a')/2 p + (1-a')/2 q)],
/// equal to sym_skew_jensen at a = (1 - a')/2. |a'| = 1 takes the endpoint limit.
double s_param(const Generator& f, std::span<const double> p, std::span<const double> q,
               double alpha_prime);

/// Scalar base distance sj_F^a(x, y) of the symmetrized family.
double sym_skew_jensen_scalar(const ConvexGenerator& f, double x, double y, SkewParameter alpha);

struct ProfileRow {
  double alpha;
  double t;
  double value;
};

/// Samples sj_F^a(x_t, y) with x_t = (1 - t) x + t y for every alpha in
/// `alphas` (each in (0, 1/2]) and every t in `ts`; rows are alpha-major.
std::vector<ProfileRow> scalar_profile(const ConvexGenerator& f, double x, double y,
                                       std::span<const double> alphas, std::span<const double> ts);

}  // namespace skewjensen
