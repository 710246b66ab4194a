#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "skewjensen/divergences.hpp"
#include "skewjensen/error.hpp"
#include "skewjensen/histogram.hpp"

namespace sj = skewjensen;

namespace {

sj::Histogram H(std::vector<double> v) { return sj::Histogram(std::move(v)); }

struct Pair {
  sj::Histogram p;
  sj::Histogram q;
};

std::vector<Pair> random_pairs(std::uint64_t seed, std::size_t n) {
  oracle::Sampler s(seed);
  std::vector<Pair> out;
  const std::size_t dims[] = {2, 8, 64};
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = dims[i % 3];
    out.push_back({H(s.histogram(d)), H(s.histogram(d))});
  }
  return out;
}

const sj::SkewParameter kHalf(0.5);

}  // namespace

TEST(Histogram, Validation) {
  EXPECT_THROW(H({1.0}), sj::DimensionError);
  EXPECT_THROW(H({0.5, 0.6}), sj::DomainError);
  EXPECT_THROW(H({1.0, 0.0}), sj::DomainError);
  EXPECT_NO_THROW(H({0.25, 0.75}));
  EXPECT_THROW(sj::SkewParameter(1.5), sj::ConfigError);
  EXPECT_THROW(sj::SkewParameter(-0.1), sj::ConfigError);
}

TEST(Divergences, FrozenValues) {
  const auto a = H({0.5, 0.5});
  const auto b = H({0.25, 0.75});
  EXPECT_NEAR(sj::kl(a, b), 0.14384103622589046, 1e-15);
  EXPECT_NEAR(sj::kl(b, a), 0.13081203594113696, 1e-15);
  EXPECT_NEAR(sj::jeffreys(a, b), 0.27465307216702742, 1e-15);
  EXPECT_NEAR(sj::cross_entropy(a, b), 0.8369882167858358, 1e-15);
  EXPECT_NEAR(sj::kl(a, b), sj::cross_entropy(a, b) - sj::entropy(a), 1e-15);

  const auto p = H({0.9, 0.1});
  const auto q = H({0.1, 0.9});
  EXPECT_NEAR(sj::entropy(p), 0.3250829733914482, 1e-15);
  EXPECT_NEAR(sj::kl(p, q), 1.7577796618689755, 1e-14);
  EXPECT_NEAR(sj::jeffreys(p, q), 3.515559323737951, 1e-14);
  EXPECT_NEAR(sj::js(p, q), 0.36806420716849707, 1e-15);
}

TEST(Divergences, EntropyOfSmoothedPointMass) {
  const double e = 1e-9;
  EXPECT_NEAR(sj::entropy(H({1 - 2 * e, e, e})), 4.344653167189282e-8, 2e-16);
}

TEST(Divergences, IdenticalArgumentsGiveZero) {
  const auto p = H({0.2, 0.3, 0.5});
  EXPECT_EQ(sj::kl(p, p), 0.0);
  EXPECT_EQ(sj::js(p, p), 0.0);
  EXPECT_EQ(sj::jeffreys(p, p), 0.0);
  EXPECT_EQ(sj::skl_alpha(p, p, sj::SkewParameter(0.3)), 0.0);
}

TEST(Divergences, ExtendedKL) {
  const sj::PositiveMeasure p(std::vector<double>{1.0, 2.0});
  const sj::PositiveMeasure q(std::vector<double>{2.0, 2.0});
  EXPECT_NEAR(sj::ekl(p, q), 0.30685281944005469, 1e-15);
  const sj::PositiveMeasure z(std::vector<double>{0.0, 1.0});
  EXPECT_TRUE(std::isinf(sj::ekl(p, z)));
  EXPECT_NEAR(sj::ekl(z, p), 2.0 - std::log(2.0), 1e-15);
}

TEST(Divergences, MatchOracles) {
  for (const auto& [p, q] : random_pairs(7, 150)) {
    const auto& pv = p.values();
    const auto& qv = q.values();
    EXPECT_NEAR(sj::kl(p, q), static_cast<double>(oracle::kl(pv, qv)), 1e-12);
    EXPECT_NEAR(sj::jeffreys(p, q), static_cast<double>(oracle::jeffreys(pv, qv)), 1e-12);
    EXPECT_NEAR(sj::js(p, q), static_cast<double>(oracle::js(pv, qv)), 1e-13);
    for (double a : {0.05, 0.3, 0.5}) {
      const double want = static_cast<double>(oracle::sym_skew_jensen(oracle::shannon(), pv, qv, a));
      EXPECT_NEAR(sj::skl_alpha(p, q, sj::SkewParameter(a)), want, 1e-10 * std::max(1.0, want));
    }
  }
}

TEST(Divergences, JSIsBoundedByLog2) {
  for (const auto& [p, q] : random_pairs(11, 90)) EXPECT_LE(sj::js(p, q), std::numbers::ln2);
  EXPECT_NEAR(sj::js(H({1 - 1e-15, 1e-15}), H({1e-15, 1 - 1e-15})), std::numbers::ln2, 1e-12);
}

TEST(Divergences, SklSymmetries) {
  for (const auto& [p, q] : random_pairs(13, 60)) {
    for (double a : {0.1, 0.25, 0.4}) {
      const sj::SkewParameter s(a);
      const double v = sj::skl_alpha(p, q, s);
      EXPECT_NEAR(v, sj::skl_alpha(q, p, s), 1e-12 * std::max(1.0, v));
      EXPECT_NEAR(v, sj::skl_alpha(p, q, s.complement()), 1e-12 * std::max(1.0, v));
      EXPECT_GE(v, 0.0);
    }
  }
}

TEST(Divergences, SklEndpointsAndMidpoint) {
  const auto p = H({0.9, 0.1});
  const auto q = H({0.1, 0.9});
  EXPECT_DOUBLE_EQ(sj::skl_alpha(p, q, sj::SkewParameter(0.0)), sj::jeffreys(p, q) / 2);
  EXPECT_DOUBLE_EQ(sj::skl_alpha(p, q, sj::SkewParameter(1.0)), sj::jeffreys(p, q) / 2);
  EXPECT_NEAR(sj::skl_alpha(p, q, kHalf), 4 * sj::js(p, q), 1e-14);
  EXPECT_NEAR(sj::skl_alpha(p, q, kHalf), 1.4722568286739883, 1e-14);
  EXPECT_NEAR(sj::skl_alpha(p, q, sj::SkewParameter(0.01)), 1.740438666657042, 1e-12);
}

TEST(Divergences, SklMatchesShannonSymSkewJensen) {
  const auto f = sj::make_separable("shannon");
  for (const auto& [p, q] : random_pairs(17, 60)) {
    for (double a : {0.0, 0.2, 0.5, 1.0}) {
      const sj::SkewParameter s(a);
      const double v = sj::skl_alpha(p, q, s);
      EXPECT_NEAR(sj::sym_skew_jensen(*f, p.bins(), q.bins(), s), v, 1e-10 * std::max(1.0, v));
    }
  }
}

TEST(Divergences, LAlpha) {
  const auto p = H({0.9, 0.1});
  const auto q = H({0.1, 0.9});
  EXPECT_NEAR(sj::l_alpha(p, q, sj::SkewParameter(0.25)), 1.524167086205041, 1e-13);
  EXPECT_THROW(sj::l_alpha(p, q, sj::SkewParameter(0.0)), sj::ConfigError);

  const auto a = H({0.5, 0.5});
  const auto b = H({0.25, 0.75});
  // Moving toward a lower-entropy histogram makes L negative.
  EXPECT_NEAR(sj::l_alpha(a, b, kHalf), -0.12633576960785300, 1e-14);
  for (const auto& [x, y] : random_pairs(19, 30)) {
    const sj::SkewParameter s(0.3);
    EXPECT_NEAR((sj::l_alpha(x, y, s) + sj::l_alpha(y, x, s)) / 2, sj::skl_alpha(x, y, s),
                1e-9 * std::max(1.0, sj::skl_alpha(x, y, s)));
  }
}

TEST(Divergences, KAndKAlpha) {
  const auto a = H({0.5, 0.5});
  const auto b = H({0.25, 0.75});
  EXPECT_NEAR(4 * sj::k_div(a, b), 0.12907704227514234, 1e-15);
  EXPECT_NEAR(sj::k_alpha(a, b, kHalf), sj::k_div(a, b), 1e-16);
  EXPECT_NEAR(sj::k_alpha(a, b, sj::SkewParameter(1.0)), sj::kl(a, b), 1e-16);
  EXPECT_EQ(sj::k_alpha(a, b, sj::SkewParameter(0.0)), 0.0);
  for (const auto& [p, q] : random_pairs(23, 60)) {
    EXPECT_NEAR(sj::js(p, q), (sj::k_div(p, q) + sj::k_div(q, p)) / 2, 1e-13);
  }
}

TEST(Divergences, PhiGenerators) {
  EXPECT_THROW(sj::PhiGenerator("bad", [](double u) { return u; }), sj::ConfigError);
  EXPECT_THROW(sj::make_phi("chi2"), sj::ConfigError);
  for (const auto& name : sj::phi_names()) {
    const auto phi = sj::make_phi(name);
    EXPECT_NEAR(phi(1.0), 0.0, 1e-15) << name;
    // Midpoint convexity on a grid.
    for (double u = 0.05; u < 8.0; u *= 1.7) {
      const double v = u * 2.3;
      EXPECT_LE(phi((u + v) / 2), (phi(u) + phi(v)) / 2 + 1e-14) << name;
    }
  }
}

TEST(Divergences, PhiDivergenceIdentities) {
  for (const auto& [p, q] : random_pairs(29, 60)) {
    EXPECT_NEAR(sj::phi_divergence(sj::make_phi("neg-log"), p, q), sj::kl(q, p), 1e-12);
    EXPECT_NEAR(sj::phi_divergence(sj::make_phi("u-log-u"), p, q), sj::kl(p, q), 1e-12);
    EXPECT_NEAR(sj::phi_divergence(sj::make_phi("jeffreys"), p, q), sj::jeffreys(p, q), 1e-11);
    EXPECT_NEAR(sj::phi_divergence(sj::make_phi("half-k"), p, q), sj::k_div(p, q) / 2, 1e-12);
  }
}

TEST(Divergences, CoupledPhi) {
  const auto a = H({0.5, 0.5});
  const auto b = H({0.25, 0.75});
  const auto star = sj::couple_phi(sj::make_phi("neg-log"));
  EXPECT_EQ(star.label(), "neg-log*");
  EXPECT_EQ(sj::couple_phi(star).label(), "neg-log");
  EXPECT_NEAR(sj::phi_divergence(star, a, b), 0.14384103622589046, 1e-15);
  const auto twice = sj::couple_phi(star);
  const auto phi = sj::make_phi("neg-log");
  for (double u : {0.01, 0.5, 1.0, 3.0, 250.0}) EXPECT_NEAR(twice(u), phi(u), 1e-15 * std::max(1.0, std::abs(phi(u))));
  const auto both = sj::PhiGenerator("sum", [phi = sj::make_phi("half-k")](double u) {
    return phi(u) + u * phi(1 / u);
  });
  EXPECT_NEAR(sj::phi_divergence(both, a, b), sj::phi_divergence(both, b, a), 1e-15);
}

TEST(Divergences, SkewJensenEndpointsAreBregman) {
  const auto f = sj::make_separable("burg");
  const std::vector<double> p = {0.5, 2.0};
  const std::vector<double> q = {1.5, 0.25};
  EXPECT_NEAR(sj::skew_jensen(*f, p, q, sj::SkewParameter(0.0)), sj::bregman(*f, q, p), 1e-15);
  EXPECT_NEAR(sj::skew_jensen(*f, p, q, sj::SkewParameter(1.0)), sj::bregman(*f, p, q), 1e-15);
  EXPECT_NEAR(sj::skew_jensen(*f, p, q, sj::SkewParameter(1e-7)), sj::bregman(*f, q, p), 1e-5);
  EXPECT_NEAR(sj::skew_jensen(*f, p, q, sj::SkewParameter(1 - 1e-7)), sj::bregman(*f, p, q), 1e-5);
}

TEST(Divergences, BurgGap) {
  const auto f = sj::make_separable("burg");
  const std::vector<double> x = {1.0};
  const std::vector<double> y = {4.0};
  EXPECT_NEAR(sj::skew_jensen(*f, x, y, kHalf) / 4, 0.22314355131420976, 1e-15);
}

TEST(Divergences, QuadraticIsSquaredEuclidean) {
  const auto f = sj::make_separable("quadratic");
  oracle::Sampler s(31);
  for (int i = 0; i < 50; ++i) {
    const auto p = s.positive(5, -3.0, 3.0);
    const auto q = s.positive(5, -3.0, 3.0);
    double d2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) d2 += (p[k] - q[k]) * (p[k] - q[k]);
    for (double a : {0.0, 0.1, 0.5, 0.9}) {
      EXPECT_NEAR(sj::sym_skew_jensen(*f, p, q, sj::SkewParameter(a)), d2, 1e-12 * std::max(1.0, d2));
    }
  }
}

TEST(Divergences, SParam) {
  const auto f = sj::make_separable("shannon");
  for (const auto& [p, q] : random_pairs(37, 30)) {
    for (double ap : {-1.0, -0.4, 0.0, 0.6}) {
      const double want = sj::sym_skew_jensen(*f, p.bins(), q.bins(), sj::SkewParameter((1 - ap) / 2));
      EXPECT_NEAR(sj::s_param(*f, p.bins(), q.bins(), ap), want, 1e-10 * std::max(1.0, want));
    }
  }
  EXPECT_THROW(sj::s_param(*f, H({0.5, 0.5}).bins(), H({0.4, 0.6}).bins(), 1.5), sj::ConfigError);
}

TEST(Divergences, ScalarProfile) {
  const auto f = sj::make_generator("shannon");
  const std::vector<double> alphas = {0.1, 0.5};
  const std::vector<double> ts = {0.0, 0.5, 1.0};
  const auto rows = sj::scalar_profile(f, 0.2, 0.8, alphas, ts);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].alpha, 0.1);
  EXPECT_EQ(rows[2].t, 1.0);
  EXPECT_EQ(rows[2].value, 0.0);
  EXPECT_GT(rows[0].value, rows[1].value);
  EXPECT_NEAR(rows[4].value,
              static_cast<double>(oracle::sym_skew_jensen(oracle::shannon(), {0.5}, {0.8}, 0.5L)), 1e-14);
  const std::vector<double> bad = {0.7};
  EXPECT_THROW(sj::scalar_profile(f, 0.2, 0.8, bad, ts), sj::ConfigError);
}
