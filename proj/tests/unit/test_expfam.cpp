#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "skewjensen/centroids.hpp"
#include "skewjensen/divergences.hpp"
#include "skewjensen/error.hpp"
#include "skewjensen/expfam.hpp"

namespace sj = skewjensen;

namespace {

sj::NaturalParam gaussian(double mu, double var) {
  return sj::to_natural(sj::make_family("gaussian"), std::vector<double>{mu, var});
}

sj::NaturalParam poisson(double lambda) {
  return sj::to_natural(sj::make_family("poisson"), std::vector<double>{lambda});
}

}  // namespace

TEST(ExpFam, Factory) {
  EXPECT_EQ(sj::make_family("gaussian")->id(), "gaussian1d");
  EXPECT_EQ(sj::make_family("multinomial", 4)->natural_dim(), 3u);
  EXPECT_EQ(sj::make_family("multinomial", 4)->source_dim(), 4u);
  EXPECT_THROW(sj::make_family("multinomial", 1), sj::ConfigError);
  EXPECT_THROW(sj::make_family("beta"), sj::ConfigError);
}

TEST(ExpFam, ParameterRoundTrips) {
  const auto m = sj::make_family("multinomial", 3);
  const std::vector<double> p = {0.2, 0.5, 0.3};
  const auto theta = sj::to_natural(m, p);
  EXPECT_NEAR(theta.values()[0], std::log(0.2 / 0.3), 1e-15);
  const auto back = sj::to_source(theta);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(back[i], p[i], 1e-15);

  const auto g = gaussian(1.5, 4.0);
  EXPECT_DOUBLE_EQ(g.values()[0], 1.5 / 4.0);
  EXPECT_DOUBLE_EQ(g.values()[1], -1.0 / 8.0);
  const auto gs = sj::to_source(g);
  EXPECT_NEAR(gs[0], 1.5, 1e-15);
  EXPECT_NEAR(gs[1], 4.0, 1e-15);

  EXPECT_NEAR(sj::to_source(poisson(3.0))[0], 3.0, 1e-15);
}

TEST(ExpFam, DomainChecks) {
  EXPECT_THROW(gaussian(0.0, 0.0), sj::DomainError);
  EXPECT_THROW(poisson(-1.0), sj::DomainError);
  EXPECT_THROW(sj::NaturalParam(sj::make_family("gaussian"), {0.0, 0.5}), sj::DomainError);
  EXPECT_THROW(sj::NaturalParam(sj::make_family("poisson"), {0.0, 0.5}), sj::DimensionError);
  EXPECT_THROW(sj::kl_expfam(gaussian(0, 1), poisson(1)), sj::ConfigError);
}

TEST(ExpFam, GradientIsExpectedSufficientStatistic) {
  const auto fam = sj::make_family("gaussian");
  const auto g = gaussian(0.7, 2.0);
  const auto eta = fam->log_normalizer().grad(g.theta());
  EXPECT_NEAR(eta[0], 0.7, 1e-14);
  EXPECT_NEAR(eta[1], 0.7 * 0.7 + 2.0, 1e-14);
  const auto back = fam->log_normalizer().grad_inv(eta);
  EXPECT_NEAR(back[0], g.values()[0], 1e-14);
  EXPECT_NEAR(back[1], g.values()[1], 1e-14);

  const auto m = sj::make_family("multinomial", 3);
  const auto t = sj::to_natural(m, std::vector<double>{0.2, 0.5, 0.3});
  const auto mean = m->log_normalizer().grad(t.theta());
  EXPECT_NEAR(mean[0], 0.2, 1e-15);
  EXPECT_NEAR(mean[1], 0.5, 1e-15);
}

TEST(ExpFam, LogNormalizerIsStableForLargeTheta) {
  const auto m = sj::make_family("multinomial", 3);
  const std::vector<double> theta = {800.0, 799.0};
  const double f = m->log_normalizer().eval(theta);
  EXPECT_TRUE(std::isfinite(f));
  EXPECT_NEAR(f, 800.0 + std::log1p(std::exp(-1.0) + std::exp(-800.0)), 1e-12);
}

TEST(ExpFam, KLMatchesClosedForms) {
  oracle::Sampler s(3);
  for (int i = 0; i < 40; ++i) {
    const double m1 = s.uniform(-3, 3), v1 = s.uniform(0.2, 4);
    const double m2 = s.uniform(-3, 3), v2 = s.uniform(0.2, 4);
    EXPECT_NEAR(sj::kl_expfam(gaussian(m1, v1), gaussian(m2, v2)),
                static_cast<double>(oracle::gaussian_kl(m1, v1, m2, v2)), 1e-12);
  }
  const auto m = sj::make_family("multinomial", 2);
  const auto p = sj::to_natural(m, std::vector<double>{0.5, 0.5});
  const auto q = sj::to_natural(m, std::vector<double>{0.25, 0.75});
  EXPECT_NEAR(sj::kl_expfam(p, q), 0.14384103622589046, 1e-15);
  EXPECT_NEAR(sj::jeffreys_expfam(p, q), 0.27465307216702742, 1e-15);
}

TEST(ExpFam, BhattacharyyaFrozenValues) {
  EXPECT_NEAR(sj::bhattacharyya_alpha(gaussian(0, 1), gaussian(1, 1), sj::SkewParameter(0.5)), 0.125, 1e-15);
  EXPECT_NEAR(sj::bhattacharyya_alpha(gaussian(0, 1), gaussian(1, 1), sj::SkewParameter(0.25)), 0.09375, 1e-15);
  EXPECT_NEAR(sj::bhattacharyya_alpha(poisson(1), poisson(4), sj::SkewParameter(0.5)), 0.5, 1e-15);
  const auto m = sj::make_family("multinomial", 2);
  const auto a = sj::to_natural(m, std::vector<double>{0.9, 0.1});
  const auto b = sj::to_natural(m, std::vector<double>{0.1, 0.9});
  EXPECT_NEAR(sj::bhattacharyya_alpha(a, b, sj::SkewParameter(0.5)), 0.51082562376599068, 1e-14);
}

TEST(ExpFam, BhattacharyyaOrientation) {
  oracle::Sampler s(5);
  for (int i = 0; i < 30; ++i) {
    const double m1 = s.uniform(-2, 2), v1 = s.uniform(0.3, 3);
    const double m2 = s.uniform(-2, 2), v2 = s.uniform(0.3, 3);
    const double l1 = s.uniform(0.5, 20), l2 = s.uniform(0.5, 20);
    for (double a : {0.1, 0.3, 0.8}) {
      const sj::SkewParameter alpha(a);
      EXPECT_NEAR(sj::bhattacharyya_alpha(gaussian(m1, v1), gaussian(m2, v2), alpha),
                  static_cast<double>(oracle::gaussian_bhattacharyya(m1, v1, m2, v2, a)), 1e-12);
      EXPECT_NEAR(sj::bhattacharyya_alpha(poisson(l1), poisson(l2), alpha),
                  static_cast<double>(oracle::poisson_bhattacharyya(l1, l2, a)), 1e-12);
    }
  }
}

TEST(ExpFam, BhattacharyyaIsScaledSkewJensen) {
  const auto p = gaussian(0.3, 1.7);
  const auto q = gaussian(-1.1, 0.6);
  const auto& F = p.family().log_normalizer();
  for (double a : {0.1, 0.5, 0.9}) {
    const sj::SkewParameter alpha(a);
    EXPECT_NEAR(sj::bhattacharyya_alpha(p, q, alpha), a * (1 - a) * sj::skew_jensen(F, q.theta(), p.theta(), alpha),
                1e-13);
    EXPECT_NEAR(sj::sym_bhattacharyya(p, q, alpha),
                a * (1 - a) * sj::sym_skew_jensen(F, p.theta(), q.theta(), alpha), 1e-13);
  }
}

TEST(ExpFam, QuadratureAgreesWithClosedForm) {
  for (double a : {0.1, 0.5, 0.75}) {
    const sj::SkewParameter alpha(a);
    const auto p = gaussian(0.0, 1.0);
    const auto q = gaussian(1.5, 2.5);
    EXPECT_NEAR(sj::quadrature_bhattacharyya(p, q, alpha), sj::bhattacharyya_alpha(p, q, alpha), 1e-7);
    EXPECT_NEAR(sj::quadrature_bhattacharyya(poisson(2.0), poisson(9.0), alpha),
                sj::bhattacharyya_alpha(poisson(2.0), poisson(9.0), alpha), 1e-10);
  }
}

TEST(ExpFam, QuadratureRejectsShortGrids) {
  sj::QuadratureSpec spec;
  spec.lo = -1.0;
  spec.hi = 1.0;
  EXPECT_THROW(sj::quadrature_bhattacharyya(gaussian(0, 1), gaussian(1, 1), sj::SkewParameter(0.5), spec),
               sj::DomainError);
  sj::QuadratureSpec counts;
  counts.max_count = 3;
  EXPECT_THROW(sj::quadrature_bhattacharyya(poisson(5), poisson(6), sj::SkewParameter(0.5), counts),
               sj::DomainError);
  const auto m = sj::make_family("multinomial", 2);
  const auto x = sj::to_natural(m, std::vector<double>{0.4, 0.6});
  EXPECT_THROW(sj::quadrature_bhattacharyya(x, x, sj::SkewParameter(0.5)), sj::ConfigError);
}

TEST(ExpFam, PoissonCentroid) {
  const std::vector<sj::NaturalParam> members = {poisson(1.0), poisson(4.0)};
  const auto c = sj::centroid_expfam(members, {0.5, 0.5}, sj::SkewParameter(0.5));
  EXPECT_TRUE(c.details.converged);
  EXPECT_NEAR(sj::to_source(c.center)[0], 2.25, 1e-9);
}
