#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "skewjensen/error.hpp"
#include "skewjensen/generators.hpp"

namespace sj = skewjensen;

namespace {

const std::vector<double> kPositive = {1e-6, 0.01, 0.3, 1.0, 2.5, 40.0};
const std::vector<double> kReal = {-7.0, -1.0, -0.2, 0.0, 0.4, 3.0};

const std::vector<double>& sample_points(const sj::ConvexGenerator& f) {
  return f.domain_lo() == 0.0 ? kPositive : kReal;
}

}  // namespace

TEST(Generators, NamesRoundTrip) {
  for (const auto& name : sj::generator_names()) {
    EXPECT_EQ(sj::make_generator(name).name(), name);
  }
  EXPECT_THROW(sj::make_generator("tsallis"), sj::ConfigError);
}

TEST(Generators, GradInvInvertsGrad) {
  for (const auto& name : sj::generator_names()) {
    const auto f = sj::make_generator(name);
    for (double x : sample_points(f)) {
      EXPECT_NEAR(f.grad_inv(f.grad(x)), x, 1e-12 * std::max(1.0, std::abs(x))) << name << " x=" << x;
    }
  }
}

TEST(Generators, DerivativesMatchFiniteDifferences) {
  for (const auto& name : sj::generator_names()) {
    const auto f = sj::make_generator(name);
    for (double x : sample_points(f)) {
      if (std::abs(x) < 0.1) continue;
      const double h = 1e-5 * std::abs(x);
      EXPECT_NEAR(f.grad(x), (f.eval(x + h) - f.eval(x - h)) / (2 * h), 1e-6 * std::max(1.0, std::abs(f.grad(x))))
          << name;
      EXPECT_NEAR(f.hessian(x), (f.grad(x + h) - f.grad(x - h)) / (2 * h),
                  1e-6 * std::max(1.0, std::abs(f.hessian(x))))
          << name;
      EXPECT_NEAR(f.third_derivative(x), (f.hessian(x + h) - f.hessian(x - h)) / (2 * h),
                  1e-5 * std::max(1.0, std::abs(f.third_derivative(x))))
          << name;
    }
  }
}

TEST(Generators, StrictlyConvex) {
  for (const auto& name : sj::generator_names()) {
    const auto f = sj::make_generator(name);
    for (double x : sample_points(f)) EXPECT_GT(f.hessian(x), 0.0) << name;
  }
}

TEST(Generators, ShannonValues) {
  const auto f = sj::make_generator("shannon");
  EXPECT_DOUBLE_EQ(f.eval(1.0), -1.0);
  EXPECT_DOUBLE_EQ(f.eval(0.0), 0.0);
  EXPECT_DOUBLE_EQ(f.grad(std::exp(2.0)), 2.0);
  EXPECT_THROW(f.grad(0.0), sj::DomainError);
  EXPECT_THROW(f.eval(-1.0), sj::DomainError);
}

TEST(Generators, BurgDomain) {
  const auto f = sj::make_generator("burg");
  EXPECT_FALSE(f.in_domain(0.0));
  EXPECT_THROW(f.eval(0.0), sj::DomainError);
  EXPECT_THROW(f.grad_inv(1.0), sj::DomainError);
  EXPECT_DOUBLE_EQ(f.grad_inv(-0.5), 2.0);
}

TEST(Generators, JensenGapIsNonNegativeAndVanishesOnDiagonal) {
  for (const auto& name : sj::generator_names()) {
    const auto f = sj::make_generator(name);
    const auto& xs = sample_points(f);
    for (double x : xs) {
      for (double y : xs) {
        for (double lam : {0.0, 0.1, 0.5, 0.9, 1.0}) {
          const double g = sj::jensen_gap(f, x, y, lam);
          EXPECT_GE(g, -1e-12 * std::max(1.0, std::abs(f.eval(x)) + std::abs(f.eval(y)))) << name;
        }
      }
      EXPECT_EQ(sj::jensen_gap(f, x, x, 0.3), 0.0);
    }
  }
}

TEST(Generators, ShannonAndXlogxShareGaps) {
  const auto a = sj::make_generator("shannon");
  const auto b = sj::make_generator("xlogx");
  for (double x : kPositive) {
    for (double y : kPositive) {
      EXPECT_NEAR(sj::jensen_gap(a, x, y, 0.3), sj::jensen_gap(b, x, y, 0.3), 1e-12 * std::max(1.0, x + y));
    }
  }
}

TEST(Generators, SeparableSumsCoordinates) {
  const auto g = sj::make_separable("burg");
  const std::vector<double> x = {0.5, 2.0, 4.0};
  EXPECT_NEAR(g->eval(x), -std::log(0.5) - std::log(2.0) - std::log(4.0), 1e-15);
  const auto gx = g->grad(x);
  ASSERT_EQ(gx.size(), 3u);
  EXPECT_DOUBLE_EQ(gx[1], -0.5);
  const auto back = g->grad_inv(gx);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-15);
  ASSERT_TRUE(g->separable_base().has_value());
  EXPECT_EQ(g->separable_base()->kind(), sj::ConvexGenerator::Kind::burg);
}

TEST(Generators, SeparableChecksDimension) {
  const sj::SeparableGenerator g(sj::make_generator("quadratic"), 2);
  EXPECT_THROW(g.eval(std::vector<double>{1.0, 2.0, 3.0}), sj::DimensionError);
  EXPECT_FALSE(g.in_domain(std::vector<double>{1.0}));
}

TEST(Generators, VectorJensenGapMatchesScalarSum) {
  const auto f = sj::make_generator("shannon");
  const auto g = sj::make_separable("shannon");
  const std::vector<double> x = {0.2, 0.7, 1.5};
  const std::vector<double> y = {0.9, 0.1, 1.5};
  double expect = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) expect += sj::jensen_gap(f, x[i], y[i], 0.25);
  EXPECT_NEAR(g->jensen_gap(x, y, 0.25), expect, 1e-15);
}
