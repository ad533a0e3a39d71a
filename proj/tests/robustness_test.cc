#include "ghzst/robustness.hpp"

#include <cmath>
#include <random>

#include "ghzst/errors.hpp"
#include "gtest/gtest.h"

using namespace ghzst;

TEST(robustness, s_and_t_examples) {
  EXPECT_DOUBLE_EQ(s_of(0.0), 2.0);
  EXPECT_DOUBLE_EQ(t_of(0.0), 0.0);
  EXPECT_NEAR(s_of(0.6), 2.5, 1e-15);
  EXPECT_NEAR(t_of(0.6), 5.0 - 2.5, 1e-14);
  EXPECT_THROW(s_of(1.0), ContractError);
  EXPECT_THROW(t_of(-0.1), ContractError);
  EXPECT_THROW(s_of(std::nan("")), ContractError);
}

TEST(robustness, perfect_quality_gives_unit_bound) {
  const auto b = theorem2_bound({1.0});
  EXPECT_NEAR(b.value, 1.0, 1e-15);
  EXPECT_EQ(b.argmin_u, 0.0);
}

TEST(robustness, domain_checks) {
  EXPECT_THROW(theorem2_bound({0.5}), ContractError);
  EXPECT_THROW(theorem2_bound({1.01}), ContractError);
  EXPECT_THROW(theorem2_bound({0.9, 2}), ContractError);
  EXPECT_THROW(u_interval_end(0.2), ContractError);
}

TEST(robustness, bound_matches_brute_force_minimum) {
  for (double q : {0.75, 0.6, 0.95, 0.999}) {
    const double eta = u_interval_end(q);
    double best = std::numeric_limits<double>::infinity();
    const int samples = 1000000;
    for (int k = 0; k <= samples; ++k) best = std::min(best, bound_integrand(q, eta * k / samples));
    const double brute = best / (2.0 * (1.0 + eta) * (1.0 + eta));
    const auto b = theorem2_bound({q});
    EXPECT_NEAR(b.value, brute, 1e-8) << q;
    EXPECT_LE(b.value, brute + 1e-15) << q;
    EXPECT_GE(b.argmin_u, 0.0);
    EXPECT_LE(b.argmin_u, eta);
  }
}

TEST(robustness, bound_increases_with_quality) {
  double prev = -1.0;
  for (int k = 1; k <= 500; ++k) {
    const double v = theorem2_bound({0.5 + 0.001 * k}).value;
    EXPECT_GT(v, prev - 1e-12) << k;
    prev = v;
  }
}

TEST(robustness, spectral_form_identity) {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> uq(0.5 + 1e-9, 1.0), uu(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double q = uq(rng);
    const double u = uu(rng) * u_interval_end(q);
    const double eta = u_interval_end(q);
    EXPECT_NEAR(spectral_form(q, u), bound_integrand(q, u) / (2.0 * (1 + eta) * (1 + eta)), 1e-12);
  }
}

TEST(robustness, average_fidelity_weights) {
  const std::vector<double> f = {1.0, 0.5};
  EXPECT_DOUBLE_EQ(average_fidelity(f), 0.75);
  const std::vector<double> p = {0.25, 0.75};
  EXPECT_DOUBLE_EQ(average_fidelity(f, p), 0.625);
  const std::vector<double> bad = {0.5, 0.6};
  EXPECT_THROW(average_fidelity(f, bad), ContractError);
  EXPECT_THROW(average_fidelity(std::vector<double>{}), ContractError);
}

TEST(robustness, quality_curve_and_csv) {
  const std::vector<double> eps = {0.0, 0.01, 0.02, 0.03};
  const std::vector<double> g = {1.0 - 1e-7, 0.95, 0.7, 0.4};
  const auto curve = quality_curve(eps, g);
  ASSERT_EQ(curve.points.size(), 4u);
  EXPECT_EQ(curve.points[0].q, 1.0);
  ASSERT_TRUE(curve.points[0].bound.has_value());
  EXPECT_NEAR(curve.points[0].bound->value, 1.0, 1e-15);
  EXPECT_FALSE(curve.points[3].bound.has_value());
  ASSERT_TRUE(curve.threshold.has_value());
  EXPECT_GT(*curve.threshold, 0.0);
  EXPECT_LT(*curve.threshold, 0.03);
  const std::string csv = quality_csv(curve);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epsilon,q,bound");
  EXPECT_NE(csv.find("0.03,0.4,nobound"), std::string::npos) << csv;
  EXPECT_THROW(quality_curve(eps, std::vector<double>{1.0}), ShapeError);
}
