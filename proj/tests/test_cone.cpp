#include "cosk/cone.hpp"
#include "cosk/extremal.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace {

using cosk::Rational;

TEST(Theta, LowDimensionalValues) {
  EXPECT_EQ(cosk::theta_of_n(4), Rational(1, 2));
  EXPECT_EQ(cosk::theta_of_n(5), Rational(2, 3));
  EXPECT_EQ(cosk::theta_of_n(8), Rational(1, 20));
}

TEST(Theta, GeneralFormulaFromDefinition) {
  for (int n = 8; n <= 64; ++n) {
    const int big_n = (n - 1) * (n + 2) / 2;
    EXPECT_EQ(cosk::theta_of_n(n), Rational(2 * big_n - 9 * n + 6, big_n + 6 * n - 3)) << n;
  }
  EXPECT_EQ(cosk::theta_of_n(9), Rational(13, 95));
}

TEST(Theta, UndefinedDimensions) {
  for (int n : {1, 2, 3, 6, 7}) {
    EXPECT_FALSE(cosk::theta_defined(n));
    EXPECT_THROW(cosk::theta_of_n(n), cosk::NotApplicable);
  }
  for (int n : {4, 5, 8, 20}) EXPECT_TRUE(cosk::theta_defined(n));
}

TEST(Theta, WindowAndMonotonicity) {
  for (int n = 8; n <= 64; ++n) {
    const Rational t = cosk::theta_of_n(n);
    EXPECT_GT(t, Rational(0));
    EXPECT_LT(t, Rational(2 * (n - 1), n + 2));
    EXPECT_TRUE(cosk::theta_window_holds(n));
    if (n > 8) EXPECT_GT(t, cosk::theta_of_n(n - 1)) << n;
  }
}

TEST(PartialSum, IntegerAndFractionalAlpha) {
  const std::vector<double> v{-3, -1, 2, 5};
  EXPECT_DOUBLE_EQ(cosk::partial_sum(v, 1.0), -3.0);
  EXPECT_DOUBLE_EQ(cosk::partial_sum(v, 2.0), -4.0);
  EXPECT_DOUBLE_EQ(cosk::partial_sum(v, 2.5), -3.0);
  EXPECT_THROW(cosk::partial_sum(v, 0.5), std::invalid_argument);
  EXPECT_THROW(cosk::partial_sum(v, 4.0), std::invalid_argument);
}

TEST(ConeParams, Validation) {
  EXPECT_NO_THROW(cosk::ConeParams(1.0, 0.0));
  EXPECT_THROW(cosk::ConeParams(0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(cosk::ConeParams(2.0, -1.0), std::invalid_argument);
  const auto p = cosk::ConeParams::for_dimension(8);
  EXPECT_DOUBLE_EQ(p.alpha, 2.0);
  EXPECT_DOUBLE_EQ(p.theta, 0.05);
  EXPECT_THROW(cosk::ConeParams::for_dimension(6), cosk::NotApplicable);
}

TEST(ConeMembership, SphereIsStrict) {
  const std::vector<double> ones(9, 1.0);
  const auto v = cosk::cone_membership(ones, cosk::ConeParams(2.0, 0.5));
  EXPECT_EQ(v.status, cosk::ConeStatus::strict);
  EXPECT_DOUBLE_EQ(v.margin, 1.5);
}

TEST(ConeMembership, BoundaryProfileSitsOnTheBoundary) {
  for (int n : {4, 5, 8, 9, 10}) {
    const int big_n = (n - 1) * (n + 2) / 2;
    const double theta = cosk::to_double(cosk::theta_of_n(n));
    const Eigen::VectorXd x = cosk::boundary_minimizer(big_n, 1.0 + theta);
    const std::vector<double> v(x.data(), x.data() + x.size());
    const auto verdict = cosk::cone_membership(v, cosk::ConeParams(2.0, theta));
    EXPECT_EQ(verdict.status, cosk::ConeStatus::boundary) << n;
    EXPECT_NEAR(verdict.margin, 0.0, 1e-12);
  }
}

TEST(ConeMembership, ViolationAndScaleInvariance) {
  const std::vector<double> v{-4, -2, 1, 1, 1, 2, 2, 2, 6};  // mean 1
  const auto bad = cosk::cone_membership(v, cosk::ConeParams(2.0, 0.5));
  EXPECT_EQ(bad.status, cosk::ConeStatus::violated);
  EXPECT_DOUBLE_EQ(bad.margin, -2.5);
  std::vector<double> scaled;
  for (double x : v) scaled.push_back(3.0 * x);
  EXPECT_EQ(cosk::cone_membership(scaled, cosk::ConeParams(2.0, 0.5)).status, cosk::ConeStatus::violated);
  EXPECT_EQ(cosk::to_string(cosk::ConeStatus::boundary), "boundary");
}

}  // namespace
