#include "cosk/cone.hpp"
#include "cosk/extremal.hpp"
#include "cosk/second_kind.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace {

double beta_of(int n) { return 1.0 + cosk::to_double(cosk::theta_of_n(n)); }

TEST(BigF, MatchesOracleAndIsPermutationInvariant) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-2, 3);
  Eigen::VectorXd x(14);
  for (int i = 0; i < 14; ++i) x(i) = u(rng);
  EXPECT_NEAR(cosk::big_f(x, 5.0 / 3), oracle::cubic_f(x, 5.0 / 3), 1e-12);
  Eigen::VectorXd y = x;
  for (int t = 0; t < 20; ++t) {
    std::shuffle(y.data(), y.data() + y.size(), rng);
    EXPECT_EQ(cosk::big_f(y, 5.0 / 3), cosk::big_f(Eigen::VectorXd(y), 5.0 / 3));
    EXPECT_NEAR(cosk::big_f(y, 5.0 / 3), cosk::big_f(x, 5.0 / 3), 1e-12);
  }
}

TEST(BigF, GradientMatchesFiniteDifferences) {
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(9, -1.5, 2.5);
  const Eigen::VectorXd g = cosk::big_f_gradient(x, 1.5);
  for (int i = 0; i < 9; ++i) {
    Eigen::VectorXd p = x, m = x;
    p(i) += 1e-6;
    m(i) -= 1e-6;
    EXPECT_NEAR(g(i), (cosk::big_f(p, 1.5) - cosk::big_f(m, 1.5)) / 2e-6, 1e-6);
  }
}

TEST(BigF, ZeroAtRoundProfile) {
  for (int big_n : {9, 14, 35, 54}) EXPECT_NEAR(cosk::big_f(cosk::round_profile(big_n), 1.3), 0.0, 1e-12);
}

TEST(FeasibleSet, ContainsAndValidation) {
  const cosk::FeasibleSet set(9, 1.5);
  EXPECT_DOUBLE_EQ(set.pair_bound(), -1.0);
  EXPECT_TRUE(set.contains(cosk::round_profile(9)));
  Eigen::VectorXd bad = cosk::round_profile(9);
  bad(0) = -2.5;
  bad(1) = 4.5;
  EXPECT_FALSE(set.contains(bad));
  bad(0) = -1.5;
  bad(1) = 0.25;
  bad(2) = 4.25;
  EXPECT_FALSE(set.contains(bad));
  EXPECT_NEAR(set.pair_slack(bad), -0.25, 1e-15);
  EXPECT_THROW(cosk::FeasibleSet(2, 1.5), std::invalid_argument);
  EXPECT_THROW(cosk::FeasibleSet(9, 0.9), std::invalid_argument);
  EXPECT_NO_THROW(cosk::FeasibleSet(9, 1.0));
}

TEST(BoundaryMinimizer, ClosedFormValues) {
  const Eigen::VectorXd x4 = cosk::boundary_minimizer(9, 1.5);
  EXPECT_NEAR(x4(0), -17.0 / 7, 1e-14);
  for (int i = 1; i < 9; ++i) EXPECT_NEAR(x4(i), 10.0 / 7, 1e-14);
  EXPECT_NEAR(cosk::big_f(x4, 1.5), 0.0, 1e-12);

  const Eigen::VectorXd x8 = cosk::boundary_minimizer(35, 21.0 / 20);
  EXPECT_NEAR(x8(0), -38.4 / 33, 1e-14);
  EXPECT_NEAR(x8.sum(), 35.0, 1e-12);
  EXPECT_NEAR(x8(0) + x8(1), -0.1, 1e-14);
  EXPECT_NEAR(cosk::big_f(x8, 21.0 / 20), 0.0, 1e-12);
}

TEST(Interior, QmMatchesLinearSystemOracle) {
  const int big_n = 35;
  const double beta = 21.0 / 20;
  const double coef = (3 - 2 * beta) / 3;
  for (int m = 0; 2 * m < big_n; ++m) {
    Eigen::Matrix2d a;
    a << m, big_n - m, 1, 1;
    const Eigen::Vector2d rs = a.fullPivLu().solve(Eigen::Vector2d(big_n, 2 * coef));
    const cosk::CriticalPoint q = cosk::interior_critical(big_n, beta, m);
    if (m > 0) {
      EXPECT_NEAR(q.x(0), rs(0), 1e-12);
    }
    EXPECT_NEAR(q.x(big_n - 1), m == 0 ? 1.0 : rs(1), 1e-12);
    EXPECT_NEAR(q.x.sum(), big_n, 1e-11);
    EXPECT_NEAR(q.value, q.closed_form, 1e-9 * std::max(1.0, std::abs(q.value)));
    if (m == 0) {
      EXPECT_NEAR(q.value, 0.0, 1e-12);
    } else {
      EXPECT_GT(q.value, 0.0);
    }
  }
  const cosk::CriticalPoint q1 = cosk::interior_critical(big_n, beta, 1);
  EXPECT_NEAR(q1.x(0), 0.3 - 24.5 / 33, 1e-14);
  EXPECT_NEAR(q1.x(1), 0.3 + 24.5 / 33, 1e-14);
}

TEST(Interior, InfeasibleAndOutOfRange) {
  EXPECT_THROW(cosk::interior_critical(54, beta_of(10), 27), cosk::InfeasibleFamily);
  EXPECT_THROW(cosk::interior_critical(35, 21.0 / 20, 18), std::out_of_range);
  EXPECT_THROW(cosk::interior_critical(35, 21.0 / 20, -1), std::out_of_range);
}

TEST(Boundary, ProfileQuadraticAgreesWithDirectEvaluation) {
  for (int n : {4, 5, 8, 9, 10, 11, 12}) {
    const int big_n = cosk::traceless_dim(n);
    const double beta = beta_of(n);
    const auto [lo, hi] = cosk::boundary_a_interval(big_n, beta);
    for (int i = 0; i <= 50; ++i) {
      const double a = i == 50 ? hi : lo + (hi - lo) * i / 50.0;
      const cosk::CriticalPoint p = cosk::boundary_critical(big_n, beta, big_n - 2, 0, a);
      EXPECT_NEAR(cosk::boundary_profile(big_n, beta, a), oracle::cubic_f(p.x, beta), 1e-9);
      EXPECT_GE(big_n - 2 + 2 * beta - (big_n - 2) * a, -1e-12);
    }
    EXPECT_NEAR(cosk::boundary_profile(big_n, beta, hi), 0.0, 1e-10);
    EXPECT_GT(cosk::boundary_profile(big_n, beta, lo), 0.0);
  }
}

TEST(Boundary, EndpointIsTheBoundaryMinimizer) {
  const int big_n = 35;
  const double beta = 21.0 / 20;
  const double hi = cosk::boundary_a_interval(big_n, beta).second;
  const cosk::CriticalPoint p = cosk::boundary_critical(big_n, beta, big_n - 2, 0, hi);
  Eigen::VectorXd sorted = p.x;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  EXPECT_LT((sorted - cosk::boundary_minimizer(big_n, beta)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(p.value, 0.0, 1e-10);
}

TEST(Boundary, OrderingChainOnRandomFeasibleSamples) {
  std::mt19937 rng(11);
  for (int n : {4, 5, 8, 9, 10, 11, 12}) {
    const int big_n = cosk::traceless_dim(n);
    const double beta = beta_of(n);
    const auto [lo, hi] = cosk::boundary_a_interval(big_n, beta);
    std::uniform_real_distribution<double> ua(lo, hi);
    std::uniform_int_distribution<int> uk(1, big_n - 2);
    for (int t = 0; t < 200; ++t) {
      const double a = std::min(ua(rng), hi - 1e-6 * (hi - lo));
      const int k = uk(rng);
      const double base = cosk::boundary_value(big_n, beta, k, 0, a);
      const double edge = cosk::boundary_value(big_n, beta, big_n - 2, 0, a);
      EXPECT_NEAR(base, cosk::boundary_family_value(big_n, beta, k, a), 1e-9 * std::max(1.0, std::abs(base)));
      if (k < big_n - 2) EXPECT_GT(base, edge);
      EXPECT_GE(edge, 0.0);
      if (k >= 3) {
        const int l = std::uniform_int_distribution<int>(1, (k - 1) / 2)(rng);
        EXPECT_GT(cosk::boundary_value(big_n, beta, k, l, a), base);
      }
    }
  }
}

TEST(Boundary, ErrorPaths) {
  const int big_n = 35;
  const double beta = 21.0 / 20;
  EXPECT_THROW(cosk::boundary_critical(big_n, beta, 4, 2, 1.0), cosk::InfeasibleFamily);
  EXPECT_THROW(cosk::boundary_critical(big_n, beta, 0, 0, 1.0), std::out_of_range);
  EXPECT_THROW(cosk::boundary_critical(big_n, beta, big_n - 1, 0, 1.0), std::out_of_range);
  EXPECT_THROW(cosk::boundary_critical(big_n, beta, 5, 3, 1.0), std::out_of_range);
  EXPECT_THROW(cosk::boundary_critical(big_n, beta, 5, 0, 2.0), std::out_of_range);
  EXPECT_THROW(cosk::boundary_profile(big_n, beta, -0.5), std::out_of_range);
}

TEST(Descent, StationaryStartStaysPut) {
  const cosk::DescentRun run = cosk::descend_from(cosk::round_profile(9), 1.5);
  EXPECT_NEAR(run.value, 0.0, 1e-12);
  EXPECT_LT((run.x - cosk::round_profile(9)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Descent, MultistartFindsZeroAndIsDeterministic) {
  const cosk::DescentResult a = cosk::multistart_descent(9, 1.5, 42, 50);
  const cosk::DescentResult b = cosk::multistart_descent(9, 1.5, 42, 50);
  EXPECT_GE(a.min_value, -1e-6);
  EXPECT_LE(a.min_value, 1e-6);
  EXPECT_EQ(a.min_value, b.min_value);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.runs.size(), 50u);
  EXPECT_TRUE(cosk::FeasibleSet(9, 1.5).contains(a.argmin, 1e-8, 1e-9));
  EXPECT_THROW(cosk::multistart_descent(9, 1.5, 0, 0), std::invalid_argument);
}

TEST(Descent, DegenerateBetaOne) {
  const cosk::DescentResult r = cosk::multistart_descent(14, 1.0, 3, 30);
  EXPECT_GE(r.min_value, -1e-6);
  EXPECT_LE(r.min_value, 1e-6);
}

TEST(Descent, RepairReturnsFeasiblePoint) {
  Eigen::VectorXd x = cosk::round_profile(9);
  x(0) = -3;
  x(1) = -2;
  x(2) += 7;
  const Eigen::VectorXd y = cosk::repair_feasible(x, 1.5);
  EXPECT_TRUE(cosk::FeasibleSet(9, 1.5).contains(y, 1e-10, 1e-10));
}

TEST(Enumerate, LowDimensionalExamples) {
  cosk::EnumerateOptions opt;
  opt.restarts = 40;
  const cosk::ExtremalReport r4 = cosk::enumerate_minimum(9, 1.5, opt);
  EXPECT_NEAR(r4.global_min, 0.0, 1e-8);
  ASSERT_EQ(r4.minimizers.size(), 2u);
  EXPECT_TRUE(r4.profiles_match);
  EXPECT_TRUE(r4.certified);
  EXPECT_NEAR(r4.minimizers[1](0), -17.0 / 7, 1e-6);
  EXPECT_LE(r4.agreement, 1e-6);
  EXPECT_LE(r4.closed_form_defect, 1e-9);

  const cosk::ExtremalReport r5 = cosk::enumerate_minimum(14, 5.0 / 3, opt);
  EXPECT_NEAR(r5.global_min, 0.0, 1e-8);
  EXPECT_TRUE(r5.profiles_match);
}

TEST(Enumerate, TableHasEveryFamilyAndFeasibilityFlags) {
  cosk::EnumerateOptions opt;
  opt.run_oracle = false;
  opt.grid = 101;
  const int big_n = 35;
  const cosk::ExtremalReport r = cosk::enumerate_minimum(big_n, 21.0 / 20, opt);
  std::size_t boundary_families = 0;
  for (int k = 1; k <= big_n - 2; ++k) boundary_families += static_cast<std::size_t>((k + 1) / 2);
  EXPECT_EQ(r.critical_table.size(), 18u + boundary_families);
  bool some_infeasible = false;
  for (const auto& e : r.critical_table) {
    if (e.feasible) EXPECT_GE(e.value, -1e-8);
    some_infeasible |= !e.feasible;
  }
  EXPECT_TRUE(some_infeasible);
  EXPECT_TRUE(std::isnan(r.oracle_min));
}

TEST(Enumerate, ExploratoryBetaIsNotCertified) {
  cosk::EnumerateOptions opt;
  opt.run_oracle = false;
  opt.grid = 51;
  EXPECT_FALSE(cosk::enumerate_minimum(35, 1.2, opt).certified);
  EXPECT_THROW(cosk::enumerate_minimum(35, 0.9, opt), std::invalid_argument);
  EXPECT_NO_THROW(cosk::enumerate_minimum(14, 1.0, opt));
}

}  // namespace
