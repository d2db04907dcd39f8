#include "cosk/jacobi.hpp"
#include "cosk/models.hpp"
#include "cosk/second_kind.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using cosk::CurvatureTensord;

Eigen::MatrixXd random_symmetric(int size, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m(i, j) = g(rng);
  return 0.5 * (m + m.transpose());
}

TEST(Jacobi, AgreesWithEigenSolver) {
  for (int size = 1; size <= 40; size += 3) {
    const Eigen::MatrixXd m = random_symmetric(size, 100 + size);
    const auto pairs = cosk::jacobi_eigen<double>(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    EXPECT_LT((pairs.values - es.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, m.norm()));
    const Eigen::MatrixXd v = pairs.vectors;
    EXPECT_LT((v.transpose() * v - Eigen::MatrixXd::Identity(size, size)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((m * v - v * pairs.values.asDiagonal()).cwiseAbs().maxCoeff(), 1e-11 * std::max(1.0, m.norm()));
    for (int i = 1; i < size; ++i) EXPECT_LE(pairs.values(i - 1), pairs.values(i));
  }
}

TEST(Jacobi, DiagonalAndDegenerateInputs) {
  Eigen::MatrixXd d = Eigen::Vector3d(3, -1, 2).asDiagonal();
  auto pairs = cosk::jacobi_eigen<double>(d);
  EXPECT_EQ(pairs.values, Eigen::Vector3d(-1, 2, 3));
  EXPECT_EQ(pairs.sweeps, 0);

  const auto id = cosk::jacobi_eigen<double>(Eigen::MatrixXd::Identity(4, 4));
  EXPECT_EQ(id.vectors.cwiseAbs().colwise().sum(), Eigen::RowVectorXd::Ones(4));
  EXPECT_EQ(id.vectors.cwiseAbs().rowwise().sum(), Eigen::VectorXd::Ones(4));

  const auto zero = cosk::jacobi_eigen<double>(Eigen::MatrixXd::Zero(3, 3));
  EXPECT_EQ(zero.values, Eigen::Vector3d::Zero());
}

TEST(Jacobi, SweepCapRaisesConvergenceError) {
  cosk::JacobiOptions opt;
  opt.max_sweeps = 1;
  EXPECT_THROW(cosk::jacobi_eigen<double>(random_symmetric(12, 3), opt), cosk::ConvergenceError);
}

TEST(Jacobi, Deterministic) {
  const Eigen::MatrixXd m = random_symmetric(15, 4);
  const auto a = cosk::jacobi_eigen<double>(m);
  const auto b = cosk::jacobi_eigen<double>(m);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(S20Basis, OrthonormalTraceFreeSymmetric) {
  for (int n = 2; n <= 8; ++n) {
    const auto b = cosk::s20_basis<double>(n);
    ASSERT_EQ(b.size(), cosk::traceless_dim(n));
    for (int a = 0; a < b.size(); ++a) {
      EXPECT_NEAR(b.elements[a].trace(), 0.0, 1e-15);
      EXPECT_EQ(b.elements[a], b.elements[a].transpose());
      for (int c = 0; c < b.size(); ++c) {
        EXPECT_NEAR(cosk::inner(b.elements[a], b.elements[c]), a == c ? 1.0 : 0.0, 1e-14);
      }
    }
  }
  EXPECT_EQ(cosk::traceless_dim(4), 9);
  EXPECT_EQ(cosk::traceless_dim(5), 14);
  EXPECT_EQ(cosk::traceless_dim(8), 35);
  EXPECT_THROW(cosk::s20_basis<double>(1), std::invalid_argument);
}

TEST(SecondKind, SphereAndFlatSpectra) {
  for (int n = 2; n <= 10; ++n) {
    const auto s = cosk::second_kind_spectrum(cosk::sphere_tensor<double>(n));
    EXPECT_EQ(s.size(), cosk::traceless_dim(n));
    EXPECT_LT((s.values.array() - 1.0).abs().maxCoeff(), 1e-13) << n;
    EXPECT_NEAR(s.lambda_bar, 1.0, 1e-13);
    const auto z = cosk::second_kind_spectrum(CurvatureTensord::zero(n));
    EXPECT_EQ(z.values.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(SecondKind, FubiniStudyMatchesOracle) {
  const CurvatureTensord r = cosk::fubini_study(4);
  const auto s = cosk::second_kind_spectrum(r);
  const Eigen::VectorXd ref = oracle::second_kind_eigenvalues(oracle::to_table(r), oracle::random_s20_basis(4, 1));
  EXPECT_LT((s.values - ref).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GT(s.values.maxCoeff() - s.values.minCoeff(), 1.0);
}

TEST(SecondKind, BasisIndependence) {
  for (int n : {3, 4, 6}) {
    const CurvatureTensord r = cosk::random_einstein<double>(n, 7 + n, 1.0, 2.0 * n);
    const auto canonical = cosk::second_kind_spectrum(r);
    const auto other = oracle::random_s20_basis(n, 17 + n);
    cosk::S20Basis<double> basis{n, other};
    const auto rotated = cosk::spectrum(cosk::build_second_kind(r, basis));
    EXPECT_LT((canonical.values - rotated.values).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::VectorXd ref = oracle::second_kind_eigenvalues(oracle::to_table(r), other);
    EXPECT_LT((canonical.values - ref).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SecondKind, NonEinsteinTensorAlsoMatchesOracle) {
  // R̊ is defined for any curvature tensor; the projection matters off Einstein.
  const int n = 5;
  Eigen::MatrixXd h = random_symmetric(n, 8);
  const CurvatureTensord r = cosk::random_weyl<double>(n, 2) + cosk::kulkarni_nomizu(h, cosk::metric<double>(n));
  const Eigen::VectorXd ref = oracle::second_kind_eigenvalues(oracle::to_table(r), oracle::random_s20_basis(n, 3));
  EXPECT_LT((cosk::second_kind_spectrum(r).values - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SecondKind, RotationInvarianceAndScaleEquivariance) {
  const int n = 6;
  const CurvatureTensord r = cosk::random_einstein<double>(n, 5, 0.5, 12.0);
  const auto base = cosk::second_kind_spectrum(r);
  const auto rot = cosk::second_kind_spectrum(cosk::conjugate(r, cosk::random_rotation(n, 9)));
  EXPECT_LT((base.values - rot.values).cwiseAbs().maxCoeff(), 1e-12);
  for (double c : {2.5, 0.1}) {
    const auto scaled = cosk::second_kind_spectrum(c * r);
    EXPECT_LT((scaled.values - c * base.values).cwiseAbs().maxCoeff(), 1e-12);
  }
  const auto neg = cosk::second_kind_spectrum(-1.0 * r);
  EXPECT_LT((neg.values - (-base.values).reverse()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SecondKind, EigenMatricesAreOrthonormalEigenvectors) {
  const CurvatureTensord r = cosk::random_einstein<double>(5, 6, 1.0, 20.0);
  const auto op = cosk::build_second_kind(r);
  const auto spec = cosk::spectrum(op);
  const auto mats = cosk::eigen_matrices(op, spec);
  const int n = 5;
  for (int j = 0; j < spec.size(); ++j) {
    EXPECT_NEAR(mats[j].trace(), 0.0, 1e-13);
    EXPECT_NEAR(cosk::inner(mats[j], mats[j]), 1.0, 1e-12);
    // π R̄(Sʲ) = λⱼ Sʲ
    Eigen::MatrixXd img = cosk::apply_rbar(r, mats[j]);
    img -= (img.trace() / n) * Eigen::MatrixXd::Identity(n, n);
    EXPECT_LT((img - spec.values(j) * mats[j]).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(SecondKind, EinsteinNormIdentitiesAgainstLoopOracle) {
  for (int n : {4, 5, 7}) {
    const int big_n = cosk::traceless_dim(n);
    const CurvatureTensord r = cosk::random_einstein<double>(n, 70 + n, 0.9, 1.5 * n * (n - 1));
    const oracle::Table t = oracle::to_table(r);
    const Eigen::VectorXd lam = oracle::second_kind_eigenvalues(t, oracle::random_s20_basis(n, 5));
    const double lb = lam.mean();
    const double r2 = oracle::norm_sq(t);
    const double w2 = oracle::norm_sq(oracle::to_table(cosk::weyl_decompose(r).weyl));
    EXPECT_NEAR(lb, 1.5, 1e-12);
    EXPECT_NEAR(lam.squaredNorm(), 0.75 * r2 - double(n - 1) * (n - 1) * lb * lb, 1e-9 * r2);
    EXPECT_NEAR(w2, 4.0 / 3.0 * lam.squaredNorm() - 4.0 * big_n / 3.0 * lb * lb, 1e-9 * r2);
  }
}

TEST(SAction, MatchesLoopOracleAndIdentityActsByFour) {
  const int n = 4;
  const CurvatureTensord w = cosk::random_weyl<double>(n, 12);
  const auto basis = cosk::s20_basis<double>(n);
  const auto norms = cosk::sw_norms(basis.elements, w);
  for (int j = 0; j < basis.size(); ++j) {
    EXPECT_NEAR(norms[j], oracle::sw_norm_sq(basis.elements[j], oracle::to_table(w)), 1e-11);
  }
  const auto id = cosk::s_action<double>(cosk::metric<double>(n), w.table());
  EXPECT_LT((id.matrix() - 4.0 * w.table().matrix()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(cosk::sw_norms(basis.elements, cosk::sphere_tensor<double>(n)), std::invalid_argument);
}

TEST(SAction, NormSumIdentityOnRandomWeyl) {
  for (int n = 3; n <= 12; ++n) {
    const CurvatureTensord w = cosk::random_weyl<double>(n, 300 + n);
    const double w2 = oracle::norm_sq(oracle::to_table(w));
    double sum = 0;
    for (double v : cosk::sw_norms(cosk::s20_basis<double>(n).elements, w)) sum += v;
    EXPECT_NEAR(sum, 2.0 * (n * n + n - 8) / n * w2, 1e-9 * std::max(1.0, w2)) << n;
  }
}

TEST(FirstKind, SphereIsIdentityOnTwoForms) {
  const auto m = cosk::build_first_kind(cosk::sphere_tensor<double>(5));
  EXPECT_LT((m - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-14);
}

}  // namespace
