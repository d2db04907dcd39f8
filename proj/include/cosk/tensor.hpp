// Algebraic curvature tensors at a point.
//
// A rank-4 tensor on an n-dimensional inner product space is stored as an
// n^2 x n^2 Eigen matrix indexed by the index pairs (i*n + j, k*n + l).  In
// this layout pair symmetry R_ijkl = R_klij is plain matrix symmetry and the
// full-contraction norm is the squared Frobenius norm.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace cosk {

template <typename Scalar>
using SymMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using SymMatrixd = SymMatrix<double>;

/// Raised when a table fails one of the algebraic curvature symmetries.
class SymmetryError : public std::runtime_error {
 public:
  SymmetryError(std::string invariant, double defect)
      : std::runtime_error(invariant + " defect " + std::to_string(defect)),
        invariant_(std::move(invariant)),
        defect_(defect) {}

  const std::string& invariant() const { return invariant_; }
  double defect() const { return defect_; }

 private:
  std::string invariant_;
  double defect_;
};

inline constexpr double kDefaultTol = 1e-10;

/// Raw dense rank-4 table with no symmetry guarantees.
template <typename Scalar>
class Tensor4 {
 public:
  using Storage = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(Storage::Zero(n * n, n * n)) {
    if (n < 1) throw std::invalid_argument("tensor dimension must be positive");
  }
  Tensor4(int n, Storage data) : n_(n), data_(std::move(data)) {
    if (data_.rows() != n * n || data_.cols() != n * n) {
      throw std::invalid_argument("tensor storage must be n^2 x n^2");
    }
  }

  int dim() const { return n_; }

  Scalar& operator()(int i, int j, int k, int l) { return data_(i * n_ + j, k * n_ + l); }
  Scalar operator()(int i, int j, int k, int l) const { return data_(i * n_ + j, k * n_ + l); }

  const Storage& matrix() const { return data_; }
  Storage& matrix() { return data_; }

  Tensor4& operator+=(const Tensor4& o) {
    check_same(o);
    data_ += o.data_;
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    check_same(o);
    data_ -= o.data_;
    return *this;
  }
  Tensor4& operator*=(Scalar c) {
    data_ *= c;
    return *this;
  }

  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(Scalar c, Tensor4 a) { return a *= c; }

 private:
  void check_same(const Tensor4& o) const {
    if (o.n_ != n_) throw std::invalid_argument("tensor dimension mismatch");
  }

  int n_ = 0;
  Storage data_;
};

using Tensor4d = Tensor4<double>;

/// Maximum absolute defect of each algebraic curvature symmetry.
struct SymmetryDefect {
  double antisymmetry = 0;  // max |T_ijkl + T_jikl|, |T_ijkl + T_ijlk|
  double pair_symmetry = 0; // max |T_ijkl - T_klij|
  double bianchi = 0;       // max |T_ijkl + T_iklj + T_iljk|

  double max() const { return std::max({antisymmetry, pair_symmetry, bianchi}); }
};

template <typename Scalar>
SymmetryDefect symmetry_check(const Tensor4<Scalar>& t) {
  using std::abs;
  const int n = t.dim();
  SymmetryDefect d;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Scalar v = t(i, j, k, l);
          d.antisymmetry = std::max(d.antisymmetry, static_cast<double>(abs(v + t(j, i, k, l))));
          d.antisymmetry = std::max(d.antisymmetry, static_cast<double>(abs(v + t(i, j, l, k))));
          d.pair_symmetry = std::max(d.pair_symmetry, static_cast<double>(abs(v - t(k, l, i, j))));
          d.bianchi = std::max(d.bianchi, static_cast<double>(abs(v + t(i, k, l, j) + t(i, l, j, k))));
        }
  return d;
}

/// Full contraction sum_{ijkl} T_ijkl^2.
template <typename Scalar>
Scalar tensor_norm_sq(const Tensor4<Scalar>& t) {
  return t.matrix().squaredNorm();
}

/// Antisymmetrizes each index pair and symmetrizes under pair exchange.
template <typename Scalar>
Tensor4<Scalar> symmetrize_pairs(const Tensor4<Scalar>& t) {
  const int n = t.dim();
  Tensor4<Scalar> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Scalar a = (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k)) / Scalar(4);
          const Scalar b = (t(k, l, i, j) - t(l, k, i, j) - t(k, l, j, i) + t(l, k, j, i)) / Scalar(4);
          out(i, j, k, l) = (a + b) / Scalar(2);
        }
  return out;
}

/// An algebraic curvature tensor: antisymmetric in each pair, symmetric under
/// pair exchange, and satisfying the first Bianchi identity.
template <typename Scalar>
class CurvatureTensor {
 public:
  CurvatureTensor() = default;

  static CurvatureTensor zero(int n) { return CurvatureTensor(Tensor4<Scalar>(n)); }

  /// Validates `t` against every invariant to `tol`, then removes the
  /// residual pair-symmetry noise exactly.  Throws SymmetryError.
  static CurvatureTensor from_table(const Tensor4<Scalar>& t, double tol = kDefaultTol) {
    const SymmetryDefect d = symmetry_check(t);
    if (d.antisymmetry > tol) throw SymmetryError("antisymmetry", d.antisymmetry);
    if (d.pair_symmetry > tol) throw SymmetryError("pair symmetry", d.pair_symmetry);
    if (d.bianchi > tol) throw SymmetryError("bianchi", d.bianchi);
    return CurvatureTensor(symmetrize_pairs(t));
  }

  /// For producers whose construction guarantees the symmetries.
  static CurvatureTensor assume_valid(Tensor4<Scalar> t) { return CurvatureTensor(std::move(t)); }

  int dim() const { return t_.dim(); }
  Scalar operator()(int i, int j, int k, int l) const { return t_(i, j, k, l); }
  const Tensor4<Scalar>& table() const { return t_; }

  CurvatureTensor& operator+=(const CurvatureTensor& o) {
    t_ += o.t_;
    return *this;
  }
  CurvatureTensor& operator-=(const CurvatureTensor& o) {
    t_ -= o.t_;
    return *this;
  }
  CurvatureTensor& operator*=(Scalar c) {
    t_ *= c;
    return *this;
  }
  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) { return a -= b; }
  friend CurvatureTensor operator*(Scalar c, CurvatureTensor a) { return a *= c; }

 private:
  explicit CurvatureTensor(Tensor4<Scalar> t) : t_(std::move(t)) {}
  Tensor4<Scalar> t_;
};

using CurvatureTensord = CurvatureTensor<double>;

template <typename Scalar>
Scalar tensor_norm_sq(const CurvatureTensor<Scalar>& r) {
  return tensor_norm_sq(r.table());
}

template <typename Scalar>
SymMatrix<Scalar> metric(int n) {
  return SymMatrix<Scalar>::Identity(n, n);
}

/// (A ⊠ B)_ijkl = A_ik B_jl + A_jl B_ik - A_jk B_il - A_il B_jk
template <typename Scalar>
CurvatureTensor<Scalar> kulkarni_nomizu(const SymMatrix<Scalar>& a, const SymMatrix<Scalar>& b) {
  const auto n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n) {
    throw std::invalid_argument("kulkarni_nomizu: dimension mismatch");
  }
  Tensor4<Scalar> t(static_cast<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          t(i, j, k, l) = a(i, k) * b(j, l) + a(j, l) * b(i, k) - a(j, k) * b(i, l) - a(i, l) * b(j, k);
  return CurvatureTensor<Scalar>::assume_valid(std::move(t));
}

/// Constant curvature one: ½ g ⊠ g.
template <typename Scalar>
CurvatureTensor<Scalar> sphere_tensor(int n) {
  const auto g = metric<Scalar>(n);
  return Scalar(0.5) * kulkarni_nomizu(g, g);
}

/// Ric_ik = sum_j R_ijkj.
template <typename Scalar>
SymMatrix<Scalar> ricci(const CurvatureTensor<Scalar>& r) {
  const int n = r.dim();
  SymMatrix<Scalar> ric = SymMatrix<Scalar>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Scalar s(0);
      for (int j = 0; j < n; ++j) s += r(i, j, k, j);
      ric(i, k) = s;
    }
  return ric;
}

template <typename Scalar>
Scalar scalar(const CurvatureTensor<Scalar>& r) {
  return ricci(r).trace();
}

/// max |Ric - (Scal/n) g|
template <typename Scalar>
Scalar einstein_defect(const CurvatureTensor<Scalar>& r) {
  const SymMatrix<Scalar> ric = ricci(r);
  const int n = r.dim();
  return (ric - (ric.trace() / Scalar(n)) * metric<Scalar>(n)).cwiseAbs().maxCoeff();
}

template <typename Scalar>
struct WeylSplit {
  CurvatureTensor<Scalar> weyl;
  SymMatrix<Scalar> ricci;
  Scalar scal;
};

/// R = W + Ric⊠g/(n-2) - Scal/(2(n-1)(n-2)) g⊠g.  Requires n >= 3.
template <typename Scalar>
WeylSplit<Scalar> weyl_decompose(const CurvatureTensor<Scalar>& r) {
  const int n = r.dim();
  if (n < 3) throw std::invalid_argument("weyl_decompose: requires n >= 3");
  const SymMatrix<Scalar> ric = ricci(r);
  const Scalar scal = ric.trace();
  const auto g = metric<Scalar>(n);
  CurvatureTensor<Scalar> w = r - (Scalar(1) / Scalar(n - 2)) * kulkarni_nomizu(ric, g) +
                              (scal / Scalar(2 * (n - 1) * (n - 2))) * kulkarni_nomizu(g, g);
  return {std::move(w), ric, scal};
}

template <typename Scalar>
CurvatureTensor<Scalar> recompose(const WeylSplit<Scalar>& s) {
  const int n = s.weyl.dim();
  const auto g = metric<Scalar>(n);
  return s.weyl + (Scalar(1) / Scalar(n - 2)) * kulkarni_nomizu(s.ricci, g) -
         (s.scal / Scalar(2 * (n - 1) * (n - 2))) * kulkarni_nomizu(g, g);
}

/// max_{j,l} |sum_i T_ijil|
template <typename Scalar>
Scalar trace_defect(const Tensor4<Scalar>& t) {
  using std::abs;
  const int n = t.dim();
  Scalar worst(0);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      Scalar s(0);
      for (int i = 0; i < n; ++i) s += t(i, j, i, l);
      worst = std::max(worst, Scalar(abs(s)));
    }
  return worst;
}

/// Removes the Λ⁴ component: returns T - C/3 with C_ijkl = T_ijkl + T_iklj + T_iljk.
/// `t` must already carry the pair antisymmetries and pair-exchange symmetry;
/// otherwise C is not totally antisymmetric and SymmetryError is thrown.
template <typename Scalar>
CurvatureTensor<Scalar> bianchi_project(const Tensor4<Scalar>& t, double tol = kDefaultTol) {
  using std::abs;
  const int n = t.dim();
  Tensor4<Scalar> c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) c(i, j, k, l) = t(i, j, k, l) + t(i, k, l, j) + t(i, l, j, k);

  double defect = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Scalar v = c(i, j, k, l);
          defect = std::max(defect, static_cast<double>(abs(v + c(j, i, k, l))));
          defect = std::max(defect, static_cast<double>(abs(v + c(i, k, j, l))));
          defect = std::max(defect, static_cast<double>(abs(v + c(i, j, l, k))));
        }
  if (defect > tol) throw SymmetryError("cyclic sum not totally antisymmetric", defect);

  return CurvatureTensor<Scalar>::assume_valid(t - Scalar(1) / Scalar(3) * c);
}

/// R'_ijkl = Q_ia Q_jb Q_kc Q_ld R_abcd, i.e. the pullback by an orthogonal change of frame.
template <typename Scalar>
CurvatureTensor<Scalar> conjugate(const CurvatureTensor<Scalar>& r,
                                  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& q) {
  const int n = r.dim();
  if (q.rows() != n || q.cols() != n) throw std::invalid_argument("conjugate: dimension mismatch");
  typename Tensor4<Scalar>::Storage qq(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) qq(i * n + j, a * n + b) = q(i, a) * q(j, b);
  typename Tensor4<Scalar>::Storage m = qq * r.table().matrix() * qq.transpose();
  return CurvatureTensor<Scalar>::assume_valid(Tensor4<Scalar>(n, std::move(m)));
}

/// Weyl part of a seeded uniform(-1,1) table after pair symmetrization and
/// Bianchi projection.
template <typename Scalar>
CurvatureTensor<Scalar> random_weyl(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_weyl: requires n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Tensor4<Scalar> raw(n);
  for (int c = 0; c < n * n; ++c)
    for (int r = 0; r < n * n; ++r) raw.matrix()(r, c) = Scalar(uni(rng));
  return weyl_decompose(bianchi_project(symmetrize_pairs(raw))).weyl;
}

/// weyl_scale * W' + scal/(2n(n-1)) g⊠g with W' from random_weyl.
template <typename Scalar>
CurvatureTensor<Scalar> random_einstein(int n, std::uint64_t seed, Scalar weyl_scale, Scalar scal) {
  if (n < 3) throw std::invalid_argument("random_einstein: requires n >= 3");
  if (weyl_scale < Scalar(0)) throw std::invalid_argument("random_einstein: weyl_scale must be >= 0");
  const auto g = metric<Scalar>(n);
  return weyl_scale * random_weyl<Scalar>(n, seed) + (scal / Scalar(2 * n * (n - 1))) * kulkarni_nomizu(g, g);
}

/// Haar-ish random rotation from the QR factor of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) m(r, c) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  for (int c = 0; c < n; ++c)
    if (qr.matrixQR()(c, c) < 0) q.col(c) = -q.col(c);
  return q;
}

}  // namespace cosk
