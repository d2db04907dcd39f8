// Curvature operators of the first and second kind, their spectra, and the
// derivation action of symmetric two-tensors on rank-4 tensors.
#pragma once

#include "cosk/jacobi.hpp"
#include "cosk/tensor.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace cosk {

/// dim S²₀(V) = (n-1)(n+2)/2
constexpr int traceless_dim(int n) { return (n - 1) * (n + 2) / 2; }

/// Orthonormal basis of the trace-free symmetric matrices under <A,B> = tr(AᵀB):
/// first (eᵢ⊙eⱼ)/√2 for i < j in row-major order, then the n-1 Helmert
/// diagonals D_k = (Σ_{i≤k} eᵢ⊗eᵢ - k e_{k+1}⊗e_{k+1}) / √(k(k+1)).
template <typename Scalar>
struct S20Basis {
  int n = 0;
  std::vector<SymMatrix<Scalar>> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

template <typename Scalar>
S20Basis<Scalar> s20_basis(int n) {
  using std::sqrt;
  if (n < 2) throw std::invalid_argument("s20_basis: requires n >= 2");
  S20Basis<Scalar> b;
  b.n = n;
  b.elements.reserve(static_cast<std::size_t>(traceless_dim(n)));
  const Scalar inv_sqrt2 = Scalar(1) / sqrt(Scalar(2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SymMatrix<Scalar> e = SymMatrix<Scalar>::Zero(n, n);
      e(i, j) = e(j, i) = inv_sqrt2;
      b.elements.push_back(std::move(e));
    }
  for (int k = 1; k < n; ++k) {
    SymMatrix<Scalar> d = SymMatrix<Scalar>::Zero(n, n);
    const Scalar norm = sqrt(Scalar(k) * Scalar(k + 1));
    for (int i = 0; i < k; ++i) d(i, i) = Scalar(1) / norm;
    d(k, k) = -Scalar(k) / norm;
    b.elements.push_back(std::move(d));
  }
  return b;
}

template <typename Scalar>
Scalar inner(const SymMatrix<Scalar>& a, const SymMatrix<Scalar>& b) {
  return (a.transpose() * b).trace();
}

/// R̄(φ)_ij = Σ_kl R_iklj φ_kl
template <typename Scalar>
SymMatrix<Scalar> apply_rbar(const CurvatureTensor<Scalar>& r, const SymMatrix<Scalar>& phi) {
  const int n = r.dim();
  SymMatrix<Scalar> out = SymMatrix<Scalar>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar s(0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += r(i, k, l, j) * phi(k, l);
      out(i, j) = s;
    }
  return out;
}

/// Matrix of R̊ = π∘R̄ in an orthonormal basis of S²₀: entry (a, b) = <R̄(Sᵃ), Sᵇ>.
template <typename Scalar>
struct SecondKindOperator {
  S20Basis<Scalar> basis;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix;

  int n() const { return basis.n; }
  int size() const { return basis.size(); }
};

template <typename Scalar>
SecondKindOperator<Scalar> build_second_kind(const CurvatureTensor<Scalar>& r, S20Basis<Scalar> basis) {
  const int n = r.dim();
  if (basis.n != n) throw std::invalid_argument("build_second_kind: basis dimension mismatch");
  const int size = basis.size();
  // Pairing R̄(Sᵃ) with the trace-free Sᵇ discards the g-component, which is the projection π.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rbar(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) rbar(i * n + j, k * n + l) = r(i, k, l, j);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vecs(n * n, size);
  for (int a = 0; a < size; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) vecs(i * n + j, a) = basis.elements[a](i, j);
  SecondKindOperator<Scalar> op;
  op.matrix = (vecs.transpose() * rbar * vecs).transpose();
  op.basis = std::move(basis);
  return op;
}

template <typename Scalar>
SecondKindOperator<Scalar> build_second_kind(const CurvatureTensor<Scalar>& r) {
  return build_second_kind(r, s20_basis<Scalar>(r.dim()));
}

/// Matrix of R̂(ω)_ij = ½ Σ_kl R_ijkl ω_kl in the basis {eᵢ∧eⱼ}_{i<j} under
/// <A,B> = ½ tr(AᵀB).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> build_first_kind(const CurvatureTensor<Scalar>& r) {
  const int n = r.dim();
  std::vector<SymMatrix<Scalar>> forms;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SymMatrix<Scalar> w = SymMatrix<Scalar>::Zero(n, n);
      w(i, j) = Scalar(1);
      w(j, i) = Scalar(-1);
      forms.push_back(std::move(w));
    }
  const auto m = static_cast<Eigen::Index>(forms.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    SymMatrix<Scalar> image = SymMatrix<Scalar>::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar s(0);
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) s += r(i, j, k, l) * forms[a](k, l);
        image(i, j) = s / Scalar(2);
      }
    for (Eigen::Index b = 0; b < m; ++b) out(a, b) = inner(image, forms[b]) / Scalar(2);
  }
  return out;
}

/// Sorted eigenvalues λ₁ ≤ … ≤ λ_N of R̊, eigenvectors in basis coordinates, and their mean.
template <typename Scalar>
struct Spectrum {
  int n = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
  Scalar lambda_bar{};

  int size() const { return static_cast<int>(values.size()); }
};

using Spectrumd = Spectrum<double>;

template <typename Scalar>
Spectrum<Scalar> spectrum(const SecondKindOperator<Scalar>& op, const JacobiOptions& opt = {}) {
  EigenPairs<Scalar> pairs = jacobi_eigen<Scalar>(op.matrix, opt);
  Spectrum<Scalar> s;
  s.n = op.n();
  s.lambda_bar = pairs.values.mean();
  s.values = std::move(pairs.values);
  s.vectors = std::move(pairs.vectors);
  return s;
}

/// Spectrum of R̊ for `r` in the canonical basis.
template <typename Scalar>
Spectrum<Scalar> second_kind_spectrum(const CurvatureTensor<Scalar>& r) {
  return spectrum(build_second_kind(r));
}

/// Sʲ = Σ_b v_b Basis_b: eigenvectors of R̊ as trace-free matrices, in spectrum order.
template <typename Scalar>
std::vector<SymMatrix<Scalar>> eigen_matrices(const SecondKindOperator<Scalar>& op, const Spectrum<Scalar>& s) {
  const int n = op.n();
  std::vector<SymMatrix<Scalar>> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (int j = 0; j < s.size(); ++j) {
    SymMatrix<Scalar> m = SymMatrix<Scalar>::Zero(n, n);
    for (int b = 0; b < op.size(); ++b) m += s.vectors(b, j) * op.basis.elements[b];
    out.push_back(std::move(m));
  }
  return out;
}

/// (ST)_ijkl = Σ_m S_im T_mjkl + S_jm T_imkl + S_km T_ijml + S_lm T_ijkm,
/// evaluated as K M + M Kᵀ with K = S⊗I + I⊗S on the pair-indexed storage.
template <typename Scalar>
Tensor4<Scalar> s_action(const SymMatrix<Scalar>& s, const Tensor4<Scalar>& t) {
  const int n = t.dim();
  if (s.rows() != n || s.cols() != n) throw std::invalid_argument("s_action: dimension mismatch");
  typename Tensor4<Scalar>::Storage k = Tensor4<Scalar>::Storage::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        k(i * n + j, m * n + j) += s(i, m);
        k(i * n + j, i * n + m) += s(j, m);
      }
  typename Tensor4<Scalar>::Storage out = k * t.matrix();
  out.noalias() += t.matrix() * k.transpose();
  return Tensor4<Scalar>(n, std::move(out));
}

/// |SʲW|² for each matrix in `mats`.  `w` must be totally trace-free to `tol`.
template <typename Scalar>
std::vector<Scalar> sw_norms(std::span<const SymMatrix<Scalar>> mats, const CurvatureTensor<Scalar>& w,
                             double tol = kDefaultTol) {
  const Scalar defect = trace_defect(w.table());
  if (static_cast<double>(defect) > tol) {
    throw std::invalid_argument("sw_norms: tensor is not trace-free (defect " +
                                std::to_string(static_cast<double>(defect)) + ")");
  }
  std::vector<Scalar> out;
  out.reserve(mats.size());
  for (const auto& s : mats) out.push_back(tensor_norm_sq(s_action(s, w.table())));
  return out;
}

template <typename Scalar>
std::vector<Scalar> sw_norms(const std::vector<SymMatrix<Scalar>>& mats, const CurvatureTensor<Scalar>& w,
                             double tol = kDefaultTol) {
  return sw_norms(std::span<const SymMatrix<Scalar>>(mats), w, tol);
}

}  // namespace cosk
