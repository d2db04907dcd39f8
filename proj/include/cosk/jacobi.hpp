// Cyclic Jacobi eigensolver for dense symmetric matrices.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cosk {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct EigenPairs {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;                // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns
  int sweeps = 0;
};

struct JacobiOptions {
  int max_sweeps = 100;
  double rel_tol = 1e-13;  // off-diagonal Frobenius norm relative to ||M||_F
};

/// Diagonalizes the symmetric part of `m` by cyclic Jacobi rotations with a
/// fixed row-major (p < q) sweep order.  Eigenpairs are sorted by value; exact
/// ties are ordered by the first differing eigenvector coordinate.  Each
/// eigenvector is signed so that its first non-negligible coordinate is positive.
template <typename Scalar>
EigenPairs<Scalar> jacobi_eigen(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                                const JacobiOptions& opt = {}) {
  using std::abs;
  using std::sqrt;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) throw std::invalid_argument("jacobi_eigen: matrix must be square");
  const Eigen::Index size = m.rows();

  Mat a = (m + m.transpose()) / Scalar(2);
  Mat v = Mat::Identity(size, size);
  const Scalar scale = a.norm();
  const Scalar threshold = Scalar(opt.rel_tol) * scale;

  auto off_norm = [&]() {
    Scalar s(0);
    for (Eigen::Index p = 0; p < size; ++p)
      for (Eigen::Index q = 0; q < size; ++q)
        if (p != q) s += a(p, q) * a(p, q);
    return sqrt(s);
  };

  int sweep = 0;
  for (;; ++sweep) {
    if (off_norm() <= threshold) break;
    if (sweep >= opt.max_sweeps) {
      throw ConvergenceError("jacobi_eigen: no convergence after " + std::to_string(opt.max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p + 1 < size; ++p) {
      for (Eigen::Index q = p + 1; q < size; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) / (abs(theta) + sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        // A <- J^T A J with J the (p, q) Givens rotation.
        for (Eigen::Index k = 0; k < size; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < size; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = Scalar(0);
        for (Eigen::Index k = 0; k < size; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  const Scalar negligible = Scalar(1e-12);
  for (Eigen::Index c = 0; c < size; ++c) {
    for (Eigen::Index r = 0; r < size; ++r) {
      if (abs(v(r, c)) > negligible) {
        if (v(r, c) < Scalar(0)) v.col(c) = -v.col(c);
        break;
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(size));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (a(x, x) != a(y, y)) return a(x, x) < a(y, y);
    for (Eigen::Index r = 0; r < size; ++r)
      if (v(r, x) != v(r, y)) return v(r, x) < v(r, y);
    return x < y;
  });

  EigenPairs<Scalar> out;
  out.values.resize(size);
  out.vectors.resize(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    out.values(j) = a(order[j], order[j]);
    out.vectors.col(j) = v.col(order[j]);
  }
  out.sweeps = sweep;
  return out;
}

}  // namespace cosk
