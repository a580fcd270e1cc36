#pragma once

#include <string>

#include "qbmor/errors.hpp"
#include "qbmor/types.hpp"

namespace qbmor {

// Tensor convention used throughout: the third-order tensor Q(i, j, k) with
// i, j, k in [0, n) is stored as the mode-1 matricization
//
//     Q[i, j*n + k] = Q(i, j, k),
//
// i.e. column block j of Q is the frontal slice Q_j, and
// Q (u kron v) = sum_j u_j * Q_j v.

/// Kronecker product of two vectors: result[i*q + j] = u[i] * v[j].
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> kron(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& u,
                                              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(u.size() * v.size());
  for (Index i = 0; i < u.size(); ++i) out.segment(i * v.size(), v.size()) = u[i] * v;
  return out;
}

/// Q (u kron v) without forming u kron v. Cost is O(nnz(Q)).
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply_quadratic(
    const SpMat& Q, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& u,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  const Index p = u.size();
  const Index q = v.size();
  if (Q.cols() != p * q) {
    throw DimensionError("apply_quadratic: Q has " + std::to_string(Q.cols()) +
                         " columns, expected " + std::to_string(p * q));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(Q.rows());
  for (Index col = 0; col < Q.outerSize(); ++col) {
    const Scalar w = u[col / q] * v[col % q];
    if (w == Scalar(0)) continue;
    for (SpMat::InnerIterator it(Q, col); it; ++it) out[it.row()] += it.value() * w;
  }
  return out;
}

/// Q^(2) (v kron w) evaluated from the mode-1 storage of Q.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply_mode2(
    const SpMat& Q, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& w) {
  const Index n = Q.rows();
  if (Q.cols() != n * n || v.size() != n || w.size() != n) {
    throw DimensionError("apply_mode2: inconsistent dimensions");
  }
  // Q^(2)[a, j*n + b] = Q[b, j*n + a]
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  for (Index col = 0; col < Q.outerSize(); ++col) {
    const Index j = col / n;
    const Index a = col % n;
    if (v[j] == Scalar(0)) continue;
    Scalar acc(0);
    for (SpMat::InnerIterator it(Q, col); it; ++it) acc += it.value() * w[it.row()];
    out[a] += v[j] * acc;
  }
  return out;
}

/// Q~(i,j,k) = (Q(i,j,k) + Q(i,k,j)) / 2. Exact zeros are pruned.
SpMat symmetrize_quadratic(const SpMat& Q);

/// [Q_1^T ... Q_n^T], i.e. Q^(2)[a, j*n + b] = Q[b, j*n + a].
SpMat mode2_matricization(const SpMat& Q);

/// [vec(Q_1) ... vec(Q_n)]^T, i.e. Q^(3)[j, a*n + b] = Q[b, j*n + a].
SpMat mode3_matricization(const SpMat& Q);

/// d/dx [Q (x kron x)] = Q (I kron x) + Q (x kron I); equals 2 Q (x kron .) for
/// symmetrized Q.
Mat quadratic_jacobian(const SpMat& Q, const Vec& x);

/// Largest |Q(u kron v) - Q(v kron u)| relative to ||Q|| ||u|| ||v|| over
/// `trials` random pairs. Used as a cheap symmetry check.
double symmetry_defect(const SpMat& Q, int trials, unsigned seed = 7);

/// Full-order single-input single-output quadratic-bilinear descriptor system
///
///     E x' = A x + N x u + Q (x kron x) + B u,   y = C x.
///
/// Immutable after construction. The quadratic operator is symmetrized on
/// construction, so Q(u kron v) = Q(v kron u) always holds.
class QBSystem {
 public:
  QBSystem() = default;
  QBSystem(Mat E, Mat A, Mat N, SpMat Q, Vec B, RowVec C, std::string name = {},
           Vec initial_state = {});

  static QBSystem from_dense(Mat E, Mat A, Mat N, const Mat& Q, Vec B, RowVec C,
                             std::string name = {});

  Index n() const { return A_.rows(); }
  const Mat& E() const { return E_; }
  const Mat& A() const { return A_; }
  const Mat& N() const { return N_; }
  const SpMat& Q() const { return Q_; }
  const Vec& B() const { return B_; }
  const RowVec& C() const { return C_; }
  const std::string& name() const { return name_; }
  bool q_symmetrized() const { return true; }

  /// Initial state for transient simulation; empty means the zero state.
  const Vec& initial_state() const { return x0_; }
  Vec initial_state_or_zero() const { return x0_.size() ? x0_ : Vec::Zero(n()); }

  bool is_linear() const { return N_.isZero(0.0) && Q_.nonZeros() == 0; }

 private:
  Mat E_, A_, N_;
  SpMat Q_;
  Vec B_;
  RowVec C_;
  std::string name_;
  Vec x0_;
};

/// Probes sE - A at s in {1, 10, 100, 1+i}; true if any is numerically
/// invertible.
bool pencil_is_regular(const QBSystem& sys);

}  // namespace qbmor
