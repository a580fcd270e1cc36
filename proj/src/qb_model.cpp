#include "qbmor/qb_model.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

namespace qbmor {

std::string format_complex(Complex z) {
  char buf[96];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.10g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  }
  return buf;
}

namespace {

Index slice_size(const SpMat& Q) {
  const Index n = Q.rows();
  if (Q.cols() != n * n) {
    throw DimensionError("quadratic operator must be n x n^2, got " + std::to_string(Q.rows()) +
                         " x " + std::to_string(Q.cols()));
  }
  return n;
}

SpMat from_triplets(Index rows, Index cols, const std::vector<Eigen::Triplet<double>>& t) {
  SpMat out(rows, cols);
  out.setFromTriplets(t.begin(), t.end());
  out.prune(0.0);
  out.makeCompressed();
  return out;
}

}  // namespace

SpMat symmetrize_quadratic(const SpMat& Q) {
  const Index n = slice_size(Q);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(2 * static_cast<std::size_t>(Q.nonZeros()));
  for (Index col = 0; col < Q.outerSize(); ++col) {
    const Index j = col / n;
    const Index k = col % n;
    for (SpMat::InnerIterator it(Q, col); it; ++it) {
      t.emplace_back(it.row(), j * n + k, 0.5 * it.value());
      t.emplace_back(it.row(), k * n + j, 0.5 * it.value());
    }
  }
  return from_triplets(n, n * n, t);
}

SpMat mode2_matricization(const SpMat& Q) {
  const Index n = slice_size(Q);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(Q.nonZeros()));
  for (Index col = 0; col < Q.outerSize(); ++col) {
    const Index j = col / n;
    const Index a = col % n;
    for (SpMat::InnerIterator it(Q, col); it; ++it) t.emplace_back(a, j * n + it.row(), it.value());
  }
  return from_triplets(n, n * n, t);
}

SpMat mode3_matricization(const SpMat& Q) {
  const Index n = slice_size(Q);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(Q.nonZeros()));
  for (Index col = 0; col < Q.outerSize(); ++col) {
    const Index j = col / n;
    const Index a = col % n;
    for (SpMat::InnerIterator it(Q, col); it; ++it) t.emplace_back(j, a * n + it.row(), it.value());
  }
  return from_triplets(n, n * n, t);
}

Mat quadratic_jacobian(const SpMat& Q, const Vec& x) {
  const Index n = x.size();
  if (Q.cols() != n * n) throw DimensionError("quadratic_jacobian: Q must have n^2 columns");
  Mat J = Mat::Zero(Q.rows(), n);
  for (Index col = 0; col < Q.outerSize(); ++col) {
    const Index j = col / n;
    const Index k = col % n;
    const double xj = x[j];
    const double xk = x[k];
    for (SpMat::InnerIterator it(Q, col); it; ++it) {
      J(it.row(), k) += it.value() * xj;
      J(it.row(), j) += it.value() * xk;
    }
  }
  return J;
}

double symmetry_defect(const SpMat& Q, int trials, unsigned seed) {
  const Index n = slice_size(Q);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  const double qnorm = Q.norm();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Vec u(n), v(n);
    for (Index i = 0; i < n; ++i) {
      u[i] = dist(rng);
      v[i] = dist(rng);
    }
    const double diff = (apply_quadratic<double>(Q, u, v) - apply_quadratic<double>(Q, v, u)).norm();
    const double scale = qnorm * u.norm() * v.norm();
    if (scale > 0) worst = std::max(worst, diff / scale);
  }
  return worst;
}

QBSystem::QBSystem(Mat E, Mat A, Mat N, SpMat Q, Vec B, RowVec C, std::string name,
                   Vec initial_state)
    : E_(std::move(E)),
      A_(std::move(A)),
      N_(std::move(N)),
      B_(std::move(B)),
      C_(std::move(C)),
      name_(std::move(name)),
      x0_(std::move(initial_state)) {
  const Index n = A_.rows();
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw DimensionError("QBSystem: " + what);
  };
  require(n > 0, "state dimension must be positive");
  require(A_.cols() == n, "A must be square");
  require(E_.rows() == n && E_.cols() == n, "E must be n x n");
  require(N_.rows() == n && N_.cols() == n, "N must be n x n");
  require(Q.rows() == n && Q.cols() == n * n, "Q must be n x n^2 (got " + std::to_string(Q.rows()) +
                                                  " x " + std::to_string(Q.cols()) + ")");
  require(B_.size() == n, "B must have length n");
  require(C_.size() == n, "C must have length n");
  require(x0_.size() == 0 || x0_.size() == n, "initial state must have length n");
  Q_ = symmetrize_quadratic(Q);
}

QBSystem QBSystem::from_dense(Mat E, Mat A, Mat N, const Mat& Q, Vec B, RowVec C,
                              std::string name) {
  return QBSystem(std::move(E), std::move(A), std::move(N), Q.sparseView(), std::move(B),
                  std::move(C), std::move(name));
}

bool pencil_is_regular(const QBSystem& sys) {
  const Complex probes[] = {1.0, 10.0, 100.0, Complex(1.0, 1.0)};
  const CMat E = sys.E().cast<Complex>();
  const CMat A = sys.A().cast<Complex>();
  for (const Complex s : probes) {
    Eigen::PartialPivLU<CMat> lu(s * E - A);
    const double rc = lu.rcond();
    if (std::isfinite(rc) && rc > 1e-14) return true;
  }
  return false;
}

}  // namespace qbmor
