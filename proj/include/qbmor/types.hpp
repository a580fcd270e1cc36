#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qbmor {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using RowVec = Eigen::RowVectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Column-major sparse storage. Quadratic operators are n x n^2 and extremely
// sparse for every benchmark, so column iteration is the hot path.
using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor>;

/// A pair of interpolation points (sigma_1, sigma_2) for the two frequency
/// variables of the second-order transfer function.
struct PointPair {
  Complex s1;
  Complex s2;

  friend bool operator==(const PointPair&, const PointPair&) = default;
};

struct ComplexHash {
  std::size_t operator()(const Complex& z) const noexcept {
    const std::size_t a = std::hash<double>{}(z.real());
    const std::size_t b = std::hash<double>{}(z.imag());
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

}  // namespace qbmor
