#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "qbmor/qb_model.hpp"

namespace qbmor {

/// Evaluates the first- and second-order symmetric transfer functions of a
/// QBSystem and the solves they are built from:
///
///   x1(s)      = (sE - A)^{-1} B
///   y1(s)      = (sE - A)^{-T} C^T
///   B2(s1,s2)  = Q (x1(s1) kron x1(s2)) + 1/2 N (x1(s1) + x1(s2))
///   x2(s1,s2)  = ((s1+s2)E - A)^{-1} B2(s1,s2)
///   c2(s1,s2)  = Q^(2) (x1(s2) kron y1(s1+s2)) + 1/2 N^T y1(s1+s2)
///   y2(s1,s2)  = (s1 E - A)^{-T} c2(s1,s2)
///
///   H1(s) = C x1(s),   H2(s1,s2) = C x2(s1,s2).
///
/// Transposes are plain (not conjugate) transposes. One LU factorization per
/// distinct s is cached and shared by forward and transposed solves; x1 and
/// y1 vectors are cached as well. All methods are safe to call concurrently;
/// two threads racing on the same s may both factor it, which only costs
/// time.
class TransferEvaluator {
 public:
  explicit TransferEvaluator(const QBSystem& sys, std::size_t lu_cache_capacity = 256);

  TransferEvaluator(const TransferEvaluator&) = delete;
  TransferEvaluator& operator=(const TransferEvaluator&) = delete;

  const QBSystem& system() const { return sys_; }

  /// (sE - A) x = rhs. Throws SingularPencilError when s is (numerically) a
  /// generalized eigenvalue.
  CVec solve(Complex s, const CVec& rhs) const;
  /// (sE - A)^T x = rhs.
  CVec solve_transpose(Complex s, const CVec& rhs) const;

  CVec x1(Complex s) const;
  CVec y1(Complex s) const;
  CVec rhs_b2(Complex s1, Complex s2) const;
  CVec x2(Complex s1, Complex s2) const;
  CVec c2(Complex s1, Complex s2) const;
  CVec y2(Complex s1, Complex s2) const;

  Complex h1(Complex s) const;
  Complex h2(Complex s1, Complex s2) const;
  /// Partial derivative of H2 with respect to s1 (which == 1) or s2 (which == 2).
  Complex dh2(Complex s1, Complex s2, int which) const;

  /// (sE - A) as a complex dense matrix.
  CMat pencil(Complex s) const;

 private:
  struct Factorization {
    Eigen::PartialPivLU<CMat> lu;
  };
  std::shared_ptr<const Factorization> factor(Complex s) const;

  const QBSystem& sys_;
  CMat E_, A_, N_;
  CVec B_, Ct_;
  std::size_t capacity_;

  mutable std::mutex mutex_;
  mutable std::unordered_map<Complex, std::shared_ptr<const Factorization>, ComplexHash> lu_cache_;
  mutable std::deque<Complex> lu_order_;
  mutable std::unordered_map<Complex, CVec, ComplexHash> x1_cache_;
  mutable std::unordered_map<Complex, CVec, ComplexHash> y1_cache_;
};

// Free-function forms; each builds a throwaway evaluator.
CVec solve_x1(const QBSystem& sys, Complex s);
CVec solve_y1(const QBSystem& sys, Complex s);
CVec rhs_B2(const QBSystem& sys, Complex s1, Complex s2);
CVec solve_x2(const QBSystem& sys, Complex s1, Complex s2);
CVec solve_y2(const QBSystem& sys, Complex s1, Complex s2);
Complex H1(const QBSystem& sys, Complex s);
Complex H2(const QBSystem& sys, Complex s1, Complex s2);
Complex dH2(const QBSystem& sys, Complex s1, Complex s2, int which);

}  // namespace qbmor
