#pragma once

#include <mutex>
#include <unordered_map>

#include "qbmor/projection.hpp"
#include "qbmor/transfer.hpp"

namespace qbmor {

enum class BetaMethod { automatic, svd, inverse_iteration };

/// sigma_min(sE - A). Dense SVD, or inverse iteration on (G^H G)^{-1} with
/// relative tolerance 1e-6 (automatic picks SVD for n <= 300).
double beta(const QBSystem& sys, Complex s, BetaMethod method = BetaMethod::svd);

struct Residuals {
  CVec primal;
  CVec dual;
};

struct BoundValue {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta = 0.0;  // delta1 + delta2
};

/// A posteriori error bounds for the first two subsystems.
///
/// Subsystem 1 is reduced with V1 = span{x1(sigma_1i)} and
/// W1 = span{y1(sigma_1i)}; subsystem 2 with V2 = span{x2(sigma_1i, sigma_2i)}
/// and W2 = span{y1(sigma_1i + sigma_2i)}. The primal reduced model uses
/// trial space V and test space W, the dual one swaps them, so both share the
/// reduced pencil (s W^T E V - W^T A V) and its transpose:
///
///   (s Ek - Ak) z       = W^T b,          r_pr = b - (sE - A) V z
///   (s Ek - Ak)^T z_du  = -(C V)^T,       r_du = -C^T - (sE - A)^T W z_du
///   Delta = ||r_du|| ||r_pr|| / sigma_min(sE - A)
///
/// with b = B for subsystem 1 and b = B2(s1, s2), s = s1 + s2 for subsystem 2.
/// An empty basis means the zero approximation (r_pr = b, r_du = -C^T).
///
/// Const members may be called concurrently; the beta cache is the only
/// shared mutable state and is mutex protected.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(const TransferEvaluator& tf, double deflation_tol = 1e-8,
                          BetaMethod beta_method = BetaMethod::automatic);

  BoundEvaluator(const BoundEvaluator&) = delete;
  BoundEvaluator& operator=(const BoundEvaluator&) = delete;

  const TransferEvaluator& transfer() const { return tf_; }
  const QBSystem& system() const { return tf_.system(); }

  /// Enrich subsystem 1 with x1(sigma1) / y1(sigma1).
  void add_subsystem1(Complex sigma1);
  /// Enrich subsystem 2 with x2(sigma1, sigma2) / y1(sigma1 + sigma2).
  void add_subsystem2(Complex sigma1, Complex sigma2);
  /// Replace the bases directly (columns must be orthonormal, equal counts).
  void set_bases(const Mat& V1, const Mat& W1, const Mat& V2, const Mat& W2);

  const Basis& V1() const { return v1_; }
  const Basis& W1() const { return w1_; }
  const Basis& V2() const { return v2_; }
  const Basis& W2() const { return w2_; }

  /// Cached sigma_min(sE - A).
  double beta(Complex s) const;
  std::size_t beta_cache_size() const;

  Residuals residuals_1(Complex s) const;
  Residuals residuals_2(Complex s1, Complex s2) const;
  double delta1(Complex s) const;
  double delta2(Complex s1, Complex s2) const;
  BoundValue bound(Complex s1, Complex s2) const;

  /// Transfer functions of the subsystem reduced models that the bounds
  /// refer to, and the corresponding true errors.
  Complex h1_reduced(Complex s) const;
  Complex h2_reduced(Complex s1, Complex s2) const;
  double true_error1(Complex s) const;
  double true_error2(Complex s1, Complex s2) const;

 private:
  struct Subsystem {
    CMat EV, AV, EtW, AtW;  // n x r
    Mat Er, Ar;             // W^T E V, W^T A V
    CMat CV;                // C V
    CMat Wt;                // W^T
  };
  struct ReducedSolve {
    CVec z;
    CVec z_du;
  };

  void rebuild(const Basis& V, const Basis& W, Subsystem& sub) const;
  ReducedSolve reduced_solve(const Subsystem& sub, Complex s, const CVec& rhs) const;
  static Residuals residuals(const Subsystem& sub, Complex s, const CVec& b, const CVec& Ct,
                             const ReducedSolve& rs);

  const TransferEvaluator& tf_;
  BetaMethod beta_method_;
  Basis v1_, w1_, v2_, w2_;
  Subsystem sub1_, sub2_;
  CVec B_, Ct_;

  mutable std::mutex beta_mutex_;
  mutable std::unordered_map<Complex, double, ComplexHash> beta_cache_;
};

}  // namespace qbmor
