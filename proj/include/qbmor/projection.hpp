#pragma once

#include <span>
#include <string>
#include <vector>

#include "qbmor/qb_model.hpp"
#include "qbmor/transfer.hpp"

namespace qbmor {

/// Real orthonormal basis grown by Gram-Schmidt with deflation.
struct Basis {
  Mat columns;
  double deflation_tol = 1e-8;

  Basis() = default;
  Basis(Index n, double tol) : columns(n, 0), deflation_tol(tol) {}

  Index rows() const { return columns.rows(); }
  Index size() const { return columns.cols(); }
};

/// Appends the real and imaginary parts of each column of `vectors` to the
/// basis. Modified Gram-Schmidt with one reorthogonalization pass; a
/// candidate whose remaining norm drops below deflation_tol times its
/// original norm is dropped. Returns the number of columns added.
Index orth_extend(Basis& basis, const CMat& vectors);
Index orth_extend(Basis& basis, const Mat& vectors);

/// Pads the smaller basis with directions from the larger one (then unit
/// vectors) until both have the same number of columns.
void equalize(Basis& V, Basis& W);

struct BasisPair {
  Basis V;
  Basis W;
};

/// Two-point Hermite bases for a list of point pairs:
///   V = span{x1(s1), x1(s2), x2(s1,s2)},
///   W = span{y1(s1+s2), y2(s1,s2), y2(s2,s1)}.
/// Vectors are realified and inserted pair by pair in that order. The
/// returned bases are NOT equalized.
BasisPair build_bases_lemma2(const TransferEvaluator& tf, std::span<const PointPair> pairs,
                             double deflation_tol = 1e-8);
BasisPair build_bases_lemma2(const QBSystem& sys, std::span<const PointPair> pairs,
                             double deflation_tol = 1e-8);

/// Appends the two-point Hermite vectors for one pair to (V, W).
void extend_lemma2(const TransferEvaluator& tf, const PointPair& pair, Basis& V, Basis& W);

struct ReducedQBSystem {
  QBSystem rom;
  Mat V;
  Mat W;
  bool one_sided_fallback = false;

  Index r() const { return rom.n(); }
};

struct ReduceOptions {
  /// Replace W by V when W^T E V is singular instead of failing.
  bool fallback_one_sided = false;
  double singular_rcond = 1e-13;
  /// For systems with a nonzero initial state x0 that span(V) misses, append
  /// x0 to V and E x0 to W so the ROM can represent x0 (r grows by one).
  bool augment_initial_state = true;
  std::string name;
};

/// Petrov-Galerkin projection
///   Er = W^T E V, Ar = W^T A V, Nr = W^T N V, Qr = W^T Q (V kron V),
///   Br = W^T B,   Cr = C V.
/// Qr is assembled column pair by column pair via apply_quadratic and then
/// symmetrized. A nonzero initial state is carried over as the oblique
/// projection (W^T E V)^{-1} W^T E x0, after the optional augmentation
/// described in ReduceOptions.
ReducedQBSystem reduce(const QBSystem& sys, const Mat& V, const Mat& W,
                       const ReduceOptions& opts = {});

/// Keeps the leading r columns of both bases (insertion order).
void truncate(Basis& V, Basis& W, Index r);

struct HermiteCondition {
  std::string label;
  PointPair pair;
  Complex full;
  Complex reduced;
  double abs_error;
  double rel_error;
};

struct HermiteReport {
  std::vector<HermiteCondition> conditions;
  double max_abs() const;
  double max_rel() const;
};

/// For every pair: H1 at s1, s2, s1+s2; H2 at (s1,s2); dH2/ds1 at (s1,s2);
/// dH2/ds2 at (s2,s1).
HermiteReport verify_hermite(const QBSystem& sys, const ReducedQBSystem& rom,
                             std::span<const PointPair> pairs);

}  // namespace qbmor
