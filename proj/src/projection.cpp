#include "qbmor/projection.hpp"

#include <algorithm>
#include <cmath>

namespace qbmor {

namespace {

bool append_real(Basis& basis, Vec w) {
  const double original = w.norm();
  if (!(original > 0.0) || !std::isfinite(original)) return false;
  // Modified Gram-Schmidt, two passes.
  for (int pass = 0; pass < 2; ++pass) {
    for (Index k = 0; k < basis.size(); ++k) {
      w -= basis.columns.col(k).dot(w) * basis.columns.col(k);
    }
  }
  const double remaining = w.norm();
  if (remaining < basis.deflation_tol * original) return false;
  basis.columns.conservativeResize(w.size(), basis.size() + 1);
  basis.columns.col(basis.size() - 1) = w / remaining;
  return true;
}

void check_rows(const Basis& basis, Index rows) {
  if (basis.size() > 0 && basis.rows() != rows) {
    throw DimensionError("orth_extend: vector length does not match basis");
  }
}

}  // namespace

Index orth_extend(Basis& basis, const CMat& vectors) {
  check_rows(basis, vectors.rows());
  if (basis.size() == 0) basis.columns.resize(vectors.rows(), 0);
  Index added = 0;
  for (Index c = 0; c < vectors.cols(); ++c) {
    added += append_real(basis, vectors.col(c).real());
    added += append_real(basis, vectors.col(c).imag());
  }
  return added;
}

Index orth_extend(Basis& basis, const Mat& vectors) {
  check_rows(basis, vectors.rows());
  if (basis.size() == 0) basis.columns.resize(vectors.rows(), 0);
  Index added = 0;
  for (Index c = 0; c < vectors.cols(); ++c) added += append_real(basis, vectors.col(c));
  return added;
}

void equalize(Basis& V, Basis& W) {
  auto pad = [](Basis& small, const Basis& large) {
    const Index n = large.rows();
    for (Index c = 0; c < large.size() && small.size() < large.size(); ++c) {
      append_real(small, large.columns.col(c));
    }
    for (Index k = 0; k < n && small.size() < large.size(); ++k) {
      append_real(small, Vec::Unit(n, k));
    }
  };
  if (V.size() < W.size()) pad(V, W);
  else if (W.size() < V.size()) pad(W, V);
}

void extend_lemma2(const TransferEvaluator& tf, const PointPair& p, Basis& V, Basis& W) {
  const Index n = tf.system().n();
  CMat vcols(n, 3);
  vcols.col(0) = tf.x1(p.s1);
  vcols.col(1) = tf.x1(p.s2);
  vcols.col(2) = tf.x2(p.s1, p.s2);
  CMat wcols(n, 3);
  wcols.col(0) = tf.y1(p.s1 + p.s2);
  wcols.col(1) = tf.y2(p.s1, p.s2);
  wcols.col(2) = tf.y2(p.s2, p.s1);
  orth_extend(V, vcols);
  orth_extend(W, wcols);
}

BasisPair build_bases_lemma2(const TransferEvaluator& tf, std::span<const PointPair> pairs,
                             double deflation_tol) {
  const Index n = tf.system().n();
  BasisPair out{Basis(n, deflation_tol), Basis(n, deflation_tol)};
  for (const auto& p : pairs) extend_lemma2(tf, p, out.V, out.W);
  return out;
}

BasisPair build_bases_lemma2(const QBSystem& sys, std::span<const PointPair> pairs,
                             double deflation_tol) {
  TransferEvaluator tf(sys);
  return build_bases_lemma2(tf, pairs, deflation_tol);
}

ReducedQBSystem reduce(const QBSystem& sys, const Mat& V_in, const Mat& W_in,
                       const ReduceOptions& opts) {
  const Index n = sys.n();
  if (V_in.rows() != n || W_in.rows() != n) {
    throw DimensionError("reduce: bases must have n rows");
  }
  if (V_in.cols() != W_in.cols()) {
    throw DimensionError("reduce: V has " + std::to_string(V_in.cols()) + " columns but W has " +
                         std::to_string(W_in.cols()));
  }
  if (V_in.cols() == 0) throw DimensionError("reduce: empty basis");

  Mat V = V_in;
  Mat W = W_in;
  const Vec& x0 = sys.initial_state();
  if (opts.augment_initial_state && x0.size() > 0 && x0.norm() > 0.0) {
    Basis bv(n, 1e-8);
    bv.columns = V;
    if (orth_extend(bv, Mat(x0)) > 0) {
      Basis bw(n, 1e-8);
      bw.columns = W;
      orth_extend(bw, Mat(sys.E() * x0));
      equalize(bv, bw);
      V = std::move(bv.columns);
      W = std::move(bw.columns);
    }
  }
  bool fallback = false;
  Mat Er = W.transpose() * sys.E() * V;
  Eigen::PartialPivLU<Mat> lu(Er);
  double rc = lu.rcond();
  if (!std::isfinite(rc) || rc < opts.singular_rcond) {
    if (!opts.fallback_one_sided) {
      throw SingularReductionError(rc, "reduce: W^T E V is singular (rcond estimate " +
                                           std::to_string(rc) + ")");
    }
    W = V;
    fallback = true;
    Er = W.transpose() * sys.E() * V;
    lu.compute(Er);
    rc = lu.rcond();
    if (!std::isfinite(rc) || rc < opts.singular_rcond) {
      throw SingularReductionError(rc, "reduce: V^T E V is singular after one-sided fallback "
                                       "(rcond estimate " + std::to_string(rc) + ")");
    }
  }

  const Index r = V.cols();
  Mat Ar = W.transpose() * sys.A() * V;
  Mat Nr = W.transpose() * sys.N() * V;
  Vec Br = W.transpose() * sys.B();
  RowVec Cr = sys.C() * V;
  Mat Qr(r, r * r);
  for (Index a = 0; a < r; ++a) {
    const Vec va = V.col(a);
    for (Index b = 0; b < r; ++b) {
      const Vec vb = V.col(b);
      Qr.col(a * r + b) = W.transpose() * apply_quadratic<double>(sys.Q(), va, vb);
    }
  }
  Vec xr0;
  if (sys.initial_state().size() > 0) {
    xr0 = lu.solve(W.transpose() * (sys.E() * sys.initial_state()));
  }
  return ReducedQBSystem{QBSystem(std::move(Er), std::move(Ar), std::move(Nr), Qr.sparseView(),
                                  std::move(Br), std::move(Cr),
                                  opts.name.empty() ? sys.name() + "_rom" : opts.name,
                                  std::move(xr0)),
                         V, W, fallback};
}

void truncate(Basis& V, Basis& W, Index r) {
  if (V.size() > r) V.columns.conservativeResize(Eigen::NoChange, r);
  if (W.size() > r) W.columns.conservativeResize(Eigen::NoChange, r);
}

double HermiteReport::max_abs() const {
  double m = 0.0;
  for (const auto& c : conditions) m = std::max(m, c.abs_error);
  return m;
}

double HermiteReport::max_rel() const {
  double m = 0.0;
  for (const auto& c : conditions) m = std::max(m, c.rel_error);
  return m;
}

HermiteReport verify_hermite(const QBSystem& sys, const ReducedQBSystem& rom,
                             std::span<const PointPair> pairs) {
  TransferEvaluator full(sys);
  TransferEvaluator red(rom.rom);
  HermiteReport report;
  auto add = [&](std::string label, const PointPair& p, Complex f, Complex g) {
    const double abs_err = std::abs(f - g);
    const double rel_err = std::abs(f) > 0 ? abs_err / std::abs(f) : abs_err;
    report.conditions.push_back({std::move(label), p, f, g, abs_err, rel_err});
  };
  for (const auto& p : pairs) {
    add("H1(s1)", p, full.h1(p.s1), red.h1(p.s1));
    add("H1(s2)", p, full.h1(p.s2), red.h1(p.s2));
    add("H1(s1+s2)", p, full.h1(p.s1 + p.s2), red.h1(p.s1 + p.s2));
    add("H2(s1,s2)", p, full.h2(p.s1, p.s2), red.h2(p.s1, p.s2));
    add("dH2/ds1(s1,s2)", p, full.dh2(p.s1, p.s2, 1), red.dh2(p.s1, p.s2, 1));
    add("dH2/ds2(s2,s1)", p, full.dh2(p.s2, p.s1, 2), red.dh2(p.s2, p.s1, 2));
  }
  return report;
}

}  // namespace qbmor
