#include "qbmor/error_bound.hpp"

#include <cmath>
#include <limits>

namespace qbmor {

namespace {

constexpr double kReducedSingularRcond = 1e-14;

double beta_inverse_iteration(const CMat& G) {
  Eigen::PartialPivLU<CMat> lu(G);
  if (!(lu.rcond() > 0.0)) return 0.0;
  const Index n = G.rows();
  CVec x = CVec::Ones(n) / std::sqrt(static_cast<double>(n));
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    const CVec v = lu.solve(CVec(lu.adjoint().solve(x)));
    const double next = v.norm();
    if (!(next > 0.0) || !std::isfinite(next)) return 0.0;
    x = v / next;
    if (std::abs(next - lambda) <= 1e-6 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return 1.0 / std::sqrt(lambda);
}

}  // namespace

double beta(const QBSystem& sys, Complex s, BetaMethod method) {
  const CMat G = s * sys.E().cast<Complex>() - sys.A().cast<Complex>();
  if (method == BetaMethod::automatic) {
    method = sys.n() <= 300 ? BetaMethod::svd : BetaMethod::inverse_iteration;
  }
  if (method == BetaMethod::inverse_iteration) return beta_inverse_iteration(G);
  Eigen::BDCSVD<CMat> svd(G);
  return svd.singularValues().minCoeff();
}

BoundEvaluator::BoundEvaluator(const TransferEvaluator& tf, double deflation_tol,
                               BetaMethod beta_method)
    : tf_(tf),
      beta_method_(beta_method),
      v1_(tf.system().n(), deflation_tol),
      w1_(tf.system().n(), deflation_tol),
      v2_(tf.system().n(), deflation_tol),
      w2_(tf.system().n(), deflation_tol),
      B_(tf.system().B().cast<Complex>()),
      Ct_(tf.system().C().transpose().cast<Complex>()) {
  rebuild(v1_, w1_, sub1_);
  rebuild(v2_, w2_, sub2_);
}

void BoundEvaluator::rebuild(const Basis& V, const Basis& W, Subsystem& sub) const {
  const QBSystem& sys = tf_.system();
  const Mat& Vm = V.columns;
  const Mat& Wm = W.columns;
  const Mat EV = sys.E() * Vm;
  const Mat AV = sys.A() * Vm;
  sub.Er = Wm.transpose() * EV;
  sub.Ar = Wm.transpose() * AV;
  sub.EV = EV.cast<Complex>();
  sub.AV = AV.cast<Complex>();
  sub.EtW = (sys.E().transpose() * Wm).cast<Complex>();
  sub.AtW = (sys.A().transpose() * Wm).cast<Complex>();
  sub.CV = (sys.C() * Vm).cast<Complex>();
  sub.Wt = Wm.transpose().cast<Complex>();
}

void BoundEvaluator::add_subsystem1(Complex sigma1) {
  orth_extend(v1_, CMat(tf_.x1(sigma1)));
  orth_extend(w1_, CMat(tf_.y1(sigma1)));
  equalize(v1_, w1_);
  rebuild(v1_, w1_, sub1_);
}

void BoundEvaluator::add_subsystem2(Complex sigma1, Complex sigma2) {
  orth_extend(v2_, CMat(tf_.x2(sigma1, sigma2)));
  orth_extend(w2_, CMat(tf_.y1(sigma1 + sigma2)));
  equalize(v2_, w2_);
  rebuild(v2_, w2_, sub2_);
}

void BoundEvaluator::set_bases(const Mat& V1, const Mat& W1, const Mat& V2, const Mat& W2) {
  const Index n = system().n();
  if (V1.rows() != n || W1.rows() != n || V2.rows() != n || W2.rows() != n ||
      V1.cols() != W1.cols() || V2.cols() != W2.cols()) {
    throw DimensionError("BoundEvaluator::set_bases: inconsistent basis shapes");
  }
  v1_.columns = V1;
  w1_.columns = W1;
  v2_.columns = V2;
  w2_.columns = W2;
  rebuild(v1_, w1_, sub1_);
  rebuild(v2_, w2_, sub2_);
}

double BoundEvaluator::beta(Complex s) const {
  {
    std::lock_guard lock(beta_mutex_);
    if (auto it = beta_cache_.find(s); it != beta_cache_.end()) return it->second;
  }
  const double value = qbmor::beta(system(), s, beta_method_);
  std::lock_guard lock(beta_mutex_);
  return beta_cache_.emplace(s, value).first->second;
}

std::size_t BoundEvaluator::beta_cache_size() const {
  std::lock_guard lock(beta_mutex_);
  return beta_cache_.size();
}

BoundEvaluator::ReducedSolve BoundEvaluator::reduced_solve(const Subsystem& sub, Complex s,
                                                           const CVec& rhs) const {
  const Index r = sub.Er.rows();
  if (r == 0) return {CVec(0), CVec(0)};
  const CMat G = s * sub.Er.cast<Complex>() - sub.Ar.cast<Complex>();
  Eigen::PartialPivLU<CMat> lu(G);
  const double rc = lu.rcond();
  if (!std::isfinite(rc) || rc < kReducedSingularRcond) {
    throw SingularPencilError(s, rc, "reduced pencil is singular at s = " + format_complex(s));
  }
  ReducedSolve out;
  out.z = lu.solve(rhs);
  out.z_du = lu.transpose().solve(CVec(-sub.CV.transpose()));
  return out;
}

Residuals BoundEvaluator::residuals(const Subsystem& sub, Complex s, const CVec& b, const CVec& Ct,
                                    const ReducedSolve& rs) {
  Residuals out{b, -Ct};
  if (rs.z.size() == 0) return out;
  out.primal -= s * (sub.EV * rs.z) - sub.AV * rs.z;
  out.dual -= s * (sub.EtW * rs.z_du) - sub.AtW * rs.z_du;
  return out;
}

Residuals BoundEvaluator::residuals_1(Complex s) const {
  const CVec rhs = sub1_.Wt * B_;
  return residuals(sub1_, s, B_, Ct_, reduced_solve(sub1_, s, rhs));
}

Residuals BoundEvaluator::residuals_2(Complex s1, Complex s2) const {
  const CVec b = tf_.rhs_b2(s1, s2);
  const CVec rhs = sub2_.Wt * b;
  return residuals(sub2_, s1 + s2, b, Ct_, reduced_solve(sub2_, s1 + s2, rhs));
}

double BoundEvaluator::delta1(Complex s) const {
  const Residuals r = residuals_1(s);
  const double num = r.dual.norm() * r.primal.norm();
  if (num == 0.0) return 0.0;
  const double b = beta(s);
  return b > 0.0 ? num / b : std::numeric_limits<double>::infinity();
}

double BoundEvaluator::delta2(Complex s1, Complex s2) const {
  const Residuals r = residuals_2(s1, s2);
  const double num = r.dual.norm() * r.primal.norm();
  if (num == 0.0) return 0.0;
  const double b = beta(s1 + s2);
  return b > 0.0 ? num / b : std::numeric_limits<double>::infinity();
}

BoundValue BoundEvaluator::bound(Complex s1, Complex s2) const {
  BoundValue v;
  v.delta1 = delta1(s1);
  v.delta2 = delta2(s1, s2);
  v.delta = v.delta1 + v.delta2;
  return v;
}

Complex BoundEvaluator::h1_reduced(Complex s) const {
  if (sub1_.Er.rows() == 0) return 0.0;
  const CVec rhs = sub1_.Wt * B_;
  return (sub1_.CV * reduced_solve(sub1_, s, rhs).z)(0);
}

Complex BoundEvaluator::h2_reduced(Complex s1, Complex s2) const {
  if (sub2_.Er.rows() == 0) return 0.0;
  const CVec rhs = sub2_.Wt * tf_.rhs_b2(s1, s2);
  return (sub2_.CV * reduced_solve(sub2_, s1 + s2, rhs).z)(0);
}

double BoundEvaluator::true_error1(Complex s) const { return std::abs(tf_.h1(s) - h1_reduced(s)); }

double BoundEvaluator::true_error2(Complex s1, Complex s2) const {
  return std::abs(tf_.h2(s1, s2) - h2_reduced(s1, s2));
}

}  // namespace qbmor
