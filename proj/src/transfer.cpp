#include "qbmor/transfer.hpp"

#include <cassert>
#include <cmath>

namespace qbmor {

namespace {

// Below this reciprocal condition estimate the pencil is treated as singular.
constexpr double kSingularRcond = 1e-14;

[[maybe_unused]] double backward_error(const CMat& G, const CVec& x, const CVec& b) {
  const double denom = G.norm() * x.norm() + b.norm();
  return denom > 0 ? (G * x - b).norm() / denom : 0.0;
}

}  // namespace

TransferEvaluator::TransferEvaluator(const QBSystem& sys, std::size_t lu_cache_capacity)
    : sys_(sys),
      E_(sys.E().cast<Complex>()),
      A_(sys.A().cast<Complex>()),
      N_(sys.N().cast<Complex>()),
      B_(sys.B().cast<Complex>()),
      Ct_(sys.C().transpose().cast<Complex>()),
      capacity_(lu_cache_capacity) {}

CMat TransferEvaluator::pencil(Complex s) const { return s * E_ - A_; }

std::shared_ptr<const TransferEvaluator::Factorization> TransferEvaluator::factor(Complex s) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = lu_cache_.find(s); it != lu_cache_.end()) return it->second;
  }
  auto f = std::make_shared<Factorization>();
  f->lu.compute(pencil(s));
  double rc = f->lu.rcond();
  if (!std::isfinite(rc)) rc = 0.0;
  if (rc < kSingularRcond) {
    throw SingularPencilError(s, rc,
                              "pencil sE - A is singular at s = " + format_complex(s) +
                                  " (rcond " + std::to_string(rc) + ")");
  }
  std::lock_guard lock(mutex_);
  if (capacity_ == 0) return f;
  auto [it, inserted] = lu_cache_.emplace(s, f);
  if (inserted) {
    lu_order_.push_back(s);
    if (lu_order_.size() > capacity_) {
      lu_cache_.erase(lu_order_.front());
      lu_order_.pop_front();
    }
  }
  return it->second;
}

CVec TransferEvaluator::solve(Complex s, const CVec& rhs) const {
  const auto f = factor(s);
  CVec x = f->lu.solve(rhs);
  assert(backward_error(pencil(s), x, rhs) <= 1e-10);
  return x;
}

CVec TransferEvaluator::solve_transpose(Complex s, const CVec& rhs) const {
  const auto f = factor(s);
  CVec x = f->lu.transpose().solve(rhs);
  assert(backward_error(pencil(s).transpose(), x, rhs) <= 1e-10);
  return x;
}

CVec TransferEvaluator::x1(Complex s) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = x1_cache_.find(s); it != x1_cache_.end()) return it->second;
  }
  CVec x = solve(s, B_);
  std::lock_guard lock(mutex_);
  return x1_cache_.emplace(s, std::move(x)).first->second;
}

CVec TransferEvaluator::y1(Complex s) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = y1_cache_.find(s); it != y1_cache_.end()) return it->second;
  }
  CVec y = solve_transpose(s, Ct_);
  std::lock_guard lock(mutex_);
  return y1_cache_.emplace(s, std::move(y)).first->second;
}

CVec TransferEvaluator::rhs_b2(Complex s1, Complex s2) const {
  const CVec a = x1(s1);
  const CVec b = x1(s2);
  CVec out = apply_quadratic<Complex>(sys_.Q(), a, b);
  out.noalias() += 0.5 * (N_ * (a + b));
  return out;
}

CVec TransferEvaluator::x2(Complex s1, Complex s2) const { return solve(s1 + s2, rhs_b2(s1, s2)); }

CVec TransferEvaluator::c2(Complex s1, Complex s2) const {
  const CVec y = y1(s1 + s2);
  CVec out = apply_mode2<Complex>(sys_.Q(), x1(s2), y);
  out.noalias() += 0.5 * (N_.transpose() * y);
  return out;
}

CVec TransferEvaluator::y2(Complex s1, Complex s2) const {
  return solve_transpose(s1, c2(s1, s2));
}

Complex TransferEvaluator::h1(Complex s) const { return Ct_.transpose() * x1(s); }

Complex TransferEvaluator::h2(Complex s1, Complex s2) const {
  return Ct_.transpose() * x2(s1, s2);
}

Complex TransferEvaluator::dh2(Complex s1, Complex s2, int which) const {
  if (which != 1 && which != 2) throw std::invalid_argument("dh2: which must be 1 or 2");
  const CVec ysum = y1(s1 + s2);
  const CVec xx2 = x2(s1, s2);
  const Complex common = -(ysum.transpose() * (E_ * xx2))(0);
  if (which == 1) {
    return common - (x1(s1).transpose() * (E_.transpose() * y2(s1, s2)))(0);
  }
  return common - (x1(s2).transpose() * (E_.transpose() * y2(s2, s1)))(0);
}

CVec solve_x1(const QBSystem& sys, Complex s) { return TransferEvaluator(sys, 0).x1(s); }
CVec solve_y1(const QBSystem& sys, Complex s) { return TransferEvaluator(sys, 0).y1(s); }
CVec rhs_B2(const QBSystem& sys, Complex s1, Complex s2) {
  return TransferEvaluator(sys, 0).rhs_b2(s1, s2);
}
CVec solve_x2(const QBSystem& sys, Complex s1, Complex s2) {
  return TransferEvaluator(sys, 0).x2(s1, s2);
}
CVec solve_y2(const QBSystem& sys, Complex s1, Complex s2) {
  return TransferEvaluator(sys, 0).y2(s1, s2);
}
Complex H1(const QBSystem& sys, Complex s) { return TransferEvaluator(sys, 0).h1(s); }
Complex H2(const QBSystem& sys, Complex s1, Complex s2) {
  return TransferEvaluator(sys).h2(s1, s2);
}
Complex dH2(const QBSystem& sys, Complex s1, Complex s2, int which) {
  return TransferEvaluator(sys).dh2(s1, s2, which);
}

}  // namespace qbmor
