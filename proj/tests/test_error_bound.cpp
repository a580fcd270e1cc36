#include "doctest.h"

#include <cmath>
#include <random>

#include "qbmor/error_bound.hpp"
#include "qbmor/greedy.hpp"
#include "random_system.hpp"

using namespace qbmor;
using qbmor::testing::random_system;

namespace {

QBSystem linear_part(const QBSystem& s) {
  const Index n = s.n();
  return QBSystem(s.E(), s.A(), Mat::Zero(n, n), SpMat(n, n * n), s.B(), s.C());
}

// Independent oracle: full complex SVD.
double svd_min(const QBSystem& sys, Complex s) {
  CMat G = s * sys.E().cast<Complex>() - sys.A().cast<Complex>();
  return Eigen::JacobiSVD<CMat>(G).singularValues().minCoeff();
}

}  // namespace

TEST_CASE("beta on hand examples") {
  const Mat I = Mat::Identity(2, 2);
  QBSystem zero_a(I, Mat::Zero(2, 2), Mat::Zero(2, 2), SpMat(2, 4), Vec::Ones(2), RowVec::Ones(2));
  CHECK(beta(zero_a, 3.0) == doctest::Approx(3.0).epsilon(1e-14));
  Mat A = Mat::Zero(2, 2);
  A.diagonal() << -1, -2;
  QBSystem diag(I, A, Mat::Zero(2, 2), SpMat(2, 4), Vec::Ones(2), RowVec::Ones(2));
  CHECK(beta(diag, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("beta agrees with an independent SVD") {
  QBSystem sys = random_system(20, 1);
  const Complex s(1.0, 2.0);
  const double ref = svd_min(sys, s);
  CHECK(std::abs(beta(sys, s, BetaMethod::svd) - ref) <= 1e-12 * ref);
  CHECK(std::abs(beta(sys, s, BetaMethod::inverse_iteration) - ref) <= 1e-5 * ref);
  CHECK(beta(sys, s, BetaMethod::automatic) == beta(sys, s, BetaMethod::svd));
}

TEST_CASE("empty bases give the zero-approximation bound") {
  QBSystem sys = random_system(10, 2);
  TransferEvaluator tf(sys);
  BoundEvaluator ev(tf);
  const Complex s(0.5, 1.0), s1(1.0, 0.0), s2(0.3, -0.7);
  const double d1 = sys.C().norm() * sys.B().norm() / svd_min(sys, s);
  CHECK(ev.delta1(s) == doctest::Approx(d1).epsilon(1e-12));
  const double d2 = sys.C().norm() * tf.rhs_b2(s1, s2).norm() / svd_min(sys, s1 + s2);
  CHECK(ev.delta2(s1, s2) == doctest::Approx(d2).epsilon(1e-12));
  CHECK(ev.h1_reduced(s) == 0.0);
  CHECK(ev.true_error1(s) == doctest::Approx(std::abs(tf.h1(s))).epsilon(1e-14));
  BoundValue bv = ev.bound(s1, s2);
  CHECK(bv.delta == bv.delta1 + bv.delta2);
}

TEST_CASE("full-space bases give zero residuals and zero bounds") {
  QBSystem sys = random_system(8, 3);
  TransferEvaluator tf(sys);
  BoundEvaluator ev(tf);
  const Mat I = Mat::Identity(8, 8);
  ev.set_bases(I, I, I, I);
  const Complex s(0.7, 0.4), s1(2.0, 0.0), s2(0.1, 1.0);
  Residuals r1 = ev.residuals_1(s);
  Residuals r2 = ev.residuals_2(s1, s2);
  CHECK(r1.primal.norm() <= 1e-10);
  CHECK(r1.dual.norm() <= 1e-10);
  CHECK(r2.primal.norm() <= 1e-10);
  CHECK(r2.dual.norm() <= 1e-10);
  CHECK(ev.delta1(s) <= 1e-10);
  CHECK(ev.delta2(s1, s2) <= 1e-10);
}

TEST_CASE("linear systems have no second-order bound") {
  QBSystem sys = linear_part(random_system(10, 4));
  TransferEvaluator tf(sys);
  BoundEvaluator ev(tf);
  ev.add_subsystem2(1.0, 2.0);
  CHECK(ev.V2().size() == ev.W2().size());  // x2 vanishes; V2 is only padding
  CHECK(ev.residuals_2(0.5, 0.5).primal.norm() == 0.0);
  CHECK(ev.delta2(0.5, 0.5) == 0.0);
  CHECK(ev.true_error2(0.5, 0.5) == 0.0);
}

TEST_CASE("interpolated points have vanishing error") {
  QBSystem sys = random_system(15, 5);
  TransferEvaluator tf(sys);
  BoundEvaluator ev(tf);
  const Complex a(1.0, 0.5), b(3.0, 0.0);
  ev.add_subsystem1(a);
  ev.add_subsystem2(a, b);
  CHECK(ev.V1().size() == 2);
  CHECK(ev.W1().size() == 2);
  CHECK(ev.true_error1(a) <= 1e-10 * std::abs(tf.h1(a)));
  CHECK(ev.true_error2(a, b) <= 1e-10 * std::abs(tf.h2(a, b)));
  // Two-sided projection: the bound is quadratic in the residuals and small
  // at the interpolation point as well.
  CHECK(ev.delta1(a) <= 1e-8);
}

TEST_CASE("bounds dominate the true errors on a grid") {
  for (unsigned seed : {6u, 7u, 8u}) {
    QBSystem sys = random_system(30, seed);
    TransferEvaluator tf(sys);
    BoundEvaluator ev(tf);
    std::vector<Complex> grid = default_grid(25, 1e-2, 1e3, {0.5, 5.0});
    for (int step = 0; step < 3; ++step) {
      for (Complex s : grid) {
        // Slack relative to |H| absorbs round-off at interpolation points.
        CHECK(ev.delta1(s) >= ev.true_error1(s) - 1e-10 * std::abs(tf.h1(s)));
        CHECK(ev.delta2(grid[5], s) >=
              ev.true_error2(grid[5], s) - 1e-10 * std::abs(tf.h2(grid[5], s)));
      }
      const Complex p = grid[static_cast<std::size_t>(7 * step + 3)];
      ev.add_subsystem1(p);
      ev.add_subsystem2(p, grid[static_cast<std::size_t>(4 * step + 1)]);
    }
  }
}

TEST_CASE("bound is infinite on a pencil eigenvalue and beta is cached") {
  QBSystem s = testing::scalar_system(-1.0, 0.0, 0.0);
  TransferEvaluator tf(s);
  BoundEvaluator ev(tf);
  CHECK(std::isinf(ev.delta1(-1.0)));
  CHECK(ev.beta(-1.0) == 0.0);
  const std::size_t before = ev.beta_cache_size();
  ev.beta(2.0);
  ev.beta(2.0);
  CHECK(ev.beta_cache_size() == before + 1);
}

TEST_CASE("set_bases validates shapes") {
  QBSystem sys = random_system(5, 9);
  TransferEvaluator tf(sys);
  BoundEvaluator ev(tf);
  CHECK_THROWS_AS(ev.set_bases(Mat::Identity(5, 2), Mat::Identity(5, 3), Mat::Identity(5, 1),
                               Mat::Identity(5, 1)),
                  DimensionError);
}
