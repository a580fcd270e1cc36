#include "doctest.h"

#include <random>
#include <thread>

#include "qbmor/transfer.hpp"
#include "random_system.hpp"

using namespace qbmor;
using qbmor::testing::random_system;
using qbmor::testing::scalar_system;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double residual(const CMat& M, const CVec& x, const CVec& b) { return (M * x - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("scalar x1 and y1") {
  QBSystem s = scalar_system(-1.0, 0.0, 0.0);
  TransferEvaluator tf(s);
  CHECK(std::abs(tf.x1(0.0)[0] - 1.0) < 1e-15);
  CHECK(std::abs(tf.x1(1.0)[0] - 0.5) < 1e-15);
  CHECK(std::abs(tf.y1(0.0)[0] - 1.0) < 1e-15);
  CHECK(std::abs(tf.h1(Complex(0, 1)) - 1.0 / Complex(1, 1)) < 1e-15);
}

TEST_CASE("scalar second-order closed forms") {
  const double nu = 0.7, q = 1.3;
  QBSystem s = scalar_system(-1.0, nu, q);
  TransferEvaluator tf(s);
  CHECK(std::abs(tf.rhs_b2(0.0, 0.0)[0] - (q + nu)) < 1e-14);
  CHECK(std::abs(tf.x2(0.0, 0.0)[0] - (q + nu)) < 1e-14);

  const Complex s1(0.3, 0.4), s2(2.0, -1.0);
  const Complex x1a = 1.0 / (s1 + 1.0), x1b = 1.0 / (s2 + 1.0), y1s = 1.0 / (s1 + s2 + 1.0);
  const Complex b2 = q * x1a * x1b + 0.5 * nu * (x1a + x1b);
  CHECK(rel(tf.h2(s1, s2), b2 / (s1 + s2 + 1.0)) < 1e-14);
  const Complex c2 = q * x1b * y1s + 0.5 * nu * y1s;
  CHECK(rel(tf.c2(s1, s2)[0], c2) < 1e-14);
  CHECK(rel(tf.y2(s1, s2)[0], c2 / (s1 + 1.0)) < 1e-14);
}

TEST_CASE("pure quadratic scalar H2 and its derivative") {
  const double q = 2.0;
  QBSystem s = scalar_system(-1.0, 0.0, q);
  TransferEvaluator tf(s);
  CHECK(std::abs(tf.h2(0.0, 0.0) - q) < 1e-14);
  const Complex s1(0.5, 0.2), s2(1.5, -0.3);
  const Complex h = q / ((s1 + s2 + 1.0) * (s1 + 1.0) * (s2 + 1.0));
  CHECK(rel(tf.h2(s1, s2), h) < 1e-14);
  const Complex d1 = -h * (1.0 / (s1 + s2 + 1.0) + 1.0 / (s1 + 1.0));
  const Complex d2 = -h * (1.0 / (s1 + s2 + 1.0) + 1.0 / (s2 + 1.0));
  CHECK(rel(tf.dh2(s1, s2, 1), d1) < 1e-13);
  CHECK(rel(tf.dh2(s1, s2, 2), d2) < 1e-13);
  CHECK_THROWS_AS(tf.dh2(s1, s2, 3), std::invalid_argument);
}

TEST_CASE("linear systems have vanishing second-order terms") {
  QBSystem base = random_system(8, 1);
  QBSystem lin(base.E(), base.A(), Mat::Zero(8, 8), SpMat(8, 64), base.B(), base.C());
  TransferEvaluator tf(lin);
  const Complex s1(1.0, 2.0), s2(0.5, 0.0);
  CHECK(tf.rhs_b2(s1, s2).norm() == 0.0);
  CHECK(tf.x2(s1, s2).norm() == 0.0);
  CHECK(tf.c2(s1, s2).norm() == 0.0);
  CHECK(tf.y2(s1, s2).norm() == 0.0);
  CHECK(tf.h2(s1, s2) == 0.0);
  CHECK(tf.dh2(s1, s2, 1) == 0.0);
}

TEST_CASE("residuals of the primal and dual solves") {
  QBSystem sys = random_system(20, 2);
  TransferEvaluator tf(sys);
  const CMat E = sys.E().cast<Complex>(), A = sys.A().cast<Complex>();
  const CVec B = sys.B().cast<Complex>(), Ct = sys.C().transpose().cast<Complex>();
  const Complex s(2.0, 3.0), s1(1.0, 1.0), s2(0.5, -2.0);
  CHECK(residual(s * E - A, tf.x1(s), B) <= 1e-10);
  CHECK(residual((s1 * E - A).transpose(), tf.y1(s1), Ct) <= 1e-10);
  CHECK(residual((s1 + s2) * E - A, tf.x2(s1, s2), tf.rhs_b2(s1, s2)) <= 1e-10);
  CHECK(residual((s1 * E - A).transpose(), tf.y2(s1, s2), tf.c2(s1, s2)) <= 1e-10);
  CHECK((tf.pencil(s) - (s * E - A)).norm() == 0.0);
}

TEST_CASE("symmetric systems have y1 = x1") {
  std::mt19937 rng(3);
  Mat R = Mat::Random(6, 6);
  Mat A = -(Mat::Identity(6, 6) * 3.0 + R * R.transpose());
  Vec B = testing::random_vec(6, rng);
  QBSystem sys(Mat::Identity(6, 6), A, Mat::Zero(6, 6), SpMat(6, 36), B, B.transpose());
  TransferEvaluator tf(sys);
  const Complex s(0.7, 1.1);
  CHECK((tf.y1(s) - tf.x1(s)).norm() <= 1e-13 * tf.x1(s).norm());
}

TEST_CASE("H2 symmetry and conjugate symmetry") {
  for (unsigned seed = 10; seed < 14; ++seed) {
    QBSystem sys = random_system(12, seed);
    TransferEvaluator tf(sys);
    const Complex s1(0.4, 1.7), s2(3.0, -0.6);
    CHECK(rel(tf.h2(s1, s2), tf.h2(s2, s1)) < 1e-12);
    CHECK(rel(tf.h2(std::conj(s1), std::conj(s2)), std::conj(tf.h2(s1, s2))) < 1e-12);
    CHECK(rel(tf.h1(std::conj(s1)), std::conj(tf.h1(s1))) < 1e-12);
    // H2 is also reachable from the dual side: y1(s1+s2)^T B2(s1,s2).
    CHECK(rel(tf.y1(s1 + s2).transpose() * tf.rhs_b2(s1, s2), tf.h2(s1, s2)) < 1e-11);
  }
}

TEST_CASE("dH2 matches central differences") {
  for (unsigned seed = 20; seed < 25; ++seed) {
    QBSystem sys = random_system(10, seed);
    TransferEvaluator tf(sys);
    const Complex s1(0.8, 0.5), s2(1.9, 0.0);
    const double h = 1e-5;
    const Complex fd1 = (tf.h2(s1 + h, s2) - tf.h2(s1 - h, s2)) / (2 * h);
    const Complex fd2 = (tf.h2(s1, s2 + h) - tf.h2(s1, s2 - h)) / (2 * h);
    CHECK(rel(tf.dh2(s1, s2, 1), fd1) < 1e-6);
    CHECK(rel(tf.dh2(s1, s2, 2), fd2) < 1e-6);
    const Complex s(1.2, 0.3);
    CHECK(rel(tf.dh2(s, s, 1), tf.dh2(s, s, 2)) < 1e-12);
  }
}

TEST_CASE("free functions agree with the evaluator") {
  QBSystem sys = random_system(7, 4);
  TransferEvaluator tf(sys);
  const Complex s1(1.0, 0.5), s2(2.0, 0.0);
  CHECK(H1(sys, s1) == tf.h1(s1));
  CHECK(H2(sys, s1, s2) == tf.h2(s1, s2));
  CHECK(dH2(sys, s1, s2, 2) == tf.dh2(s1, s2, 2));
  CHECK(solve_x2(sys, s1, s2) == tf.x2(s1, s2));
  CHECK(solve_y2(sys, s1, s2) == tf.y2(s1, s2));
}

TEST_CASE("singular pencil is reported with the offending point") {
  QBSystem s = scalar_system(-1.0, 0.0, 0.0);
  TransferEvaluator tf(s);
  try {
    tf.x1(-1.0);
    FAIL("expected SingularPencilError");
  } catch (const SingularPencilError& e) {
    CHECK(e.point() == Complex(-1.0));
  }
}

TEST_CASE("concurrent evaluation matches serial results") {
  QBSystem sys = random_system(15, 5);
  TransferEvaluator ref(sys), shared(sys, 4);
  std::vector<Complex> pts;
  for (int k = 0; k < 12; ++k) pts.emplace_back(0.1 * (k + 1), 0.3 * k);
  std::vector<Complex> got(pts.size());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = static_cast<std::size_t>(t); i < pts.size(); i += 4)
        got[i] = shared.h2(pts[i], pts[(i + 1) % pts.size()]);
    });
  }
  for (auto& th : threads) th.join();
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(got[i] == ref.h2(pts[i], pts[(i + 1) % pts.size()]));
}
