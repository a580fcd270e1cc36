#include "doctest.h"

#include <random>

#include "qbmor/qb_model.hpp"
#include "random_system.hpp"

using namespace qbmor;
using qbmor::testing::random_quadratic;
using qbmor::testing::random_vec;

namespace {

SpMat sparse(const Mat& m) { return m.sparseView(); }

// Brute force Q (u kron v) through an explicit Kronecker vector.
Vec brute_quadratic(const Mat& Q, const Vec& u, const Vec& v) {
  Vec k(u.size() * v.size());
  for (Index i = 0; i < u.size(); ++i)
    for (Index j = 0; j < v.size(); ++j) k[i * v.size() + j] = u[i] * v[j];
  return Q * k;
}

double tensor(const Mat& Q, Index i, Index j, Index k) { return Q(i, j * Q.rows() + k); }

}  // namespace

TEST_CASE("kron of unit vectors") {
  Vec u(2), v(2);
  u << 1, 0;
  v << 0, 1;
  Vec expect(4);
  expect << 0, 1, 0, 0;
  CHECK(kron(u, v) == expect);
}

TEST_CASE("kron with a scalar factor") {
  Vec u = Vec::Constant(1, 1.0);
  Vec v = Vec::Constant(1, -3.25);
  CHECK(kron(u, v)[0] == -3.25);
}

TEST_CASE("kron index formula") {
  Vec u(2), v(2);
  u << 2, 3;
  v << 5, 7;
  Vec expect(4);
  expect << 10, 14, 15, 21;
  CHECK(kron(u, v) == expect);
}

TEST_CASE("apply_quadratic scalar and zero cases") {
  SpMat Q = sparse(Mat::Constant(1, 1, 2.5));
  Vec u = Vec::Constant(1, 3.0), v = Vec::Constant(1, -4.0);
  CHECK(apply_quadratic<double>(Q, u, v)[0] == doctest::Approx(-30.0));

  std::mt19937 rng(1);
  Mat Qd = random_quadratic(3, rng);
  Vec r = apply_quadratic<double>(sparse(Qd), Vec::Zero(3), random_vec(3, rng));
  CHECK(r.isZero(0.0));
}

TEST_CASE("apply_quadratic matches explicit kron product") {
  std::mt19937 rng(2);
  for (Index n : {2, 3, 7}) {
    Mat Q = random_quadratic(n, rng, 0.5);
    Vec u = random_vec(n, rng), v = random_vec(n, rng);
    Vec expect = brute_quadratic(Q, u, v);
    Vec got = apply_quadratic<double>(sparse(Q), u, v);
    CHECK((got - expect).norm() <= 1e-13 * (1.0 + expect.norm()));
  }
}

TEST_CASE("apply_quadratic rejects wrong column count") {
  SpMat Q(2, 3);
  Vec u = Vec::Ones(2);
  CHECK_THROWS_AS(apply_quadratic<double>(Q, u, u), DimensionError);
}

TEST_CASE("symmetrize leaves n = 1 unchanged") {
  SpMat Q = sparse(Mat::Constant(1, 1, 4.0));
  CHECK(Mat(symmetrize_quadratic(Q)) == Mat(Q));
}

TEST_CASE("symmetrize splits a single entry") {
  // Tensor entry Q(0, 0, 1) = 1 lives at column 0*2 + 1.
  Mat Q = Mat::Zero(2, 4);
  Q(0, 1) = 1.0;
  Mat S = Mat(symmetrize_quadratic(sparse(Q)));
  Mat expect = Mat::Zero(2, 4);
  expect(0, 1) = 0.5;  // (0, 0, 1)
  expect(0, 2) = 0.5;  // (0, 1, 0)
  CHECK(S == expect);
}

TEST_CASE("symmetrized operator is symmetric and preserves the quadratic form") {
  std::mt19937 rng(3);
  const Index n = 3;
  Mat Q = random_quadratic(n, rng);
  SpMat S = symmetrize_quadratic(sparse(Q));
  for (int t = 0; t < 5; ++t) {
    Vec u = random_vec(n, rng), v = random_vec(n, rng), x = random_vec(n, rng);
    Vec a = apply_quadratic<double>(S, u, v);
    Vec b = apply_quadratic<double>(S, v, u);
    CHECK((a - b).norm() <= 1e-13 * a.norm());
    Vec qx = brute_quadratic(Q, x, x);
    CHECK((apply_quadratic<double>(S, x, x) - qx).norm() <= 1e-13 * qx.norm());
  }
  CHECK(symmetry_defect(S, 10) <= 1e-14);
  CHECK(symmetry_defect(sparse(Q), 10) > 1e-3);
}

TEST_CASE("mode-2 matricization of a hand example") {
  // Frontal slices Q1 = [[1,2],[3,4]], Q2 = [[5,6],[7,8]].
  Mat Q(2, 4);
  Q << 1, 2, 5, 6,
       3, 4, 7, 8;
  Mat expect(2, 4);
  expect << 1, 3, 5, 7,
            2, 4, 6, 8;
  CHECK(Mat(mode2_matricization(sparse(Q))) == expect);
  SpMat one = sparse(Mat::Constant(1, 1, 9.0));
  CHECK(Mat(mode2_matricization(one)) == Mat(one));
}

TEST_CASE("mode-2 and mode-3 entries follow the tensor layout") {
  std::mt19937 rng(4);
  const Index n = 3;
  Mat Q = random_quadratic(n, rng);
  Mat Q2 = Mat(mode2_matricization(sparse(Q)));
  Mat Q3 = Mat(mode3_matricization(sparse(Q)));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        // Q2(a, j, b) = Q(b, j, a), Q3(j, a, b) = Q(b, j, a)
        CHECK(tensor(Q2, k, j, i) == tensor(Q, i, j, k));
        CHECK(tensor(Q3, j, k, i) == tensor(Q, i, j, k));
      }
}

TEST_CASE("matricization identity w^T Q (u kron v) = u^T Q2 (v kron w)") {
  std::mt19937 rng(5);
  const Index n = 4;
  SpMat S = symmetrize_quadratic(sparse(random_quadratic(n, rng)));
  SpMat S2 = mode2_matricization(S);
  for (int t = 0; t < 10; ++t) {
    Vec u = random_vec(n, rng), v = random_vec(n, rng), w = random_vec(n, rng);
    const double lhs = w.dot(apply_quadratic<double>(S, u, v));
    const double rhs = u.dot(apply_quadratic<double>(S2, v, w));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    // The matrix-free form agrees with the explicit matricization.
    Vec m2 = apply_mode2<double>(S, v, w);
    CHECK((m2 - apply_quadratic<double>(S2, v, w)).norm() <= 1e-13 * (1.0 + m2.norm()));
  }
}

TEST_CASE("quadratic_jacobian matches finite differences") {
  std::mt19937 rng(6);
  const Index n = 5;
  SpMat S = symmetrize_quadratic(sparse(random_quadratic(n, rng)));
  Vec x = random_vec(n, rng);
  Mat J = quadratic_jacobian(S, x);
  const double h = 1e-6;
  for (Index j = 0; j < n; ++j) {
    Vec e = Vec::Unit(n, j);
    Vec fd = (apply_quadratic<double>(S, Vec(x + h * e), Vec(x + h * e)) -
              apply_quadratic<double>(S, Vec(x - h * e), Vec(x - h * e))) /
             (2 * h);
    CHECK((J.col(j) - fd).norm() <= 1e-7 * (1.0 + fd.norm()));
  }
  // For symmetric Q the Jacobian is 2 Q (x kron .).
  for (Index j = 0; j < n; ++j) {
    Vec col = 2.0 * apply_quadratic<double>(S, x, Vec(Vec::Unit(n, j)));
    CHECK((J.col(j) - col).norm() <= 1e-13 * (1.0 + col.norm()));
  }
}

TEST_CASE("QBSystem symmetrizes Q and validates dimensions") {
  std::mt19937 rng(7);
  const Index n = 3;
  Mat Q = random_quadratic(n, rng);
  Mat I = Mat::Identity(n, n);
  QBSystem sys = QBSystem::from_dense(I, -I, Mat::Zero(n, n), Q, Vec::Ones(n),
                                      RowVec::Ones(n), "s");
  CHECK(sys.n() == n);
  CHECK(sys.q_symmetrized());
  CHECK(symmetry_defect(sys.Q(), 10) <= 1e-14);
  CHECK_FALSE(sys.is_linear());
  CHECK(sys.initial_state_or_zero().isZero(0.0));

  CHECK_THROWS_AS(QBSystem::from_dense(I, -I, Mat::Zero(n, n), Mat::Zero(n, n), Vec::Ones(n),
                                       RowVec::Ones(n)),
                  DimensionError);
  CHECK_THROWS_AS(QBSystem::from_dense(I, -I, Mat::Zero(n, n), Q, Vec::Ones(n + 1),
                                       RowVec::Ones(n)),
                  DimensionError);
  CHECK_THROWS_AS(QBSystem::from_dense(Mat::Identity(n + 1, n + 1), -I, Mat::Zero(n, n), Q,
                                       Vec::Ones(n), RowVec::Ones(n)),
                  DimensionError);
}

TEST_CASE("linear system and pencil regularity") {
  const Index n = 2;
  Mat I = Mat::Identity(n, n);
  QBSystem lin = QBSystem::from_dense(I, -I, Mat::Zero(n, n), Mat::Zero(n, n * n), Vec::Ones(n),
                                      RowVec::Ones(n));
  CHECK(lin.is_linear());
  CHECK(pencil_is_regular(lin));
  QBSystem sing = QBSystem::from_dense(Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n),
                                       Mat::Zero(n, n * n), Vec::Ones(n), RowVec::Ones(n));
  CHECK_FALSE(pencil_is_regular(sing));
}
