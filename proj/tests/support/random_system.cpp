#include "random_system.hpp"

namespace qbmor::testing {

Vec random_vec(Index n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

CVec random_cvec(Index n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  CVec v(n);
  for (Index i = 0; i < n; ++i) v[i] = {d(rng), d(rng)};
  return v;
}

Mat random_quadratic(Index n, std::mt19937& rng, double density) {
  std::normal_distribution<double> d;
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  Mat Q = Mat::Zero(n, n * n);
  for (Index j = 0; j < Q.cols(); ++j) {
    for (Index i = 0; i < n; ++i) {
      if (keep(rng) < density) Q(i, j) = d(rng);
    }
  }
  return Q;
}

QBSystem random_system(Index n, unsigned seed, const RandomSystemOptions& o) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Mat R(n, n), S(n, n), P(n, n), Nm(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      R(i, j) = d(rng);
      S(i, j) = d(rng);
      P(i, j) = d(rng);
      Nm(i, j) = d(rng);
    }
  }
  const double sn = std::sqrt(static_cast<double>(n));
  Mat A = -(2.0 * Mat::Identity(n, n) + R * R.transpose() / static_cast<double>(n)) +
          0.3 * (S - S.transpose()) / sn;
  Mat E = Mat::Identity(n, n);
  if (o.descriptor) E += 0.1 * (P + P.transpose()) / (2.0 * sn);
  Mat N = o.n_scale * Nm / sn;
  Mat Q = o.q_scale * random_quadratic(n, rng, o.q_density) / sn;
  Vec B = random_vec(n, rng);
  RowVec C = random_vec(n, rng).transpose();
  return QBSystem::from_dense(std::move(E), std::move(A), std::move(N), Q, std::move(B),
                              std::move(C), "random_" + std::to_string(n) + "_" +
                                                std::to_string(seed));
}

QBSystem scalar_system(double a, double nu, double q, double b, double c) {
  Mat E = Mat::Constant(1, 1, 1.0);
  Mat A = Mat::Constant(1, 1, a);
  Mat N = Mat::Constant(1, 1, nu);
  Mat Q = Mat::Constant(1, 1, q);
  Vec B = Vec::Constant(1, b);
  RowVec C = RowVec::Constant(1, c);
  return QBSystem::from_dense(std::move(E), std::move(A), std::move(N), Q, std::move(B),
                              std::move(C), "scalar");
}

}  // namespace qbmor::testing
