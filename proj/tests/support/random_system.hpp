#pragma once

#include <random>

#include "qbmor/qb_model.hpp"

namespace qbmor::testing {

struct RandomSystemOptions {
  bool descriptor = true;    // E = I + small symmetric perturbation
  double n_scale = 0.3;      // size of N
  double q_scale = 0.3;      // size of Q
  double q_density = 0.3;    // fraction of nonzero Q entries
};

/// Random stable SISO QB system: A = -(2 I + R R^T / n) + 0.3 S with S skew,
/// so the symmetric part of A is negative definite.
QBSystem random_system(Index n, unsigned seed, const RandomSystemOptions& opts = {});

/// Random dense n x n^2 matrix (not symmetrized).
Mat random_quadratic(Index n, std::mt19937& rng, double density = 1.0);

Vec random_vec(Index n, std::mt19937& rng);
CVec random_cvec(Index n, std::mt19937& rng);

/// Scalar system E=1, A=a, N=nu, Q=q, B=b, C=c.
QBSystem scalar_system(double a, double nu, double q, double b = 1.0, double c = 1.0);

}  // namespace qbmor::testing
