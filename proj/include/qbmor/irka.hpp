#pragma once

#include <span>
#include <vector>

#include "qbmor/projection.hpp"

namespace qbmor {

struct IrkaConfig {
  int r = 6;
  /// Empty means r log-spaced real points in [1e-1, 1e3].
  std::vector<Complex> init_points;
  double tol = 1e-4;
  int max_iters = 100;
  double deflation_tol = 1e-8;
};

struct IrkaResult {
  std::vector<Complex> points;  // sorted by (real, imag)
  int iterations = 0;
  bool converged = false;
  /// Some Ritz value had a nonnegative real part and was mirrored.
  bool reflected = false;
  double movement = 0.0;  // last max relative point change
};

/// Lexicographic (real, imag) order.
void sort_points(std::vector<Complex>& points);

/// Iterative rational Krylov on the linear part (E, A, B, C): bases from
/// x1(sigma_i) and y1(sigma_i), new points are the mirrored Ritz values of
/// (W^T A V, W^T E V). Stops when the max relative point movement drops
/// below tol.
IrkaResult irka_linear(const QBSystem& sys, const IrkaConfig& cfg);

/// ROM from points sigma_i, built from the pair bases with pairs
/// (sigma_i, sigma_i): V = span{x1(s), x2(s,s)}, W = span{y1(2s), y2(s,s)}.
/// One-sided uses W := V. A positive target_r truncates both bases.
ReducedQBSystem irka_rom(const QBSystem& sys, std::span<const Complex> points, bool two_sided,
                         Index target_r = 0, const ReduceOptions& opts = {});

}  // namespace qbmor
