#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qbmor/error_bound.hpp"
#include "qbmor/kernels.hpp"
#include "qbmor/projection.hpp"

namespace qbmor {

struct GreedyRecord {
  int iter = 0;
  Complex sigma1;
  Complex sigma2;
  double delta1 = 0.0;  // max over S1 of Delta1
  double delta2 = 0.0;  // max over S2 of Delta2(sigma1_next, .)
  double delta = 0.0;   // delta1 + delta2
  double true_error = std::numeric_limits<double>::quiet_NaN();
  Index basis_V = 0;
  Index basis_W = 0;
  double wall_time = 0.0;  // seconds since the start of the run
};

struct GreedyTrace {
  std::vector<GreedyRecord> records;
};

struct GreedyConfig {
  Complex sigma10{1.0, 0.0};
  Complex sigma20{1.0, 0.0};
  std::vector<Complex> S1;
  std::vector<Complex> S2;
  double eps_tol = 1e-5;
  int max_iters = 10;
  bool validate_true_error = false;
  double deflation_tol = 1e-8;
  int stagnation_window = 3;
  BetaMethod beta_method = BetaMethod::automatic;
  kernels::Exec exec = kernels::Exec::parallel;

  /// Called after each iteration with the record and the bound evaluator in
  /// the state that produced it.
  std::function<void(const GreedyRecord&, const BoundEvaluator&)> on_iteration;

  /// Throws ConfigError if the configuration is unusable.
  void validate() const;
};

enum class GreedyStatus { converged, max_iters, stagnated };

std::string to_string(GreedyStatus status);

struct GreedyResult {
  Mat V;
  Mat W;
  std::vector<PointPair> pairs;
  GreedyTrace trace;
  GreedyStatus status = GreedyStatus::max_iters;
  std::vector<std::string> warnings;

  bool converged() const { return status == GreedyStatus::converged; }
};

/// `count` logarithmically spaced real points in [lo, hi], followed by i*w for
/// each w in `imag`.
std::vector<Complex> default_grid(int count = 50, double lo = 1e-2, double hi = 1e4,
                                  const std::vector<double>& imag = {});

/// Adaptive selection of interpolation pairs. Each iteration, with current
/// pair (sigma1, sigma2):
///
///   1. enrich subsystem 1 at sigma1;
///   2. sigma1_next = argmax over S1 of Delta1;
///   3. enrich subsystem 2 at (sigma1, sigma2);
///   4. sigma2_next = argmax over S2 of Delta2(sigma1_next, .);
///   5. extend the final bases V, W with the two-point Hermite vectors of the pair;
///   6. eps = max Delta1 + max Delta2, stop once eps <= eps_tol.
///
/// Already selected points are excluded from later argmax scans. Grid points
/// where a solve fails are skipped with a warning.
GreedyResult run_greedy(const QBSystem& sys, const GreedyConfig& cfg);

/// Equal-size Petrov-Galerkin ROM from the greedy bases.
ReducedQBSystem reduce_final(const QBSystem& sys, const GreedyResult& result,
                             const ReduceOptions& opts = {});

void write_trace_csv(const GreedyTrace& trace, const std::string& path);
GreedyTrace read_trace_csv(const std::string& path);

}  // namespace qbmor
