#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qbmor/input_signal.hpp"
#include "qbmor/qb_model.hpp"

namespace qbmor {

enum class Scheme { implicit_euler, rk4 };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct SimOptions {
  double t_end = 10.0;
  double dt = 1e-3;
  Scheme scheme = Scheme::implicit_euler;
  double newton_tol = 1e-10;
  int newton_max_iters = 20;
  /// |y| above this (or a non-finite state) stops the run as diverged.
  double divergence_threshold = 1e6;
  /// Treat a Newton failure like divergence (truncate and flag) instead of
  /// throwing. Used when simulating reduced models that may blow up.
  bool newton_failure_is_divergence = false;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> outputs;
  std::string system_id;
  std::string input_kind;
  Scheme scheme = Scheme::implicit_euler;
  double dt = 0.0;
  bool diverged = false;
  /// Index of the first step that was not stored, when diverged.
  std::size_t diverged_at = 0;
  std::string stop_reason;

  std::size_t size() const { return times.size(); }
};

/// A first-order system M x' = f(t, x), y = output(x). An empty mass matrix
/// means the identity. The Jacobian df/dx is needed by implicit Euler only.
struct OdeSystem {
  Mat mass;
  std::function<Vec(double, const Vec&)> rhs;
  std::function<Mat(double, const Vec&)> jacobian;
  std::function<double(const Vec&)> output;
  Vec x0;
};

/// Fixed-step integration on the uniform grid t_k = k dt, k = 0..round(t_end/dt).
/// Implicit Euler solves M (x+ - x) / dt = f(t+, x+) by Newton with the scaled
/// residual ||F|| <= newton_tol (1 + ||M x+|| / dt); failure throws
/// NewtonFailure carrying the step index. RK4 applies M^{-1} via one LU.
Trajectory integrate(const OdeSystem& ode, const SimOptions& opts);

/// Simulates E x' = A x + N x u + Q (x kron x) + B u from the system's
/// initial state (zero unless set).
Trajectory simulate_qb(const QBSystem& sys, const InputSignal& u, const SimOptions& opts);

struct OutputComparison {
  std::vector<double> abs_error;
  std::vector<double> rel_error;  // |y - yr| / max_t |y|
  double max_abs = 0.0;
  double max_rel = 0.0;
  /// Number of compared samples; shorter than the full run when the reduced
  /// trajectory diverged.
  std::size_t compared = 0;
};

/// Pointwise errors of `rom` against `full`. Both must share the time grid;
/// a diverged ROM trajectory may be a prefix of it.
OutputComparison compare_outputs(const Trajectory& full, const Trajectory& rom);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace qbmor
