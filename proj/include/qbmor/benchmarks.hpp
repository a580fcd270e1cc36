#pragma once

#include <string>

#include "qbmor/input_signal.hpp"
#include "qbmor/qb_model.hpp"
#include "qbmor/sim.hpp"

namespace qbmor {

enum class BenchmarkKind { rc_ladder, burgers, fitzhugh_nagumo };

/// Accepts "rc", "burgers", "fhn" and the full enum names.
BenchmarkKind benchmark_kind_from_string(const std::string& name);
std::string to_string(BenchmarkKind kind);

struct BurgersOptions {
  Index n = 100;
  double nu = 0.01;
  /// Boundary alpha v(0,t) + beta v_x(0,t) = u(t). Only beta = 0 is supported.
  double alpha = 1.0;
  double beta = 0.0;
  /// Use nu * v * v_xx instead of nu * v_xx.
  bool literal_viscous = false;
};

struct FhnOptions {
  Index nbar = 100;
  double epsilon = 0.015;
  double h = 0.5;
  double gamma = 0.05;
  double g = 0.05;
};

struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::rc_ladder;
  Index rc_nodes = 50;
  BurgersOptions burgers;
  FhnOptions fhn;

  void validate() const;
};

/// Nonlinear RC ladder with diode current g(v) = exp(40 v) + v - 1 and unit
/// capacitances, lifted with z0 = exp(40 v1) - 1 and
/// w_i = exp(40 (v_i - v_{i+1})) - 1. State order [v_1..v_l, z0, w_1..w_{l-1}],
/// n = 2l, E = I, y = v_1.
QBSystem rc_ladder(Index l);

/// Burgers' equation v_t + v v_x = nu v_xx on (0,1), central differences on
/// x_i = i/(n+1), Dirichlet control v(0,t) = u(t)/alpha, ghost node
/// v_{n+1} = v_n at the right end. y is the mean of the nodal values.
QBSystem burgers(const BurgersOptions& opts);

/// FitzHugh-Nagumo
///   eps v_t = eps^2 v_xx + f(v) - w + g,  w_t = h v - gamma w + g,
///   f(v) = v (v - 0.1) (1 - v),  v_x(0,t) = -i0(t),  v_x(1,t) = 0,
/// on the nodes x_i = i/(nbar-1), lifted with z_i = v_i^2. The constant g is
/// carried by a state x_c with x_c' = 0 and x_c(0) = 1. State order
/// [v, w, z, x_c], n = 3 nbar + 1, y = v(0).
QBSystem fitzhugh_nagumo(const FhnOptions& opts);

QBSystem build_benchmark(const BenchmarkSpec& spec);

/// Input signals used with each benchmark: exp(-t) for RC, cos(pi t) for
/// Burgers, 5e4 t^3 exp(-15 t) for FitzHugh-Nagumo.
InputSignal benchmark_input(BenchmarkKind kind);

/// Integrates the original (unlifted) nonlinear ODEs with the same
/// integrators as simulate_qb. Implicit Euler uses a forward-difference
/// Jacobian.
Trajectory simulate_original(const BenchmarkSpec& spec, const InputSignal& u,
                             const SimOptions& opts);

}  // namespace qbmor
