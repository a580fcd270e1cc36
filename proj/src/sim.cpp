#include "qbmor/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "qbmor/csv.hpp"

namespace qbmor {

std::string to_string(Scheme scheme) {
  return scheme == Scheme::rk4 ? "rk4" : "implicit_euler";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "implicit_euler") return Scheme::implicit_euler;
  if (name == "rk4") return Scheme::rk4;
  throw ConfigError("unknown integration scheme '" + name + "'");
}

namespace {

bool is_identity(const Mat& M) { return M.size() == 0 || M.isIdentity(0.0); }

}  // namespace

Trajectory integrate(const OdeSystem& ode, const SimOptions& opts) {
  if (!(opts.dt > 0.0) || !(opts.t_end >= 0.0)) {
    throw ConfigError("simulation needs dt > 0 and t_end >= 0");
  }
  const Index n = ode.x0.size();
  const bool unit_mass = is_identity(ode.mass);
  if (!unit_mass && (ode.mass.rows() != n || ode.mass.cols() != n)) {
    throw DimensionError("integrate: mass matrix does not match the state dimension");
  }
  if (opts.scheme == Scheme::implicit_euler && !ode.jacobian) {
    throw ConfigError("implicit Euler needs a Jacobian");
  }

  Eigen::PartialPivLU<Mat> mass_lu;
  if (opts.scheme == Scheme::rk4 && !unit_mass) {
    mass_lu.compute(ode.mass);
    if (!(mass_lu.rcond() > 1e-14)) {
      throw NumericalError("rk4 needs an invertible E (rcond estimate " +
                           std::to_string(mass_lu.rcond()) + ")");
    }
  }
  auto field = [&](double t, const Vec& x) -> Vec {
    return unit_mass ? ode.rhs(t, x) : Vec(mass_lu.solve(ode.rhs(t, x)));
  };

  const auto steps = static_cast<std::size_t>(std::llround(opts.t_end / opts.dt));
  Trajectory traj;
  traj.scheme = opts.scheme;
  traj.dt = opts.dt;
  traj.times.reserve(steps + 1);
  traj.outputs.reserve(steps + 1);

  Vec x = ode.x0;
  auto record = [&](std::size_t k) {
    const double y = ode.output(x);
    if (!std::isfinite(y) || std::abs(y) > opts.divergence_threshold || !x.allFinite()) {
      traj.diverged = true;
      traj.diverged_at = k;
      traj.stop_reason = "output exceeded the divergence threshold";
      return false;
    }
    traj.times.push_back(static_cast<double>(k) * opts.dt);
    traj.outputs.push_back(y);
    return true;
  };
  if (!record(0)) return traj;

  const double h = opts.dt;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t0 = static_cast<double>(k - 1) * h;
    const double t1 = static_cast<double>(k) * h;
    if (opts.scheme == Scheme::rk4) {
      const Vec k1 = field(t0, x);
      const Vec k2 = field(t0 + h / 2, x + h / 2 * k1);
      const Vec k3 = field(t0 + h / 2, x + h / 2 * k2);
      const Vec k4 = field(t1, x + h * k3);
      x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    } else {
      const Vec Mx = unit_mass ? x : Vec(ode.mass * x);
      Vec xn = x;
      bool ok = false;
      for (int it = 0; it < opts.newton_max_iters; ++it) {
        const Vec Mxn = unit_mass ? xn : Vec(ode.mass * xn);
        const Vec F = (Mxn - Mx) / h - ode.rhs(t1, xn);
        if (!F.allFinite()) break;
        if (F.norm() <= opts.newton_tol * (1.0 + Mxn.norm() / h)) {
          ok = true;
          break;
        }
        Mat J = -ode.jacobian(t1, xn);
        if (unit_mass) J.diagonal().array() += 1.0 / h;
        else J += ode.mass / h;
        Eigen::PartialPivLU<Mat> lu(J);
        const Vec delta = lu.solve(F);
        xn -= delta;
        if (delta.norm() <= 1e-15 * (1.0 + xn.norm())) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        // A blown-up state is divergence, not a solver failure.
        if (!xn.allFinite() || std::abs(ode.output(xn)) > opts.divergence_threshold) {
          traj.diverged = true;
          traj.diverged_at = k;
          traj.stop_reason = "state blew up during the Newton iteration";
          return traj;
        }
        if (opts.newton_failure_is_divergence) {
          traj.diverged = true;
          traj.diverged_at = k;
          traj.stop_reason = "Newton iteration failed";
          return traj;
        }
        throw NewtonFailure(k, "Newton iteration did not converge at step " + std::to_string(k) +
                                   " (t = " + std::to_string(t1) + "); try a smaller dt");
      }
      x = std::move(xn);
    }
    if (!record(k)) break;
  }
  return traj;
}

Trajectory simulate_qb(const QBSystem& sys, const InputSignal& u, const SimOptions& opts) {
  OdeSystem ode;
  if (!sys.E().isIdentity(0.0)) ode.mass = sys.E();
  ode.rhs = [&](double t, const Vec& x) -> Vec {
    const double ut = u(t);
    Vec f = sys.A() * x + apply_quadratic<double>(sys.Q(), x, x);
    if (ut != 0.0) f += ut * (sys.N() * x + sys.B());
    return f;
  };
  ode.jacobian = [&](double t, const Vec& x) -> Mat {
    Mat J = sys.A() + quadratic_jacobian(sys.Q(), x);
    const double ut = u(t);
    if (ut != 0.0) J += ut * sys.N();
    return J;
  };
  ode.output = [&](const Vec& x) { return sys.C().dot(x); };
  ode.x0 = sys.initial_state_or_zero();
  Trajectory traj = integrate(ode, opts);
  traj.system_id = sys.name();
  traj.input_kind = u.name();
  return traj;
}

OutputComparison compare_outputs(const Trajectory& full, const Trajectory& rom) {
  const std::size_t m = rom.size();
  if (m > full.size() || (m < full.size() && !rom.diverged) || full.dt != rom.dt) {
    throw DimensionError("compare_outputs: trajectories are on different time grids");
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (full.times[k] != rom.times[k]) {
      throw DimensionError("compare_outputs: time grids differ at sample " + std::to_string(k));
    }
  }
  double ymax = 0.0;
  for (double y : full.outputs) ymax = std::max(ymax, std::abs(y));
  OutputComparison out;
  out.compared = m;
  out.abs_error.resize(m);
  out.rel_error.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double e = std::abs(full.outputs[k] - rom.outputs[k]);
    out.abs_error[k] = e;
    out.rel_error[k] = ymax > 0 ? e / ymax : e;
    out.max_abs = std::max(out.max_abs, e);
    out.max_rel = std::max(out.max_rel, out.rel_error[k]);
  }
  return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "t,y\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << csv::num(traj.times[k]) << ',' << csv::num(traj.outputs[k]) << '\n';
  }
}

}  // namespace qbmor
