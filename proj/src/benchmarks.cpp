#include "qbmor/benchmarks.hpp"

#include <cmath>
#include <vector>

namespace qbmor {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SpMat quadratic_from(Index n, const Triplets& t) {
  SpMat Q(n, n * n);
  Q.setFromTriplets(t.begin(), t.end());
  return Q;
}

Mat fd_jacobian(const std::function<Vec(double, const Vec&)>& f, double t, const Vec& x) {
  const Vec f0 = f(t, x);
  Mat J(f0.size(), x.size());
  Vec xp = x;
  for (Index k = 0; k < x.size(); ++k) {
    const double d = 1.4901161193847656e-08 * std::max(1.0, std::abs(x[k]));
    xp[k] = x[k] + d;
    J.col(k) = (f(t, xp) - f0) / d;
    xp[k] = x[k];
  }
  return J;
}

double diode(double v) { return std::exp(40.0 * v) + v - 1.0; }

}  // namespace

BenchmarkKind benchmark_kind_from_string(const std::string& name) {
  if (name == "rc" || name == "rc_ladder") return BenchmarkKind::rc_ladder;
  if (name == "burgers") return BenchmarkKind::burgers;
  if (name == "fhn" || name == "fitzhugh_nagumo") return BenchmarkKind::fitzhugh_nagumo;
  throw ConfigError("unknown benchmark kind '" + name + "' (expected rc, burgers or fhn)");
}

std::string to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::rc_ladder: return "rc";
    case BenchmarkKind::burgers: return "burgers";
    case BenchmarkKind::fitzhugh_nagumo: return "fhn";
  }
  return "unknown";
}

void BenchmarkSpec::validate() const {
  switch (kind) {
    case BenchmarkKind::rc_ladder:
      if (rc_nodes < 2) throw ConfigError("rc: need at least 2 nodes");
      break;
    case BenchmarkKind::burgers:
      if (burgers.n < 3) throw ConfigError("burgers: need n >= 3");
      if (!(burgers.nu > 0)) throw ConfigError("burgers: nu must be positive");
      if (burgers.alpha == 0.0) throw ConfigError("burgers: alpha must be nonzero");
      if (burgers.beta != 0.0) {
        throw ConfigError("burgers: beta != 0 would put a u^2 term in the boundary row; only "
                          "Dirichlet control (beta = 0) is supported");
      }
      break;
    case BenchmarkKind::fitzhugh_nagumo:
      if (fhn.nbar < 3) throw ConfigError("fhn: need nbar >= 3");
      if (!(fhn.epsilon > 0) || !(fhn.h > 0) || !(fhn.gamma > 0)) {
        throw ConfigError("fhn: epsilon, h and gamma must be positive");
      }
      break;
  }
}

QBSystem rc_ladder(Index l) {
  BenchmarkSpec{BenchmarkKind::rc_ladder, l, {}, {}}.validate();
  const Index n = 2 * l;
  const Index z0 = l;
  auto w = [l](Index i) { return l + i; };  // w_i, i = 1..l-1

  // Node equations v_k' = a_k x + b_k u with g(.) replaced by its lifting.
  Mat a = Mat::Zero(l, n);
  Vec b = Vec::Zero(l);
  // sign * g(v_i - v_{i+1}) = sign * (w_i + v_i - v_{i+1}), i is 1-based
  auto add_branch = [&](Index row, Index i, double sign) {
    a(row, w(i)) += sign;
    a(row, i - 1) += sign;
    a(row, i) -= sign;
  };
  a(0, z0) -= 1.0;  // -g(v1) = -(z0 + v1)
  a(0, 0) -= 1.0;
  add_branch(0, 1, -1.0);
  b(0) = 1.0;
  for (Index k = 2; k < l; ++k) {
    add_branch(k - 1, k - 1, 1.0);
    add_branch(k - 1, k, -1.0);
  }
  add_branch(l - 1, l - 1, 1.0);

  Mat A = Mat::Zero(n, n);
  Mat N = Mat::Zero(n, n);
  Vec B = Vec::Zero(n);
  Triplets q;
  A.topRows(l) = a;
  B.head(l) = b;
  // s' = 40 (s + 1) d' for s = exp(40 d) - 1
  auto lift = [&](Index row, const RowVec& d, double db) {
    A.row(row) = 40.0 * d;
    B(row) = 40.0 * db;
    N(row, row) = 40.0 * db;
    for (Index k = 0; k < n; ++k) {
      if (d(k) != 0.0) q.emplace_back(row, row * n + k, 40.0 * d(k));
    }
  };
  lift(z0, a.row(0), b(0));
  for (Index i = 1; i < l; ++i) lift(w(i), a.row(i - 1) - a.row(i), b(i - 1) - b(i));

  RowVec C = RowVec::Zero(n);
  C(0) = 1.0;
  return QBSystem(Mat::Identity(n, n), std::move(A), std::move(N), quadratic_from(n, q),
                  std::move(B), std::move(C), "rc_" + std::to_string(l));
}

QBSystem burgers(const BurgersOptions& o) {
  BenchmarkSpec spec;
  spec.kind = BenchmarkKind::burgers;
  spec.burgers = o;
  spec.validate();
  const Index n = o.n;
  const double h = 1.0 / static_cast<double>(n + 1);
  const double conv = 1.0 / (2.0 * h);
  const double diff = o.nu / (h * h);

  Mat A = Mat::Zero(n, n);
  Mat N = Mat::Zero(n, n);
  Vec B = Vec::Zero(n);
  Triplets q;
  auto quad = [&](Index i, Index j, Index k, double v) { q.emplace_back(i, j * n + k, v); };
  for (Index i = 0; i < n; ++i) {
    const bool first = i == 0;
    const bool last = i == n - 1;
    // Neighbours; the right ghost node equals v_n, the left one is u / alpha.
    const Index right = last ? i : i + 1;
    // diffusion
    if (o.literal_viscous) {
      quad(i, i, right, diff);
      quad(i, i, i, -2.0 * diff);
      if (first) N(i, i) += diff / o.alpha;
      else quad(i, i, i - 1, diff);
    } else {
      A(i, right) += diff;
      A(i, i) -= 2.0 * diff;
      if (first) B(i) += diff / o.alpha;
      else A(i, i - 1) += diff;
    }
    // convection -v_i (v_{i+1} - v_{i-1}) / (2h)
    quad(i, i, right, -conv);
    if (first) N(i, i) += conv / o.alpha;
    else quad(i, i, i - 1, conv);
  }
  RowVec C = RowVec::Constant(n, 1.0 / static_cast<double>(n));
  return QBSystem(Mat::Identity(n, n), std::move(A), std::move(N), quadratic_from(n, q),
                  std::move(B), std::move(C), "burgers_" + std::to_string(n));
}

QBSystem fitzhugh_nagumo(const FhnOptions& o) {
  BenchmarkSpec spec;
  spec.kind = BenchmarkKind::fitzhugh_nagumo;
  spec.fhn = o;
  spec.validate();
  const Index m = o.nbar;
  const Index n = 3 * m + 1;
  const Index xc = 3 * m;
  auto V = [](Index i) { return i; };
  auto Wi = [m](Index i) { return m + i; };
  auto Z = [m](Index i) { return 2 * m + i; };
  const double dx = 1.0 / static_cast<double>(m - 1);
  const double eps = o.epsilon;

  // Discrete Laplacian with ghost nodes from the Neumann conditions.
  Mat L = Mat::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    L(i, i) = -2.0;
    if (i == 0) L(i, 1) = 2.0;
    else if (i == m - 1) L(i, m - 2) = 2.0;
    else {
      L(i, i - 1) = 1.0;
      L(i, i + 1) = 1.0;
    }
  }
  L /= dx * dx;
  const double b1 = 2.0 * eps / dx;  // eps * (2 i0 / dx) from the left ghost node

  Mat A = Mat::Zero(n, n);
  Mat N = Mat::Zero(n, n);
  Vec B = Vec::Zero(n);
  Triplets q;
  auto quad = [&](Index i, Index j, Index k, double v) { q.emplace_back(i, j * n + k, v); };
  for (Index i = 0; i < m; ++i) {
    // v_i' = eps (L v)_i + (-v_i z_i + 1.1 z_i - 0.1 v_i - w_i + g x_c) / eps + b_i i0
    for (Index k = 0; k < m; ++k) A(V(i), V(k)) += eps * L(i, k);
    quad(V(i), V(i), Z(i), -1.0 / eps);
    A(V(i), Z(i)) += 1.1 / eps;
    A(V(i), V(i)) += -0.1 / eps;
    A(V(i), Wi(i)) += -1.0 / eps;
    A(V(i), xc) += o.g / eps;
    // w_i' = h v_i - gamma w_i + g x_c
    A(Wi(i), V(i)) = o.h;
    A(Wi(i), Wi(i)) = -o.gamma;
    A(Wi(i), xc) = o.g;
    // z_i' = 2 v_i v_i'
    for (Index k = 0; k < m; ++k) {
      if (L(i, k) != 0.0) quad(Z(i), V(i), V(k), 2.0 * eps * L(i, k));
    }
    quad(Z(i), Z(i), Z(i), -2.0 / eps);
    quad(Z(i), V(i), Z(i), 2.2 / eps);
    A(Z(i), Z(i)) += -0.2 / eps;
    quad(Z(i), V(i), Wi(i), -2.0 / eps);
    quad(Z(i), V(i), xc, 2.0 * o.g / eps);
  }
  B(V(0)) = b1;
  N(Z(0), V(0)) = 2.0 * b1;

  RowVec C = RowVec::Zero(n);
  C(V(0)) = 1.0;
  Vec x0 = Vec::Zero(n);
  x0(xc) = 1.0;
  return QBSystem(Mat::Identity(n, n), std::move(A), std::move(N), quadratic_from(n, q),
                  std::move(B), std::move(C), "fhn_" + std::to_string(m), std::move(x0));
}

QBSystem build_benchmark(const BenchmarkSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case BenchmarkKind::rc_ladder: return rc_ladder(spec.rc_nodes);
    case BenchmarkKind::burgers: return burgers(spec.burgers);
    case BenchmarkKind::fitzhugh_nagumo: return fitzhugh_nagumo(spec.fhn);
  }
  throw ConfigError("unknown benchmark kind");
}

InputSignal benchmark_input(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::rc_ladder: return InputSignal::exp_decay();
    case BenchmarkKind::burgers: return InputSignal::cosine_pi();
    case BenchmarkKind::fitzhugh_nagumo: return InputSignal::cubic_pulse();
  }
  return InputSignal::exp_decay();
}

Trajectory simulate_original(const BenchmarkSpec& spec, const InputSignal& u,
                             const SimOptions& opts) {
  spec.validate();
  OdeSystem ode;
  switch (spec.kind) {
    case BenchmarkKind::rc_ladder: {
      const Index l = spec.rc_nodes;
      ode.x0 = Vec::Zero(l);
      ode.rhs = [l, &u](double t, const Vec& v) -> Vec {
        Vec f(l);
        for (Index i = 0; i < l; ++i) {
          double in = i == 0 ? -diode(v[0]) + u(t) : diode(v[i - 1] - v[i]);
          if (i + 1 < l) in -= diode(v[i] - v[i + 1]);
          f[i] = in;
        }
        return f;
      };
      ode.output = [](const Vec& v) { return v[0]; };
      break;
    }
    case BenchmarkKind::burgers: {
      const BurgersOptions o = spec.burgers;
      const Index n = o.n;
      const double h = 1.0 / static_cast<double>(n + 1);
      ode.x0 = Vec::Zero(n);
      ode.rhs = [o, n, h, &u](double t, const Vec& v) -> Vec {
        Vec f(n);
        const double left = u(t) / o.alpha;
        for (Index i = 0; i < n; ++i) {
          const double vl = i == 0 ? left : v[i - 1];
          const double vr = i == n - 1 ? v[i] : v[i + 1];
          const double vxx = (vl - 2.0 * v[i] + vr) / (h * h);
          f[i] = (o.literal_viscous ? o.nu * v[i] * vxx : o.nu * vxx) -
                 v[i] * (vr - vl) / (2.0 * h);
        }
        return f;
      };
      ode.output = [n](const Vec& v) { return v.sum() / static_cast<double>(n); };
      break;
    }
    case BenchmarkKind::fitzhugh_nagumo: {
      const FhnOptions o = spec.fhn;
      const Index m = o.nbar;
      const double dx = 1.0 / static_cast<double>(m - 1);
      ode.x0 = Vec::Zero(2 * m);
      ode.rhs = [o, m, dx, &u](double t, const Vec& x) -> Vec {
        Vec f(2 * m);
        const double i0 = u(t);
        for (Index i = 0; i < m; ++i) {
          const double v = x[i];
          const double vl = i == 0 ? x[1] + 2.0 * dx * i0 : x[i - 1];
          const double vr = i == m - 1 ? x[m - 2] : x[i + 1];
          const double vxx = (vl - 2.0 * v + vr) / (dx * dx);
          const double fv = v * (v - 0.1) * (1.0 - v);
          f[i] = o.epsilon * vxx + (fv - x[m + i] + o.g) / o.epsilon;
          f[m + i] = o.h * v - o.gamma * x[m + i] + o.g;
        }
        return f;
      };
      ode.output = [](const Vec& x) { return x[0]; };
      break;
    }
  }
  ode.jacobian = [rhs = ode.rhs](double t, const Vec& x) { return fd_jacobian(rhs, t, x); };
  Trajectory traj = integrate(ode, opts);
  traj.system_id = to_string(spec.kind) + "_original";
  traj.input_kind = u.name();
  return traj;
}

}  // namespace qbmor
