#include "qbmor/kernels.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace qbmor::kernels {

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

namespace {

double guarded(const std::function<double(std::size_t)>& f, std::size_t i) {
  try {
    return f(i);
  } catch (const NumericalError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<double> map_points(std::size_t count, const std::function<double(std::size_t)>& f,
                               Exec exec) {
  std::vector<double> out(count);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = guarded(f, i);
    return out;
  }
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = guarded(f, static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<double> beta_scan(const BoundEvaluator& ev, std::span<const Complex> grid, Exec exec) {
  return map_points(grid.size(), [&](std::size_t i) { return ev.beta(grid[i]); }, exec);
}

std::vector<double> delta1_scan(const BoundEvaluator& ev, std::span<const Complex> grid,
                                Exec exec) {
  return map_points(grid.size(), [&](std::size_t i) { return ev.delta1(grid[i]); }, exec);
}

std::vector<double> delta2_scan(const BoundEvaluator& ev, Complex s1,
                                std::span<const Complex> grid, Exec exec) {
  return map_points(grid.size(), [&](std::size_t i) { return ev.delta2(s1, grid[i]); }, exec);
}

std::vector<double> true_error1_scan(const BoundEvaluator& ev, std::span<const Complex> grid,
                                     Exec exec) {
  return map_points(grid.size(), [&](std::size_t i) { return ev.true_error1(grid[i]); }, exec);
}

std::vector<double> true_error2_scan(const BoundEvaluator& ev, Complex s1,
                                     std::span<const Complex> grid, Exec exec) {
  return map_points(
      grid.size(), [&](std::size_t i) { return ev.true_error2(s1, grid[i]); }, exec);
}

long argmax(std::span<const double> values, std::span<const char> excluded) {
  long best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!excluded.empty() && excluded[i]) continue;
    const double v = values[i];
    if (!std::isfinite(v)) continue;
    if (best < 0 || v > best_value) {
      best = static_cast<long>(i);
      best_value = v;
    }
  }
  return best;
}

}  // namespace qbmor::kernels
