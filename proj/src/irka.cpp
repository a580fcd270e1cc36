#include "qbmor/irka.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qbmor {

void sort_points(std::vector<Complex>& points) {
  std::sort(points.begin(), points.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

namespace {

double max_relative_change(const std::vector<Complex>& prev, const std::vector<Complex>& next) {
  if (prev.size() != next.size()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    const double scale = std::abs(prev[i]);
    const double d = std::abs(next[i] - prev[i]);
    m = std::max(m, scale > 0 ? d / scale : d);
  }
  return m;
}

}  // namespace

IrkaResult irka_linear(const QBSystem& sys, const IrkaConfig& cfg) {
  if (cfg.r < 1) throw ConfigError("irka: r must be positive");
  if (cfg.max_iters < 1) throw ConfigError("irka: max_iters must be positive");
  if (!(cfg.tol > 0.0)) throw ConfigError("irka: tol must be positive");

  std::vector<Complex> points = cfg.init_points;
  if (points.empty()) {
    for (int i = 0; i < cfg.r; ++i) {
      const double t = cfg.r > 1 ? static_cast<double>(i) / (cfg.r - 1) : 0.0;
      points.emplace_back(std::pow(10.0, -1.0 + 4.0 * t), 0.0);
    }
  }
  sort_points(points);

  TransferEvaluator tf(sys);
  IrkaResult result;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    Basis V(sys.n(), cfg.deflation_tol);
    Basis W(sys.n(), cfg.deflation_tol);
    for (Complex s : points) {
      orth_extend(V, CMat(tf.x1(s)));
      orth_extend(W, CMat(tf.y1(s)));
    }
    equalize(V, W);
    const Mat Er = W.columns.transpose() * sys.E() * V.columns;
    const Mat Ar = W.columns.transpose() * sys.A() * V.columns;
    Eigen::PartialPivLU<Mat> lu(Er);
    if (!(lu.rcond() > 1e-14)) {
      throw SingularReductionError(lu.rcond(), "irka: W^T E V is singular at iteration " +
                                                   std::to_string(it));
    }
    Eigen::EigenSolver<Mat> es(lu.solve(Ar), false);
    if (es.info() != Eigen::Success) throw NumericalError("irka: Ritz value computation failed");

    std::vector<Complex> next;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
      const Complex lambda = es.eigenvalues()[i];
      if (lambda.real() >= 0.0) {
        result.reflected = true;
        next.emplace_back(std::abs(lambda.real()), -lambda.imag());
      } else {
        next.push_back(-lambda);
      }
    }
    sort_points(next);
    result.movement = max_relative_change(points, next);
    points = std::move(next);
    result.iterations = it;
    if (result.movement <= cfg.tol) {
      result.converged = true;
      break;
    }
  }
  result.points = std::move(points);
  return result;
}

ReducedQBSystem irka_rom(const QBSystem& sys, std::span<const Complex> points, bool two_sided,
                         Index target_r, const ReduceOptions& opts) {
  std::vector<PointPair> pairs;
  for (Complex s : points) pairs.push_back({s, s});
  BasisPair b = build_bases_lemma2(sys, pairs);
  if (!two_sided) b.W = b.V;
  equalize(b.V, b.W);
  if (target_r > 0) truncate(b.V, b.W, target_r);
  return reduce(sys, b.V.columns, b.W.columns, opts);
}

}  // namespace qbmor
