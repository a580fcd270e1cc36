#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qbmor/error_bound.hpp"

// Grid scans over candidate frequency points. Each scan has a serial
// reference path and an OpenMP path; both evaluate every point with the same
// code, so their results are bitwise identical. Points whose evaluation
// throws a NumericalError (e.g. a grid point on a generalized eigenvalue)
// yield NaN.
namespace qbmor::kernels {

enum class Exec { serial, parallel };

void set_threads(int n);
int max_threads();

/// out[i] = f(i) for i in [0, count), NaN where f throws NumericalError.
std::vector<double> map_points(std::size_t count, const std::function<double(std::size_t)>& f,
                               Exec exec);

std::vector<double> beta_scan(const BoundEvaluator& ev, std::span<const Complex> grid, Exec exec);
std::vector<double> delta1_scan(const BoundEvaluator& ev, std::span<const Complex> grid, Exec exec);
std::vector<double> delta2_scan(const BoundEvaluator& ev, Complex s1,
                                std::span<const Complex> grid, Exec exec);
std::vector<double> true_error1_scan(const BoundEvaluator& ev, std::span<const Complex> grid,
                                     Exec exec);
std::vector<double> true_error2_scan(const BoundEvaluator& ev, Complex s1,
                                     std::span<const Complex> grid, Exec exec);

/// Index of the largest finite value whose `excluded` flag is false; ties go
/// to the first index. Returns -1 when no candidate remains.
long argmax(std::span<const double> values, std::span<const char> excluded = {});

}  // namespace qbmor::kernels
