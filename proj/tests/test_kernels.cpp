#include "doctest.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "qbmor/benchmarks.hpp"
#include "qbmor/greedy.hpp"
#include "qbmor/kernels.hpp"
#include "random_system.hpp"

using namespace qbmor;
using kernels::Exec;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("argmax picks the first maximum and skips NaN and exclusions") {
  std::vector<double> v{1.0, 3.0, kNaN, 3.0, 2.0};
  CHECK(kernels::argmax(v) == 1);
  std::vector<char> ex{0, 1, 0, 0, 0};
  CHECK(kernels::argmax(v, ex) == 3);
  std::vector<char> all(5, 1);
  CHECK(kernels::argmax(v, all) == -1);
  std::vector<double> nans{kNaN, kNaN};
  CHECK(kernels::argmax(nans) == -1);
  CHECK(kernels::argmax(std::vector<double>{}) == -1);
  std::vector<double> inf{1.0, std::numeric_limits<double>::infinity()};
  CHECK(kernels::argmax(inf) == 0);
}

TEST_CASE("map_points turns numerical failures into NaN") {
  for (Exec e : {Exec::serial, Exec::parallel}) {
    auto out = kernels::map_points(
        6,
        [](std::size_t i) -> double {
          if (i == 2) throw NumericalError("boom");
          return static_cast<double>(i * i);
        },
        e);
    CHECK(out[1] == 1.0);
    CHECK(std::isnan(out[2]));
    CHECK(out[5] == 25.0);
  }
}

TEST_CASE("serial and parallel scans are bitwise identical") {
  kernels::set_threads(4);
  for (int which = 0; which < 2; ++which) {
    QBSystem sys = which == 0 ? rc_ladder(10) : testing::random_system(20, 3);
    TransferEvaluator tf(sys);
    BoundEvaluator ev(tf);
    ev.add_subsystem1(2.0);
    ev.add_subsystem2(2.0, 5.0);
    std::vector<Complex> grid = default_grid(30, 1e-1, 1e3, {1.0, 10.0});
    CHECK(bitwise_equal(kernels::beta_scan(ev, grid, Exec::serial),
                        kernels::beta_scan(ev, grid, Exec::parallel)));
    CHECK(bitwise_equal(kernels::delta1_scan(ev, grid, Exec::serial),
                        kernels::delta1_scan(ev, grid, Exec::parallel)));
    CHECK(bitwise_equal(kernels::delta2_scan(ev, grid[4], grid, Exec::serial),
                        kernels::delta2_scan(ev, grid[4], grid, Exec::parallel)));
    CHECK(bitwise_equal(kernels::true_error1_scan(ev, grid, Exec::serial),
                        kernels::true_error1_scan(ev, grid, Exec::parallel)));
    CHECK(bitwise_equal(kernels::true_error2_scan(ev, grid[4], grid, Exec::serial),
                        kernels::true_error2_scan(ev, grid[4], grid, Exec::parallel)));
  }
  kernels::set_threads(0);
}

TEST_CASE("scans agree with pointwise evaluation") {
  QBSystem sys = testing::random_system(12, 4);
  TransferEvaluator tf(sys);
  BoundEvaluator ev(tf);
  ev.add_subsystem1(1.0);
  std::vector<Complex> grid = default_grid(10, 1e-1, 1e2);
  auto d1 = kernels::delta1_scan(ev, grid, Exec::parallel);
  auto d2 = kernels::delta2_scan(ev, grid[3], grid, Exec::parallel);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(d1[i] == ev.delta1(grid[i]));
    CHECK(d2[i] == ev.delta2(grid[3], grid[i]));
  }
}

TEST_CASE("thread count control") {
  kernels::set_threads(3);
  CHECK(kernels::max_threads() == 3);
  kernels::set_threads(0);
  CHECK(kernels::max_threads() >= 1);
}
