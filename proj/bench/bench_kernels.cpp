// Serial vs OpenMP grid scans on the RC ladder and Burgers benchmarks.
//
//   ./bench_kernels --benchmark_filter=delta
//
// Set OMP_NUM_THREADS (or QBMOR_THREADS) to control the parallel runs.
#include <benchmark/benchmark.h>

#include <cstdlib>
#include <memory>

#include "qbmor/benchmarks.hpp"
#include "qbmor/greedy.hpp"
#include "qbmor/kernels.hpp"

using namespace qbmor;

namespace {

struct Fixture {
  QBSystem sys;
  std::unique_ptr<TransferEvaluator> tf;
  std::unique_ptr<BoundEvaluator> ev;
  std::vector<Complex> grid = default_grid(50);

  explicit Fixture(QBSystem s) : sys(std::move(s)) {
    tf = std::make_unique<TransferEvaluator>(sys);
    ev = std::make_unique<BoundEvaluator>(*tf);
    for (Complex p : {Complex(119.5642), Complex(0.9875), Complex(4.9567)}) {
      ev->add_subsystem1(p);
      ev->add_subsystem2(p, p);
    }
    // Warm the beta cache so the delta scans time the residual work only.
    kernels::delta1_scan(*ev, grid, kernels::Exec::serial);
    kernels::delta2_scan(*ev, grid[10], grid, kernels::Exec::serial);
  }
};

Fixture& rc() {
  static Fixture f(rc_ladder(50));
  return f;
}

Fixture& burgers_fixture() {
  static Fixture f(burgers(BurgersOptions{}));
  return f;
}

kernels::Exec exec_of(const benchmark::State& state) {
  return state.range(0) ? kernels::Exec::parallel : kernels::Exec::serial;
}

void BM_delta1_scan_rc(benchmark::State& state) {
  Fixture& f = rc();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::delta1_scan(*f.ev, f.grid, exec_of(state)));
  }
}

void BM_delta2_scan_rc(benchmark::State& state) {
  Fixture& f = rc();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::delta2_scan(*f.ev, f.grid[10], f.grid, exec_of(state)));
  }
}

void BM_true_error2_scan_burgers(benchmark::State& state) {
  Fixture& f = burgers_fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::true_error2_scan(*f.ev, f.grid[10], f.grid, exec_of(state)));
  }
}

// Fresh evaluator per iteration: every point needs a dense SVD.
void BM_beta_scan_burgers(benchmark::State& state) {
  Fixture& f = burgers_fixture();
  for (auto _ : state) {
    state.PauseTiming();
    BoundEvaluator ev(*f.tf);
    state.ResumeTiming();
    benchmark::DoNotOptimize(kernels::beta_scan(ev, f.grid, exec_of(state)));
  }
}

}  // namespace

BENCHMARK(BM_delta1_scan_rc)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_delta2_scan_rc)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_true_error2_scan_burgers)
    ->ArgName("parallel")
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_beta_scan_burgers)
    ->ArgName("parallel")
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  if (const char* env = std::getenv("QBMOR_THREADS")) kernels::set_threads(std::atoi(env));
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
