#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "qbmor/benchmarks.hpp"
#include "qbmor/input_signal.hpp"
#include "qbmor/system_io.hpp"
#include "random_system.hpp"

using namespace qbmor;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("qbmor_io_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string sub(const std::string& name) const { return (path / name).string(); }
};

void check_equal(const QBSystem& a, const QBSystem& b) {
  CHECK(a.n() == b.n());
  CHECK(a.name() == b.name());
  CHECK(a.E() == b.E());
  CHECK(a.A() == b.A());
  CHECK(a.N() == b.N());
  CHECK(Mat(a.Q()) == Mat(b.Q()));
  CHECK(a.B() == b.B());
  CHECK(a.C() == b.C());
  CHECK(a.initial_state() == b.initial_state());
}

}  // namespace

TEST_CASE("save then load reproduces the RC ladder exactly") {
  TempDir tmp;
  QBSystem rc = rc_ladder(5);
  save_system(rc, tmp.sub("rc"), "five nodes");
  check_equal(rc, load_system(tmp.sub("rc")));
}

TEST_CASE("round trip is bit-identical for random values and initial states") {
  TempDir tmp;
  QBSystem sys = testing::random_system(6, 11);
  save_system(sys, tmp.sub("r"));
  check_equal(sys, load_system(tmp.sub("r")));

  QBSystem fhn = fitzhugh_nagumo(FhnOptions{.nbar = 4});
  save_system(fhn, tmp.sub("f"));
  QBSystem back = load_system(tmp.sub("f"));
  check_equal(fhn, back);
  CHECK(back.initial_state().size() == fhn.n());
}

TEST_CASE("Burgers fixture loads with the requested size") {
  TempDir tmp;
  save_system(burgers(BurgersOptions{.n = 100}), tmp.sub("b"));
  QBSystem b = load_system(tmp.sub("b"));
  CHECK(b.n() == 100);
  CHECK(b.q_symmetrized());
}

TEST_CASE("Q with the wrong column count is a dimension error") {
  TempDir tmp;
  save_system(rc_ladder(3), tmp.sub("rc"));
  SpMat bad(6, 35);
  bad.insert(0, 0) = 1.0;
  write_matrix_market(tmp.sub("rc/Q.mtx"), bad);
  CHECK_THROWS_AS(load_system(tmp.sub("rc")), DimensionError);
}

TEST_CASE("malformed inputs are format errors") {
  TempDir tmp;
  CHECK_THROWS_AS(load_system(tmp.sub("missing")), FormatError);

  save_system(rc_ladder(2), tmp.sub("m"));
  {
    std::ofstream out(tmp.sub("m/manifest.json"));
    out << "{\"n\": \"four\"}";
  }
  CHECK_THROWS_AS(load_system(tmp.sub("m")), FormatError);

  {
    std::ofstream out(tmp.sub("x.mtx"));
    out << "%%MatrixMarket matrix array real general\n1 1\n2\n";
  }
  CHECK_THROWS_AS(read_matrix_market(tmp.sub("x.mtx")), FormatError);
  {
    std::ofstream out(tmp.sub("y.mtx"));
    out << "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n";
  }
  CHECK_THROWS_AS(read_matrix_market(tmp.sub("y.mtx")), FormatError);
  {
    std::ofstream out(tmp.sub("z.mtx"));
    out << "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n";
  }
  CHECK_THROWS_AS(read_matrix_market(tmp.sub("z.mtx")), FormatError);
}

TEST_CASE("bases round trip") {
  TempDir tmp;
  std::mt19937 rng(3);
  Mat V(5, 2), W(5, 2);
  V << testing::random_vec(5, rng), testing::random_vec(5, rng);
  W << testing::random_vec(5, rng), testing::random_vec(5, rng);
  CHECK_FALSE(load_bases(tmp.sub("none")).has_value());
  save_bases(V, W, tmp.sub("rom"));
  auto back = load_bases(tmp.sub("rom"));
  REQUIRE(back.has_value());
  CHECK(back->first == V);
  CHECK(back->second == W);
}

TEST_CASE("input signals") {
  const double pi = 3.14159265358979323846;
  InputSignal e = InputSignal::exp_decay();
  CHECK(e(0.0) == 1.0);
  CHECK(e(2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(e(-1.0) == 0.0);
  CHECK(InputSignal::cosine_pi()(0.5) == doctest::Approx(std::cos(pi * 0.5)).epsilon(1e-14));
  InputSignal c = InputSignal::cubic_pulse();
  CHECK(c(0.1) == doctest::Approx(5e4 * 1e-3 * std::exp(-1.5)));
  InputSignal t = InputSignal::table({0.0, 1.0, 2.0}, {0.0, 2.0, 0.0});
  CHECK(t(0.5) == doctest::Approx(1.0));
  CHECK(t(1.5) == doctest::Approx(1.0));
  CHECK(t(5.0) == 0.0);
  CHECK(InputSignal::from_name("cubic_pulse").kind() == InputSignal::Kind::cubic_pulse);
  CHECK_THROWS_AS(InputSignal::from_name("square"), ConfigError);
}

TEST_CASE("input table from csv") {
  TempDir tmp;
  {
    std::ofstream out(tmp.sub("u.csv"));
    out << "t,u\n0,1\n1,3\n";
  }
  InputSignal u = InputSignal::from_csv(tmp.sub("u.csv"));
  CHECK(u(0.25) == doctest::Approx(1.5));
}
