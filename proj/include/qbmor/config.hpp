#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbmor/benchmarks.hpp"
#include "qbmor/error_bound.hpp"
#include "qbmor/sim.hpp"

namespace qbmor {

/// Parses "2", "-1.5e3", "3+4i", "3-4i", "4i", "-i" (also with j).
Complex parse_complex(const std::string& text);
std::vector<Complex> parse_complex_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// One run, read from an INI file with the sections
///
///   [system]  kind, size, nu, alpha, beta, literal_viscous, epsilon, h,
///             gamma, g, path
///   [greedy]  sigma10, sigma20, grid_count, grid_min, grid_max, grid_imag,
///             eps_tol, max_iters, validate_true_error, deflation_tol,
///             stagnation_window, beta_method, rom_size, two_sided
///   [irka]    r, init_points, tol, max_iters, rom_size, two_sided
///   [sim]     scheme, dt, t_end, input
///   [output]  dir
///
/// Unknown sections or keys and malformed values raise ConfigError.
struct RunConfig {
  struct System {
    std::string path;  // load a saved system instead of building one
    BenchmarkSpec spec;
  } system;

  struct Greedy {
    Complex sigma10{1.0, 0.0};
    Complex sigma20{1.0, 0.0};
    int grid_count = 50;
    double grid_min = 1e-2;
    double grid_max = 1e4;
    std::vector<double> grid_imag;
    double eps_tol = 1e-5;
    int max_iters = 10;
    bool validate_true_error = true;
    double deflation_tol = 1e-8;
    int stagnation_window = 3;
    BetaMethod beta_method = BetaMethod::automatic;
    Index rom_size = 0;  // 0 keeps every basis vector
    bool two_sided = true;
  } greedy;

  struct Irka {
    int r = 6;
    std::vector<Complex> init_points;
    double tol = 1e-4;
    int max_iters = 100;
    Index rom_size = 0;
    bool two_sided = true;
  } irka;

  struct Sim {
    SimOptions options;
    std::string input;  // empty: the benchmark's own input
  } sim;

  std::string output_dir = "run";

  /// FNV-1a hash of the configuration text.
  std::uint64_t hash = 0;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);
};

std::uint64_t fnv1a(const std::string& bytes);

/// Builds or loads the system the configuration refers to.
QBSystem load_configured_system(const RunConfig& cfg);

/// The configured input signal, or the benchmark's default.
InputSignal configured_input(const RunConfig& cfg);

}  // namespace qbmor
