#include "qbmor/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qbmor/config.hpp"
#include "qbmor/csv.hpp"
#include "qbmor/greedy.hpp"
#include "qbmor/irka.hpp"
#include "qbmor/kernels.hpp"
#include "qbmor/system_io.hpp"

namespace qbmor::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Raised for runs that finished without meeting their tolerance; artifacts
/// are already on disk.
struct NotConverged : Error {
  using Error::Error;
};

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string complex_str(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string short_complex(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig* cfg,
                    json extra) {
  json m = std::move(extra);
  m["command"] = command;
  m["version"] = kVersion;
  m["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                       std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  m["threads"] = kernels::max_threads();
  if (cfg) m["config_hash"] = "fnv1a64:" + hex(cfg->hash);
  std::ofstream out(dir / "run_manifest.json");
  if (!out) throw Error("cannot write " + (dir / "run_manifest.json").string());
  out << m.dump(2) << '\n';
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory " + dir.string() + ": " + ec.message());
}

void save_rom(const ReducedQBSystem& rom, const fs::path& dir, const std::string& notes) {
  save_system(rom.rom, dir.string(), notes);
  save_bases(rom.V, rom.W, dir.string());
}

// ---------------------------------------------------------------- commands

struct BenchArgs {
  std::string kind;
  Index l = 50;
  Index n = 100;
  Index nbar = 100;
  Index size = 0;
  BurgersOptions burgers;
  FhnOptions fhn;
  std::string out;
};

int cmd_bench_build(const BenchArgs& a) {
  BenchmarkSpec spec;
  spec.kind = benchmark_kind_from_string(a.kind);
  spec.rc_nodes = a.l;
  spec.burgers = a.burgers;
  spec.burgers.n = a.n;
  spec.fhn = a.fhn;
  spec.fhn.nbar = a.nbar;
  if (a.size > 0) {
    spec.rc_nodes = a.size;
    spec.burgers.n = a.size;
    spec.fhn.nbar = a.size;
  }
  const QBSystem sys = build_benchmark(spec);
  std::ostringstream notes;
  notes << "benchmark " << to_string(spec.kind);
  switch (spec.kind) {
    case BenchmarkKind::rc_ladder: notes << " l=" << spec.rc_nodes; break;
    case BenchmarkKind::burgers:
      notes << " n=" << spec.burgers.n << " nu=" << spec.burgers.nu
            << (spec.burgers.literal_viscous ? " literal_viscous" : "");
      break;
    case BenchmarkKind::fitzhugh_nagumo:
      notes << " nbar=" << spec.fhn.nbar << " epsilon=" << spec.fhn.epsilon
            << " h=" << spec.fhn.h << " gamma=" << spec.fhn.gamma << " g=" << spec.fhn.g;
      break;
  }
  save_system(sys, a.out, notes.str());
  std::cout << "wrote " << sys.name() << " (n = " << sys.n() << ") to " << a.out << '\n';
  return kOk;
}

struct ReduceArgs {
  std::string config;
  std::string system;
  std::string out;
};

RunConfig load_run_config(const ReduceArgs& a) {
  RunConfig cfg = RunConfig::from_file(a.config);
  if (!a.system.empty()) cfg.system.path = a.system;
  if (!a.out.empty()) cfg.output_dir = a.out;
  return cfg;
}

int cmd_reduce_greedy(const ReduceArgs& a) {
  const RunConfig cfg = load_run_config(a);
  const QBSystem sys = load_configured_system(cfg);
  const fs::path dir = cfg.output_dir;
  ensure_dir(dir);

  GreedyConfig g;
  g.sigma10 = cfg.greedy.sigma10;
  g.sigma20 = cfg.greedy.sigma20;
  g.S1 = default_grid(cfg.greedy.grid_count, cfg.greedy.grid_min, cfg.greedy.grid_max,
                      cfg.greedy.grid_imag);
  g.S2 = g.S1;
  g.eps_tol = cfg.greedy.eps_tol;
  g.max_iters = cfg.greedy.max_iters;
  g.validate_true_error = cfg.greedy.validate_true_error;
  g.deflation_tol = cfg.greedy.deflation_tol;
  g.stagnation_window = cfg.greedy.stagnation_window;
  g.beta_method = cfg.greedy.beta_method;
  g.on_iteration = [](const GreedyRecord& r, const BoundEvaluator&) {
    std::cerr << "iter " << r.iter << "  (" << short_complex(r.sigma1) << ", "
              << short_complex(r.sigma2) << ")  bound " << r.delta << '\n';
  };

  GreedyResult res = run_greedy(sys, g);
  write_trace_csv(res.trace, (dir / "trace.csv").string());
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';

  Basis V(sys.n(), cfg.greedy.deflation_tol);
  V.columns = res.V;
  Basis W(sys.n(), cfg.greedy.deflation_tol);
  W.columns = cfg.greedy.two_sided ? res.W : res.V;
  if (cfg.greedy.rom_size > 0) truncate(V, W, cfg.greedy.rom_size);
  ReduceOptions ro;
  ro.fallback_one_sided = true;
  ro.name = sys.name() + (cfg.greedy.two_sided ? "_2s_greedy" : "_1s_greedy");
  const ReducedQBSystem rom = reduce(sys, V.columns, W.columns, ro);
  save_rom(rom, dir / "rom", "greedy ROM");

  json extra;
  extra["status"] = to_string(res.status);
  extra["iterations"] = res.trace.records.size();
  extra["rom_size"] = rom.r();
  extra["one_sided_fallback"] = rom.one_sided_fallback;
  extra["warnings"] = res.warnings;
  write_manifest(dir, "reduce greedy", &cfg, extra);

  std::cout << "greedy " << to_string(res.status) << " after " << res.trace.records.size()
            << " iteration(s); ROM size " << rom.r() << "; artifacts in " << dir.string() << '\n';
  if (!res.converged()) throw NotConverged("greedy did not reach eps_tol");
  return kOk;
}

int cmd_reduce_irka(const ReduceArgs& a) {
  const RunConfig cfg = load_run_config(a);
  const QBSystem sys = load_configured_system(cfg);
  const fs::path dir = cfg.output_dir;
  ensure_dir(dir);

  IrkaConfig ic;
  ic.r = cfg.irka.r;
  ic.init_points = cfg.irka.init_points;
  ic.tol = cfg.irka.tol;
  ic.max_iters = cfg.irka.max_iters;
  const IrkaResult res = irka_linear(sys, ic);
  {
    std::ofstream out(dir / "points.csv");
    out << "sigma_re,sigma_im\n";
    for (Complex s : res.points) out << csv::num(s.real()) << ',' << csv::num(s.imag()) << '\n';
  }
  ReduceOptions ro;
  ro.fallback_one_sided = true;
  ro.name = sys.name() + (cfg.irka.two_sided ? "_2s_irka" : "_1s_irka");
  const ReducedQBSystem rom =
      irka_rom(sys, res.points, cfg.irka.two_sided, cfg.irka.rom_size, ro);
  save_rom(rom, dir / "rom", "IRKA ROM");

  json extra;
  extra["status"] = res.converged ? "converged" : "max_iters";
  extra["iterations"] = res.iterations;
  extra["movement"] = res.movement;
  extra["reflected"] = res.reflected;
  extra["rom_size"] = rom.r();
  extra["one_sided_fallback"] = rom.one_sided_fallback;
  write_manifest(dir, "reduce irka", &cfg, extra);

  std::cout << "irka " << (res.converged ? "converged" : "did not converge") << " after "
            << res.iterations << " iteration(s); " << res.points.size() << " points; ROM size "
            << rom.r() << "; artifacts in " << dir.string() << '\n';
  if (res.reflected) std::cerr << "warning: unstable Ritz values were reflected\n";
  if (!res.converged) throw NotConverged("IRKA did not reach its tolerance");
  return kOk;
}

struct TfArgs {
  std::string system;
  std::string s1;
  std::string s2;
  bool derivative = false;
};

int cmd_tf_eval(const TfArgs& a) {
  const QBSystem sys = load_system(a.system);
  TransferEvaluator tf(sys);
  const Complex s1 = parse_complex(a.s1);
  std::cout << "quantity,re,im\n";
  auto row = [](const std::string& q, Complex v) {
    std::cout << q << ',' << csv::num(v.real()) << ',' << csv::num(v.imag()) << '\n';
  };
  row("H1(s1)", tf.h1(s1));
  if (!a.s2.empty()) {
    const Complex s2 = parse_complex(a.s2);
    row("H1(s2)", tf.h1(s2));
    row("H2(s1,s2)", tf.h2(s1, s2));
    if (a.derivative) {
      row("dH2/ds1(s1,s2)", tf.dh2(s1, s2, 1));
      row("dH2/ds2(s1,s2)", tf.dh2(s1, s2, 2));
    }
  }
  return kOk;
}

struct BoundArgs {
  std::string system;
  std::string sigma1;
  std::string sigma2;
  std::string s1;
  std::string s2;
  std::string scan_out;
  int grid_count = 50;
  double grid_min = 1e-2;
  double grid_max = 1e4;
};

int cmd_bound_eval(const BoundArgs& a) {
  const QBSystem sys = load_system(a.system);
  const std::vector<Complex> p1 = parse_complex_list(a.sigma1);
  const std::vector<Complex> p2 = parse_complex_list(a.sigma2);
  if (p1.size() != p2.size()) {
    throw ConfigError("--sigma1 and --sigma2 must list the same number of points");
  }
  TransferEvaluator tf(sys);
  BoundEvaluator ev(tf);
  for (std::size_t i = 0; i < p1.size(); ++i) {
    ev.add_subsystem1(p1[i]);
    ev.add_subsystem2(p1[i], p2[i]);
  }
  const Complex s1 = parse_complex(a.s1);
  const Complex s2 = a.s2.empty() ? s1 : parse_complex(a.s2);
  const BoundValue b = ev.bound(s1, s2);
  std::cout << "quantity,value\n"
            << "delta1," << csv::num(b.delta1) << '\n'
            << "delta2," << csv::num(b.delta2) << '\n'
            << "delta," << csv::num(b.delta) << '\n'
            << "true_error1," << csv::num(ev.true_error1(s1)) << '\n'
            << "true_error2," << csv::num(ev.true_error2(s1, s2)) << '\n'
            << "beta1," << csv::num(ev.beta(s1)) << '\n'
            << "beta2," << csv::num(ev.beta(s1 + s2)) << '\n';
  if (!a.scan_out.empty()) {
    const auto grid = default_grid(a.grid_count, a.grid_min, a.grid_max);
    const auto d1 = kernels::delta1_scan(ev, grid, kernels::Exec::parallel);
    const auto d2 = kernels::delta2_scan(ev, s1, grid, kernels::Exec::parallel);
    const auto e1 = kernels::true_error1_scan(ev, grid, kernels::Exec::parallel);
    const auto e2 = kernels::true_error2_scan(ev, s1, grid, kernels::Exec::parallel);
    std::ofstream out(a.scan_out);
    if (!out) throw Error("cannot write " + a.scan_out);
    out << "s_re,s_im,delta1,true_error1,delta2,true_error2\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << csv::num(grid[i].real()) << ',' << csv::num(grid[i].imag()) << ','
          << csv::num(d1[i]) << ',' << csv::num(e1[i]) << ',' << csv::num(d2[i]) << ','
          << csv::num(e2[i]) << '\n';
    }
  }
  return kOk;
}

struct SimArgs {
  std::string system;
  std::string config;
  std::vector<std::string> roms;
  std::string input;
  std::string scheme;
  double dt = 0;
  double t_end = -1;
  std::string out;
};

SimOptions sim_options(const SimArgs& a, const RunConfig* cfg) {
  SimOptions o = cfg ? cfg->sim.options : SimOptions{};
  if (!a.scheme.empty()) o.scheme = scheme_from_string(a.scheme);
  if (a.dt > 0) o.dt = a.dt;
  if (a.t_end >= 0) o.t_end = a.t_end;
  return o;
}

InputSignal sim_input(const SimArgs& a, const RunConfig* cfg) {
  if (!a.input.empty()) {
    if (a.input.size() > 4 && a.input.substr(a.input.size() - 4) == ".csv") {
      return InputSignal::from_csv(a.input);
    }
    return InputSignal::from_name(a.input);
  }
  if (cfg) return configured_input(*cfg);
  return InputSignal::exp_decay();
}

QBSystem sim_system(const SimArgs& a, const RunConfig* cfg) {
  if (!a.system.empty()) return load_system(a.system);
  if (cfg) return load_configured_system(*cfg);
  throw ConfigError("need --system or --config");
}

int cmd_simulate(const SimArgs& a) {
  std::optional<RunConfig> cfg;
  if (!a.config.empty()) cfg = RunConfig::from_file(a.config);
  const RunConfig* c = cfg ? &*cfg : nullptr;
  const QBSystem sys = sim_system(a, c);
  const Trajectory traj = simulate_qb(sys, sim_input(a, c), sim_options(a, c));
  write_trajectory_csv(traj, a.out);
  if (traj.diverged) {
    std::cerr << "warning: trajectory diverged at step " << traj.diverged_at
              << "; output truncated\n";
  }
  std::cout << "wrote " << traj.size() << " samples to " << a.out << '\n';
  return kOk;
}

int cmd_compare(const SimArgs& a) {
  std::optional<RunConfig> cfg;
  if (!a.config.empty()) cfg = RunConfig::from_file(a.config);
  const RunConfig* c = cfg ? &*cfg : nullptr;
  if (a.roms.empty()) throw ConfigError("compare needs at least one --rom");

  std::vector<QBSystem> systems;
  std::vector<std::string> labels;
  systems.push_back(sim_system(a, c));
  labels.push_back("full");
  for (const auto& dir : a.roms) {
    systems.push_back(load_system(dir));
    std::string label = fs::path(dir).filename().string();
    if (label == "rom" || label.empty()) label = fs::path(dir).parent_path().filename().string();
    labels.push_back(label);
  }
  const InputSignal u = sim_input(a, c);
  const SimOptions opts = sim_options(a, c);

  // Independent simulations run concurrently.
  std::vector<Trajectory> traj(systems.size());
  std::vector<std::string> failure(systems.size());
  const long count = static_cast<long>(systems.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      SimOptions o = opts;
      o.newton_failure_is_divergence = i > 0;
      traj[static_cast<std::size_t>(i)] = simulate_qb(systems[static_cast<std::size_t>(i)], u, o);
    } catch (const std::exception& e) {
      failure[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (std::size_t i = 0; i < failure.size(); ++i) {
    if (!failure[i].empty()) throw NumericalError(labels[i] + ": " + failure[i]);
  }
  if (traj[0].diverged) throw NumericalError("the full model diverged at step " +
                                             std::to_string(traj[0].diverged_at));

  std::vector<OutputComparison> cmp;
  for (std::size_t i = 1; i < traj.size(); ++i) cmp.push_back(compare_outputs(traj[0], traj[i]));

  std::ofstream out(a.out);
  if (!out) throw Error("cannot write " + a.out);
  out << "t,y_full";
  for (std::size_t i = 1; i < labels.size(); ++i) out << ",y_" << labels[i];
  for (std::size_t i = 1; i < labels.size(); ++i) out << ",abs_err_" << labels[i];
  for (std::size_t i = 1; i < labels.size(); ++i) out << ",rel_err_" << labels[i];
  out << '\n';
  const std::size_t m = traj[0].size();
  for (std::size_t k = 0; k < m; ++k) {
    out << csv::num(traj[0].times[k]) << ',' << csv::num(traj[0].outputs[k]);
    auto cell = [&](const std::vector<double>& v) {
      out << ',';
      if (k < v.size()) out << csv::num(v[k]);
    };
    for (std::size_t i = 1; i < traj.size(); ++i) cell(traj[i].outputs);
    for (std::size_t i = 1; i < traj.size(); ++i) cell(cmp[i - 1].abs_error);
    for (std::size_t i = 1; i < traj.size(); ++i) cell(cmp[i - 1].rel_error);
    out << '\n';
  }

  std::cout << "model,max_abs_err,max_rel_err,diverged_at_step\n";
  for (std::size_t i = 1; i < traj.size(); ++i) {
    std::cout << labels[i] << ',' << csv::num(cmp[i - 1].max_abs) << ','
              << csv::num(cmp[i - 1].max_rel) << ','
              << (traj[i].diverged ? std::to_string(traj[i].diverged_at) : "") << '\n';
    if (traj[i].diverged) {
      std::cerr << "warning: " << labels[i] << " diverged at step " << traj[i].diverged_at
                << " (t = " << csv::num(static_cast<double>(traj[i].diverged_at) * opts.dt)
                << ", " << traj[i].stop_reason << "); later cells are empty\n";
    }
  }
  return kOk;
}

struct TableArgs {
  std::string trace;
  std::string out;
};

int cmd_table(const TableArgs& a) {
  const GreedyTrace trace = read_trace_csv(a.trace);
  if (trace.records.empty()) throw ConfigError("trace " + a.trace + " has no iterations");
  auto sci = [](double v) {
    if (std::isnan(v)) return std::string("-");
    std::ostringstream os;
    os << std::scientific << std::setprecision(4) << v;
    return os.str();
  };
  std::cout << std::left << std::setw(6) << "No." << std::setw(44) << "Interpolation points"
            << std::setw(18) << "Max. True Error" << "Max. Est. Error\n";
  for (const auto& r : trace.records) {
    std::cout << std::left << std::setw(6) << r.iter << std::setw(44)
              << (short_complex(r.sigma1) + ", " + short_complex(r.sigma2)) << std::setw(18)
              << sci(r.true_error) << sci(r.delta) << '\n';
  }
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw Error("cannot write " + a.out);
    out << "iter,sigma1,sigma2,max_true_error,max_est_error\n";
    for (const auto& r : trace.records) {
      out << r.iter << ',' << complex_str(r.sigma1) << ',' << complex_str(r.sigma2) << ','
          << csv::num(r.true_error) << ',' << csv::num(r.delta) << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Quadratic-bilinear model reduction with error-bound driven greedy sampling"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: QBMOR_THREADS or all cores)");
  app.set_version_flag("--version", kVersion);

  std::function<int()> action;

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark systems")->require_subcommand(1);
  auto* build = bench_cmd->add_subcommand("build", "Build a benchmark system directory");
  build->add_option("--kind", bench.kind, "rc, burgers or fhn")->required();
  build->add_option("--size", bench.size, "Size parameter of the chosen kind (l, n or nbar)");
  build->add_option("--l", bench.l, "RC ladder nodes");
  build->add_option("--n", bench.n, "Burgers grid points");
  build->add_option("--nbar", bench.nbar, "FitzHugh-Nagumo grid points");
  build->add_option("--nu", bench.burgers.nu, "Burgers viscosity");
  build->add_option("--alpha", bench.burgers.alpha, "Burgers boundary alpha");
  build->add_option("--beta", bench.burgers.beta, "Burgers boundary beta");
  build->add_flag("--literal-viscous", bench.burgers.literal_viscous, "Use nu*v*v_xx");
  build->add_option("--epsilon", bench.fhn.epsilon, "FitzHugh-Nagumo epsilon");
  build->add_option("--fhn-h", bench.fhn.h, "FitzHugh-Nagumo h");
  build->add_option("--gamma", bench.fhn.gamma, "FitzHugh-Nagumo gamma");
  build->add_option("--g", bench.fhn.g, "FitzHugh-Nagumo constant source");
  build->add_option("--out", bench.out, "Output directory")->required();
  build->callback([&] { action = [&] { return cmd_bench_build(bench); }; });

  ReduceArgs red;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a system")->require_subcommand(1);
  for (const char* method : {"greedy", "irka"}) {
    auto* sub = reduce_cmd->add_subcommand(method, std::string("Reduce with ") + method);
    sub->add_option("--config", red.config, "Run configuration (INI)")->required();
    sub->add_option("--system", red.system, "Saved system directory (overrides [system])");
    sub->add_option("--out", red.out, "Output directory (overrides [output] dir)");
    const std::string m = method;
    sub->callback([&, m] {
      action = [&, m] { return m == "greedy" ? cmd_reduce_greedy(red) : cmd_reduce_irka(red); };
    });
  }

  TfArgs tfa;
  auto* tf_cmd = app.add_subcommand("tf", "Transfer functions")->require_subcommand(1);
  auto* tf_eval = tf_cmd->add_subcommand("eval", "Evaluate H1, H2 and dH2");
  tf_eval->add_option("--system", tfa.system, "System directory")->required();
  tf_eval->add_option("--s1", tfa.s1, "First frequency, e.g. 2+3i")->required();
  tf_eval->add_option("--s2", tfa.s2, "Second frequency");
  tf_eval->add_flag("--derivative", tfa.derivative, "Also print the partials of H2");
  tf_eval->callback([&] { action = [&] { return cmd_tf_eval(tfa); }; });

  BoundArgs ba;
  auto* bound_cmd = app.add_subcommand("bound", "Error bounds")->require_subcommand(1);
  auto* bound_eval = bound_cmd->add_subcommand("eval", "Evaluate Delta1/Delta2");
  bound_eval->add_option("--system", ba.system, "System directory")->required();
  bound_eval->add_option("--sigma1", ba.sigma1, "Comma separated sigma_1i used for the bases");
  bound_eval->add_option("--sigma2", ba.sigma2, "Comma separated sigma_2i used for the bases");
  bound_eval->add_option("--s1", ba.s1, "Evaluation point s1")->required();
  bound_eval->add_option("--s2", ba.s2, "Evaluation point s2 (default s1)");
  bound_eval->add_option("--scan", ba.scan_out, "Write a grid scan CSV at fixed s1");
  bound_eval->add_option("--grid-count", ba.grid_count, "Scan points");
  bound_eval->add_option("--grid-min", ba.grid_min, "Smallest scan point");
  bound_eval->add_option("--grid-max", ba.grid_max, "Largest scan point");
  bound_eval->callback([&] { action = [&] { return cmd_bound_eval(ba); }; });

  SimArgs sa;
  auto add_sim_options = [&](CLI::App* sub) {
    sub->add_option("--system", sa.system, "System directory");
    sub->add_option("--config", sa.config, "Run configuration for [system] and [sim]");
    sub->add_option("--input", sa.input, "exp_decay, cosine_pi, cubic_pulse or a CSV table");
    sub->add_option("--scheme", sa.scheme, "implicit_euler or rk4");
    sub->add_option("--dt", sa.dt, "Step size");
    sub->add_option("--t-end", sa.t_end, "Final time");
    sub->add_option("--out", sa.out, "Output CSV")->required();
  };
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a system, write (t, y)");
  add_sim_options(sim_cmd);
  sim_cmd->callback([&] { action = [&] { return cmd_simulate(sa); }; });
  auto* cmp_cmd = app.add_subcommand("compare", "Simulate a system and ROMs, write errors");
  add_sim_options(cmp_cmd);
  cmp_cmd->add_option("--rom", sa.roms, "ROM directory (repeatable)")->required();
  cmp_cmd->callback([&] { action = [&] { return cmd_compare(sa); }; });

  TableArgs ta;
  auto* table_cmd = app.add_subcommand("table", "Format a greedy trace as a table");
  table_cmd->add_option("--trace", ta.trace, "trace.csv from reduce greedy")->required();
  table_cmd->add_option("--out", ta.out, "Also write the table as CSV");
  table_cmd->callback([&] { action = [&] { return cmd_table(ta); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (threads <= 0) {
    if (const char* env = std::getenv("QBMOR_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::logic_error&) {
        std::cerr << "error: QBMOR_THREADS must be an integer\n";
        return kConfigError;
      }
    }
  }
  kernels::set_threads(threads);

  try {
    return action ? action() : kConfigError;
  } catch (const NotConverged& e) {
    std::cerr << "not converged: " << e.what() << " (partial artifacts saved)\n";
    return kNotConverged;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace qbmor::cli
