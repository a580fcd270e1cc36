#include "qbmor/greedy.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "qbmor/csv.hpp"

namespace qbmor {

namespace {

const char* const kTraceHeader =
    "iter,sigma1_re,sigma1_im,sigma2_re,sigma2_im,delta1,delta2,delta,true_error,basis_V,"
    "basis_W,wall_time";

double finite_max(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (std::isfinite(x) && x > m) m = x;
  }
  return m;
}

std::size_t count_nonfinite(const std::vector<double>& v) {
  std::size_t c = 0;
  for (double x : v) c += std::isfinite(x) ? 0 : 1;
  return c;
}

}  // namespace

void GreedyConfig::validate() const {
  if (S1.empty() || S2.empty()) throw ConfigError("greedy: sample grids must be nonempty");
  if (!(eps_tol > 0.0) || !(eps_tol < 1.0)) {
    throw ConfigError("greedy: eps_tol must lie in (0, 1), got " + std::to_string(eps_tol));
  }
  if (max_iters < 1) throw ConfigError("greedy: max_iters must be positive");
  if (stagnation_window < 1) throw ConfigError("greedy: stagnation_window must be positive");
  if (!(deflation_tol > 0.0)) throw ConfigError("greedy: deflation_tol must be positive");
}

std::string to_string(GreedyStatus status) {
  switch (status) {
    case GreedyStatus::converged: return "converged";
    case GreedyStatus::max_iters: return "max_iters";
    case GreedyStatus::stagnated: return "stagnated";
  }
  return "unknown";
}

std::vector<Complex> default_grid(int count, double lo, double hi, const std::vector<double>& imag) {
  std::vector<Complex> grid;
  if (count == 1) grid.emplace_back(lo, 0.0);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; count > 1 && i < count; ++i) {
    grid.emplace_back(std::pow(10.0, a + (b - a) * i / (count - 1)), 0.0);
  }
  for (double w : imag) grid.emplace_back(0.0, w);
  return grid;
}

GreedyResult run_greedy(const QBSystem& sys, const GreedyConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Index n = sys.n();

  TransferEvaluator tf(sys);
  BoundEvaluator ev(tf, cfg.deflation_tol, cfg.beta_method);
  Basis V(n, cfg.deflation_tol);
  Basis W(n, cfg.deflation_tol);

  GreedyResult result;
  std::vector<char> used1(cfg.S1.size(), 0);
  std::vector<PointPair> used_pairs;

  auto warn_skipped = [&](const std::vector<double>& values, const char* what, int iter) {
    if (const std::size_t k = count_nonfinite(values)) {
      result.warnings.push_back("iteration " + std::to_string(iter) + ": skipped " +
                                std::to_string(k) + " grid point(s) in " + what +
                                " scan (singular pencil)");
    }
  };

  Complex sigma1 = cfg.sigma10;
  Complex sigma2 = cfg.sigma20;
  double best = std::numeric_limits<double>::infinity();
  int no_progress = 0;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    ev.add_subsystem1(sigma1);
    for (std::size_t i = 0; i < cfg.S1.size(); ++i) {
      if (cfg.S1[i] == sigma1) used1[i] = 1;
    }
    const std::vector<double> d1 = kernels::delta1_scan(ev, cfg.S1, cfg.exec);
    warn_skipped(d1, "Delta1", iter);
    const long k1 = kernels::argmax(d1, used1);
    const Complex sigma1_next = k1 >= 0 ? cfg.S1[static_cast<std::size_t>(k1)] : sigma1;

    ev.add_subsystem2(sigma1, sigma2);
    used_pairs.push_back({sigma1, sigma2});
    std::vector<char> used2(cfg.S2.size(), 0);
    for (std::size_t j = 0; j < cfg.S2.size(); ++j) {
      for (const auto& p : used_pairs) {
        if (p.s1 == sigma1_next && p.s2 == cfg.S2[j]) used2[j] = 1;
      }
    }
    const std::vector<double> d2 = kernels::delta2_scan(ev, sigma1_next, cfg.S2, cfg.exec);
    warn_skipped(d2, "Delta2", iter);
    const long k2 = kernels::argmax(d2, used2);
    const Complex sigma2_next = k2 >= 0 ? cfg.S2[static_cast<std::size_t>(k2)] : sigma2;

    extend_lemma2(tf, {sigma1, sigma2}, V, W);
    result.pairs.push_back({sigma1, sigma2});

    GreedyRecord rec;
    rec.iter = iter;
    rec.sigma1 = sigma1;
    rec.sigma2 = sigma2;
    rec.delta1 = finite_max(d1);
    rec.delta2 = finite_max(d2);
    rec.delta = rec.delta1 + rec.delta2;
    if (cfg.validate_true_error) {
      rec.true_error = finite_max(kernels::true_error1_scan(ev, cfg.S1, cfg.exec)) +
                       finite_max(kernels::true_error2_scan(ev, sigma1_next, cfg.S2, cfg.exec));
    }
    rec.basis_V = V.size();
    rec.basis_W = W.size();
    rec.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.trace.records.push_back(rec);
    if (cfg.on_iteration) cfg.on_iteration(rec, ev);

    if (rec.delta <= cfg.eps_tol) {
      result.status = GreedyStatus::converged;
      break;
    }
    if (rec.delta < best) {
      best = rec.delta;
      no_progress = 0;
    } else if (++no_progress >= cfg.stagnation_window) {
      result.status = GreedyStatus::stagnated;
      result.warnings.push_back("bound stagnated for " + std::to_string(no_progress) +
                                " iterations; stopping");
      break;
    }
    sigma1 = sigma1_next;
    sigma2 = sigma2_next;
  }

  equalize(V, W);
  result.V = std::move(V.columns);
  result.W = std::move(W.columns);
  return result;
}

ReducedQBSystem reduce_final(const QBSystem& sys, const GreedyResult& result,
                             const ReduceOptions& opts) {
  return reduce(sys, result.V, result.W, opts);
}

void write_trace_csv(const GreedyTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace file " + path);
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.iter << ',' << csv::num(r.sigma1.real()) << ',' << csv::num(r.sigma1.imag()) << ','
        << csv::num(r.sigma2.real()) << ',' << csv::num(r.sigma2.imag()) << ','
        << csv::num(r.delta1) << ',' << csv::num(r.delta2) << ',' << csv::num(r.delta) << ','
        << csv::num(r.true_error) << ',' << r.basis_V << ',' << r.basis_W << ','
        << csv::num(r.wall_time) << '\n';
  }
}

GreedyTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read trace file " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("trace file " + path + " is empty");
  const auto header = csv::split(line);
  if (header.size() < 11 || header[0] != "iter" || header[10] != "basis_W") {
    throw FormatError("trace file " + path + " has an unexpected header");
  }
  GreedyTrace trace;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = csv::split(line);
    if (c.size() < 11) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected at least 11 columns");
    }
    try {
      GreedyRecord r;
      r.iter = std::stoi(c[0]);
      r.sigma1 = {csv::parse(c[1]), csv::parse(c[2])};
      r.sigma2 = {csv::parse(c[3]), csv::parse(c[4])};
      r.delta1 = csv::parse(c[5]);
      r.delta2 = csv::parse(c[6]);
      r.delta = csv::parse(c[7]);
      r.true_error = csv::parse(c[8]);
      r.basis_V = std::stol(c[9]);
      r.basis_W = std::stol(c[10]);
      if (c.size() > 11) r.wall_time = csv::parse(c[11]);
      trace.records.push_back(r);
    } catch (const std::logic_error&) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return trace;
}

}  // namespace qbmor
