#include "qbmor/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qbmor/system_io.hpp"

namespace qbmor {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::logic_error&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != t.size()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"system",
       {"kind", "size", "nu", "alpha", "beta", "literal_viscous", "epsilon", "h", "gamma", "g",
        "path"}},
      {"greedy",
       {"sigma10", "sigma20", "grid_count", "grid_min", "grid_max", "grid_imag", "eps_tol",
        "max_iters", "validate_true_error", "deflation_tol", "stagnation_window", "beta_method",
        "rom_size", "two_sided"}},
      {"irka", {"r", "init_points", "tol", "max_iters", "rom_size", "two_sided"}},
      {"sim", {"scheme", "dt", "t_end", "input"}},
      {"output", {"dir"}},
  };
  return s;
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

  template <class F>
  auto wrap(const std::string& key, F&& f) const {
    try {
      return f();
    } catch (const ConfigError& e) {
      throw ConfigError(where(key) + ": " + e.what());
    }
  }

  bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }
  std::string str(const std::string& key) const { return trim(tree_->get<std::string>(key)); }

  void read(const std::string& key, std::string& out) const {
    if (has(key)) out = str(key);
  }
  void read(const std::string& key, double& out) const {
    if (has(key)) out = wrap(key, [&] { return parse_real(str(key)); });
  }
  void read(const std::string& key, int& out) const {
    if (has(key)) out = static_cast<int>(integer(key));
  }
  void read(const std::string& key, Index& out) const {
    if (has(key)) out = integer(key);
  }
  void read(const std::string& key, bool& out) const {
    if (!has(key)) return;
    const std::string v = str(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") out = true;
    else if (v == "false" || v == "0" || v == "no" || v == "off") out = false;
    else throw ConfigError(where(key) + ": expected a boolean, got '" + v + "'");
  }
  void read(const std::string& key, Complex& out) const {
    if (has(key)) out = wrap(key, [&] { return parse_complex(str(key)); });
  }

 private:
  Index integer(const std::string& key) const {
    return wrap(key, [&] {
      const double v = parse_real(str(key));
      if (v != std::floor(v)) throw ConfigError("expected an integer");
      return static_cast<Index>(v);
    });
  }

  const pt::ptree* tree_;
  std::string name_;
};

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != ' ' && c != '\t') t += c;
  }
  if (t.empty()) throw ConfigError("empty complex number");
  const char last = t.back();
  if (last != 'i' && last != 'j') return {parse_real(t), 0.0};
  t.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : t.substr(0, split);
  std::string im = split == std::string::npos ? t : t.substr(split);
  if (im.empty() || im == "+") im = "1";
  else if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& item : split_list(text)) out.push_back(parse_complex(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_real(item));
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

RunConfig RunConfig::from_string(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError("unknown config section [" + section + "]");
    if (!body.data().empty()) throw ConfigError("key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
      }
    }
  }
  auto section = [&](const std::string& name) {
    const auto it = tree.find(name);
    return Section(it == tree.not_found() ? nullptr : &it->second, name);
  };

  RunConfig cfg;
  cfg.hash = fnv1a(text);

  const Section sys = section("system");
  sys.read("path", cfg.system.path);
  BenchmarkSpec& spec = cfg.system.spec;
  if (sys.has("kind")) spec.kind = benchmark_kind_from_string(sys.str("kind"));
  if (sys.has("size")) {
    Index size = 0;
    sys.read("size", size);
    spec.rc_nodes = size;
    spec.burgers.n = size;
    spec.fhn.nbar = size;
  }
  sys.read("nu", spec.burgers.nu);
  sys.read("alpha", spec.burgers.alpha);
  sys.read("beta", spec.burgers.beta);
  sys.read("literal_viscous", spec.burgers.literal_viscous);
  sys.read("epsilon", spec.fhn.epsilon);
  sys.read("h", spec.fhn.h);
  sys.read("gamma", spec.fhn.gamma);
  sys.read("g", spec.fhn.g);
  if (cfg.system.path.empty() && !sys.has("kind")) {
    throw ConfigError("[system] needs either kind or path");
  }
  if (cfg.system.path.empty()) spec.validate();

  const Section g = section("greedy");
  g.read("sigma10", cfg.greedy.sigma10);
  g.read("sigma20", cfg.greedy.sigma20);
  g.read("grid_count", cfg.greedy.grid_count);
  g.read("grid_min", cfg.greedy.grid_min);
  g.read("grid_max", cfg.greedy.grid_max);
  if (g.has("grid_imag")) cfg.greedy.grid_imag = parse_double_list(g.str("grid_imag"));
  g.read("eps_tol", cfg.greedy.eps_tol);
  g.read("max_iters", cfg.greedy.max_iters);
  g.read("validate_true_error", cfg.greedy.validate_true_error);
  g.read("deflation_tol", cfg.greedy.deflation_tol);
  g.read("stagnation_window", cfg.greedy.stagnation_window);
  if (g.has("beta_method")) {
    const std::string m = g.str("beta_method");
    if (m == "automatic") cfg.greedy.beta_method = BetaMethod::automatic;
    else if (m == "svd") cfg.greedy.beta_method = BetaMethod::svd;
    else if (m == "inverse_iteration") cfg.greedy.beta_method = BetaMethod::inverse_iteration;
    else throw ConfigError(g.where("beta_method") + ": unknown method '" + m + "'");
  }
  g.read("rom_size", cfg.greedy.rom_size);
  g.read("two_sided", cfg.greedy.two_sided);
  if (!(cfg.greedy.eps_tol > 0.0 && cfg.greedy.eps_tol < 1.0)) {
    throw ConfigError("[greedy] eps_tol must lie in (0, 1)");
  }
  if (cfg.greedy.max_iters < 1) throw ConfigError("[greedy] max_iters must be positive");
  if (cfg.greedy.grid_count < 1) throw ConfigError("[greedy] grid_count must be positive");
  if (!(cfg.greedy.grid_min > 0.0) || !(cfg.greedy.grid_max >= cfg.greedy.grid_min)) {
    throw ConfigError("[greedy] need 0 < grid_min <= grid_max");
  }
  if (cfg.greedy.rom_size < 0) throw ConfigError("[greedy] rom_size must be >= 0");

  const Section ir = section("irka");
  ir.read("r", cfg.irka.r);
  if (ir.has("init_points")) cfg.irka.init_points = parse_complex_list(ir.str("init_points"));
  ir.read("tol", cfg.irka.tol);
  ir.read("max_iters", cfg.irka.max_iters);
  ir.read("rom_size", cfg.irka.rom_size);
  ir.read("two_sided", cfg.irka.two_sided);
  if (cfg.irka.r < 1) throw ConfigError("[irka] r must be positive");
  if (!(cfg.irka.tol > 0.0)) throw ConfigError("[irka] tol must be positive");
  if (cfg.irka.max_iters < 1) throw ConfigError("[irka] max_iters must be positive");
  if (cfg.irka.rom_size < 0) throw ConfigError("[irka] rom_size must be >= 0");

  const Section s = section("sim");
  if (s.has("scheme")) cfg.sim.options.scheme = scheme_from_string(s.str("scheme"));
  s.read("dt", cfg.sim.options.dt);
  s.read("t_end", cfg.sim.options.t_end);
  s.read("input", cfg.sim.input);
  if (!(cfg.sim.options.dt > 0.0)) throw ConfigError("[sim] dt must be positive");
  if (!(cfg.sim.options.t_end >= 0.0)) throw ConfigError("[sim] t_end must be >= 0");

  section("output").read("dir", cfg.output_dir);
  if (cfg.output_dir.empty()) throw ConfigError("[output] dir must not be empty");
  return cfg;
}

QBSystem load_configured_system(const RunConfig& cfg) {
  if (!cfg.system.path.empty()) return load_system(cfg.system.path);
  return build_benchmark(cfg.system.spec);
}

InputSignal configured_input(const RunConfig& cfg) {
  const std::string& in = cfg.sim.input;
  if (in.empty()) return benchmark_input(cfg.system.spec.kind);
  if (in.size() > 4 && in.substr(in.size() - 4) == ".csv") return InputSignal::from_csv(in);
  return InputSignal::from_name(in);
}

}  // namespace qbmor
