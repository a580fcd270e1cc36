#include "qbmor/input_signal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qbmor/errors.hpp"

namespace qbmor {

InputSignal InputSignal::exp_decay(double amplitude, double rate) {
  InputSignal s;
  s.kind_ = Kind::exp_decay;
  s.amplitude_ = amplitude;
  s.rate_ = rate;
  return s;
}

InputSignal InputSignal::cosine_pi(double amplitude, double frequency) {
  InputSignal s;
  s.kind_ = Kind::cosine_pi;
  s.amplitude_ = amplitude;
  s.rate_ = frequency;
  return s;
}

InputSignal InputSignal::cubic_pulse(double amplitude, double rate) {
  InputSignal s;
  s.kind_ = Kind::cubic_pulse;
  s.amplitude_ = amplitude;
  s.rate_ = rate;
  return s;
}

InputSignal InputSignal::table(std::vector<double> times, std::vector<double> values) {
  if (times.empty() || times.size() != values.size()) {
    throw ConfigError("input table needs matching, nonempty time and value columns");
  }
  if (!std::is_sorted(times.begin(), times.end())) {
    throw ConfigError("input table times must be nondecreasing");
  }
  InputSignal s;
  s.kind_ = Kind::table;
  s.times_ = std::move(times);
  s.values_ = std::move(values);
  return s;
}

InputSignal InputSignal::from_name(const std::string& name) {
  if (name == "exp_decay") return exp_decay();
  if (name == "cosine_pi") return cosine_pi();
  if (name == "cubic_pulse") return cubic_pulse();
  throw ConfigError("unknown input signal '" + name + "'");
}

InputSignal InputSignal::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input table " + path);
  std::vector<double> t, u;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a >> b)) continue;  // header row
    t.push_back(a);
    u.push_back(b);
  }
  return table(std::move(t), std::move(u));
}

double InputSignal::operator()(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind_) {
    case Kind::exp_decay:
      return amplitude_ * std::exp(-rate_ * t);
    case Kind::cosine_pi:
      return amplitude_ * std::cos(std::numbers::pi * rate_ * t);
    case Kind::cubic_pulse:
      return amplitude_ * t * t * t * std::exp(-rate_ * t);
    case Kind::table: {
      if (t <= times_.front()) return values_.front();
      if (t >= times_.back()) return values_.back();
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
      const std::size_t lo = hi - 1;
      const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
      return (1.0 - w) * values_[lo] + w * values_[hi];
    }
  }
  return 0.0;
}

std::string InputSignal::name() const {
  switch (kind_) {
    case Kind::exp_decay: return "exp_decay";
    case Kind::cosine_pi: return "cosine_pi";
    case Kind::cubic_pulse: return "cubic_pulse";
    case Kind::table: return "table";
  }
  return "unknown";
}

}  // namespace qbmor
