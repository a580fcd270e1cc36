#pragma once

#include <string>
#include <vector>

namespace qbmor {

/// Scalar input u(t). All kinds vanish for t < 0.
///
///   exp_decay    amplitude * exp(-rate * t)
///   cosine_pi    amplitude * cos(pi * frequency * t)
///   cubic_pulse  amplitude * t^3 * exp(-rate * t)
///   table        piecewise linear through (times, values), held constant
///                after the last sample
class InputSignal {
 public:
  enum class Kind { exp_decay, cosine_pi, cubic_pulse, table };

  static InputSignal exp_decay(double amplitude = 1.0, double rate = 1.0);
  static InputSignal cosine_pi(double amplitude = 1.0, double frequency = 1.0);
  static InputSignal cubic_pulse(double amplitude = 5e4, double rate = 15.0);
  static InputSignal table(std::vector<double> times, std::vector<double> values);

  /// Parses "exp_decay", "cosine_pi", "cubic_pulse" with default parameters.
  static InputSignal from_name(const std::string& name);
  static InputSignal from_csv(const std::string& path);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  std::string name() const;

 private:
  Kind kind_ = Kind::exp_decay;
  double amplitude_ = 1.0;
  double rate_ = 1.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

}  // namespace qbmor
