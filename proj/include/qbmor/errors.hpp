#pragma once

#include <stdexcept>
#include <string>

#include "qbmor/types.hpp"

namespace qbmor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// sE - A (or a reduced pencil) is singular at the requested point.
class SingularPencilError : public NumericalError {
 public:
  SingularPencilError(Complex s, double rcond, const std::string& what)
      : NumericalError(what), s_(s), rcond_(rcond) {}
  Complex point() const { return s_; }
  double rcond() const { return rcond_; }

 private:
  Complex s_;
  double rcond_;
};

/// W^T E V is singular, so the Petrov-Galerkin reduction is undefined.
class SingularReductionError : public NumericalError {
 public:
  SingularReductionError(double rcond, const std::string& what)
      : NumericalError(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

class NewtonFailure : public NumericalError {
 public:
  NewtonFailure(std::size_t step, const std::string& what)
      : NumericalError(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

std::string format_complex(Complex z);

}  // namespace qbmor
