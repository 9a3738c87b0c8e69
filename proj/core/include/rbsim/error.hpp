#pragma once

#include <stdexcept>
#include <string>

namespace rbsim {

// Base for every error raised by the model.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The radicand of the mode-size formula is negative: no confined Gaussian mode.
class UnstableResonator : public Error {
 public:
  UnstableResonator(const std::string& what, double a, double b, double c,
                    double d)
      : Error(what), a_(a), b_(b), c_(c), d_(d) {}

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

 private:
  double a_, b_, c_, d_;
};

// A*C == 0: the mode-size formula is undefined.
class DegenerateCavity : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string key = {}, int line = 0)
      : Error(what), key_(std::move(key)), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

class OptimizationFailed : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace rbsim
