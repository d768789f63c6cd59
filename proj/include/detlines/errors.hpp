#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace detlines {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class VariantMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ContainmentError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class ReconstructionError : public Error {
 public:
  using Error::Error;
};

// d*d != 0, chain-map squares not commuting, hexagon not exact.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, int degree)
      : Error(what), degree_(degree) {}
  explicit ValidationError(const std::string& what) : Error(what) {}
  int degree() const { return degree_; }

 private:
  int degree_ = 0;
};

class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Bad campaign name or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Carries the grid points where a rank condition failed.
class RankDegeneracyError : public Error {
 public:
  RankDegeneracyError(const std::string& what, std::vector<std::string> points)
      : Error(what + describe(points)), points_(std::move(points)) {}
  const std::vector<std::string>& points() const { return points_; }

 private:
  static std::string describe(const std::vector<std::string>& pts) {
    std::string s = " at";
    for (const auto& p : pts) s += " " + p;
    return s;
  }
  std::vector<std::string> points_;
};

}  // namespace detlines
