#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dphase {

// Malformed expression or config text. `offset` is the byte position of the
// first offending character in the parsed text (0-based).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t offset)
      : std::runtime_error(std::move(msg)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A numeric routine produced a non-finite value or failed to converge.
// Carries the evaluation point when one is meaningful.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(std::string msg) : std::runtime_error(std::move(msg)) {}
  NumericError(std::string msg, double x, double y)
      : std::runtime_error(std::move(msg)), x_(x), y_(y), has_point_(true) {}
  bool has_point() const { return has_point_; }
  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_ = 0.0, y_ = 0.0;
  bool has_point_ = false;
};

// Nonzero argument whose modular vanishes under every scaling; the Luxemburg
// construction has no finite positive root to bracket.
class DegenerateModularError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Line search could not certify a descent step. The last iterate is kept so
// callers can inspect how far the minimization got.
class StagnationError : public NumericError {
 public:
  StagnationError(std::string msg, std::vector<double> last_iterate,
                  double energy, double gradient_sup)
      : NumericError(std::move(msg)),
        last_iterate_(std::move(last_iterate)),
        energy_(energy),
        gradient_sup_(gradient_sup) {}
  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double energy() const { return energy_; }
  double gradient_sup() const { return gradient_sup_; }

 private:
  std::vector<double> last_iterate_;
  double energy_;
  double gradient_sup_;
};

}  // namespace dphase
