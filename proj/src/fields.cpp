#include "dphase/fields.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dphase/errors.hpp"

namespace dphase {

namespace {

constexpr int kAxisSamples = 257;

double sample_point(const Box& box, int i) {
  return box.lo + box.width() * i / (kAxisSamples - 1);
}

}  // namespace

OrderField::OrderField(Expression expr, Box box)
    : expr_(std::move(expr)), box_(box) {
  if (expr_.is_constant()) {
    s_minus_ = s_plus_ = expr_.constant_value();
  } else {
    s_minus_ = std::numeric_limits<double>::infinity();
    s_plus_ = -s_minus_;
    for (int i = 0; i < kAxisSamples; ++i) {
      double x = sample_point(box_, i);
      for (int j = i; j < kAxisSamples; ++j) {
        double y = sample_point(box_, j);
        double s = 0.5 * (expr_.eval(x, y) + expr_.eval(y, x));
        s_minus_ = std::fmin(s_minus_, s);
        s_plus_ = std::fmax(s_plus_, s);
      }
    }
  }
  if (!(s_minus_ > 0.0) || !(s_plus_ < 1.0))
    throw std::invalid_argument(
        "order field '" + expr_.text() + "' leaves (0,1): sampled range [" +
        std::to_string(s_minus_) + ", " + std::to_string(s_plus_) + "]");
}

double OrderField::value(double x, double y) const {
  // Commutative addition makes the symmetrization exact in floating point.
  double s = 0.5 * (expr_.eval(x, y) + expr_.eval(y, x));
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("order value " + std::to_string(s) +
                            " outside (0,1) at (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
  return s;
}

ExponentField::ExponentField(Expression expr, Box box, std::string name)
    : expr_(std::move(expr)), box_(box), name_(std::move(name)) {
  if (expr_.is_constant()) {
    min_ = max_ = expr_.constant_value();
  } else {
    min_ = std::numeric_limits<double>::infinity();
    max_ = -min_;
    for (int i = 0; i < kAxisSamples; ++i) {
      double v = value(sample_point(box_, i));
      min_ = std::fmin(min_, v);
      max_ = std::fmax(max_, v);
    }
  }
}

double ExponentField::value(double x) const {
  double v = expr_.eval(x, x);
  if (!std::isfinite(v))
    throw NumericError("field '" + name_ + "' is not finite at x=" +
                           std::to_string(x),
                       x, x);
  return v;
}

}  // namespace dphase
