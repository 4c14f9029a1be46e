#include "dphase/reaction.hpp"

#include <cmath>
#include <stdexcept>

#include "dphase/numeric.hpp"

namespace dphase {

ReactionSpec::ReactionSpec(ExponentField q_field)
    : q_field_(std::move(q_field)) {
  if (!(q_minus() > 1.0))
    throw std::invalid_argument("reaction exponent must satisfy q(x) > 1");
}

double ReactionSpec::value(double x, double t) const {
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(t), q(x) - 1.0), t);
}

double ReactionSpec::primitive(double x, double t) const {
  if (t == 0.0) return 0.0;
  double qx = q(x);
  return std::pow(std::fabs(t), qx) / qx;
}

double ReactionSpec::primitive_diff(double x, double a, double b) const {
  double qx = q(x);
  return power_difference(std::fabs(a), std::fabs(b), qx) / qx;
}

}  // namespace dphase
