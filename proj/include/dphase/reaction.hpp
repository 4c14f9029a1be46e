#pragma once

#include "dphase/fields.hpp"

namespace dphase {

// Variable-exponent power reaction
//
//   f(x,t) = |t|^{q(x)-2} t,      F(x,t) = |t|^{q(x)} / q(x),
//
// which realizes the growth bounds |f| <= c1 |t|^{q(x)-1} and
// c2 |t|^{q(x)} <= F with c1 = 1 and c2 = 1/q_plus.
class ReactionSpec {
 public:
  explicit ReactionSpec(ExponentField q_field);

  double value(double x, double t) const;      // f
  double primitive(double x, double t) const;  // F

  // F(x,b) - F(x,a), accurate relative to the difference.
  double primitive_diff(double x, double a, double b) const;

  double q(double x) const { return q_field_.value(x); }
  double q_minus() const { return q_field_.min_value(); }
  double q_plus() const { return q_field_.max_value(); }
  double c1() const { return 1.0; }
  double c2() const { return 1.0 / q_plus(); }

  const ExponentField& q_field() const { return q_field_; }

 private:
  ExponentField q_field_;
};

}  // namespace dphase
