#pragma once

#include <string>

#include "dphase/expression.hpp"

namespace dphase {

// Closed 1-D box the fields are sampled and evaluated on. For a problem this
// is Omega together with its truncated exterior collar.
struct Box {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

// Variable fractional order s(x, y): symmetric, continuous, valued in (0, 1).
// Evaluation symmetrizes the underlying expression so s(x,y) == s(y,x) holds
// exactly, and rejects values outside (0, 1) instead of clamping.
class OrderField {
 public:
  OrderField(Expression expr, Box box);

  double value(double x, double y) const;

  double s_minus() const { return s_minus_; }
  double s_plus() const { return s_plus_; }
  const Box& box() const { return box_; }
  const Expression& expression() const { return expr_; }

 private:
  Expression expr_;
  Box box_;
  double s_minus_, s_plus_;  // sampled bounds
};

// Scalar field of x alone (exponent q(x), Robin weight beta(x), ...). The
// expression may only reference x; evaluation binds y = x.
class ExponentField {
 public:
  // `name` labels error messages; bounds are sampled over `box`.
  ExponentField(Expression expr, Box box, std::string name);

  double value(double x) const;

  double min_value() const { return min_; }
  double max_value() const { return max_; }
  const Expression& expression() const { return expr_; }

 private:
  Expression expr_;
  Box box_;
  std::string name_;
  double min_, max_;
};

}  // namespace dphase
