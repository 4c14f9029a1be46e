#pragma once

#include <functional>

namespace dphase {

// Root of a nondecreasing function g on [lo, hi] with g(lo) <= 0 <= g(hi).
// Bisects until the bracket is below `tol` relative to its magnitude.
double monotone_bisect(const std::function<double(double)>& g, double lo,
                       double hi, double tol = 1e-14, int max_iter = 200);

// Recursive adaptive Simpson quadrature of f over [a, b]. `panels` sets the
// initial uniform subdivision; each panel is then refined until its local
// error estimate is below tol scaled by the panel's share of the interval.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int panels = 64,
                        int max_depth = 48);

// pow(b, p) - pow(a, p) for 0 <= a, b, evaluated so the relative error is on
// the order of machine epsilon of the difference even when a and b are close.
double power_difference(double a, double b, double p);

}  // namespace dphase
