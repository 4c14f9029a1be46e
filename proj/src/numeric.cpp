#include "dphase/numeric.hpp"

#include <cmath>
#include <vector>

#include "dphase/errors.hpp"

namespace dphase {

double monotone_bisect(const std::function<double(double)>& g, double lo,
                       double hi, double tol, int max_iter) {
  for (int i = 0; i < max_iter && (hi - lo) > tol * std::fmax(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double err = left + right - whole;
  if (depth <= 0 || std::fabs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int panels, int max_depth) {
  if (a == b) return 0.0;
  double h = (b - a) / panels;
  // First pass fixes the error budget against the whole integral, not against
  // individual panels whose own estimate may vanish.
  std::vector<double> x0(panels), xm(panels), x1(panels);
  std::vector<double> f0(panels), fm(panels), f1(panels), whole(panels);
  double rough = 0.0;
  for (int k = 0; k < panels; ++k) {
    x0[k] = a + k * h;
    x1[k] = (k + 1 == panels) ? b : a + (k + 1) * h;
    xm[k] = 0.5 * (x0[k] + x1[k]);
    f0[k] = f(x0[k]);
    fm[k] = f(xm[k]);
    f1[k] = f(x1[k]);
    whole[k] = simpson(f0[k], fm[k], f1[k], x1[k] - x0[k]);
    rough += std::fabs(whole[k]);
  }
  double budget = tol * (rough + 1e-30) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k)
    total += adapt(f, x0[k], x1[k], f0[k], fm[k], f1[k], whole[k], budget,
                   max_depth);
  if (!std::isfinite(total))
    throw NumericError("adaptive quadrature produced a non-finite value");
  return total;
}

double power_difference(double a, double b, double p) {
  if (a == b) return 0.0;
  if (a == 0.0) return std::pow(b, p);
  if (b == 0.0) return -std::pow(a, p);
  double rel = (b - a) / a;
  if (std::fabs(rel) > 0.125)
    return std::pow(b, p) - std::pow(a, p);
  // b^p - a^p = a^p * (exp(p*log(b/a)) - 1), accurate for nearby arguments.
  return std::pow(a, p) * std::expm1(p * std::log1p(rel));
}

}  // namespace dphase
