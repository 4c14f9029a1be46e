#include "dphase/musielak.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dphase/errors.hpp"
#include "dphase/numeric.hpp"

namespace dphase {

namespace {

constexpr double kE = 2.718281828459045235360287471;

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out(n);
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    out[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  return out;
}

std::vector<double> lin_space(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

// t / ((e+t) log(e+t)): the gap between t*phi/Phi and p for the power-log
// kind. Unimodal on (0, inf) with a single interior maximum.
double power_log_ratio_gap(double t) {
  return t / ((kE + t) * std::log(kE + t));
}

double golden_max(const std::function<double(double)>& f, double lo,
                  double hi) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200 && (b - a) > 1e-13 * (1.0 + b); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::fmax(fc, fd);
}

// Integral of g over [0, T] with a cubic grading that regularizes power-type
// endpoint behavior at 0 before handing off to adaptive Simpson.
double graded_integral(const std::function<double(double)>& g, double T) {
  if (T == 0.0) return 0.0;
  auto integrand = [&](double w) { return 3.0 * T * w * w * g(T * w * w * w); };
  return adaptive_simpson(integrand, 0.0, 1.0, 1e-12, 64, 40);
}

}  // namespace

MusielakFamily MusielakFamily::power(Expression p, Box box) {
  MusielakFamily f;
  f.kind_ = FamilyKind::power;
  f.box_ = box;
  f.p_expr_ = std::move(p);
  f.estimate_exponent_bounds({}, {});
  return f;
}

MusielakFamily MusielakFamily::power_log(Expression p, Box box) {
  MusielakFamily f;
  f.kind_ = FamilyKind::power_log;
  f.box_ = box;
  f.p_expr_ = std::move(p);
  f.estimate_exponent_bounds({}, {});
  return f;
}

MusielakFamily MusielakFamily::custom(Coefficient a, Box box,
                                      std::optional<double> phi_minus_hint,
                                      std::optional<double> phi_plus_hint) {
  MusielakFamily f;
  f.kind_ = FamilyKind::custom;
  f.box_ = box;
  f.custom_a_ = std::move(a);
  f.estimate_exponent_bounds(phi_minus_hint, phi_plus_hint);
  return f;
}

double MusielakFamily::exponent(double x, double y) const {
  if (!p_expr_)
    throw std::invalid_argument("custom family has no exponent field");
  double p = 0.5 * (p_expr_->eval(x, y) + p_expr_->eval(y, x));
  if (!(p > 1.0))
    throw std::invalid_argument("invalid family: exponent p(x,y) = " +
                                std::to_string(p) + " <= 1");
  return p;
}

double MusielakFamily::exponent_diag(double x) const { return exponent(x, x); }

double MusielakFamily::phi_value(double x, double y, double t) const {
  if (t < 0.0) throw std::domain_error("Phi requires t >= 0");
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case FamilyKind::power: {
      double p = exponent(x, y);
      return std::pow(t, p) / p;
    }
    case FamilyKind::power_log:
      return std::pow(t, exponent(x, y)) * std::log(kE + t);
    case FamilyKind::custom:
      return graded_integral([&](double tau) { return small_phi(x, y, tau); },
                             t);
  }
  return 0.0;
}

double MusielakFamily::small_phi(double x, double y, double t) const {
  if (t == 0.0) return 0.0;
  double at = std::fabs(t);
  switch (kind_) {
    case FamilyKind::power:
      return std::copysign(std::pow(at, exponent(x, y) - 1.0), t);
    case FamilyKind::power_log: {
      double p = exponent(x, y);
      double mag = p * std::pow(at, p - 1.0) * std::log(kE + at) +
                   std::pow(at, p) / (kE + at);
      return std::copysign(mag, t);
    }
    case FamilyKind::custom:
      return custom_a_(x, y, at) * t;
  }
  return 0.0;
}

double MusielakFamily::coefficient(double x, double y, double t) const {
  double at = std::fabs(t);
  if (at == 0.0)
    throw std::domain_error("coefficient a(x,y,t) undefined at t = 0");
  return small_phi(x, y, at) / at;
}

double MusielakFamily::phi_hat(double x, double t) const {
  return phi_value(x, x, t);
}

double MusielakFamily::small_phi_hat(double x, double t) const {
  return small_phi(x, x, t);
}

double MusielakFamily::a_hat(double x, double t) const {
  return coefficient(x, x, t);
}

double MusielakFamily::small_phi_inverse(double x, double y, double t) const {
  if (t < 0.0) throw std::domain_error("inverse of phi requires t >= 0");
  if (t == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (small_phi(x, y, hi) < t) {
    hi *= 2.0;
    if (++guard > 200)
      throw NumericError("inversion of phi failed to bracket", x, y);
  }
  double lo = hi > 1.0 ? 0.5 * hi : 0.0;
  return monotone_bisect([&](double a) { return small_phi(x, y, a) - t; }, lo,
                         hi, 1e-15, 240);
}

double MusielakFamily::conjugate_phi(double x, double y, double t) const {
  if (t < 0.0) throw std::domain_error("conjugate requires t >= 0");
  if (t == 0.0) return 0.0;
  double T = small_phi_inverse(x, y, t);
  // integral of phi^{-1} over [0,t] = t*T - integral of phi over [0,T];
  // quadrature runs over the forward branch, which is the smoother one.
  double fwd = graded_integral([&](double s) { return small_phi(x, y, s); }, T);
  return t * T - fwd;
}

double MusielakFamily::conjugate_phi_hat(double x, double t) const {
  return conjugate_phi(x, x, t);
}

double MusielakFamily::phi_hat_inverse(double x, double tau) const {
  if (tau < 0.0) throw std::domain_error("inverse of Phi requires tau >= 0");
  if (tau == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (phi_hat(x, hi) < tau) {
    hi *= 2.0;
    if (++guard > 400)
      throw NumericError("inversion of Phi failed to bracket", x, x);
  }
  double lo = hi > 1.0 ? 0.5 * hi : 0.0;
  return monotone_bisect([&](double a) { return phi_hat(x, a) - tau; }, lo, hi,
                         1e-14, 240);
}

double MusielakFamily::phi_diff(double x, double y, double a, double b) const {
  if (a < 0.0 || b < 0.0) throw std::domain_error("Phi requires t >= 0");
  if (a == b) return 0.0;
  switch (kind_) {
    case FamilyKind::power: {
      double p = exponent(x, y);
      return power_difference(a, b, p) / p;
    }
    case FamilyKind::power_log: {
      double p = exponent(x, y);
      double dpow = power_difference(a, b, p);
      double dlog = std::log1p((b - a) / (kE + a));
      return std::log(kE + b) * dpow + std::pow(a, p) * dlog;
    }
    case FamilyKind::custom:
      return phi_value(x, y, b) - phi_value(x, y, a);
  }
  return 0.0;
}

double MusielakFamily::phi_hat_diff(double x, double a, double b) const {
  return phi_diff(x, x, a, b);
}

void MusielakFamily::estimate_exponent_bounds(std::optional<double> lo_hint,
                                              std::optional<double> hi_hint) {
  if (kind_ != FamilyKind::custom) {
    if (p_expr_->is_constant()) {
      p_min_ = p_max_ = p_expr_->constant_value();
    } else {
      p_min_ = 1e300;
      p_max_ = -1e300;
      auto xs = lin_space(box_.lo, box_.hi, 129);
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i; j < xs.size(); ++j) {
          double p = 0.5 * (p_expr_->eval(xs[i], xs[j]) +
                            p_expr_->eval(xs[j], xs[i]));
          p_min_ = std::fmin(p_min_, p);
          p_max_ = std::fmax(p_max_, p);
        }
    }
    if (!(p_min_ > 1.0))
      throw std::invalid_argument(
          "invalid family: exponent field reaches p <= 1 (sampled min " +
          std::to_string(p_min_) + ")");
  }

  switch (kind_) {
    case FamilyKind::power:
      // t*phi/Phi == p(x,y) identically.
      phi_minus_ = p_min_;
      phi_plus_ = p_max_;
      break;
    case FamilyKind::power_log: {
      // ratio = p(x,y) + t/((e+t)log(e+t)); the gap is independent of (x,y),
      // vanishes at both ends and is maximized at a single interior t.
      double gap = golden_max(power_log_ratio_gap, 1e-3, 1e3);
      phi_minus_ = p_min_;
      phi_plus_ = p_max_ + gap + 1e-9;
      break;
    }
    case FamilyKind::custom: {
      if (lo_hint && hi_hint) {
        phi_minus_ = *lo_hint;
        phi_plus_ = *hi_hint;
        return;
      }
      double lo = 1e300, hi = -1e300;
      auto xs = lin_space(box_.lo, box_.hi, 9);
      auto ts = log_space(1e-6, 1e6, 49);
      for (double x : xs)
        for (double y : xs)
          for (double t : ts) {
            double Phi = phi_value(x, y, t);
            if (Phi <= 0.0) continue;
            double r = t * small_phi(x, y, t) / Phi;
            lo = std::fmin(lo, r);
            hi = std::fmax(hi, r);
          }
      // sampled estimates widened by a 10% safety margin
      phi_minus_ = lo_hint ? *lo_hint : std::fmax(1.0 + 1e-12, 1.0 + 0.9 * (lo - 1.0));
      phi_plus_ = hi_hint ? *hi_hint : hi * 1.1;
      break;
    }
  }
}

// --- structural condition checks -------------------------------------------

namespace {

struct SampleGrid {
  std::vector<double> xs;
  std::vector<double> ts;
};

SampleGrid make_grid(const MusielakFamily& fam, int sample_budget) {
  int nt = std::clamp(sample_budget, 8, 96);
  return {lin_space(fam.box().lo, fam.box().hi, 9), log_space(1e-8, 1e8, nt)};
}

}  // namespace

Phi1Report check_phi1(const MusielakFamily& fam, int sample_budget) {
  auto grid = make_grid(fam, sample_budget);
  double lo = 1e300, hi = -1e300;
  for (double x : grid.xs)
    for (double y : grid.xs)
      for (double t : grid.ts) {
        double Phi = fam.phi_value(x, y, t);
        if (!(Phi > 0.0)) continue;
        double r = t * fam.small_phi(x, y, t) / Phi;
        lo = std::fmin(lo, r);
        hi = std::fmax(hi, r);
      }
  bool pass = lo >= fam.phi_minus() - 1e-10 && hi <= fam.phi_plus() + 1e-10;
  return {lo, hi, pass};
}

double delta2_constant(const MusielakFamily& fam) {
  return std::pow(2.0, fam.phi_plus());
}

Delta2Report check_delta2(const MusielakFamily& fam, int sample_budget) {
  auto grid = make_grid(fam, sample_budget);
  double K = delta2_constant(fam);
  double worst = 0.0;
  for (double x : grid.xs)
    for (double y : grid.xs)
      for (double t : grid.ts) {
        double denom = fam.phi_value(x, y, t);
        if (!(denom > 0.0)) continue;
        worst = std::fmax(worst, fam.phi_value(x, y, 2.0 * t) / denom);
      }
  return {K, worst, worst <= K * (1.0 + 1e-10)};
}

bool check_phi2_sqrt_convexity(const MusielakFamily& fam, int sample_budget) {
  auto grid = make_grid(fam, sample_budget);
  for (double x : grid.xs)
    for (double y : grid.xs)
      for (std::size_t k = 0; k + 1 < grid.ts.size(); ++k) {
        double t1 = grid.ts[k], t2 = grid.ts[k + 1];
        double f1 = fam.phi_value(x, y, std::sqrt(t1));
        double f2 = fam.phi_value(x, y, std::sqrt(t2));
        double fm = fam.phi_value(x, y, std::sqrt(0.5 * (t1 + t2)));
        double slack = 1e-12 * (std::fabs(f1) + std::fabs(f2) + 1.0);
        if (fm > 0.5 * (f1 + f2) + slack) return false;
      }
  return true;
}

double check_phi3_sup(const MusielakFamily& fam, int sample_budget) {
  int n = std::clamp(sample_budget, 9, 129);
  auto xs = lin_space(fam.box().lo, fam.box().hi, n);
  double sup = 0.0;
  for (double x : xs)
    for (double y : xs) sup = std::fmax(sup, fam.phi_value(x, y, 1.0));
  return sup;
}

namespace {

IntegralClass classify_exact(double m, bool convergent_below_one) {
  if (std::fabs(m - 1.0) <= 1e-3) return IntegralClass::critical;
  bool below = m < 1.0;
  if (below == convergent_below_one) return IntegralClass::convergent;
  return IntegralClass::divergent;
}

// Least-squares slope of log2 h against log2 tau on dyadic scales.
double dyadic_slope(const std::function<double(double)>& h, int k_lo,
                    int k_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    double tau = std::ldexp(1.0, k);
    double v = h(tau);
    if (!(v > 0.0) || !std::isfinite(v)) continue;
    double lx = k, ly = std::log2(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw NumericError("embedding classifier: no usable samples");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

EmbeddingReport embedding_condition_check(const MusielakFamily& fam,
                                          double s_minus, int dimension) {
  if (!(s_minus > 0.0 && s_minus < 1.0))
    throw std::domain_error("embedding check requires s_minus in (0,1)");
  if (dimension < 1) throw std::domain_error("dimension must be >= 1");
  const double N = dimension;

  if (fam.kind() == FamilyKind::power) {
    // Phi_hat^{-1}(tau) ~ tau^{1/p}; both integrals are pinned by s_minus * p
    // against N.
    double pmin = 1e300, pmax = -1e300;
    for (double x : lin_space(fam.box().lo, fam.box().hi, 65)) {
      double p = fam.exponent_diag(x);
      pmin = std::fmin(pmin, p);
      pmax = std::fmax(pmax, p);
    }
    double m_lo = s_minus * pmin / N, m_hi = s_minus * pmax / N;
    IntegralClass near_zero, near_inf;
    if (m_lo == m_hi) {
      near_zero = classify_exact(m_hi, /*convergent_below_one=*/true);
      near_inf = classify_exact(m_hi, /*convergent_below_one=*/false);
    } else {
      near_zero = m_hi < 1.0 - 1e-3  ? IntegralClass::convergent
                  : m_lo > 1.0 + 1e-3 ? IntegralClass::divergent
                                      : IntegralClass::critical;
      near_inf = m_hi < 1.0 - 1e-3  ? IntegralClass::divergent
                 : m_lo > 1.0 + 1e-3 ? IntegralClass::convergent
                                     : IntegralClass::critical;
    }
    return {near_zero, near_inf};
  }

  // Generic kinds: read the decay rate of the integrand off dyadic scales,
  // at the worst sampled x.
  auto xs = lin_space(fam.box().lo, fam.box().hi, 5);
  double kernel_pow = (N + s_minus) / N;
  double alpha0 = 1e300, alpha_inf = -1e300;
  for (double x : xs) {
    auto integrand = [&](double tau) {
      return fam.phi_hat_inverse(x, tau) / std::pow(tau, kernel_pow);
    };
    alpha0 = std::fmin(alpha0, dyadic_slope(integrand, -40, -20));
    alpha_inf = std::fmax(alpha_inf, dyadic_slope(integrand, 20, 40));
  }
  auto near_zero = std::fabs(alpha0 + 1.0) <= 1e-3 ? IntegralClass::critical
                   : alpha0 > -1.0                 ? IntegralClass::convergent
                                                   : IntegralClass::divergent;
  auto near_inf = std::fabs(alpha_inf + 1.0) <= 1e-3 ? IntegralClass::critical
                  : alpha_inf >= -1.0 ? IntegralClass::divergent
                                      : IntegralClass::convergent;
  return {near_zero, near_inf};
}

const char* to_string(IntegralClass c) {
  switch (c) {
    case IntegralClass::convergent: return "convergent";
    case IntegralClass::divergent: return "divergent";
    case IntegralClass::critical: return "critical";
  }
  return "?";
}

}  // namespace dphase
