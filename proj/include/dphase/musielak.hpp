#pragma once

#include <functional>
#include <optional>

#include "dphase/expression.hpp"
#include "dphase/fields.hpp"

namespace dphase {

enum class FamilyKind { power, power_log, custom };

// One phase's Musielak function family. The generating coefficient a(x,y,t)
// is symmetric in (x,y); from it
//
//   phi(x,y,t)  = a(x,y,|t|) t            (odd increasing homeomorphism)
//   Phi(x,y,t)  = integral of phi from 0 to t   (t >= 0)
//
// and the diagonal restrictions phi_hat / Phi_hat take y = x. Built-in kinds
// have closed forms driven by an exponent field p(x,y) > 1:
//
//   power:      Phi = t^p / p
//   power_log:  Phi = t^p * log(e + t)
//
// The Simonenko bounds phi_minus/phi_plus bracket t*phi/Phi over the box and
// feed every modular-vs-norm comparison downstream.
class MusielakFamily {
 public:
  // a(x, y, t) for t > 0; must make phi an increasing homeomorphism.
  using Coefficient = std::function<double(double, double, double)>;

  static MusielakFamily power(Expression p, Box box);
  static MusielakFamily power_log(Expression p, Box box);
  // Exponent hints, when given, override the sampled Simonenko estimates.
  static MusielakFamily custom(Coefficient a, Box box,
                               std::optional<double> phi_minus_hint = {},
                               std::optional<double> phi_plus_hint = {});

  FamilyKind kind() const { return kind_; }
  const Box& box() const { return box_; }

  // Symmetrized exponent p(x,y); diagonal value p(x,x). Built-in kinds only.
  double exponent(double x, double y) const;
  double exponent_diag(double x) const;

  double phi_value(double x, double y, double t) const;    // Phi, t >= 0
  double small_phi(double x, double y, double t) const;    // phi, odd in t
  double coefficient(double x, double y, double t) const;  // a(x,y,|t|)

  double phi_hat(double x, double t) const;        // Phi(x,x,t)
  double small_phi_hat(double x, double t) const;  // phi(x,x,t)
  double a_hat(double x, double t) const;          // a(x,x,|t|)

  // Monotone inverse of phi(x,y,.) on [0, inf), by bracketing bisection.
  double small_phi_inverse(double x, double y, double t) const;

  // Conjugate N-function: integral of the inverse, evaluated through the
  // inversion plus adaptive Simpson quadrature.
  double conjugate_phi(double x, double y, double t) const;
  double conjugate_phi_hat(double x, double t) const;

  // Inverse of the diagonal Phi_hat(x, .), used by embedding diagnostics.
  double phi_hat_inverse(double x, double tau) const;

  double phi_minus() const { return phi_minus_; }
  double phi_plus() const { return phi_plus_; }

  // Power kind with a spatially constant exponent: Phi is p-homogeneous in t,
  // which collapses Luxemburg scaling sweeps to closed form.
  bool has_uniform_power() const {
    return kind_ == FamilyKind::power && p_expr_ && p_expr_->is_constant();
  }

  // Phi(x,y,b) - Phi(x,y,a), accurate relative to the difference itself for
  // the closed-form kinds. Backbone of the line-search energy deltas.
  double phi_diff(double x, double y, double a, double b) const;
  double phi_hat_diff(double x, double a, double b) const;

 private:
  MusielakFamily() = default;
  void estimate_exponent_bounds(std::optional<double> lo_hint,
                                std::optional<double> hi_hint);

  FamilyKind kind_ = FamilyKind::power;
  Box box_;
  std::optional<Expression> p_expr_;
  Coefficient custom_a_;
  double p_min_ = 0.0, p_max_ = 0.0;  // sampled bounds of p (built-in kinds)
  double phi_minus_ = 0.0, phi_plus_ = 0.0;
};

// --- structural condition checks -------------------------------------------

struct Phi1Report {
  double phi_minus_observed;
  double phi_plus_observed;
  bool pass;  // all sampled ratios within [phi_minus, phi_plus] up to 1e-10
};

// Samples t*phi/Phi over a log-spaced (x,y,t) grid; sample_budget scales the
// grid resolution per axis.
Phi1Report check_phi1(const MusielakFamily& fam, int sample_budget);

// Doubling constant 2^{phi_plus}.
double delta2_constant(const MusielakFamily& fam);

struct Delta2Report {
  double constant;
  double worst_ratio;  // max sampled Phi(2t)/Phi(t)
  bool pass;
};
Delta2Report check_delta2(const MusielakFamily& fam, int sample_budget);

// Midpoint convexity of t -> Phi(x,y,sqrt(t)) on samples.
bool check_phi2_sqrt_convexity(const MusielakFamily& fam, int sample_budget);

// sup over sampled (x,y) of Phi(x,y,1); finiteness is the boundedness
// condition the fractional embedding theorems require.
double check_phi3_sup(const MusielakFamily& fam, int sample_budget);

enum class IntegralClass { convergent, divergent, critical };

struct EmbeddingReport {
  IntegralClass near_zero;      // integral of Phi_hat^{-1}(tau)/tau^{(N+s)/N} on (0,1)
  IntegralClass near_infinity;  // same integrand on (1, inf)
};

// Classifies the two embedding-condition integrals. Power kind uses the exact
// exponent criterion; other kinds compare decay rates on dyadic scales, and
// rates within 1e-3 of the critical one are reported as critical, not guessed.
EmbeddingReport embedding_condition_check(const MusielakFamily& fam,
                                          double s_minus, int dimension);

const char* to_string(IntegralClass c);

}  // namespace dphase
