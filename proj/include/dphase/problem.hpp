#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dphase/mesh.hpp"
#include "dphase/musielak.hpp"
#include "dphase/numeric.hpp"
#include "dphase/reaction.hpp"

namespace dphase {

// Nodal values over all cells (interior + collar), one per cell midpoint.
using GridFunction = std::vector<double>;

struct PhaseSpec {
  MusielakFamily family;
  OrderField order;
};

struct SolverParams {
  double tol = 1e-6;         // sup-norm gradient stopping threshold
  long max_iters = 50000;
  double rho = 0.5;          // ball radius for the small-lambda branch
  double t0 = 2.0;           // interior plateau height for the large branch
  double armijo = 1e-4;
};

// Full problem instance: mesh, the two phases, Robin weight, reaction and
// default lambda, plus the precomputed per-entry tables every assembly runs
// on. Sharing one weight table across the modular, the form, the operator and
// the Neumann derivative is what makes the discrete integration-by-parts and
// Green identities cancel exactly.
class Problem {
 public:
  Problem(Mesh mesh, PhaseSpec phase1, PhaseSpec phase2, ExponentField beta,
          ReactionSpec reaction, double lambda, SolverParams solver = {},
          std::uint64_t seed = 1);

  const Mesh& mesh() const { return mesh_; }
  const PhaseSpec& phase(int i) const { return phases_[i]; }
  const ExponentField& beta() const { return beta_; }
  const ReactionSpec& reaction() const { return reaction_; }
  double lambda() const { return lambda_; }
  const SolverParams& solver() const { return solver_; }
  std::uint64_t seed() const { return seed_; }

  double phi_minus_min() const;  // min over phases of phi_i^-
  double phi_plus_max() const;   // max over phases of phi_i^+
  // q_plus < min(phi_1^-, phi_2^-) holds strictly (the small-lambda branch
  // needs strictness; equality is accepted at validation but reported).
  bool strict_exponent_gap() const { return strict_gap_; }

  GridFunction zero() const { return GridFunction(mesh_.n_cells(), 0.0); }

  // --- precomputed assembly tables ----------------------------------------
  struct Tables {
    // per pair entry
    std::vector<double> wmu;                    // w / r   (the d(mu) weight)
    std::vector<double> x, y;
    std::array<std::vector<double>, 2> invrs;   // r^{-s_i(x,y)}
    std::array<std::vector<double>, 2> p;       // p_i(x,y); NaN for custom
    // per cell
    std::vector<double> h, mid;
    std::vector<std::uint8_t> interior;
    std::vector<double> beta;                   // 0 on interior cells
    std::vector<double> q;                      // reaction exponent at interior mids
    std::array<std::vector<double>, 2> p_hat;   // p_i(x,x); NaN for custom
  };
  const Tables& tables() const { return tables_; }

  // Heuristic bound on the modular mass ignored by truncating the exterior at
  // the collar: Phi_i(sup|u| / R^{s_i^-}) * R^{-1} * |Omega| per phase and
  // side, with R the collar width.
  double truncation_tail_estimate(const GridFunction& u) const;

 private:
  Mesh mesh_;
  std::array<PhaseSpec, 2> phases_;
  ExponentField beta_;
  ReactionSpec reaction_;
  double lambda_;
  SolverParams solver_;
  std::uint64_t seed_;
  bool strict_gap_;
  Tables tables_;
};

namespace kernels {

// Closed-form family evaluations on cached exponents; the custom kind falls
// back to the family object. t >= 0 for phi_of, any t for small_phi_of.
inline double phi_of(const MusielakFamily& fam, FamilyKind kind, double p,
                     double x, double y, double t) {
  switch (kind) {
    case FamilyKind::power: return std::pow(t, p) / p;
    case FamilyKind::power_log:
      return std::pow(t, p) * std::log(2.718281828459045235360287471 + t);
    default: return fam.phi_value(x, y, t);
  }
}

inline double small_phi_of(const MusielakFamily& fam, FamilyKind kind,
                           double p, double x, double y, double t) {
  switch (kind) {
    case FamilyKind::power:
      return t == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(t), p - 1.0), t);
    case FamilyKind::power_log: {
      if (t == 0.0) return 0.0;
      constexpr double e = 2.718281828459045235360287471;
      double at = std::fabs(t);
      double mag = p * std::pow(at, p - 1.0) * std::log(e + at) +
                   std::pow(at, p) / (e + at);
      return std::copysign(mag, t);
    }
    default: return fam.small_phi(x, y, t);
  }
}

// Phi(x,y,b) - Phi(x,y,a); relative accuracy follows the difference, which
// keeps line-search energy decrements meaningful long after J(new) - J(old)
// would drown in rounding of the totals.
inline double phi_diff_of(const MusielakFamily& fam, FamilyKind kind, double p,
                          double x, double y, double a, double b) {
  switch (kind) {
    case FamilyKind::power: return power_difference(a, b, p) / p;
    case FamilyKind::power_log: {
      constexpr double e = 2.718281828459045235360287471;
      double dpow = power_difference(a, b, p);
      double dlog = std::log1p((b - a) / (e + a));
      return std::log(e + b) * dpow + std::pow(a, p) * dlog;
    }
    default: return fam.phi_value(x, y, b) - fam.phi_value(x, y, a);
  }
}

}  // namespace kernels

void check_grid_function(const GridFunction& u, const Mesh& mesh);

}  // namespace dphase
