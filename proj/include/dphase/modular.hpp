#pragma once

#include <functional>

#include "dphase/problem.hpp"

namespace dphase {

// One phase's modular split into its three integrals.
struct ModularBreakdown {
  double gagliardo = 0.0;      // double integral of Phi(D^s u) d(mu)
  double interior = 0.0;       // integral over Omega of Phi_hat(|u|)
  double exterior_beta = 0.0;  // integral over the collar of beta Phi_hat(|u|)
  double total() const { return gagliardo + interior + exterior_beta; }
};

ModularBreakdown phase_modular(const GridFunction& u, int phase,
                               const Problem& prob);

// rho(u) = rho_1(u) + rho_2(u).
double combined_modular(const GridFunction& u, const Problem& prob);

struct LuxemburgOptions {
  int max_doublings = 200;
  int bisections = 60;
  // Accept a vanishing modular as norm 0 (partial norms of, say, constants);
  // otherwise a nonzero argument with identically-zero modular is an error.
  bool zero_ok = false;
};

// inf{eta > 0 : rho(u/eta) <= 1} for a nonincreasing scaling profile
// rho_scaled(eta) = rho(u/eta). Brackets by doubling/halving from eta = 1,
// then bisects; the result satisfies rho(u/eta) = 1 to ~1e-18 relative
// whenever the modular is continuous and strictly decreasing there.
double luxemburg_norm(const std::function<double(double)>& rho_scaled,
                      const LuxemburgOptions& opts = {});

// Norms derived from the problem's modulars. All reduce scaling sweeps to a
// single assembly when a phase is a uniform-exponent power family.
double combined_norm(const GridFunction& u, const Problem& prob);
double phase_norm(const GridFunction& u, const Problem& prob, int phase);
double gagliardo_seminorm(const GridFunction& u, const Problem& prob, int phase);
double interior_phi_norm(const GridFunction& u, const Problem& prob, int phase);
double exterior_beta_norm(const GridFunction& u, const Problem& prob, int phase);

// Luxemburg norm of the conjugate interior modular (Hölder pairing partner).
double conjugate_interior_norm(const GridFunction& v, const Problem& prob,
                               int phase);

// Luxemburg norm of the modular integral over Omega of |u|^{q(x)}.
double q_norm(const GridFunction& u, const Problem& prob);

// --- comparison diagnostics -------------------------------------------------

struct BracketCheck {
  double norm = 0.0;
  double modular = 0.0;
  double lower = 0.0, upper = 0.0;  // the two power bounds
  double margin = 0.0;              // min slack, scaled; negative = violated
  bool pass = true;
};

// Power bracketing of modular against norm: for ||u|| > 1 the modular lies in
// [||u||^{e_minus}, ||u||^{e_plus}]; for ||u|| < 1 the exponents swap roles.
BracketCheck bracket_check(double norm, double modular, double e_minus,
                           double e_plus);

struct BracketingReport {
  BracketCheck combined;
  BracketCheck per_phase[2];
  double unit_scaling_modular = 0.0;  // rho(u / ||u||), should be 1
  bool pass = true;
  double min_margin = 0.0;
};

BracketingReport check_modular_norm_bracketing(const GridFunction& u,
                                               const Problem& prob);

struct HolderReport {
  double lhs = 0.0;  // |integral over Omega of u v|
  double rhs = 0.0;  // 2 ||u|| ||v||_conjugate
  bool pass = true;
};

HolderReport holder_check(const GridFunction& u, const GridFunction& v,
                          const Problem& prob, int phase);

}  // namespace dphase
