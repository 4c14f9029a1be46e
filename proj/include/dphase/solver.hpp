#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dphase/problem.hpp"

namespace dphase {

struct SolveReport {
  GridFunction minimizer;
  double energy = 0.0;
  double gradient_sup_norm = 0.0;
  double neumann_sup_residual = 0.0;
  double norm_of_minimizer = 0.0;
  std::string branch = "custom";
  long iterations = 0;
  double lambda = 0.0;
  double lambda_star_estimate = 0.0;      // closed-form threshold (small branch)
  double lambda_hat_star_estimate = 0.0;  // measured threshold (large branch)
  double embedding_constant_estimate = 0.0;
  double rho = 0.0;             // ball radius used by the small branch
  bool ball_violation = false;  // final iterate left the rho-ball
  bool nontrivial = false;      // energy < 0
  double truncation_tail_estimate = 0.0;
  // Accumulated line-search decrements: nonincreasing by construction.
  std::vector<double> energy_history;
  // Sparse iterate snapshots (iteration index, iterate), geometric spacing.
  std::vector<std::pair<long, GridFunction>> snapshots;
  std::vector<std::string> warnings;
};

// Lower bound on the embedding constant ||u||_{q(x)} <= c ||u||, as a running
// max of the ratio over seeded random trials, each polished by a short
// coordinate-ascent pass. Nondecreasing in `trials` for a fixed seed.
double estimate_embedding_constant(const Problem& prob, int trials = 12);

// rho^{max(phi_1^+, phi_2^+) - q^+} / (2 c2 c^{q^+}).
double lambda_star_formula(double rho, double phi_plus_max, double q_plus,
                           double c2, double embedding_c);

// The formula above with this problem's exponents; requires rho in (0,1) and
// rho < 1/c.
double estimate_lambda_star_small(const Problem& prob, double rho,
                                  double embedding_c);
double estimate_lambda_star_small(const Problem& prob, double rho);

// Smallest tested lambda with J_lambda(u0) < 0 for the interior plateau u0,
// located by bisection to 1e-3 relative.
double empirical_lambda_threshold(const Problem& prob, double t0);

// Smooth bump supported strictly inside Omega, values in [0, 1], == 1 on the
// central eighth of the domain.
GridFunction bump_profile(const Mesh& mesh);

// t0 on interior cells, 0 on the collar.
GridFunction plateau_profile(const Mesh& mesh, double t0);

// Gradient descent with Armijo backtracking on the discrete J_lambda.
// Stops when the nodal gradient sup-norm drops below tol or after max_iters.
// Throws StagnationError when no certified decrease exists at a gradient
// above tol, and NumericError on non-finite energies.
SolveReport minimize(const Problem& prob, const GridFunction& init,
                     double lambda, double tol, long max_iters);
SolveReport minimize(const Problem& prob, const GridFunction& init,
                     double lambda);

// Existence branches. Both return fully certified reports (gradient and
// Neumann residuals, norm, energy sign).
SolveReport solve_small_lambda(const Problem& prob, double lambda);
SolveReport solve_large_lambda(const Problem& prob, double lambda);

// Branch dispatch: small below lambda_*, large above the measured threshold,
// otherwise a plain certified descent ("custom").
SolveReport solve_auto(const Problem& prob, double lambda);
SolveReport solve_auto(const Problem& prob);

}  // namespace dphase
