#pragma once

#include "dphase/problem.hpp"

namespace dphase {

// Nodal flux divergence of one phase: for every cell z the signed sum of
// kernel fluxes
//
//   A[z] = sum over ordered quadrature pairs with x in C_z of
//          w * phi_i(x,y, D^{s_i}u) * r^{-s_i} / r
//
// assembled from the shared pair table. Dividing by the cell width gives the
// operator value on interior cells and the Neumann derivative on collar
// cells; the same array is the Gagliardo block of the energy gradient.
std::vector<double> flux_divergence(const GridFunction& u, int phase,
                                    const Problem& prob);

// Pointwise operator value at an interior cell (cell-averaged density).
double apply_operator(const GridFunction& u, int phase, const Problem& prob,
                      std::size_t cell);

// Nonlocal normal derivative at a collar cell: quadrature over Omega only.
double neumann_derivative(const GridFunction& u, int phase,
                          const Problem& prob, std::size_t cell);

// The symmetric form A_s(u, v) split by phase and term.
struct FormValue {
  double gagliardo[2] = {0.0, 0.0};
  double interior[2] = {0.0, 0.0};
  double exterior_beta[2] = {0.0, 0.0};
  double total = 0.0;  // sum of the six parts
};

FormValue form_A(const GridFunction& u, const GridFunction& v,
                 const Problem& prob);

// |integral over Omega of the operator + integral over the collar of the
// Neumann derivative|; vanishes up to rounding by pairwise cancellation.
double ibp_defect(const GridFunction& u, int phase, const Problem& prob);

// |(1/2) Gagliardo form with test v - integral of v * operator -
//  integral of v * Neumann derivative|.
double green_defect(const GridFunction& u, const GridFunction& v, int phase,
                    const Problem& prob);

// Scale of the terms entering the two identities above, for relative checks.
double ibp_scale(const GridFunction& u, int phase, const Problem& prob);
double green_scale(const GridFunction& u, const GridFunction& v, int phase,
                   const Problem& prob);

// r(x) = sum_i (N_i u(x) + beta(x) a_hat_i(|u|)u) per collar cell; zero on
// interior cells. At a discrete minimizer this equals gradient/h exactly.
std::vector<double> neumann_residual(const GridFunction& u,
                                     const Problem& prob);

double sup_neumann_residual(const GridFunction& u, const Problem& prob);

}  // namespace dphase
