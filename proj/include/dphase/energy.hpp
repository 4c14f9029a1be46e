#pragma once

#include "dphase/problem.hpp"

namespace dphase {

// J_lambda(u): per phase (1/2) * Gagliardo Phi-integral + interior Phi_hat +
// beta-weighted exterior Phi_hat, minus lambda * integral of F(x, u).
double energy(const GridFunction& u, const Problem& prob, double lambda);

// The phase/local part alone (lambda = 0 term), i.e. I_1.
double energy_i1(const GridFunction& u, const Problem& prob);

// integral over Omega of F(x, u), i.e. I_2.
double reaction_integral(const GridFunction& u, const Problem& prob);

// Exact nodal derivative of the discrete energy: component z equals
// A_s(u, e_z) - lambda * integral of f(x,u) e_z for the nodal indicator e_z.
GridFunction energy_gradient(const GridFunction& u, const Problem& prob,
                             double lambda);

struct EnergyAndGradient {
  double energy;
  GridFunction gradient;
};
EnergyAndGradient energy_and_gradient(const GridFunction& u,
                                      const Problem& prob, double lambda);

// J(u + step * dir) - J(u), accumulated from termwise differences so the
// result stays accurate relative to the decrement itself even when |J| is
// many orders larger.
double energy_delta(const GridFunction& u, const GridFunction& dir,
                    double step, const Problem& prob, double lambda);

}  // namespace dphase
