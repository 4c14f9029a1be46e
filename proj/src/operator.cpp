#include "dphase/operator.hpp"

#include <cmath>
#include <stdexcept>

#include "dphase/parallel.hpp"

namespace dphase {

namespace {

// Per-entry flux F_k = wmu * phi_i(D) * r^{-s_i}; the two orientations of an
// entry carry +F and -F, which is what makes every identity below cancel.
template <class Sink>
void sweep_flux(const GridFunction& u, int phase, const Problem& prob,
                Sink&& sink) {
  const auto& t = prob.tables();
  const auto& pairs = prob.mesh().pair_table();
  const auto& fam = prob.phase(phase).family;
  const auto kind = fam.kind();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    double invrs = t.invrs[phase][k];
    double d = (u[pairs[k].ci] - u[pairs[k].cj]) * invrs;
    double flux = t.wmu[k] * invrs *
                  kernels::small_phi_of(fam, kind, t.p[phase][k], t.x[k],
                                        t.y[k], d);
    sink(pairs[k].ci, pairs[k].cj, flux);
  }
}

}  // namespace

std::vector<double> flux_divergence(const GridFunction& u, int phase,
                                    const Problem& prob) {
  check_grid_function(u, prob.mesh());
  std::vector<detail::Kahan> acc(prob.mesh().n_cells());
  sweep_flux(u, phase, prob, [&](int ci, int cj, double flux) {
    acc[ci].add(flux);
    acc[cj].add(-flux);
  });
  std::vector<double> a(acc.size());
  for (std::size_t c = 0; c < acc.size(); ++c) a[c] = acc[c].sum;
  return a;
}

double apply_operator(const GridFunction& u, int phase, const Problem& prob,
                      std::size_t cell) {
  if (!prob.mesh().is_interior(cell))
    throw std::invalid_argument("apply_operator expects an interior cell");
  return flux_divergence(u, phase, prob)[cell] / prob.tables().h[cell];
}

double neumann_derivative(const GridFunction& u, int phase,
                          const Problem& prob, std::size_t cell) {
  if (prob.mesh().is_interior(cell))
    throw std::invalid_argument("neumann_derivative expects a collar cell");
  // collar cells pair with interior cells only, so the same flux sum is the
  // Omega-restricted integral
  return flux_divergence(u, phase, prob)[cell] / prob.tables().h[cell];
}

FormValue form_A(const GridFunction& u, const GridFunction& v,
                 const Problem& prob) {
  check_grid_function(u, prob.mesh());
  check_grid_function(v, prob.mesh());
  const auto& t = prob.tables();
  FormValue out;
  for (int i = 0; i < 2; ++i) {
    detail::Kahan gag;
    sweep_flux(u, i, prob, [&](int ci, int cj, double flux) {
      gag.add(flux * (v[ci] - v[cj]));
    });
    out.gagliardo[i] = gag.sum;

    const auto& fam = prob.phase(i).family;
    const auto kind = fam.kind();
    detail::Kahan inner, outer;
    for (std::size_t c = 0; c < u.size(); ++c) {
      double up = kernels::small_phi_of(fam, kind, t.p_hat[i][c], t.mid[c],
                                        t.mid[c], u[c]);
      if (t.interior[c])
        inner.add(t.h[c] * up * v[c]);
      else if (t.beta[c] != 0.0)
        outer.add(t.h[c] * t.beta[c] * up * v[c]);
    }
    out.interior[i] = inner.sum;
    out.exterior_beta[i] = outer.sum;
  }
  out.total = out.gagliardo[0] + out.interior[0] + out.exterior_beta[0] +
              out.gagliardo[1] + out.interior[1] + out.exterior_beta[1];
  return out;
}

namespace {

struct IbpTerms {
  double interior_integral;  // integral over Omega of the operator
  double exterior_integral;  // integral over the collar of the derivative
};

IbpTerms ibp_terms(const GridFunction& u, int phase, const Problem& prob) {
  auto a = flux_divergence(u, phase, prob);
  const auto& t = prob.tables();
  detail::Kahan inner, outer;
  for (std::size_t c = 0; c < a.size(); ++c) {
    double nodal = t.h[c] * (a[c] / t.h[c]);
    if (t.interior[c])
      inner.add(nodal);
    else
      outer.add(nodal);
  }
  return {inner.sum, outer.sum};
}

}  // namespace

double ibp_defect(const GridFunction& u, int phase, const Problem& prob) {
  auto terms = ibp_terms(u, phase, prob);
  return std::fabs(terms.interior_integral + terms.exterior_integral);
}

double ibp_scale(const GridFunction& u, int phase, const Problem& prob) {
  auto terms = ibp_terms(u, phase, prob);
  return std::fmax(1.0, std::fmax(std::fabs(terms.interior_integral),
                                  std::fabs(terms.exterior_integral)));
}

namespace {

struct GreenTerms {
  double half_form;      // (1/2) * Gagliardo form of (u, v)
  double interior_pair;  // integral of v * operator over Omega
  double exterior_pair;  // integral of v * Neumann derivative over the collar
};

GreenTerms green_terms(const GridFunction& u, const GridFunction& v, int phase,
                       const Problem& prob) {
  detail::Kahan half;
  sweep_flux(u, phase, prob, [&](int ci, int cj, double flux) {
    half.add(flux * (v[ci] - v[cj]));
  });
  auto a = flux_divergence(u, phase, prob);
  const auto& t = prob.tables();
  detail::Kahan inner, outer;
  for (std::size_t c = 0; c < a.size(); ++c) {
    double nodal = t.h[c] * v[c] * (a[c] / t.h[c]);
    if (t.interior[c])
      inner.add(nodal);
    else
      outer.add(nodal);
  }
  return {half.sum, inner.sum, outer.sum};
}

}  // namespace

double green_defect(const GridFunction& u, const GridFunction& v, int phase,
                    const Problem& prob) {
  auto g = green_terms(u, v, phase, prob);
  return std::fabs(g.half_form - g.interior_pair - g.exterior_pair);
}

double green_scale(const GridFunction& u, const GridFunction& v, int phase,
                   const Problem& prob) {
  auto g = green_terms(u, v, phase, prob);
  return std::fmax(1.0, std::fmax(std::fabs(g.half_form),
                                  std::fmax(std::fabs(g.interior_pair),
                                            std::fabs(g.exterior_pair))));
}

std::vector<double> neumann_residual(const GridFunction& u,
                                     const Problem& prob) {
  check_grid_function(u, prob.mesh());
  const auto& t = prob.tables();
  std::vector<double> r(u.size(), 0.0);
  for (int i = 0; i < 2; ++i) {
    auto a = flux_divergence(u, i, prob);
    const auto& fam = prob.phase(i).family;
    const auto kind = fam.kind();
    for (std::size_t c = 0; c < u.size(); ++c) {
      if (t.interior[c]) continue;
      r[c] += a[c] / t.h[c] +
              t.beta[c] * kernels::small_phi_of(fam, kind, t.p_hat[i][c],
                                                t.mid[c], t.mid[c], u[c]);
    }
  }
  return r;
}

double sup_neumann_residual(const GridFunction& u, const Problem& prob) {
  double sup = 0.0;
  for (double v : neumann_residual(u, prob)) sup = std::fmax(sup, std::fabs(v));
  return sup;
}

}  // namespace dphase
