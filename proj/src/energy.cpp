#include "dphase/energy.hpp"

#include <cmath>

#include "dphase/errors.hpp"
#include "dphase/parallel.hpp"

namespace dphase {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw NumericError(std::string(what) + " evaluated to a non-finite value");
}

}  // namespace

double energy(const GridFunction& u, const Problem& prob, double lambda) {
  check_grid_function(u, prob.mesh());
  const auto& t = prob.tables();
  const auto& pairs = prob.mesh().pair_table();
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    const auto& fam = prob.phase(i).family;
    const auto kind = fam.kind();
    // (1/2) * both orientations collapses to one pass over unordered entries
    total += chunked_sum(pairs.size(), [&](std::size_t k) {
      double d = std::fabs(u[pairs[k].ci] - u[pairs[k].cj]) * t.invrs[i][k];
      return t.wmu[k] *
             kernels::phi_of(fam, kind, t.p[i][k], t.x[k], t.y[k], d);
    });
    detail::Kahan local;
    for (std::size_t c = 0; c < u.size(); ++c) {
      double v = kernels::phi_of(fam, kind, t.p_hat[i][c], t.mid[c], t.mid[c],
                                 std::fabs(u[c]));
      if (t.interior[c])
        local.add(t.h[c] * v);
      else if (t.beta[c] != 0.0)
        local.add(t.h[c] * t.beta[c] * v);
    }
    total += local.sum;
  }
  total -= lambda * reaction_integral(u, prob);
  require_finite(total, "energy");
  return total;
}

double energy_i1(const GridFunction& u, const Problem& prob) {
  return energy(u, prob, 0.0);
}

double reaction_integral(const GridFunction& u, const Problem& prob) {
  check_grid_function(u, prob.mesh());
  const auto& t = prob.tables();
  detail::Kahan acc;
  for (std::size_t c = 0; c < u.size(); ++c)
    if (t.interior[c] && u[c] != 0.0)
      acc.add(t.h[c] * std::pow(std::fabs(u[c]), t.q[c]) / t.q[c]);
  return acc.sum;
}

GridFunction energy_gradient(const GridFunction& u, const Problem& prob,
                             double lambda) {
  return energy_and_gradient(u, prob, lambda).gradient;
}

EnergyAndGradient energy_and_gradient(const GridFunction& u,
                                      const Problem& prob, double lambda) {
  check_grid_function(u, prob.mesh());
  const auto& t = prob.tables();
  const auto& pairs = prob.mesh().pair_table();
  const std::size_t n_cells = u.size();

  EnergyAndGradient out;
  out.gradient.assign(n_cells, 0.0);
  double gagliardo_energy = 0.0;

  // Per-chunk scatter buffers keep the sweep race-free and give a reduction
  // order independent of the worker count.
  auto bounds = detail::chunk_bounds(pairs.size());
  const std::size_t n_chunks = bounds.size() - 1;
  std::vector<double> scatter(n_chunks * n_cells);
  std::vector<double> phi_partial(n_chunks);

  for (int i = 0; i < 2; ++i) {
    const auto& fam = prob.phase(i).family;
    const auto kind = fam.kind();
    std::fill(scatter.begin(), scatter.end(), 0.0);
    run_chunks(bounds, [&](std::size_t c, std::size_t lo, std::size_t hi) {
      double* grad = scatter.data() + c * n_cells;
      detail::Kahan phi_sum;
      for (std::size_t k = lo; k < hi; ++k) {
        double invrs = t.invrs[i][k];
        int ci = pairs[k].ci, cj = pairs[k].cj;
        double d = (u[ci] - u[cj]) * invrs;
        double flux = t.wmu[k] * invrs *
                      kernels::small_phi_of(fam, kind, t.p[i][k], t.x[k],
                                            t.y[k], d);
        grad[ci] += flux;
        grad[cj] -= flux;
        phi_sum.add(t.wmu[k] * kernels::phi_of(fam, kind, t.p[i][k], t.x[k],
                                               t.y[k], std::fabs(d)));
      }
      phi_partial[c] = phi_sum.sum;
    });
    detail::Kahan phi_total;
    for (double p : phi_partial) phi_total.add(p);
    gagliardo_energy += phi_total.sum;
    for (std::size_t z = 0; z < n_cells; ++z) {
      detail::Kahan g;
      for (std::size_t c = 0; c < n_chunks; ++c)
        g.add(scatter[c * n_cells + z]);
      out.gradient[z] += g.sum;
    }
  }

  detail::Kahan local;
  for (std::size_t z = 0; z < n_cells; ++z) {
    double g = out.gradient[z];
    for (int i = 0; i < 2; ++i) {
      const auto& fam = prob.phase(i).family;
      double up = kernels::small_phi_of(fam, fam.kind(), t.p_hat[i][z],
                                        t.mid[z], t.mid[z], u[z]);
      double Phi = kernels::phi_of(fam, fam.kind(), t.p_hat[i][z], t.mid[z],
                                   t.mid[z], std::fabs(u[z]));
      if (t.interior[z]) {
        g += t.h[z] * up;
        local.add(t.h[z] * Phi);
      } else if (t.beta[z] != 0.0) {
        g += t.h[z] * t.beta[z] * up;
        local.add(t.h[z] * t.beta[z] * Phi);
      }
    }
    if (t.interior[z]) {
      double f = u[z] == 0.0 ? 0.0
                             : std::copysign(
                                   std::pow(std::fabs(u[z]), t.q[z] - 1.0),
                                   u[z]);
      g -= lambda * t.h[z] * f;
    }
    out.gradient[z] = g;
    require_finite(g, "energy gradient");
  }
  out.energy = gagliardo_energy + local.sum - lambda * reaction_integral(u, prob);
  require_finite(out.energy, "energy");
  return out;
}

double energy_delta(const GridFunction& u, const GridFunction& dir,
                    double step, const Problem& prob, double lambda) {
  check_grid_function(u, prob.mesh());
  const auto& t = prob.tables();
  const auto& pairs = prob.mesh().pair_table();
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    const auto& fam = prob.phase(i).family;
    const auto kind = fam.kind();
    total += chunked_sum(pairs.size(), [&](std::size_t k) {
      int ci = pairs[k].ci, cj = pairs[k].cj;
      if (dir[ci] == 0.0 && dir[cj] == 0.0) return 0.0;
      double invrs = t.invrs[i][k];
      double a = std::fabs(u[ci] - u[cj]) * invrs;
      double b =
          std::fabs((u[ci] + step * dir[ci]) - (u[cj] + step * dir[cj])) *
          invrs;
      return t.wmu[k] *
             kernels::phi_diff_of(fam, kind, t.p[i][k], t.x[k], t.y[k], a, b);
    });
  }
  detail::Kahan local;
  const auto& reaction = prob.reaction();
  for (std::size_t c = 0; c < u.size(); ++c) {
    if (dir[c] == 0.0) continue;
    double a = std::fabs(u[c]);
    double b = std::fabs(u[c] + step * dir[c]);
    for (int i = 0; i < 2; ++i) {
      const auto& fam = prob.phase(i).family;
      double d = kernels::phi_diff_of(fam, fam.kind(), t.p_hat[i][c], t.mid[c],
                                      t.mid[c], a, b);
      if (t.interior[c])
        local.add(t.h[c] * d);
      else if (t.beta[c] != 0.0)
        local.add(t.h[c] * t.beta[c] * d);
    }
    if (t.interior[c])
      local.add(-lambda * t.h[c] *
                reaction.primitive_diff(t.mid[c], u[c], u[c] + step * dir[c]));
  }
  total += local.sum;
  if (std::isnan(total)) throw NumericError("energy delta evaluated to NaN");
  return total;
}

}  // namespace dphase
