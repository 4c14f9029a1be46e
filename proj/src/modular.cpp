#include "dphase/modular.hpp"

#include <algorithm>
#include <cmath>

#include "dphase/errors.hpp"
#include "dphase/parallel.hpp"

namespace dphase {

namespace {

// Scaling profile eta -> rho_i(u/eta) for one phase, with the per-entry
// difference quotients captured once. A uniform-exponent power phase is
// p-homogeneous, so its profile needs no re-assembly at all.
class PhaseProfile {
 public:
  PhaseProfile(const GridFunction& u, int phase, const Problem& prob)
      : prob_(prob), phase_(phase) {
    const auto& fam = prob.phase(phase).family;
    const auto& t = prob.tables();
    homogeneous_ = fam.has_uniform_power();
    if (homogeneous_) degree_ = fam.phi_minus();

    const auto& pairs = prob.mesh().pair_table();
    diff_.resize(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k)
      diff_[k] = std::fabs(u[pairs[k].ci] - u[pairs[k].cj]) *
                 t.invrs[phase][k];
    abs_u_ = u;
    for (auto& v : abs_u_) v = std::fabs(v);

    if (homogeneous_) base_ = evaluate(1.0);
  }

  ModularBreakdown evaluate(double eta) const {
    if (homogeneous_ && eta != 1.0) {
      double scale = std::pow(eta, -degree_);
      return {base_.gagliardo * scale, base_.interior * scale,
              base_.exterior_beta * scale};
    }
    const auto& fam = prob_.phase(phase_).family;
    const auto kind = fam.kind();
    const auto& t = prob_.tables();
    ModularBreakdown out;
    // both orientations of each unordered entry, and Phi is symmetric
    out.gagliardo = 2.0 * chunked_sum(diff_.size(), [&](std::size_t k) {
      return t.wmu[k] * kernels::phi_of(fam, kind, t.p[phase_][k], t.x[k],
                                        t.y[k], diff_[k] / eta);
    });
    detail::Kahan inner, outer;
    for (std::size_t c = 0; c < abs_u_.size(); ++c) {
      double v = kernels::phi_of(fam, kind, t.p_hat[phase_][c], t.mid[c],
                                 t.mid[c], abs_u_[c] / eta);
      if (t.interior[c])
        inner.add(t.h[c] * v);
      else if (t.beta[c] > 0.0)
        outer.add(t.h[c] * t.beta[c] * v);
    }
    out.interior = inner.sum;
    out.exterior_beta = outer.sum;
    return out;
  }

  double total(double eta) const { return evaluate(eta).total(); }

 private:
  const Problem& prob_;
  int phase_;
  bool homogeneous_ = false;
  double degree_ = 0.0;
  ModularBreakdown base_;
  std::vector<double> diff_;
  std::vector<double> abs_u_;
};

bool is_zero(const GridFunction& u) {
  return std::all_of(u.begin(), u.end(), [](double v) { return v == 0.0; });
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericError(std::string(what) + " is not finite");
}

}  // namespace

ModularBreakdown phase_modular(const GridFunction& u, int phase,
                               const Problem& prob) {
  check_grid_function(u, prob.mesh());
  ModularBreakdown out = PhaseProfile(u, phase, prob).evaluate(1.0);
  require_finite(out.total(), "phase modular");
  return out;
}

double combined_modular(const GridFunction& u, const Problem& prob) {
  return phase_modular(u, 0, prob).total() + phase_modular(u, 1, prob).total();
}

double luxemburg_norm(const std::function<double(double)>& rho_scaled,
                      const LuxemburgOptions& opts) {
  double lo, hi;
  double r1 = rho_scaled(1.0);
  if (std::isnan(r1)) throw NumericError("luxemburg: modular evaluated to NaN");
  if (r1 > 1.0) {
    hi = 1.0;
    int k = 0;
    do {
      hi *= 2.0;
      if (++k > opts.max_doublings)
        throw NumericError("luxemburg: bracket doubling failed");
    } while (rho_scaled(hi) > 1.0);
    lo = 0.5 * hi;
  } else {
    lo = 1.0;
    int k = 0;
    for (;;) {
      double prev = lo;
      lo *= 0.5;
      double r = rho_scaled(lo);
      if (r > 1.0) {
        hi = prev;
        break;
      }
      if (++k > opts.max_doublings) {
        if (opts.zero_ok && !(r > 0.0)) return 0.0;
        throw DegenerateModularError(
            "luxemburg: modular stays <= 1 under all tested scalings");
      }
    }
  }
  for (int i = 0; i < opts.bisections; ++i) {
    double mid = 0.5 * (lo + hi);
    if (rho_scaled(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

namespace {

double norm_of_profiles(std::vector<PhaseProfile>& profiles,
                        const LuxemburgOptions& opts = {}) {
  return luxemburg_norm(
      [&](double eta) {
        double r = 0.0;
        for (const auto& p : profiles) r += p.total(eta);
        return r;
      },
      opts);
}

}  // namespace

double combined_norm(const GridFunction& u, const Problem& prob) {
  check_grid_function(u, prob.mesh());
  if (is_zero(u)) return 0.0;
  std::vector<PhaseProfile> ps;
  ps.emplace_back(u, 0, prob);
  ps.emplace_back(u, 1, prob);
  return norm_of_profiles(ps);
}

double phase_norm(const GridFunction& u, const Problem& prob, int phase) {
  check_grid_function(u, prob.mesh());
  if (is_zero(u)) return 0.0;
  std::vector<PhaseProfile> ps;
  ps.emplace_back(u, phase, prob);
  return norm_of_profiles(ps);
}

namespace {

// Luxemburg norm of one component of the phase modular, selected by a lambda.
template <class Pick>
double component_norm(const GridFunction& u, const Problem& prob, int phase,
                      Pick&& pick) {
  check_grid_function(u, prob.mesh());
  if (is_zero(u)) return 0.0;
  PhaseProfile profile(u, phase, prob);
  LuxemburgOptions opts;
  opts.zero_ok = true;  // e.g. constants have zero Gagliardo part
  return luxemburg_norm(
      [&](double eta) { return pick(profile.evaluate(eta)); }, opts);
}

}  // namespace

double gagliardo_seminorm(const GridFunction& u, const Problem& prob,
                          int phase) {
  return component_norm(u, prob, phase,
                        [](const ModularBreakdown& m) { return m.gagliardo; });
}

double interior_phi_norm(const GridFunction& u, const Problem& prob,
                         int phase) {
  return component_norm(u, prob, phase,
                        [](const ModularBreakdown& m) { return m.interior; });
}

double exterior_beta_norm(const GridFunction& u, const Problem& prob,
                          int phase) {
  return component_norm(u, prob, phase, [](const ModularBreakdown& m) {
    return m.exterior_beta;
  });
}

double conjugate_interior_norm(const GridFunction& v, const Problem& prob,
                               int phase) {
  check_grid_function(v, prob.mesh());
  const auto& t = prob.tables();
  const auto& fam = prob.phase(phase).family;
  bool all_zero = true;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (t.interior[c] && v[c] != 0.0) all_zero = false;
  if (all_zero) return 0.0;
  auto rho = [&](double eta) {
    detail::Kahan acc;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (t.interior[c] && v[c] != 0.0)
        acc.add(t.h[c] *
                fam.conjugate_phi_hat(t.mid[c], std::fabs(v[c]) / eta));
    return acc.sum;
  };
  LuxemburgOptions opts;
  opts.bisections = 50;
  return luxemburg_norm(rho, opts);
}

double q_norm(const GridFunction& u, const Problem& prob) {
  check_grid_function(u, prob.mesh());
  const auto& t = prob.tables();
  bool all_zero = true;
  for (std::size_t c = 0; c < u.size(); ++c)
    if (t.interior[c] && u[c] != 0.0) all_zero = false;
  if (all_zero) return 0.0;
  const auto& reaction = prob.reaction();
  auto rho = [&](double eta) {
    detail::Kahan acc;
    for (std::size_t c = 0; c < u.size(); ++c)
      if (t.interior[c] && u[c] != 0.0)
        acc.add(t.h[c] * std::pow(std::fabs(u[c]) / eta,
                                  reaction.q(t.mid[c])));
    return acc.sum;
  };
  return luxemburg_norm(rho);
}

BracketCheck bracket_check(double norm, double modular, double e_minus,
                           double e_plus) {
  BracketCheck out;
  out.norm = norm;
  out.modular = modular;
  if (norm > 1.0) {
    out.lower = std::pow(norm, e_minus);
    out.upper = std::pow(norm, e_plus);
  } else {
    out.lower = std::pow(norm, e_plus);
    out.upper = std::pow(norm, e_minus);
  }
  double scale = std::fmax(1.0, std::fabs(modular));
  out.margin = std::fmin(modular - out.lower, out.upper - modular) / scale;
  out.pass = out.margin >= -1e-8;
  return out;
}

BracketingReport check_modular_norm_bracketing(const GridFunction& u,
                                               const Problem& prob) {
  BracketingReport rep;
  double n = combined_norm(u, prob);
  if (n == 0.0) throw std::invalid_argument("bracketing check needs u != 0");
  double rho = combined_modular(u, prob);
  rep.combined =
      bracket_check(n, rho, prob.phi_minus_min(), prob.phi_plus_max());
  for (int i = 0; i < 2; ++i) {
    double ni = phase_norm(u, prob, i);
    double ri = phase_modular(u, i, prob).total();
    rep.per_phase[i] = bracket_check(ni, ri, prob.phase(i).family.phi_minus(),
                                     prob.phase(i).family.phi_plus());
  }
  GridFunction scaled = u;
  for (auto& v : scaled) v /= n;
  rep.unit_scaling_modular = combined_modular(scaled, prob);

  rep.min_margin = std::fmin(
      rep.combined.margin,
      std::fmin(rep.per_phase[0].margin, rep.per_phase[1].margin));
  rep.pass = rep.combined.pass && rep.per_phase[0].pass &&
             rep.per_phase[1].pass &&
             std::fabs(rep.unit_scaling_modular - 1.0) <= 1e-8;
  return rep;
}

HolderReport holder_check(const GridFunction& u, const GridFunction& v,
                          const Problem& prob, int phase) {
  check_grid_function(u, prob.mesh());
  check_grid_function(v, prob.mesh());
  const auto& t = prob.tables();
  detail::Kahan acc;
  for (std::size_t c = 0; c < u.size(); ++c)
    if (t.interior[c]) acc.add(t.h[c] * u[c] * v[c]);
  HolderReport rep;
  rep.lhs = std::fabs(acc.sum);
  rep.rhs = 2.0 * interior_phi_norm(u, prob, phase) *
            conjugate_interior_norm(v, prob, phase);
  rep.pass = rep.lhs <= rep.rhs + 1e-10;
  return rep;
}

}  // namespace dphase
