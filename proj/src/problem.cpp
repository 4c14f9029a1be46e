#include "dphase/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dphase/errors.hpp"

namespace dphase {

Problem::Problem(Mesh mesh, PhaseSpec phase1, PhaseSpec phase2,
                 ExponentField beta, ReactionSpec reaction, double lambda,
                 SolverParams solver, std::uint64_t seed)
    : mesh_(std::move(mesh)),
      phases_{std::move(phase1), std::move(phase2)},
      beta_(std::move(beta)),
      reaction_(std::move(reaction)),
      lambda_(lambda),
      solver_(solver),
      seed_(seed) {
  if (!(lambda_ > 0.0))
    throw std::invalid_argument("problem: lambda must be positive");

  double gap = phi_minus_min() - reaction_.q_plus();
  if (gap < 0.0)
    throw std::invalid_argument(
        "problem: q_plus = " + std::to_string(reaction_.q_plus()) +
        " exceeds min(phi_1^-, phi_2^-) = " + std::to_string(phi_minus_min()));
  strict_gap_ = gap > 0.0;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto& cells = mesh_.cells();
  const auto& pairs = mesh_.pair_table();

  tables_.h.resize(cells.size());
  tables_.mid.resize(cells.size());
  tables_.interior.resize(cells.size());
  tables_.beta.assign(cells.size(), 0.0);
  tables_.q.assign(cells.size(), 0.0);
  for (int i = 0; i < 2; ++i) tables_.p_hat[i].assign(cells.size(), nan);

  for (std::size_t c = 0; c < cells.size(); ++c) {
    tables_.h[c] = cells[c].width;
    tables_.mid[c] = cells[c].mid;
    tables_.interior[c] = cells[c].region == Region::interior ? 1 : 0;
    if (cells[c].region == Region::exterior) {
      double b = beta_.value(cells[c].mid);
      if (b < 0.0)
        throw std::invalid_argument("problem: beta(x) < 0 at x = " +
                                    std::to_string(cells[c].mid));
      tables_.beta[c] = b;
    } else {
      tables_.q[c] = reaction_.q(cells[c].mid);
    }
    for (int i = 0; i < 2; ++i)
      if (phases_[i].family.kind() != FamilyKind::custom)
        tables_.p_hat[i][c] = phases_[i].family.exponent_diag(cells[c].mid);
  }

  tables_.wmu.resize(pairs.size());
  tables_.x.resize(pairs.size());
  tables_.y.resize(pairs.size());
  for (int i = 0; i < 2; ++i) {
    tables_.invrs[i].resize(pairs.size());
    tables_.p[i].assign(pairs.size(), nan);
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const PairEntry& e = pairs[k];
    tables_.wmu[k] = e.w / e.r;  // N = 1
    tables_.x[k] = e.x;
    tables_.y[k] = e.y;
    for (int i = 0; i < 2; ++i) {
      double s = phases_[i].order.value(e.x, e.y);
      tables_.invrs[i][k] = std::pow(e.r, -s);
      if (phases_[i].family.kind() != FamilyKind::custom)
        tables_.p[i][k] = phases_[i].family.exponent(e.x, e.y);
    }
  }
}

double Problem::phi_minus_min() const {
  return std::fmin(phases_[0].family.phi_minus(), phases_[1].family.phi_minus());
}

double Problem::phi_plus_max() const {
  return std::fmax(phases_[0].family.phi_plus(), phases_[1].family.phi_plus());
}

double Problem::truncation_tail_estimate(const GridFunction& u) const {
  double sup = 0.0;
  for (double v : u) sup = std::fmax(sup, std::fabs(v));
  if (sup == 0.0) return 0.0;
  double R = mesh_.spec().collar;
  double omega = mesh_.spec().b - mesh_.spec().a;
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    double s_minus = phases_[i].order.s_minus();
    double mid = 0.5 * (mesh_.spec().a + mesh_.spec().b);
    total += 2.0 * phases_[i].family.phi_value(mid, mid,
                                               sup / std::pow(R, s_minus)) *
             omega / R;
  }
  return total;
}

void check_grid_function(const GridFunction& u, const Mesh& mesh) {
  if (u.size() != mesh.n_cells())
    throw std::invalid_argument("grid function has " + std::to_string(u.size()) +
                                " values for " + std::to_string(mesh.n_cells()) +
                                " cells");
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!std::isfinite(u[i]))
      throw NumericError("grid function has a non-finite value at node " +
                         std::to_string(i));
}

}  // namespace dphase
