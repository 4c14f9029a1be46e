#include "dphase/verify.hpp"

#include <cmath>
#include <sstream>

#include "dphase/energy.hpp"
#include "dphase/modular.hpp"
#include "dphase/operator.hpp"
#include "dphase/parallel.hpp"
#include "dphase/rng.hpp"
#include "dphase/solver.hpp"

namespace dphase {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

GridFunction random_u(Rng& rng, std::size_t n) {
  return rng.symmetric_vector(n);
}

void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
         const std::string& detail) {
  out.push_back({name, pass, detail});
}

}  // namespace

std::vector<CheckResult> run_verify(const Problem& prob) {
  std::vector<CheckResult> out;
  Rng rng(prob.seed());
  const std::size_t n = prob.mesh().n_cells();
  const Box box = prob.mesh().box();

  for (int i = 0; i < 2; ++i) {
    const auto& fam = prob.phase(i).family;
    std::string tag = "phase" + std::to_string(i + 1);

    auto p1 = check_phi1(fam, 48);
    add(out, tag + ".ratio_bracket", p1.pass,
        "observed [" + fmt(p1.phi_minus_observed) + ", " +
            fmt(p1.phi_plus_observed) + "] within [" + fmt(fam.phi_minus()) +
            ", " + fmt(fam.phi_plus()) + "]");

    auto d2 = check_delta2(fam, 48);
    add(out, tag + ".doubling", d2.pass,
        "max Phi(2t)/Phi(t) = " + fmt(d2.worst_ratio) +
            " <= K = " + fmt(d2.constant));

    add(out, tag + ".sqrt_convexity", check_phi2_sqrt_convexity(fam, 48),
        "midpoint test of t -> Phi(sqrt(t))");

    double sup1 = check_phi3_sup(fam, 33);
    add(out, tag + ".bounded_at_one", std::isfinite(sup1),
        "sup Phi(x,y,1) = " + fmt(sup1));

    bool sym = true;
    for (int k = 0; k < 256 && sym; ++k) {
      double x = rng.uniform(box.lo, box.hi);
      double y = rng.uniform(box.lo, box.hi);
      double t = std::exp(rng.uniform(-3.0, 3.0));
      sym = fam.phi_value(x, y, t) == fam.phi_value(y, x, t);
    }
    add(out, tag + ".symmetry", sym, "Phi(x,y,t) == Phi(y,x,t) exactly");

    bool young = true;
    double young_worst = 0.0;
    for (int k = 0; k < 32; ++k) {
      double x = rng.uniform(box.lo, box.hi);
      double y = rng.uniform(box.lo, box.hi);
      double a = std::exp(rng.uniform(-2.0, 2.0));
      double b = std::exp(rng.uniform(-2.0, 2.0));
      double slack =
          fam.phi_value(x, y, a) + fam.conjugate_phi(x, y, b) - a * b;
      young_worst = std::fmin(young_worst, slack);
      if (slack < -1e-10) young = false;
    }
    add(out, tag + ".young_inequality", young,
        "min slack " + fmt(young_worst));
  }

  {
    // embedding classifier against the exact power criterion s*p vs N
    struct Case {
      double s, p;
      IntegralClass zero, inf;
    };
    const Case cases[] = {
        {0.40, 2.0, IntegralClass::convergent, IntegralClass::divergent},
        {0.50, 3.0, IntegralClass::divergent, IntegralClass::convergent},
        {0.30, 3.0, IntegralClass::convergent, IntegralClass::divergent},
        {0.60, 2.0, IntegralClass::divergent, IntegralClass::convergent},
        {0.45, 2.0, IntegralClass::convergent, IntegralClass::divergent},
        {0.55, 2.0, IntegralClass::divergent, IntegralClass::convergent},
    };
    bool ok = true;
    for (const auto& c : cases) {
      std::ostringstream p_text;
      p_text << c.p;
      auto fam = MusielakFamily::power(Expression::parse(p_text.str()), box);
      auto rep = embedding_condition_check(fam, c.s, 1);
      if (rep.near_zero != c.zero || rep.near_infinity != c.inf) ok = false;
    }
    add(out, "embedding_classifier", ok,
        "6 power cases against the exact s*p criterion");
  }

  {
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      GridFunction u = random_u(rng, n);
      for (int i = 0; i < 2; ++i)
        worst = std::fmax(worst, ibp_defect(u, i, prob) /
                                     ibp_scale(u, i, prob));
    }
    add(out, "integration_by_parts", worst <= 1e-12,
        "max relative defect " + fmt(worst));
  }

  {
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      GridFunction u = random_u(rng, n);
      GridFunction v = random_u(rng, n);
      for (int i = 0; i < 2; ++i)
        worst = std::fmax(worst, green_defect(u, v, i, prob) /
                                     green_scale(u, v, i, prob));
    }
    add(out, "green_identity", worst <= 1e-12,
        "max relative defect " + fmt(worst));
  }

  {
    bool ok = true;
    double worst_margin = 1.0, worst_unit = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
      GridFunction u = random_u(rng, n);
      double target = rep % 2 == 0 ? 0.3 : 3.0;
      double nu = combined_norm(u, prob);
      for (auto& v : u) v *= target / nu;
      auto b = check_modular_norm_bracketing(u, prob);
      ok = ok && b.pass;
      worst_margin = std::fmin(worst_margin, b.min_margin);
      worst_unit =
          std::fmax(worst_unit, std::fabs(b.unit_scaling_modular - 1.0));
    }
    add(out, "modular_norm_bracketing", ok,
        "min margin " + fmt(worst_margin) + ", unit-scaling defect " +
            fmt(worst_unit));
  }

  {
    bool ok = true;
    double worst = 0.0;
    for (int rep = 0; rep < 2; ++rep) {
      GridFunction u = random_u(rng, n);
      double nu = combined_norm(u, prob);
      double c = std::exp(rng.uniform(-2.0, 2.0));
      GridFunction cu = u;
      for (auto& v : cu) v *= c;
      double lhs = combined_norm(cu, prob);
      double err = std::fabs(lhs - c * nu) / (c * nu);
      worst = std::fmax(worst, err);
      ok = ok && err <= 1e-9;
    }
    add(out, "norm_homogeneity", ok, "max relative defect " + fmt(worst));
  }

  {
    bool ok = true;
    for (int i = 0; i < 2; ++i)
      for (int rep = 0; rep < 3; ++rep) {
        GridFunction u = random_u(rng, n);
        GridFunction v = random_u(rng, n);
        auto h = holder_check(u, v, prob, i);
        ok = ok && h.pass;
      }
    add(out, "holder_factor_two", ok,
        "|int uv| <= 2 ||u|| ||v||_conj on 6 random pairs");
  }

  {
    double worst = 0.0;
    for (int rep = 0; rep < 2; ++rep) {
      GridFunction u = random_u(rng, n);
      GridFunction g = energy_gradient(u, prob, prob.lambda());
      for (std::size_t z = 0; z < n; ++z) {
        const double h = 1e-6;
        GridFunction up = u, dn = u;
        up[z] += h;
        dn[z] -= h;
        double fd = (energy(up, prob, prob.lambda()) -
                     energy(dn, prob, prob.lambda())) /
                    (2.0 * h);
        worst = std::fmax(worst,
                          std::fabs(g[z] - fd) / (1.0 + std::fabs(g[z])));
      }
    }
    add(out, "gradient_finite_difference", worst <= 1e-6,
        "max scaled deviation " + fmt(worst));
  }

  {
    double worst = 0.0;
    for (int rep = 0; rep < 2; ++rep) {
      GridFunction u = random_u(rng, n);
      GridFunction v = random_u(rng, n);
      auto form = form_A(u, v, prob);
      detail::Kahan fv;
      const auto& t = prob.tables();
      for (std::size_t c = 0; c < n; ++c)
        if (t.interior[c])
          fv.add(t.h[c] * prob.reaction().value(t.mid[c], u[c]) * v[c]);
      double expected = form.total - prob.lambda() * fv.sum;
      // central difference (J(u+hv) - J(u-hv)) / 2h from two exact deltas
      const double h = 1e-6;
      double fd_c = (energy_delta(u, v, h, prob, prob.lambda()) -
                     energy_delta(u, v, -h, prob, prob.lambda())) /
                    (2.0 * h);
      worst = std::fmax(worst, std::fabs(fd_c - expected) /
                                   (1.0 + std::fabs(expected)));
    }
    add(out, "energy_form_consistency", worst <= 1e-8,
        "directional derivative vs form, max scaled deviation " + fmt(worst));
  }

  {
    double c_hat = estimate_embedding_constant(prob, 4);
    double rho = prob.solver().rho;
    bool ok = true;
    std::string detail;
    if (rho < 1.0 / c_hat) {
      double impl = estimate_lambda_star_small(prob, rho, c_hat);
      double byhand =
          std::pow(rho, prob.phi_plus_max() - prob.reaction().q_plus()) /
          (2.0 * prob.reaction().c2() *
           std::pow(c_hat, prob.reaction().q_plus()));
      ok = std::fabs(impl - byhand) <= 1e-12 * std::fmax(1.0, byhand);
      detail = "lambda_* = " + fmt(impl) + " (c = " + fmt(c_hat) + ")";
    } else {
      detail = "skipped: rho >= 1/c";
    }
    add(out, "small_lambda_threshold_formula", ok, detail);
  }

  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace dphase
