// dphase: solve and inspect a two-phase nonlocal Neumann/Robin model with
// variable-order kernels on a 1-D interval plus a truncated exterior collar.
//
//   dphase solve       --config ref.cfg [--lambda v] [--branch small|large]
//   dphase verify      --config ref.cfg
//   dphase norm        --config ref.cfg --input solution.csv
//   dphase lambda-star --config ref.cfg
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.

#include <cmath>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dphase/config.hpp"
#include "dphase/energy.hpp"
#include "dphase/modular.hpp"
#include "dphase/parallel.hpp"
#include "dphase/solver.hpp"
#include "dphase/verify.hpp"

namespace {

using namespace dphase;

int cmd_solve(const RunConfig& cfg, double lambda_override,
              const std::string& branch, const std::string& out_dir) {
  Problem prob = cfg.make_problem();
  double lambda =
      lambda_override > 0.0 ? lambda_override : cfg.get_double("lambda");

  SolveReport rep;
  if (branch == "small") {
    rep = solve_small_lambda(prob, lambda);
  } else if (branch == "large") {
    rep = solve_large_lambda(prob, lambda);
  } else {
    rep = solve_auto(prob, lambda);
  }

  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";

  std::string prefix = out_dir.empty() ? "" : out_dir + "/";
  write_solution_csv(prefix + "solution.csv", prob.mesh(), rep.minimizer);
  write_report(prefix + "report.txt", cfg, rep);
  std::cout << "branch=" << rep.branch << "\n"
            << "energy=" << format_double(rep.energy) << "\n"
            << "gradient_sup_norm=" << format_double(rep.gradient_sup_norm)
            << "\n"
            << "neumann_sup_residual="
            << format_double(rep.neumann_sup_residual) << "\n"
            << "norm=" << format_double(rep.norm_of_minimizer) << "\n"
            << "iterations=" << rep.iterations << "\n"
            << "wrote " << prefix << "solution.csv, " << prefix
            << "report.txt\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  Problem prob = cfg.make_problem();
  auto results = run_verify(prob);
  for (const auto& r : results)
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail
              << "\n";
  bool ok = all_passed(results);
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_norm(const RunConfig& cfg, const std::string& input) {
  Problem prob = cfg.make_problem();
  GridFunction u = read_solution_csv(input, prob.mesh());

  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    auto m = phase_modular(u, i, prob);
    std::string tag = "modular_phase" + std::to_string(i + 1);
    std::cout << tag << "_gagliardo=" << format_double(m.gagliardo) << "\n"
              << tag << "_interior=" << format_double(m.interior) << "\n"
              << tag << "_exterior_beta=" << format_double(m.exterior_beta)
              << "\n"
              << tag << "_total=" << format_double(m.total()) << "\n";
    total += m.total();
  }
  std::cout << "modular_total=" << format_double(total) << "\n";

  double norm = combined_norm(u, prob);
  std::cout << "norm=" << format_double(norm) << "\n";
  double norm_x_sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    double ni = phase_norm(u, prob, i);
    std::cout << "norm_phase" << i + 1 << "=" << format_double(ni) << "\n";
    double three_term = gagliardo_seminorm(u, prob, i) +
                        interior_phi_norm(u, prob, i) +
                        exterior_beta_norm(u, prob, i);
    std::cout << "norm_X_phase" << i + 1 << "=" << format_double(three_term)
              << "\n";
    norm_x_sum += three_term;
  }
  std::cout << "norm_X_sum=" << format_double(norm_x_sum) << "\n";
  if (norm > 0.0)
    std::cout << "norm_ratio_X_over_modular=" << format_double(norm_x_sum / norm)
              << "\n";
  return 0;
}

int cmd_lambda_star(const RunConfig& cfg) {
  Problem prob = cfg.make_problem();
  double c_hat = estimate_embedding_constant(prob);
  double lambda_star =
      estimate_lambda_star_small(prob, prob.solver().rho, c_hat);
  double lambda_hat = empirical_lambda_threshold(prob, prob.solver().t0);
  std::cout << "embedding_constant_estimate=" << format_double(c_hat) << "\n"
            << "rho=" << format_double(prob.solver().rho) << "\n"
            << "lambda_star=" << format_double(lambda_star) << "\n"
            << "lambda_hat_star=" << format_double(lambda_hat) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-phase nonlocal Neumann/Robin solver"};
  app.require_subcommand(1);

  std::string config_path, branch, input, out_dir;
  double lambda_override = 0.0;
  int threads = 1;
  app.add_option("--threads", threads, "worker thread cap for assemblies");

  auto* solve = app.add_subcommand("solve", "minimize the energy and write "
                                            "solution.csv + report.txt");
  solve->add_option("--config", config_path, "config file")->required();
  solve->add_option("--lambda", lambda_override, "override config lambda");
  solve->add_option("--branch", branch, "force branch: small | large")
      ->check(CLI::IsMember({"small", "large"}));
  solve->add_option("--output-dir", out_dir, "directory for output files");

  auto* verify = app.add_subcommand("verify", "run the identity and "
                                              "condition suite");
  verify->add_option("--config", config_path, "config file")->required();

  auto* norm = app.add_subcommand("norm", "modulars and norms of a stored "
                                          "solution");
  norm->add_option("--config", config_path, "config file")->required();
  norm->add_option("--input", input, "solution.csv to read")->required();

  auto* lstar = app.add_subcommand("lambda-star", "print the small-branch "
                                                  "threshold and the measured "
                                                  "plateau threshold");
  lstar->add_option("--config", config_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  dphase::set_max_threads(threads);

  try {
    dphase::RunConfig cfg = dphase::RunConfig::load(config_path);
    if (app.got_subcommand(solve))
      return cmd_solve(cfg, lambda_override, branch, out_dir);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(norm)) return cmd_norm(cfg, input);
    if (app.got_subcommand(lstar)) return cmd_lambda_star(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
