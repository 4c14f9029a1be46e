#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dphase/problem.hpp"
#include "dphase/solver.hpp"

namespace dphase {

// Flat key = value configuration. '#' starts a comment; keys are dotted and
// must belong to the schema below; anything else is rejected with the byte
// offset and line of the offending key. Every run resolves the full schema
// (explicit settings plus defaults) so reports can echo it verbatim.
//
//   domain.a, domain.b, domain.collar
//   mesh.n_interior, mesh.n_collar, mesh.diag_depth
//   phase1.family (power|powerlog), phase1.p, phase1.s
//   phase2.family, phase2.p, phase2.s
//   reaction.q, beta, lambda, seed
//   solver.tol, solver.max_iters, solver.rho, solver.t0
class RunConfig {
 public:
  static RunConfig load(const std::string& path);
  static RunConfig from_string(const std::string& text);

  Problem make_problem() const;

  double get_double(const std::string& key) const;
  long get_long(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;
  std::uint64_t seed() const;

  // Full schema with resolved values, sorted by key.
  std::vector<std::pair<std::string, std::string>> resolved() const;

 private:
  std::map<std::string, std::string> values_;
};

// solution.csv: header "x,u,region", one row per cell midpoint, 17
// significant digits, region in {interior, exterior}.
void write_solution_csv(const std::string& path, const Mesh& mesh,
                        const GridFunction& u);
GridFunction read_solution_csv(const std::string& path, const Mesh& mesh);

// report.txt: key=value lines followed by the resolved config echo.
void write_report(const std::string& path, const RunConfig& cfg,
                  const SolveReport& rep);

std::string format_double(double v);  // shortest 17-significant-digit form

}  // namespace dphase
