#pragma once

#include <string>
#include <vector>

#include "dphase/problem.hpp"

namespace dphase {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Structural-condition and identity suite for one problem instance: family
// conditions (ratio bracket, doubling, sqrt-convexity, boundedness, symmetry,
// Young/Hölder), embedding classifier spot checks, the discrete
// integration-by-parts and Green identities, modular-norm bracketing, norm
// scaling, gradient consistency, and the small-lambda threshold formula.
std::vector<CheckResult> run_verify(const Problem& prob);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace dphase
