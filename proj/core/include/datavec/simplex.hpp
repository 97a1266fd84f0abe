#pragma once

#include <cstddef>
#include <vector>

#include "datavec/linsys.hpp"
#include "datavec/numbers.hpp"

namespace datavec {

struct LpResult {
  bool feasible = false;
  // Values of the original unknowns (length num_vars) when feasible.
  std::vector<Rat> solution;
  std::size_t pivots = 0;
};

// Decides feasibility of the system over nonnegative rational unknowns and,
// when feasible, returns a basic feasible point. Exact arithmetic with
// Bland's rule, so it always terminates.
LpResult lp_feasible(const LinearSystem& sys);

struct LpOptimum {
  bool feasible = false;
  bool unbounded = false;  // feasible but the objective has no finite minimum
  // Optimal values of the original unknowns and the objective, when feasible
  // and bounded.
  std::vector<Rat> solution;
  Rat value = 0;
  std::size_t pivots = 0;
};

// Minimizes objective . x over the same nonnegative feasible region
// (two-phase simplex, exact arithmetic, Bland's rule). The objective must
// have one coefficient per unknown.
LpOptimum lp_minimize(const LinearSystem& sys, const std::vector<Rat>& objective);

}  // namespace datavec
