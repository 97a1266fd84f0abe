#pragma once

#include <cstddef>
#include <vector>

#include "datavec/linsys.hpp"
#include "datavec/numbers.hpp"

namespace datavec {

struct IlpStats {
  std::size_t nodes = 0;
  std::size_t lp_calls = 0;
  std::size_t lp_pivots = 0;
  // Inequality rows rewritten as equalities because their slack is zero on
  // the whole relaxation.
  std::size_t implied_equalities = 0;
  // Variables pinned to zero because their maximum over the relaxation is
  // zero.
  std::size_t fixed_zero = 0;
  bool presolve_infeasible = false;
};

struct IlpResult {
  bool feasible = false;
  // Integer values of the unknowns (length num_vars) when feasible.
  std::vector<Int> solution;
  IlpStats stats;
};

// Decides feasibility of the system over nonnegative integer unknowns.
// Presolve first: an integer-lattice test rejects systems whose equality
// rows have no integer solution at all, then implied-equality tightening
// turns every inequality with identically zero slack into an equality and
// reruns the lattice test, which catches parity obstructions that only
// appear once counting forces rows tight. What survives goes to best-first
// branch and bound ordered by the minimum-mass relaxation, with
// most-fractional branching and a theoretical magnitude cap keeping the
// search finite without ever being materialized as a constraint row.
IlpResult ilp_feasible(const LinearSystem& sys);

}  // namespace datavec
