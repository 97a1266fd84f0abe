#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "datavec/ilp.hpp"
#include "datavec/linsys.hpp"
#include "datavec/reversibility.hpp"
#include "datavec/vector.hpp"
#include "datavec/witness.hpp"

namespace datavec {

// The question: is `target` a sum of pushforwards of vectors drawn (with
// repetition) from `members`?
class ExpressibilityInstance {
 public:
  static ExpressibilityInstance make(std::size_t dim, std::vector<DataVector> members,
                                     DataVector target);

  std::size_t dim() const { return dim_; }
  const std::vector<DataVector>& members() const { return members_; }
  const DataVector& target() const { return target_; }

 private:
  ExpressibilityInstance(std::size_t dim, std::vector<DataVector> members, DataVector target)
      : dim_(dim), members_(std::move(members)), target_(std::move(target)) {}
  std::size_t dim_;
  std::vector<DataVector> members_;
  DataVector target_;
};

// If the target is expressible at all, it is expressible using data values
// drawn from the target's support plus this many extra values in total.
std::size_t support_bound(const ExpressibilityInstance& inst);

// Integer program whose feasible points are exactly the table collections
// ("one table per member, one column per candidate data value") that realize
// the target. The legend maps semantic cells to unknown indices.
struct IlpBuild {
  LinearSystem sys;
  std::vector<DataValue> columns;  // candidate target values, in id order
  // (member index, table row value, column value) -> unknown index
  std::map<std::tuple<std::size_t, DataValue, DataValue>, std::size_t> cell_var;
  // member index -> unknown holding how many pushforwards of it are used
  std::map<std::size_t, std::size_t> count_var;
};

// Full build: candidate columns are the target support plus fresh values up
// to the support bound.
IlpBuild build_ilp(const ExpressibilityInstance& inst);
// Same with an explicit number of fresh columns (clamped to the bound).
IlpBuild build_ilp(const ExpressibilityInstance& inst, std::size_t fresh_columns);

struct ExpressibilityResult {
  bool yes = false;
  std::optional<PermutationSumWitness> witness;  // present on yes when requested
  IlpStats stats;           // aggregated over all rounds
  std::size_t rounds = 0;   // fresh-column widening rounds run
  std::size_t fresh_used = 0;  // fresh columns in the deciding round
};

// Decision procedure. Fresh columns are widened geometrically up to the
// support bound; a yes from any round carries a verified witness, a no is
// only reported at the full bound.
ExpressibilityResult is_permutation_sum(const ExpressibilityInstance& inst,
                                        bool want_witness = true);

// Recomputes the witness sum. Structural defects (bad member index, injection
// domain not covering the member's support) throw; a sum different from the
// target returns false.
bool verify_witness(const ExpressibilityInstance& inst, const PermutationSumWitness& witness);

// Decision for targets over a reversible member set: two subgroup membership
// checks (one on weights, one on values), no integer programming.
struct FastResult {
  bool yes = false;
  std::optional<PermutationSumWitness> witness;
};
FastResult fast_is_permutation_sum(const ExpressibilityInstance& inst,
                                   const ReversibleSetCertificate& cert,
                                   bool want_witness = false);

// Explicit witness construction behind the fast yes; throws if the subgroup
// conditions do not hold.
PermutationSumWitness synthesize_reversible_witness(const ExpressibilityInstance& inst,
                                                    const ReversibleSetCertificate& cert);

}  // namespace datavec
