#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "datavec/expressibility.hpp"
#include "datavec/rng.hpp"
#include "datavec/vector.hpp"
#include "datavec/witness.hpp"

namespace datavec {

// Bounds for the brute-force search. `pool` restricts the values terms may
// land on; when unset the search uses every value occurring in the instance
// plus enough fresh values that no sum of at most `max_terms` pushforwards is
// missed (a sum can always be renamed so that values outside the instance are
// the smallest unused ids). Exceeding `node_cap` throws BudgetExceeded.
struct OracleBudget {
  std::size_t max_terms = 4;
  std::size_t node_cap = 1000000;
  std::optional<std::vector<DataValue>> pool;
};

enum class OracleDecision {
  Yes,           // a sum of at most max_terms pushforwards equals the target
  NoUpToBudget,  // exhaustive up to max_terms over the pool: no such sum
};

struct OracleResult {
  OracleDecision decision = OracleDecision::NoUpToBudget;
  std::optional<PermutationSumWitness> witness;  // present iff decision == Yes
  std::size_t nodes = 0;                         // search tree size explored
};

// Exhaustive ground-truth decision by enumeration: all multisets of at most
// `budget.max_terms` member indices, and for each, all injective placements
// of the members' supports into the pool, one candidate per renaming of
// values outside the instance. Sound for Yes (the witness is verified) and,
// within the stated bounds, complete for NoUpToBudget.
OracleResult oracle_decide(const ExpressibilityInstance& inst,
                           const OracleBudget& budget = OracleBudget{});

// Number of complete candidates (canonical term sequences of length 1 to
// max_terms) the enumeration visits when every feasibility prune is disabled.
// Used to cross-check the enumeration against a naive reference counter.
std::size_t oracle_count_candidates(const ExpressibilityInstance& inst,
                                    const OracleBudget& budget);

// Shape of a randomly drawn instance. Values are drawn from a small universe
// of ids so supports overlap; all-zero tuples are allowed and simply shrink
// the support. With `mirrored` set, every drawn member is followed by its
// negation, which makes the member set reversible by construction.
struct InstanceShape {
  std::size_t dim = 1;
  std::size_t member_count = 2;
  std::size_t max_member_support = 3;
  std::size_t max_target_support = 3;
  std::int64_t entry_lo = -2;
  std::int64_t entry_hi = 2;
  bool mirrored = false;
};

ExpressibilityInstance random_instance(const InstanceShape& shape, Rng& rng);

}  // namespace datavec
