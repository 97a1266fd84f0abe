#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "datavec/numbers.hpp"
#include "datavec/vector.hpp"
#include "datavec/witness.hpp"

namespace datavec {

// Everything needed to rewrite one member's negation as a sum of pushforwards
// of members: nonnegative integer multipliers with
//   -weight(members[i]) == sum_j multipliers[j] * weight(members[j]),
// the data-value set the construction rotates over, and the witness itself.
struct MemberReversal {
  std::vector<Int> multipliers;
  std::set<DataValue> set;
  PermutationSumWitness witness;
};

struct ReversibleSetCertificate {
  std::vector<DataVector> members;
  std::vector<MemberReversal> reversals;  // one per member
};

struct ReversibilityReport {
  bool reversible = false;                  // every member is reversible
  std::vector<char> member_reversible;      // one flag per member
  std::optional<ReversibleSetCertificate> certificate;  // present iff reversible
};

// Whether the negation of members[index] is a permutation sum over the
// members. Decided by a rational feasibility check on the weights, which is
// exact for vectors that occur in the member list.
bool is_reversible_in(std::size_t index, const std::vector<DataVector>& members);

// Convenience overload: v must occur in `members` (throws otherwise).
bool is_reversible_in(const DataVector& v, const std::vector<DataVector>& members);

// Checks every member and builds the certificate when all pass.
ReversibilityReport is_reversible_set(const std::vector<DataVector>& members);

// Witness with sum equal to -members[index]; throws when the member is not
// reversible in the set.
PermutationSumWitness reversal_witness(std::size_t index, const std::vector<DataVector>& members);
PermutationSumWitness reversal_witness(const DataVector& v, const std::vector<DataVector>& members);

// Full per-member construction (multipliers, rotation set, witness).
std::optional<MemberReversal> member_reversal(std::size_t index,
                                              const std::vector<DataVector>& members);

}  // namespace datavec
