#pragma once

#include <cstddef>
#include <vector>

#include "datavec/vector.hpp"

namespace datavec {

// One summand of a permutation sum: the member picked from the base list,
// pushed forward along an injection whose domain covers the member's support.
struct WitnessTerm {
  std::size_t base = 0;
  FiniteInjection injection;
  bool operator==(const WitnessTerm&) const = default;
};

struct PermutationSumWitness {
  std::vector<WitnessTerm> terms;
  bool operator==(const PermutationSumWitness&) const = default;
};

}  // namespace datavec
