#pragma once

#include <cstddef>
#include <vector>

#include "datavec/numbers.hpp"

namespace datavec {

enum class Relation { Eq, Le, Ge };

// One constraint sum_j coeffs[j] * x_j  (rel)  rhs over unknowns x_j >= 0.
struct LinearRow {
  std::vector<Rat> coeffs;
  Relation rel = Relation::Eq;
  Rat rhs = 0;
};

struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<LinearRow> rows;
};

}  // namespace datavec
