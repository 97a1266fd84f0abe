#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "datavec/numbers.hpp"
#include "datavec/tuple.hpp"

namespace datavec {

struct HnfResult {
  // h = m * u, in column echelon form: pivots walk down and right, each
  // pivot is positive, entries right of a pivot in its row are zero, and
  // entries left of a pivot in its row are reduced into [0, pivot).
  std::vector<std::vector<Int>> h;
  // Unimodular (determinant +1 or -1) column-operation matrix.
  std::vector<std::vector<Int>> u;
  // (row, column) of each pivot, in order.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
};

// Column-style Hermite normal form of an integer matrix given as rows of
// equal width. The width may be zero (no columns) or the matrix empty.
HnfResult hnf(const std::vector<std::vector<Int>>& m);

// Exact determinant of a square integer matrix (fraction-free elimination).
Int integer_determinant(std::vector<std::vector<Int>> m);

// Decides membership of targets in the subgroup of Z^dim generated by a fixed
// set of integer columns, and produces integer coefficients on demand. One
// normal-form computation is shared across any number of queries.
class SubgroupSolver {
 public:
  SubgroupSolver(std::size_t dim, std::vector<std::vector<Int>> generators);
  SubgroupSolver(std::size_t dim, const std::vector<Tuple>& generators);

  std::size_t dim() const { return dim_; }
  std::size_t generator_count() const { return count_; }

  // Coefficients z with sum_j z[j] * generators[j] == target, if the target
  // lies in the generated subgroup.
  std::optional<std::vector<Int>> solve(const std::vector<Int>& target) const;
  std::optional<std::vector<Int>> solve(const Tuple& target) const;
  bool contains(const Tuple& target) const;

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  HnfResult nf_;
};

bool subgroup_member(std::size_t dim, const std::vector<Tuple>& generators, const Tuple& target);

}  // namespace datavec
