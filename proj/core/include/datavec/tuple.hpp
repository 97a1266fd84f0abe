#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "datavec/numbers.hpp"

namespace datavec {

// An element of Z^d, d >= 1.
class Tuple {
 public:
  explicit Tuple(std::size_t dim);            // all zeros
  static Tuple of(std::vector<Int> entries);  // dim = entries.size() >= 1

  std::size_t dim() const { return entries_.size(); }
  const Int& operator[](std::size_t i) const { return entries_[i]; }
  Int& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Int>& entries() const { return entries_; }

  bool is_zero() const;
  Tuple scaled(const Int& k) const;

  Tuple& operator+=(const Tuple& o);
  Tuple& operator-=(const Tuple& o);
  friend Tuple operator+(Tuple a, const Tuple& b) { return a += b; }
  friend Tuple operator-(Tuple a, const Tuple& b) { return a -= b; }
  friend Tuple operator-(const Tuple& a);

  friend bool operator==(const Tuple& a, const Tuple& b) = default;
  friend auto operator<=>(const Tuple& a, const Tuple& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<Int> entries_;
};

}  // namespace datavec
