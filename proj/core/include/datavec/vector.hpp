#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "datavec/interner.hpp"
#include "datavec/tuple.hpp"

namespace datavec {

// A finite injection between sets of data values. Domain and images are
// explicit; values outside the domain are untouched by convention.
class FiniteInjection {
 public:
  FiniteInjection() = default;
  // Throws if two domain values share an image.
  static FiniteInjection from_map(std::map<DataValue, DataValue> map);
  static FiniteInjection identity_on(const std::set<DataValue>& dom);
  static FiniteInjection swap_of(DataValue a, DataValue b);
  // The i-fold successor rotation of S: each element moves to the i-th next
  // element in id order, wrapping past the maximum. A permutation of S.
  static FiniteInjection rotation_of(const std::set<DataValue>& s, std::size_t i);

  const std::map<DataValue, DataValue>& map() const { return map_; }
  std::size_t size() const { return map_.size(); }
  bool defined_at(DataValue a) const { return map_.count(a) != 0; }
  DataValue apply(DataValue a) const;               // throws if outside domain
  DataValue apply_or_identity(DataValue a) const;   // identity outside domain
  std::set<DataValue> domain() const;
  std::set<DataValue> image() const;

  // True when the injection permutes its domain (image set == domain set).
  bool is_permutation() const;

  FiniteInjection restricted_to(const std::set<DataValue>& dom) const;

  friend bool operator==(const FiniteInjection&, const FiniteInjection&) = default;

 private:
  std::map<DataValue, DataValue> map_;
};

// inner followed by outer: a |-> outer(inner(a)), outer applied as a
// permutation extended by the identity. outer must permute its domain;
// otherwise the extension by identity need not be injective.
FiniteInjection compose(const FiniteInjection& inner, const FiniteInjection& outer);

// A data vector: a finitely supported map from data values to Z^d.
// Zero tuples are never stored, so support() is exactly the key set.
class DataVector {
 public:
  explicit DataVector(std::size_t dim) : dim_(dim ? dim : throw_dim()) {}
  static DataVector from_entries(std::size_t dim, std::map<DataValue, Tuple> entries);

  std::size_t dim() const { return dim_; }
  const std::map<DataValue, Tuple>& entries() const { return entries_; }
  std::set<DataValue> support() const;
  bool empty() const { return entries_.empty(); }

  // Value at a datum; the zero tuple when outside the support.
  Tuple value(DataValue a) const;

  Tuple weight() const;  // sum of all values

  DataVector& operator+=(const DataVector& o);
  DataVector& operator-=(const DataVector& o);
  friend DataVector operator+(DataVector a, const DataVector& b) { return a += b; }
  friend DataVector operator-(DataVector a, const DataVector& b) { return a -= b; }
  friend DataVector operator-(const DataVector& a);
  friend bool operator==(const DataVector&, const DataVector&) = default;

 private:
  static std::size_t throw_dim();
  void set(DataValue a, Tuple t);  // drops zeros, keeps the no-zero invariant
  std::size_t dim_;
  std::map<DataValue, Tuple> entries_;
  friend DataVector apply_injection(const DataVector&, const FiniteInjection&);
};

// Pushes v forward along pi: the result holds v's value for alpha at
// pi(alpha). Requires domain(pi) to cover support(v).
DataVector apply_injection(const DataVector& v, const FiniteInjection& pi);

// Applies the i-fold rotation of S to v (via apply_injection); requires
// support(v) within S.
DataVector rotate(const DataVector& v, const std::set<DataValue>& s, std::size_t i);

// Sum of all |S| rotations of v over S. The result carries weight(v) at every
// element of S (and is empty when that weight is zero).
DataVector equalize(const DataVector& v, const std::set<DataValue>& s);

// The vector carrying tuple g at datum alpha and zero elsewhere.
DataVector lift(const Tuple& g, DataValue alpha);

}  // namespace datavec
