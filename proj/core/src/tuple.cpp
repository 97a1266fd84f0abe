#include "datavec/tuple.hpp"

#include <stdexcept>

namespace datavec {

Tuple::Tuple(std::size_t dim) : entries_(dim) {
  if (dim == 0) throw std::invalid_argument("tuple dimension must be at least 1");
}

Tuple Tuple::of(std::vector<Int> entries) {
  if (entries.empty()) throw std::invalid_argument("tuple dimension must be at least 1");
  Tuple t(entries.size());
  t.entries_ = std::move(entries);
  return t;
}

bool Tuple::is_zero() const {
  for (const Int& e : entries_)
    if (e != 0) return false;
  return true;
}

Tuple Tuple::scaled(const Int& k) const {
  Tuple t(*this);
  for (Int& e : t.entries_) e *= k;
  return t;
}

Tuple& Tuple::operator+=(const Tuple& o) {
  if (o.dim() != dim()) throw std::invalid_argument("tuple dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Tuple& Tuple::operator-=(const Tuple& o) {
  if (o.dim() != dim()) throw std::invalid_argument("tuple dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Tuple operator-(const Tuple& a) {
  Tuple t(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) t[i] = -a[i];
  return t;
}

}  // namespace datavec
