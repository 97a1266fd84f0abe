#include "datavec/vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace datavec {

FiniteInjection FiniteInjection::from_map(std::map<DataValue, DataValue> map) {
  std::set<DataValue> seen;
  for (const auto& [a, b] : map) {
    if (!seen.insert(b).second) throw std::invalid_argument("finite injection: duplicate image");
  }
  FiniteInjection f;
  f.map_ = std::move(map);
  return f;
}

FiniteInjection FiniteInjection::identity_on(const std::set<DataValue>& dom) {
  FiniteInjection f;
  for (DataValue a : dom) f.map_.emplace(a, a);
  return f;
}

FiniteInjection FiniteInjection::swap_of(DataValue a, DataValue b) {
  FiniteInjection f;
  f.map_.emplace(a, b);
  if (!(a == b)) f.map_.emplace(b, a);
  return f;
}

FiniteInjection FiniteInjection::rotation_of(const std::set<DataValue>& s, std::size_t i) {
  FiniteInjection f;
  if (s.empty()) return f;
  std::vector<DataValue> order(s.begin(), s.end());
  const std::size_t n = order.size();
  const std::size_t shift = i % n;
  for (std::size_t k = 0; k < n; ++k) f.map_.emplace(order[k], order[(k + shift) % n]);
  return f;
}

DataValue FiniteInjection::apply(DataValue a) const {
  auto it = map_.find(a);
  if (it == map_.end()) throw std::invalid_argument("finite injection: value outside domain");
  return it->second;
}

DataValue FiniteInjection::apply_or_identity(DataValue a) const {
  auto it = map_.find(a);
  return it == map_.end() ? a : it->second;
}

std::set<DataValue> FiniteInjection::domain() const {
  std::set<DataValue> d;
  for (const auto& [a, b] : map_) d.insert(a);
  return d;
}

std::set<DataValue> FiniteInjection::image() const {
  std::set<DataValue> im;
  for (const auto& [a, b] : map_) im.insert(b);
  return im;
}

bool FiniteInjection::is_permutation() const { return domain() == image(); }

FiniteInjection FiniteInjection::restricted_to(const std::set<DataValue>& dom) const {
  FiniteInjection f;
  for (const auto& [a, b] : map_)
    if (dom.count(a)) f.map_.emplace(a, b);
  return f;
}

FiniteInjection compose(const FiniteInjection& inner, const FiniteInjection& outer) {
  if (!outer.is_permutation())
    throw std::invalid_argument("compose: outer injection must permute its domain");
  std::map<DataValue, DataValue> m;
  for (const auto& [a, b] : inner.map()) m.emplace(a, outer.apply_or_identity(b));
  return FiniteInjection::from_map(std::move(m));
}

std::size_t DataVector::throw_dim() {
  throw std::invalid_argument("data vector dimension must be at least 1");
}

DataVector DataVector::from_entries(std::size_t dim, std::map<DataValue, Tuple> entries) {
  DataVector v(dim);
  for (auto& [a, t] : entries) {
    if (t.dim() != dim) throw std::invalid_argument("data vector entry dimension mismatch");
    if (!t.is_zero()) v.entries_.emplace(a, std::move(t));
  }
  return v;
}

std::set<DataValue> DataVector::support() const {
  std::set<DataValue> s;
  for (const auto& [a, t] : entries_) s.insert(a);
  return s;
}

Tuple DataVector::value(DataValue a) const {
  auto it = entries_.find(a);
  return it == entries_.end() ? Tuple(dim_) : it->second;
}

Tuple DataVector::weight() const {
  Tuple w(dim_);
  for (const auto& [a, t] : entries_) w += t;
  return w;
}

void DataVector::set(DataValue a, Tuple t) {
  if (t.is_zero())
    entries_.erase(a);
  else
    entries_.insert_or_assign(a, std::move(t));
}

DataVector& DataVector::operator+=(const DataVector& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("data vector dimension mismatch");
  for (const auto& [a, t] : o.entries_) {
    auto it = entries_.find(a);
    if (it == entries_.end()) {
      entries_.emplace(a, t);
    } else {
      it->second += t;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }
  return *this;
}

DataVector& DataVector::operator-=(const DataVector& o) { return *this += -o; }

DataVector operator-(const DataVector& a) {
  DataVector r(a.dim());
  for (const auto& [x, t] : a.entries()) r += lift(-t, x);
  return r;
}

DataVector apply_injection(const DataVector& v, const FiniteInjection& pi) {
  DataVector r(v.dim());
  for (const auto& [a, t] : v.entries_) {
    auto it = pi.map().find(a);
    if (it == pi.map().end())
      throw std::invalid_argument("apply_injection: domain does not cover the support");
    r.entries_.emplace(it->second, t);
  }
  return r;
}

DataVector rotate(const DataVector& v, const std::set<DataValue>& s, std::size_t i) {
  for (const auto& [a, t] : v.entries())
    if (!s.count(a)) throw std::invalid_argument("rotate: support must lie within the rotated set");
  if (s.empty()) return v;
  return apply_injection(v, FiniteInjection::rotation_of(s, i).restricted_to(v.support()));
}

DataVector equalize(const DataVector& v, const std::set<DataValue>& s) {
  DataVector sum(v.dim());
  for (std::size_t i = 0; i < s.size(); ++i) sum += rotate(v, s, i);
  if (s.empty()) sum = v;  // empty S forces an empty v; the sum is v itself
  return sum;
}

DataVector lift(const Tuple& g, DataValue alpha) {
  DataVector r(g.dim());
  if (!g.is_zero()) {
    std::map<DataValue, Tuple> m;
    m.emplace(alpha, g);
    r = DataVector::from_entries(g.dim(), std::move(m));
  }
  return r;
}

}  // namespace datavec
