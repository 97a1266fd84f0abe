#include "datavec/interner.hpp"

namespace datavec {

DataValue Interner::intern(std::string_view name) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = by_name_.find(std::string(name));
  if (it != by_name_.end()) return DataValue{it->second};
  const std::uint64_t id = names_.size();
  names_.emplace_back(name);
  by_name_.emplace(std::string(name), id);
  return DataValue{id};
}

std::optional<DataValue> Interner::find(std::string_view name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return DataValue{it->second};
}

std::string Interner::name(DataValue v) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (v.id < names_.size()) return names_[v.id];
  return "#" + std::to_string(v.id);
}

std::uint64_t Interner::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return names_.size();
}

std::vector<DataValue> fresh_values(const std::set<DataValue>& used, std::size_t count) {
  std::vector<DataValue> out;
  out.reserve(count);
  std::uint64_t candidate = 0;
  auto it = used.begin();
  while (out.size() < count) {
    while (it != used.end() && it->id < candidate) ++it;
    if (it != used.end() && it->id == candidate) {
      ++it;
    } else {
      out.push_back(DataValue{candidate});
    }
    ++candidate;
  }
  return out;
}

}  // namespace datavec
