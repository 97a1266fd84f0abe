#pragma once

#include <compare>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace datavec {

// A data value: an opaque id drawn from a countably infinite domain.
// The id order is the total order used everywhere ties must be broken.
struct DataValue {
  std::uint64_t id = 0;
  auto operator<=>(const DataValue&) const = default;
};

// Maps display names to data values. Ids are handed out by a counter, so
// interning the same name twice yields the same id and ids are stable within
// a session. Safe for concurrent interning: ids never move once assigned.
class Interner {
 public:
  DataValue intern(std::string_view name);
  std::optional<DataValue> find(std::string_view name) const;

  // Display name for an id: the interned spelling, or "#<id>" for values
  // (e.g. fresh ones) that were never interned.
  std::string name(DataValue v) const;

  std::uint64_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::uint64_t> by_name_;
  std::vector<std::string> names_;
};

// The `count` smallest ids not present in `used`, ascending. Fresh values are
// a function of the instance at hand, independent of any interner, so results
// are deterministic and testable.
std::vector<DataValue> fresh_values(const std::set<DataValue>& used, std::size_t count);

}  // namespace datavec
