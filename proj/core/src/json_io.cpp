#include "datavec/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "datavec/errors.hpp"
#include "json.hpp"

namespace datavec {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& message) { throw ParseError(1, 1, message); }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, e.byte, std::string("invalid JSON: ") + e.what());
  }
}

Int int_from_json(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_float()) {
    const double d = j.get<double>();
    // Doubles are exact integers only up to 2^53; past that the spelling has
    // already lost digits, so it is rejected rather than silently rounded.
    if (std::trunc(d) != d || std::abs(d) > 9007199254740992.0)
      bad(std::string(what) + ": expected an integer");
    return Int(static_cast<std::int64_t>(d));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      return Int(s);
    } catch (const std::exception&) {
      bad(std::string(what) + ": '" + s + "' is not a decimal integer");
    }
  }
  bad(std::string(what) + ": expected an integer (number or decimal string)");
}

Json int_to_json(const Int& v) {
  if (const auto small = to_int64(v)) return Json(*small);
  return Json(int_to_string(v));
}

std::size_t dim_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d")) bad("missing dimension field \"d\"");
  const Int d = int_from_json(j.at("d"), "\"d\"");
  const auto d64 = to_int64(d);
  if (!d64 || *d64 < 1 || *d64 > 1000000) bad("\"d\" must be a small positive integer");
  return static_cast<std::size_t>(*d64);
}

Tuple tuple_from_json(const Json& j, std::size_t dim, const char* what) {
  if (!j.is_array() || j.size() != dim)
    bad(std::string(what) + ": expected an array of " + std::to_string(dim) + " integers");
  std::vector<Int> entries;
  entries.reserve(dim);
  for (const Json& e : j) entries.push_back(int_from_json(e, what));
  return Tuple::of(std::move(entries));
}

Json tuple_to_json(const Tuple& t) {
  Json a = Json::array();
  for (std::size_t c = 0; c < t.dim(); ++c) a.push_back(int_to_json(t[c]));
  return a;
}

DataVector entries_from_json(const Json& j, std::size_t dim, Interner& interner) {
  if (!j.is_object()) bad("expected an object mapping data values to tuples");
  std::map<DataValue, Tuple> entries;
  for (const auto& [name, value] : j.items()) {
    const DataValue v = interner.intern(name);
    if (!entries.emplace(v, tuple_from_json(value, dim, name.c_str())).second)
      bad("data value '" + name + "' listed twice");
  }
  return DataVector::from_entries(dim, std::move(entries));
}

Json entries_to_json(const DataVector& v, const Interner& interner) {
  Json obj = Json::object();
  for (const auto& [a, t] : v.entries()) obj[interner.name(a)] = tuple_to_json(t);
  return obj;
}

}  // namespace

DataVector parse_vector_json(std::string_view text, Interner& interner) {
  const Json j = parse_json(text);
  const std::size_t dim = dim_from_json(j);
  if (!j.contains("entries")) bad("missing \"entries\"");
  return entries_from_json(j.at("entries"), dim, interner);
}

std::string format_vector_json(const DataVector& v, const Interner& interner) {
  Json j = Json::object();
  j["d"] = v.dim();
  j["entries"] = entries_to_json(v, interner);
  return j.dump();
}

ExpressibilityInstance parse_instance_json(std::string_view text, Interner& interner) {
  const Json j = parse_json(text);
  const std::size_t dim = dim_from_json(j);
  if (!j.contains("V") || !j.at("V").is_array()) bad("missing member list \"V\"");
  if (!j.contains("x")) bad("missing target \"x\"");
  std::vector<DataVector> members;
  for (const Json& m : j.at("V")) members.push_back(entries_from_json(m, dim, interner));
  DataVector target = entries_from_json(j.at("x"), dim, interner);
  return ExpressibilityInstance::make(dim, std::move(members), std::move(target));
}

std::string format_instance_json(const ExpressibilityInstance& inst, const Interner& interner) {
  Json j = Json::object();
  j["d"] = inst.dim();
  Json members = Json::array();
  for (const DataVector& v : inst.members()) members.push_back(entries_to_json(v, interner));
  j["V"] = std::move(members);
  j["x"] = entries_to_json(inst.target(), interner);
  return j.dump();
}

Histogram parse_histogram_json(std::string_view text, Interner& interner) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array())
    bad("missing row list \"rows\"");
  std::set<DataValue> rows;
  for (const Json& r : j.at("rows")) {
    if (!r.is_string()) bad("row names are strings");
    rows.insert(interner.intern(r.get<std::string>()));
  }
  std::map<std::pair<DataValue, DataValue>, Int> cells;
  if (j.contains("entries")) {
    if (!j.at("entries").is_array()) bad("\"entries\" must be an array of [row, col, count]");
    for (const Json& cell : j.at("entries")) {
      if (!cell.is_array() || cell.size() != 3 || !cell[0].is_string() || !cell[1].is_string())
        bad("histogram cells are [row, col, count] triples");
      const DataValue row = interner.intern(cell[0].get<std::string>());
      const DataValue col = interner.intern(cell[1].get<std::string>());
      cells[{row, col}] += int_from_json(cell[2], "cell count");
    }
  }
  try {
    return Histogram::make(std::move(rows), std::move(cells));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

std::string format_histogram_json(const Histogram& h, const Interner& interner) {
  Json j = Json::object();
  Json rows = Json::array();
  for (DataValue r : h.rows()) rows.push_back(interner.name(r));
  j["rows"] = std::move(rows);
  Json cells = Json::array();
  for (const auto& [rc, count] : h.cells()) {
    Json cell = Json::array();
    cell.push_back(interner.name(rc.first));
    cell.push_back(interner.name(rc.second));
    cell.push_back(int_to_json(count));
    cells.push_back(std::move(cell));
  }
  j["entries"] = std::move(cells);
  return j.dump();
}

PermutationSumWitness parse_witness_json(std::string_view text, Interner& interner) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    bad("missing term list \"terms\"");
  PermutationSumWitness w;
  for (const Json& term : j.at("terms")) {
    if (!term.is_object() || !term.contains("base") || !term.contains("map"))
      bad("witness terms carry \"base\" and \"map\"");
    const Int base = int_from_json(term.at("base"), "\"base\"");
    const auto base64 = to_int64(base);
    if (!base64 || *base64 < 0) bad("\"base\" must be a nonnegative member index");
    if (!term.at("map").is_object()) bad("\"map\" must map data values to data values");
    std::map<DataValue, DataValue> m;
    for (const auto& [from, to] : term.at("map").items()) {
      if (!to.is_string()) bad("\"map\" images are data value strings");
      if (!m.emplace(interner.intern(from), interner.intern(to.get<std::string>())).second)
        bad("'" + from + "' mapped twice");
    }
    try {
      w.terms.push_back(
          WitnessTerm{static_cast<std::size_t>(*base64), FiniteInjection::from_map(std::move(m))});
    } catch (const std::invalid_argument& e) {
      bad(e.what());
    }
  }
  return w;
}

std::string format_witness_json(const PermutationSumWitness& w, const Interner& interner) {
  Json j = Json::object();
  Json terms = Json::array();
  for (const WitnessTerm& t : w.terms) {
    Json term = Json::object();
    term["base"] = t.base;
    Json m = Json::object();
    for (const auto& [from, to] : t.injection.map()) m[interner.name(from)] = interner.name(to);
    term["map"] = std::move(m);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

}  // namespace datavec
