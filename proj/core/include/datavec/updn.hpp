#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "datavec/expressibility.hpp"
#include "datavec/interner.hpp"
#include "datavec/reversibility.hpp"
#include "datavec/rng.hpp"
#include "datavec/vector.hpp"

namespace datavec {

// One transition of an unordered-data net: per place, the multiset of
// variables consumed (in) and produced (out). Variables are data values from
// the net's own variable table; a firing binds them injectively to data.
struct Transition {
  std::string name;
  std::map<std::size_t, std::map<DataValue, Int>> in;   // place -> var -> multiplicity > 0
  std::map<std::size_t, std::map<DataValue, Int>> out;  // place -> var -> multiplicity > 0
};

// An unordered-data net. A marking is a DataVector of dimension |places|
// with nonnegative entries: coordinate p of the tuple at datum a counts the
// tokens carrying value a in place p.
struct Net {
  std::vector<std::string> places;
  std::vector<Transition> transitions;
  std::vector<std::string> variable_names;  // variable DataValue{i} -> name

  std::optional<std::size_t> place_index(std::string_view name) const;
};

// Text format:
//   places p q;
//   trans t { in p: x, y; out q: x; }
// Clauses accumulate; listing a variable twice raises its multiplicity.
Net parse_updn(std::string_view text);

// Text format, every place optional and at most once:
//   p: {a: 2, b: 1}; q: {};
DataVector parse_marking(const Net& net, std::string_view text, Interner& interner);
std::string format_marking(const Net& net, const DataVector& marking, const Interner& interner);

// Dimension matches the net and every entry is nonnegative.
bool is_marking(const Net& net, const DataVector& m);

// Set of variables a transition mentions, and its net token effect per
// variable (out minus in) as a data vector over the variable table.
std::set<DataValue> transition_variables(const Transition& t);
DataVector displacement(const Net& net, const Transition& t);

// A mode must bind every variable of the transition (else invalid_argument);
// enabled additionally requires the consumed tokens to be present.
bool enabled(const Net& net, const DataVector& marking, const Transition& t,
             const FiniteInjection& mode);
DataVector fire(const Net& net, const DataVector& marking, const Transition& t,
                const FiniteInjection& mode);

// Whether `to - from` is a sum of pushforwards of transition displacements:
// necessary for `to` to be reachable from `from`, whatever the path.
ExpressibilityResult state_equation(const Net& net, const DataVector& from, const DataVector& to,
                                    bool want_witness = false);

// Reversibility of the displacement set; its certificate unlocks the
// subgroup-membership route below, which decides the same question.
ReversibilityReport effects_reversible(const Net& net);
FastResult state_equation_fast(const Net& net, const DataVector& from, const DataVector& to,
                               const ReversibleSetCertificate& cert, bool want_witness = false);

// Deterministic seeded walk: at each step, all (transition, mode) pairs that
// are enabled are enumerated in a fixed order (transitions in order, modes
// lexicographically over marking values then fresh ones) and one is drawn
// uniformly. Stops early when nothing is enabled. Returns the markings
// visited, starting with `start`.
std::vector<DataVector> random_walk(const Net& net, const DataVector& start, std::size_t steps,
                                    Rng& rng);

struct NetShape {
  std::size_t max_places = 3;
  std::size_t max_transitions = 3;
  std::size_t max_transition_vars = 3;  // distinct variables per transition
  std::size_t max_flow_vars = 2;        // multiset size per in/out clause
};

Net random_net(const NetShape& shape, Rng& rng);

// Random marking over `value_count` data values with up to `max_per_place`
// tokens of each value in each place.
DataVector random_marking(const Net& net, std::size_t value_count, std::int64_t max_per_place,
                          Rng& rng);

}  // namespace datavec
