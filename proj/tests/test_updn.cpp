#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "datavec/errors.hpp"
#include "datavec/interner.hpp"
#include "datavec/numbers.hpp"
#include "datavec/rng.hpp"
#include "datavec/tuple.hpp"
#include "datavec/updn.hpp"
#include "datavec/vector.hpp"
#include "doctest.h"

using namespace datavec;

namespace {

// Moves one token from p to q, preserving its datum.
const char* kMover = "places p q; trans move { in p: x; out q: x; }";

// kMover plus the reverse move, so the displacement set is reversible.
const char* kShuttle =
    "places p q;"
    "trans fwd { in p: x; out q: x; }"
    "trans back { in q: x; out p: x; }";

DataVector marking_of(const Net& net, const char* text, Interner& interner) {
  return parse_marking(net, text, interner);
}

}  // namespace

TEST_CASE("parse_updn reads places, transitions, and variables") {
  const Net net = parse_updn("places p q;"
                             "trans pair { in p: x, y; out q: x; out q: y; }"
                             "trans dup  { in p: x, x; out q: x; }");
  CHECK(net.places == std::vector<std::string>{"p", "q"});
  REQUIRE(net.transitions.size() == 2);
  CHECK(net.place_index("p") == 0);
  CHECK(net.place_index("q") == 1);
  CHECK(!net.place_index("r").has_value());

  const Transition& pair = net.transitions[0];
  CHECK(pair.name == "pair");
  CHECK(transition_variables(pair).size() == 2);
  // Clauses accumulate: both "out q" clauses land in one per-place map.
  REQUIRE(pair.out.count(1) == 1);
  CHECK(pair.out.at(1).size() == 2);

  // Listing a variable twice raises its multiplicity.
  const Transition& dup = net.transitions[1];
  REQUIRE(dup.in.count(0) == 1);
  REQUIRE(dup.in.at(0).size() == 1);
  CHECK(dup.in.at(0).begin()->second == Int(2));
}

TEST_CASE("parse_updn rejects malformed nets with positions") {
  CHECK_THROWS_AS(parse_updn("places p p;"), ParseError);
  CHECK_THROWS_AS(parse_updn("places;"), ParseError);
  CHECK_THROWS_AS(parse_updn("places p; trans t { in r: x; }"), ParseError);
  CHECK_THROWS_AS(parse_updn("places p; trans t { in p: x; } trans t { in p: x; }"),
                  ParseError);
  CHECK_THROWS_AS(parse_updn("places p; trans t { sideways p: x; }"), ParseError);
  try {
    parse_updn("places p q;\ntrans t { in r: x; }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("markings parse, print, and validate") {
  Interner interner;
  const Net net = parse_updn(kMover);
  const DataVector m = marking_of(net, "p: {a: 2, b: 1}; q: {};", interner);
  CHECK(is_marking(net, m));
  CHECK(m.dim() == 2);
  const DataValue a = *interner.find("a");
  const DataValue b = *interner.find("b");
  CHECK(m.value(a)[0] == Int(2));
  CHECK(m.value(a)[1] == Int(0));
  CHECK(m.value(b)[0] == Int(1));

  // Unlisted places are empty; the same text round-trips through format.
  const DataVector again = parse_marking(net, format_marking(net, m, interner), interner);
  CHECK(again == m);

  CHECK_THROWS_AS(parse_marking(net, "r: {a: 1};", interner), ParseError);
  CHECK_THROWS_AS(parse_marking(net, "p: {a: 1}; p: {b: 1};", interner), ParseError);
  CHECK_THROWS_AS(parse_marking(net, "p: {a: -1};", interner), ParseError);

  // Negative entries disqualify a vector from being a marking.
  std::map<DataValue, Tuple> neg;
  neg.emplace(a, Tuple::of({Int(-1), Int(0)}));
  CHECK(!is_marking(net, DataVector::from_entries(2, std::move(neg))));
  CHECK(!is_marking(net, DataVector(3)));
}

TEST_CASE("displacement captures the per-variable token effect") {
  const Net net = parse_updn(kMover);
  const DataVector d = displacement(net, net.transitions[0]);
  CHECK(d.dim() == 2);
  // Variable x is the net-local value 0: one token leaves p, one enters q.
  const Tuple& t = d.value(DataValue{0});
  CHECK(t[0] == Int(-1));
  CHECK(t[1] == Int(1));

  // A transition that only shuffles within a place has zero displacement.
  const Net still = parse_updn("places p; trans swap { in p: x; out p: x; }");
  CHECK(displacement(still, still.transitions[0]).empty());
}

TEST_CASE("enabled and fire follow modes injectively") {
  Interner interner;
  const Net net = parse_updn(kMover);
  const DataVector m = marking_of(net, "p: {a: 1};", interner);
  const DataValue a = *interner.find("a");
  const DataValue b = interner.intern("b");
  const DataValue x{0};

  const FiniteInjection to_a = FiniteInjection::from_map({{x, a}});
  const FiniteInjection to_b = FiniteInjection::from_map({{x, b}});
  CHECK(enabled(net, m, net.transitions[0], to_a));
  CHECK(!enabled(net, m, net.transitions[0], to_b));

  const DataVector after = fire(net, m, net.transitions[0], to_a);
  CHECK(after == marking_of(net, "q: {a: 1};", interner));

  // Modes must bind every variable; firing a disabled step is an error.
  CHECK_THROWS_AS(enabled(net, m, net.transitions[0], FiniteInjection::from_map({})),
                  std::invalid_argument);
  CHECK_THROWS_AS(fire(net, m, net.transitions[0], to_b), std::invalid_argument);
}

TEST_CASE("a transition needing two tokens of one datum waits for them") {
  Interner interner;
  const Net net = parse_updn("places p q; trans two { in p: x, x; out q: x; }");
  const DataValue x{0};
  const DataVector one = marking_of(net, "p: {a: 1};", interner);
  const DataVector two = marking_of(net, "p: {a: 2};", interner);
  const DataValue a = *interner.find("a");
  const FiniteInjection mode = FiniteInjection::from_map({{x, a}});
  CHECK(!enabled(net, one, net.transitions[0], mode));
  CHECK(enabled(net, two, net.transitions[0], mode));
  CHECK(fire(net, two, net.transitions[0], mode) == marking_of(net, "q: {a: 1};", interner));
}

TEST_CASE("modes binding distinct variables must pick distinct data") {
  Interner interner;
  const Net net = parse_updn("places p q; trans pair { in p: x, y; out q: x; }");
  const DataVector m = marking_of(net, "p: {a: 1, b: 1};", interner);
  const DataValue a = *interner.find("a");
  const DataValue b = *interner.find("b");
  // Injections cannot send x and y to the same datum.
  CHECK_THROWS_AS(FiniteInjection::from_map({{DataValue{0}, a}, {DataValue{1}, a}}),
                  std::invalid_argument);
  const FiniteInjection ok = FiniteInjection::from_map({{DataValue{0}, a}, {DataValue{1}, b}});
  CHECK(enabled(net, m, net.transitions[0], ok));
  CHECK(fire(net, m, net.transitions[0], ok) == marking_of(net, "q: {a: 1};", interner));
}

TEST_CASE("random walks stay inside valid markings and reproduce by seed") {
  Interner interner;
  const Net net = parse_updn(kShuttle);
  const DataVector start = marking_of(net, "p: {a: 2, b: 1};", interner);

  Rng rng1(11), rng2(11), rng3(12);
  const std::vector<DataVector> w1 = random_walk(net, start, 10, rng1);
  const std::vector<DataVector> w2 = random_walk(net, start, 10, rng2);
  REQUIRE(!w1.empty());
  CHECK(w1.front() == start);
  CHECK(w1.size() <= 11);
  CHECK(w1 == w2);
  for (const DataVector& m : w1) CHECK(is_marking(net, m));

  // Token count is conserved by the shuttle, whichever way it moves.
  for (const DataVector& m : w1) CHECK(m.weight()[0] + m.weight()[1] == Int(3));

  // A net with nothing enabled stops immediately.
  const Net starved = parse_updn("places p q; trans t { in p: x; out q: x; }");
  const DataVector empty_marking(2);
  Rng rng4(1);
  const std::vector<DataVector> still = random_walk(starved, empty_marking, 5, rng4);
  CHECK(still == std::vector<DataVector>{empty_marking});
  (void)rng3;
}

TEST_CASE("walk steps can bind fresh data values") {
  Interner interner;
  // Produces a token with an arbitrary datum out of thin air.
  const Net net = parse_updn("places p; trans spawn { out p: x; }");
  const DataVector start(1);
  Rng rng(3);
  const std::vector<DataVector> walk = random_walk(net, start, 4, rng);
  REQUIRE(walk.size() == 5);
  CHECK(walk.back().weight()[0] == Int(4));
}

TEST_CASE("the state equation accepts every prefix-to-suffix pair of a walk") {
  Interner interner;
  const Net net = parse_updn(kShuttle);
  const DataVector start = marking_of(net, "p: {a: 1, b: 2}; q: {c: 1};", interner);
  Rng rng(2024);
  const std::vector<DataVector> walk = random_walk(net, start, 6, rng);
  for (const DataVector& m : walk) {
    const ExpressibilityResult r = state_equation(net, walk.front(), m, true);
    CHECK(r.yes);
    if (r.witness) {
      // The witness really sums to the marking difference.
      DataVector sum(net.places.size());
      for (const WitnessTerm& term : r.witness->terms) {
        const Transition& t = net.transitions[term.base];
        sum += apply_injection(displacement(net, t), term.injection);
      }
      CHECK(sum == m - walk.front());
    }
  }
}

TEST_CASE("the state equation rejects token creation the net cannot do") {
  Interner interner;
  const Net net = parse_updn(kMover);
  const DataVector empty_marking(2);
  const DataVector goal = marking_of(net, "p: {a: 1};", interner);
  CHECK(!state_equation(net, empty_marking, goal).yes);
  // Moving is fine, duplicating is not.
  const DataVector one = marking_of(net, "p: {a: 1};", interner);
  const DataVector dup = marking_of(net, "p: {a: 1}; q: {a: 1};", interner);
  CHECK(!state_equation(net, one, dup).yes);
  // Moving the same datum across is exactly one firing of the mover.
  CHECK(state_equation(net, one, marking_of(net, "q: {a: 1};", interner)).yes);
}

TEST_CASE("state equation inputs must be markings of the net") {
  const Net net = parse_updn(kMover);
  CHECK_THROWS_AS(state_equation(net, DataVector(3), DataVector(2)), std::invalid_argument);
}

TEST_CASE("reversible effect sets unlock the fast route with equal answers") {
  Interner interner;
  const Net net = parse_updn(kShuttle);
  const ReversibilityReport rep = effects_reversible(net);
  REQUIRE(rep.reversible);

  // The one-way mover is not reversible.
  CHECK(!effects_reversible(parse_updn(kMover)).reversible);

  Rng rng(909);
  for (int it = 0; it < 30; ++it) {
    const DataVector from = random_marking(net, 3, 2, rng);
    const DataVector to = random_marking(net, 3, 2, rng);
    const ExpressibilityResult general = state_equation(net, from, to);
    const FastResult fast = state_equation_fast(net, from, to, *rep.certificate, true);
    CHECK(fast.yes == general.yes);
    if (fast.yes) {
      REQUIRE(fast.witness.has_value());
      DataVector sum(net.places.size());
      for (const WitnessTerm& term : fast.witness->terms)
        sum += apply_injection(displacement(net, net.transitions[term.base]), term.injection);
      CHECK(sum == to - from);
    }
  }
}

TEST_CASE("random nets and markings respect the requested shape") {
  Rng rng(606);
  NetShape shape;
  shape.max_places = 3;
  shape.max_transitions = 3;
  shape.max_transition_vars = 2;
  shape.max_flow_vars = 2;
  for (int it = 0; it < 20; ++it) {
    const Net net = random_net(shape, rng);
    CHECK(!net.places.empty());
    CHECK(net.places.size() <= 3);
    CHECK(!net.transitions.empty());
    CHECK(net.transitions.size() <= 3);
    for (const Transition& t : net.transitions) {
      CHECK(!transition_variables(t).empty());
      CHECK(transition_variables(t).size() <= 2);
      for (const auto& [p, flow] : t.in) {
        CHECK(p < net.places.size());
        Int total(0);
        for (const auto& [x, k] : flow) {
          CHECK(k > Int(0));
          total += k;
        }
        CHECK(total <= Int(2));
      }
    }
    const DataVector m = random_marking(net, 2, 3, rng);
    CHECK(is_marking(net, m));
  }
}
