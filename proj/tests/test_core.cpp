#include <set>
#include <stdexcept>
#include <vector>

#include "datavec/interner.hpp"
#include "datavec/numbers.hpp"
#include "datavec/rng.hpp"
#include "datavec/tuple.hpp"
#include "datavec/vector.hpp"
#include "doctest.h"

using namespace datavec;

namespace {

DataValue dv(std::uint64_t id) { return DataValue{id}; }

Tuple t1(long long a) { return Tuple::of({Int(a)}); }
Tuple t2(long long a, long long b) { return Tuple::of({Int(a), Int(b)}); }

DataVector vec1(std::initializer_list<std::pair<std::uint64_t, long long>> entries) {
  std::map<DataValue, Tuple> m;
  for (const auto& [id, val] : entries) m.emplace(dv(id), t1(val));
  return DataVector::from_entries(1, std::move(m));
}

DataVector random_vec(Rng& rng, std::size_t dim, std::size_t max_support) {
  std::map<DataValue, Tuple> m;
  const std::size_t k = rng.below(max_support + 1);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Int> entries;
    for (std::size_t c = 0; c < dim; ++c) entries.push_back(Int(rng.range(-3, 3)));
    m.insert_or_assign(dv(rng.below(8)), Tuple::of(std::move(entries)));
  }
  return DataVector::from_entries(dim, std::move(m));
}

}  // namespace

TEST_CASE("interner hands out stable ids and readable names") {
  Interner in;
  const DataValue a = in.intern("alpha");
  const DataValue b = in.intern("beta");
  CHECK(a != b);
  CHECK(in.intern("alpha") == a);
  CHECK(in.name(a) == "alpha");
  CHECK(in.find("beta") == b);
  CHECK(!in.find("gamma").has_value());
  CHECK(in.name(dv(9999)) == "#9999");
}

TEST_CASE("fresh values are the smallest unused ids, ascending") {
  const std::set<DataValue> used{dv(0), dv(2), dv(3)};
  const auto fresh = fresh_values(used, 3);
  REQUIRE(fresh.size() == 3);
  CHECK(fresh[0] == dv(1));
  CHECK(fresh[1] == dv(4));
  CHECK(fresh[2] == dv(5));
  CHECK(fresh_values({}, 2) == std::vector<DataValue>{dv(0), dv(1)});
}

TEST_CASE("tuple arithmetic") {
  CHECK(Tuple(3).is_zero());
  CHECK(t2(1, 2) + t2(3, -2) == t2(4, 0));
  CHECK(t2(1, 2) - t2(1, 2) == Tuple(2));
  CHECK(-t2(1, -2) == t2(-1, 2));
  CHECK(t2(1, -2).scaled(Int(-3)) == t2(-3, 6));
  CHECK_THROWS_AS(Tuple::of({}), std::invalid_argument);
}

TEST_CASE("finite injections reject duplicate images and apply pointwise") {
  CHECK_THROWS_AS(FiniteInjection::from_map({{dv(0), dv(5)}, {dv(1), dv(5)}}),
                  std::invalid_argument);
  const auto pi = FiniteInjection::from_map({{dv(0), dv(5)}, {dv(1), dv(0)}});
  CHECK(pi.apply(dv(0)) == dv(5));
  CHECK(pi.apply(dv(1)) == dv(0));
  CHECK_THROWS_AS(pi.apply(dv(2)), std::invalid_argument);
  CHECK(pi.apply_or_identity(dv(2)) == dv(2));
  CHECK(!pi.is_permutation());
  CHECK(FiniteInjection::swap_of(dv(1), dv(2)).is_permutation());
  CHECK(FiniteInjection::identity_on({dv(1), dv(2)}).apply(dv(2)) == dv(2));
}

TEST_CASE("rotation of a set steps each value to the next id, wrapping") {
  const std::set<DataValue> s{dv(1), dv(4), dv(9)};
  const auto rot = FiniteInjection::rotation_of(s, 1);
  CHECK(rot.apply(dv(1)) == dv(4));
  CHECK(rot.apply(dv(4)) == dv(9));
  CHECK(rot.apply(dv(9)) == dv(1));
  CHECK(FiniteInjection::rotation_of(s, 3) == FiniteInjection::identity_on(s));
  CHECK(FiniteInjection::rotation_of(s, 4) == rot);
}

TEST_CASE("composition applies the outer permutation after the inner map") {
  const auto inner = FiniteInjection::from_map({{dv(0), dv(1)}});
  const auto outer = FiniteInjection::swap_of(dv(1), dv(2));
  const auto both = compose(inner, outer);
  CHECK(both.apply(dv(0)) == dv(2));
  const auto not_perm = FiniteInjection::from_map({{dv(1), dv(2)}});
  CHECK_THROWS_AS(compose(inner, not_perm), std::invalid_argument);
}

TEST_CASE("vector addition cancels to sparse canonical form") {
  Interner in;
  const DataValue red = in.intern("red");
  const DataValue blue = in.intern("blue");
  const DataValue yellow = in.intern("yellow");
  std::map<DataValue, Tuple> a{{red, t1(1)}, {blue, t1(-1)}, {yellow, t1(2)}};
  std::map<DataValue, Tuple> b{{red, t1(-1)}, {blue, t1(1)}};
  const auto sum = DataVector::from_entries(1, a) + DataVector::from_entries(1, b);
  CHECK(sum == DataVector::from_entries(1, {{yellow, t1(2)}}));
  CHECK(sum.support() == std::set<DataValue>{yellow});

  CHECK(vec1({{0, 1}}) + DataVector(1) == vec1({{0, 1}}));
  CHECK((vec1({{0, 1}}) - vec1({{0, 1}})).empty());
  CHECK_THROWS_AS(vec1({{0, 1}}) + DataVector(2), std::invalid_argument);
}

TEST_CASE("weight sums all entries componentwise") {
  std::map<DataValue, Tuple> m{{dv(0), t2(1, 2)}, {dv(1), t2(3, -2)}};
  CHECK(DataVector::from_entries(2, std::move(m)).weight() == t2(4, 0));
  CHECK(DataVector(2).weight() == Tuple(2));
}

TEST_CASE("pushforward moves values along the injection") {
  Interner in;
  const DataValue red = in.intern("red");
  const DataValue blue = in.intern("blue");
  const DataValue yellow = in.intern("yellow");
  const auto v = DataVector::from_entries(1, {{red, t1(-1)}, {blue, t1(1)}});
  const auto pi = FiniteInjection::from_map({{red, yellow}, {blue, blue}});
  CHECK(apply_injection(v, pi) == DataVector::from_entries(1, {{yellow, t1(-1)}, {blue, t1(1)}}));

  CHECK(apply_injection(v, FiniteInjection::identity_on(v.support())) == v);
  CHECK_THROWS_AS(apply_injection(v, FiniteInjection::from_map({{red, yellow}})),
                  std::invalid_argument);
}

TEST_CASE("pushforward preserves weight and support size on random inputs") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto v = random_vec(rng, 2, 4);
    // A random permutation of the support within a larger set.
    std::set<DataValue> s = v.support();
    s.insert(dv(10 + rng.below(4)));
    const auto pi = FiniteInjection::rotation_of(s, rng.below(5));
    const auto moved = apply_injection(v, pi.restricted_to(v.support()));
    CHECK(moved.weight() == v.weight());
    CHECK(moved.support().size() == v.support().size());
  }
}

TEST_CASE("rotating a two-value set swaps the values") {
  const auto v = vec1({{0, 1}, {1, 2}});
  CHECK(rotate(v, {dv(0), dv(1)}, 1) == vec1({{0, 2}, {1, 1}}));
}

TEST_CASE("rotating by the set size is the identity") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto v = random_vec(rng, 1, 3);
    std::set<DataValue> s = v.support();
    s.insert(dv(8));
    s.insert(dv(9));
    CHECK(rotate(v, s, s.size()) == v);
  }
}

TEST_CASE("rotation moves a singleton to the next value") {
  const auto v = vec1({{0, 1}});
  CHECK(rotate(v, {dv(0), dv(1), dv(2)}, 1) == vec1({{1, 1}}));
  CHECK_THROWS_AS(rotate(v, {dv(1), dv(2)}, 1), std::invalid_argument);
}

TEST_CASE("equalizing spreads the weight over the whole set") {
  CHECK(equalize(vec1({{0, 3}, {1, -1}}), {dv(0), dv(1)}) == vec1({{0, 2}, {1, 2}}));
  CHECK(equalize(vec1({{0, 5}}), {dv(0), dv(1), dv(2)}) ==
        vec1({{0, 5}, {1, 5}, {2, 5}}));
  CHECK(equalize(vec1({{0, 2}, {1, -2}}), {dv(0), dv(1)}).empty());
}

TEST_CASE("equalize matches its defining sum on random inputs") {
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const auto v = random_vec(rng, 2, 3);
    std::set<DataValue> s = v.support();
    s.insert(dv(8));
    const auto e = equalize(v, s);
    DataVector sum(2);
    for (std::size_t k = 0; k < s.size(); ++k) sum += rotate(v, s, k);
    CHECK(e == sum);
    for (DataValue a : s) CHECK(e.value(a) == v.weight());
  }
}

TEST_CASE("lift builds a single-entry vector") {
  CHECK(lift(t2(2, -1), dv(3)) ==
        DataVector::from_entries(2, {{dv(3), t2(2, -1)}}));
  CHECK(lift(Tuple(2), dv(3)).empty());
  CHECK(lift(t1(7), dv(0)) ==
        apply_injection(lift(t1(7), dv(5)), FiniteInjection::from_map({{dv(5), dv(0)}})));
}

TEST_CASE("seeded rng reproduces its stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 20; ++i) {
    CHECK(a.below(100) == b.below(100));
    CHECK(a.range(-5, 5) == b.range(-5, 5));
  }
}
