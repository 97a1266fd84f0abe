#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "datavec/errors.hpp"
#include "datavec/expressibility.hpp"
#include "datavec/interner.hpp"
#include "datavec/numbers.hpp"
#include "datavec/oracle.hpp"
#include "datavec/rng.hpp"
#include "datavec/tuple.hpp"
#include "datavec/vector.hpp"
#include "datavec/witness.hpp"
#include "doctest.h"

using namespace datavec;

namespace {

DataValue dv(std::uint64_t id) { return DataValue{id}; }

DataVector vec1(std::initializer_list<std::pair<std::uint64_t, long long>> entries) {
  std::map<DataValue, Tuple> m;
  for (const auto& [id, val] : entries) m.emplace(dv(id), Tuple::of({Int(val)}));
  return DataVector::from_entries(1, std::move(m));
}

ExpressibilityInstance inst1(std::vector<DataVector> members, DataVector target) {
  return ExpressibilityInstance::make(1, std::move(members), std::move(target));
}

// Independent count of candidate classes: sequences of 1..max_terms member
// picks with injective landings, where two sequences are the same candidate
// when they differ only by reordering picks of the same member or by a
// bijective renaming of the landing values that lie outside the fixed set.
//
// Landings are abstracted to pool slot indices [0, pool_size); slots below
// fresh_begin are the fixed, distinguishable values and the rest are
// interchangeable fresh values. A brute-force enumeration lists every raw
// sequence, canonicalizes it (minimum over same-member block reorderings of
// the first-use renaming of fresh slots), and counts distinct forms.
class ReferenceCounter {
 public:
  ReferenceCounter(std::vector<std::size_t> dom_sizes, std::size_t fresh_begin,
                   std::size_t pool_size, std::size_t max_terms)
      : dom_sizes_(std::move(dom_sizes)),
        fresh_begin_(fresh_begin),
        pool_size_(pool_size),
        max_terms_(max_terms) {}

  std::size_t count() {
    classes_.clear();
    bases_.clear();
    pick_bases(0);
    return classes_.size();
  }

 private:
  void pick_bases(std::size_t min_base) {
    if (!bases_.empty()) {
      images_.assign(bases_.size(), {});
      fill_term(0);
    }
    if (bases_.size() == max_terms_) return;
    for (std::size_t b = min_base; b < dom_sizes_.size(); ++b) {
      bases_.push_back(b);
      pick_bases(b);
      bases_.pop_back();
    }
  }

  void fill_term(std::size_t t) {
    if (t == bases_.size()) {
      record();
      return;
    }
    std::vector<std::size_t>& img = images_[t];
    const std::size_t want = dom_sizes_[bases_[t]];
    const auto step = [&](auto&& self) -> void {
      if (img.size() == want) {
        fill_term(t + 1);
        return;
      }
      for (std::size_t idx = 0; idx < pool_size_; ++idx) {
        if (std::find(img.begin(), img.end(), idx) != img.end()) continue;
        img.push_back(idx);
        self(self);
        img.pop_back();
      }
    };
    step(step);
  }

  std::vector<std::vector<std::size_t>> renamed_first_use(
      const std::vector<std::vector<std::size_t>>& images) const {
    std::map<std::size_t, std::size_t> fresh_names;
    std::vector<std::vector<std::size_t>> out;
    for (const auto& img : images) {
      std::vector<std::size_t> row;
      for (std::size_t idx : img) {
        if (idx < fresh_begin_) {
          row.push_back(idx);
        } else {
          auto [it, inserted] =
              fresh_names.try_emplace(idx, fresh_begin_ + fresh_names.size());
          row.push_back(it->second);
        }
      }
      out.push_back(std::move(row));
    }
    return out;
  }

  void record() {
    // Blocks of equal bases may be reordered freely; take the minimum
    // canonical renaming over every block reordering.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [begin, end)
    for (std::size_t i = 0; i < bases_.size();) {
      std::size_t j = i;
      while (j < bases_.size() && bases_[j] == bases_[i]) ++j;
      blocks.emplace_back(i, j);
      i = j;
    }
    std::vector<std::vector<std::size_t>> best;
    bool have = false;
    std::vector<std::vector<std::size_t>> work = images_;
    const auto consider = [&]() {
      auto named = renamed_first_use(work);
      if (!have || named < best) {
        best = std::move(named);
        have = true;
      }
    };
    const auto permute_block = [&](auto&& self, std::size_t bi) -> void {
      if (bi == blocks.size()) {
        consider();
        return;
      }
      const auto [lo, hi] = blocks[bi];
      std::vector<std::size_t> order(hi - lo);
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end());
      do {
        std::vector<std::vector<std::size_t>> saved(work.begin() + lo, work.begin() + hi);
        for (std::size_t i = 0; i < order.size(); ++i) work[lo + i] = saved[order[i]];
        self(self, bi + 1);
        for (std::size_t i = 0; i < order.size(); ++i) work[lo + i] = saved[i];
      } while (std::next_permutation(order.begin(), order.end()));
    };
    permute_block(permute_block, 0);
    classes_.insert({bases_, std::move(best)});
  }

  std::vector<std::size_t> dom_sizes_;
  std::size_t fresh_begin_;
  std::size_t pool_size_;
  std::size_t max_terms_;

  std::vector<std::size_t> bases_;
  std::vector<std::vector<std::size_t>> images_;
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>>> classes_;
};

// Mirrors the searcher's pool construction for the default (no explicit
// pool) case: fixed slots are target support plus member supports, fresh
// slots number max_terms times the largest active support.
std::size_t reference_count_for(const ExpressibilityInstance& inst, std::size_t max_terms) {
  std::set<DataValue> fixed = inst.target().support();
  std::vector<std::size_t> dom_sizes;
  std::size_t max_support = 0;
  for (const DataVector& v : inst.members()) {
    if (v.empty()) continue;
    const auto s = v.support();
    fixed.insert(s.begin(), s.end());
    dom_sizes.push_back(s.size());
    max_support = std::max(max_support, s.size());
  }
  const std::size_t fresh_begin = fixed.size();
  const std::size_t pool_size = fresh_begin + max_terms * max_support;
  return ReferenceCounter(std::move(dom_sizes), fresh_begin, pool_size, max_terms).count();
}

std::size_t oracle_count(const ExpressibilityInstance& inst, std::size_t max_terms) {
  OracleBudget budget;
  budget.max_terms = max_terms;
  budget.node_cap = 50000000;
  return oracle_count_candidates(inst, budget);
}

}  // namespace

TEST_CASE("a depth-one count is just the landing choices") {
  // One member of support one, target support one: pool is {a, b, f}; the
  // three candidates land on a, on b, or on the one reachable fresh slot.
  const ExpressibilityInstance inst = inst1({vec1({{1, 1}})}, vec1({{2, 1}}));
  CHECK(oracle_count(inst, 1) == 3);
  CHECK(reference_count_for(inst, 1) == 3);
}

TEST_CASE("enumeration counts match the reference on crafted shapes") {
  // One support-two member, two terms.
  const ExpressibilityInstance a = inst1({vec1({{1, 1}, {2, -1}})}, vec1({{10, 1}}));
  CHECK(oracle_count(a, 2) == reference_count_for(a, 2));

  // Support-one member at depth three (deep fresh chains).
  const ExpressibilityInstance b = inst1({vec1({{1, 1}})}, vec1({{1, 2}}));
  CHECK(oracle_count(b, 3) == reference_count_for(b, 3));

  // Two members of different supports, including duplicate vectors.
  const ExpressibilityInstance c =
      inst1({vec1({{1, 1}}), vec1({{1, 1}})}, vec1({{2, 1}}));
  CHECK(oracle_count(c, 2) == reference_count_for(c, 2));

  const ExpressibilityInstance d =
      inst1({vec1({{1, 1}, {2, 1}}), vec1({{3, -1}})}, vec1({{4, 1}}));
  CHECK(oracle_count(d, 2) == reference_count_for(d, 2));

  // Members with empty support are skipped entirely.
  const ExpressibilityInstance e = inst1({DataVector(1), vec1({{1, 1}})}, vec1({{2, 1}}));
  CHECK(oracle_count(e, 2) == reference_count_for(e, 2));
  CHECK(oracle_count(e, 2) == oracle_count(inst1({vec1({{1, 1}})}, vec1({{2, 1}})), 2));
}

TEST_CASE("enumeration counts match the reference on random small instances") {
  Rng rng(31337);
  InstanceShape shape;
  shape.dim = 1;
  shape.member_count = 2;
  shape.max_member_support = 2;
  shape.max_target_support = 1;
  shape.entry_lo = -1;
  shape.entry_hi = 1;
  for (int it = 0; it < 25; ++it) {
    const ExpressibilityInstance inst = random_instance(shape, rng);
    CHECK(oracle_count(inst, 2) == reference_count_for(inst, 2));
  }
}

TEST_CASE("oracle accepts a plain renaming and reports original member indices") {
  // The empty-support member sits at index zero to force index translation.
  const ExpressibilityInstance inst =
      inst1({DataVector(1), vec1({{1, 1}})}, vec1({{2, 1}}));
  const OracleResult r = oracle_decide(inst);
  REQUIRE(r.decision == OracleDecision::Yes);
  REQUIRE(r.witness.has_value());
  REQUIRE(r.witness->terms.size() == 1);
  CHECK(r.witness->terms[0].base == 1);
  CHECK(verify_witness(inst, *r.witness));
}

TEST_CASE("oracle finds multi-term witnesses that need fresh values") {
  const ExpressibilityInstance inst = inst1({vec1({{1, 2}, {2, -1}})}, vec1({{10, 3}}));
  OracleBudget budget;
  budget.max_terms = 3;
  const OracleResult r = oracle_decide(inst, budget);
  REQUIRE(r.decision == OracleDecision::Yes);
  CHECK(r.witness->terms.size() == 3);
  CHECK(verify_witness(inst, *r.witness));
}

TEST_CASE("oracle says no-up-to-budget when weights cannot work") {
  const ExpressibilityInstance inst = inst1({vec1({{1, 2}})}, vec1({{2, 1}}));
  const OracleResult r = oracle_decide(inst);
  CHECK(r.decision == OracleDecision::NoUpToBudget);
  CHECK(!r.witness.has_value());
}

TEST_CASE("the empty target is a yes with the empty witness") {
  const ExpressibilityInstance inst = inst1({vec1({{1, 1}})}, DataVector(1));
  const OracleResult r = oracle_decide(inst);
  REQUIRE(r.decision == OracleDecision::Yes);
  CHECK(r.witness->terms.empty());
}

TEST_CASE("the node cap turns into a BudgetExceeded error") {
  const ExpressibilityInstance inst =
      inst1({vec1({{1, 1}, {2, -1}}), vec1({{3, 1}})}, vec1({{10, 2}, {11, -2}}));
  OracleBudget budget;
  budget.max_terms = 4;
  budget.node_cap = 10;
  CHECK_THROWS_AS(oracle_decide(inst, budget), BudgetExceeded);
}

TEST_CASE("an explicit pool restricts the landing sites") {
  // Members +/- the two-value constant-one vector. Inside the pool {a, b}
  // every pick adds or subtracts one at both values simultaneously, so
  // (a: 2) alone is out of reach; with fresh values it is easy.
  const DataVector v = vec1({{1, 1}, {2, 1}});
  const std::vector<DataVector> members = {v, -v};
  const ExpressibilityInstance inst = inst1(members, vec1({{1, 2}}));

  OracleBudget restricted;
  restricted.max_terms = 4;
  restricted.pool = std::vector<DataValue>{dv(1), dv(2)};
  CHECK(oracle_decide(inst, restricted).decision == OracleDecision::NoUpToBudget);

  OracleBudget open;
  open.max_terms = 4;
  const OracleResult r = oracle_decide(inst, open);
  REQUIRE(r.decision == OracleDecision::Yes);
  CHECK(verify_witness(inst, *r.witness));
}

TEST_CASE("random instances produce the requested shape") {
  Rng rng(5);
  InstanceShape shape;
  shape.dim = 2;
  shape.member_count = 3;
  shape.max_member_support = 3;
  shape.max_target_support = 2;
  shape.entry_lo = -2;
  shape.entry_hi = 2;
  shape.mirrored = true;
  for (int it = 0; it < 30; ++it) {
    const ExpressibilityInstance inst = random_instance(shape, rng);
    CHECK(inst.dim() == 2);
    CHECK(inst.members().size() == 6);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(inst.members()[2 * i + 1] == -inst.members()[2 * i]);
      CHECK(inst.members()[2 * i].support().size() <= 3);
    }
    CHECK(inst.target().support().size() <= 2);
  }
}
