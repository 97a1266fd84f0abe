#include "datavec/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "datavec/errors.hpp"

namespace datavec {

namespace {

// Depth-first enumeration of candidate sums. A candidate is a non-decreasing
// multiset of member indices together with one injective placement of each
// chosen member's support into the pool. Candidates are canonical:
//  * a value outside the instance ("fresh") may only be introduced as the
//    smallest fresh pool slot not yet in use, so every renaming class of
//    placements is visited through exactly one representative naming, and
//  * consecutive terms with the same member index must be non-decreasing
//    under a shape-major key (fresh slots compare equal at shape level,
//    pool position breaks ties), which collapses reorderings of equal terms.
class Searcher {
 public:
  Searcher(const ExpressibilityInstance& inst, const OracleBudget& budget, bool counting)
      : inst_(inst), counting_(counting), max_terms_(budget.max_terms), node_cap_(budget.node_cap) {
    const std::size_t dim = inst.dim();

    std::size_t max_support = 0;
    for (std::size_t j = 0; j < inst.members().size(); ++j) {
      const DataVector& v = inst.members()[j];
      if (v.empty()) continue;  // contributes nothing; padding terms are dropped
      active_.push_back(j);
      std::vector<DataValue> dom;
      std::vector<Tuple> vals;
      std::vector<Int> lo(dim, 0), hi(dim, 0);
      for (const auto& [a, t] : v.entries()) {
        dom.push_back(a);
        vals.push_back(t);
        for (std::size_t c = 0; c < dim; ++c) {
          lo[c] = std::min(lo[c], t[c]);
          hi[c] = std::max(hi[c], t[c]);
        }
      }
      max_support = std::max(max_support, dom.size());
      domains_.push_back(std::move(dom));
      values_.push_back(std::move(vals));
      member_lo_.push_back(std::move(lo));
      member_hi_.push_back(std::move(hi));
      weights_.push_back(v.weight());
    }

    if (budget.pool) {
      std::set<DataValue> dedup(budget.pool->begin(), budget.pool->end());
      pool_.assign(dedup.begin(), dedup.end());
      fresh_begin_ = pool_.size();
    } else {
      std::set<DataValue> fixed = inst.target().support();
      for (const DataVector& v : inst.members()) {
        const std::set<DataValue> s = v.support();
        fixed.insert(s.begin(), s.end());
      }
      pool_.assign(fixed.begin(), fixed.end());
      fresh_begin_ = pool_.size();
      for (DataValue f : fresh_values(fixed, max_terms_ * max_support)) pool_.push_back(f);
    }

    target_at_pool_.reserve(pool_.size());
    for (DataValue b : pool_) target_at_pool_.push_back(inst.target().value(b));
  }

  void run() {
    if (!counting_ && inst_.target().empty()) {
      found_ = PermutationSumWitness{};
      return;
    }
    chosen_.clear();
    multiset_dfs(0);
  }

  std::size_t nodes() const { return nodes_; }
  std::size_t candidates() const { return candidates_; }
  const std::optional<PermutationSumWitness>& found() const { return found_; }

 private:
  void bump() {
    if (++nodes_ > node_cap_) throw BudgetExceeded("enumeration node cap exceeded");
  }

  // Non-decreasing sequences over active member positions, every non-empty
  // prefix processed once. Returns true when a witness has been found.
  bool multiset_dfs(std::size_t min_pos) {
    if (!chosen_.empty() && process_multiset()) return true;
    if (chosen_.size() == max_terms_) return false;
    for (std::size_t p = min_pos; p < active_.size(); ++p) {
      chosen_.push_back(p);
      if (multiset_dfs(p)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  bool process_multiset() {
    const std::size_t n = chosen_.size();
    const std::size_t dim = inst_.dim();

    if (!counting_) {
      // The weights of the chosen members must add up to the target's weight;
      // placements never change a term's weight.
      Tuple sum(dim);
      for (std::size_t p : chosen_) sum += weights_[p];
      if (!(sum == inst_.target().weight())) return false;
    }

    suffix_lo_.assign(n + 1, std::vector<Int>(dim, 0));
    suffix_hi_.assign(n + 1, std::vector<Int>(dim, 0));
    for (std::size_t t = n; t-- > 0;) {
      for (std::size_t c = 0; c < dim; ++c) {
        suffix_lo_[t][c] = suffix_lo_[t + 1][c] + member_lo_[chosen_[t]][c];
        suffix_hi_[t][c] = suffix_hi_[t + 1][c] + member_hi_[chosen_[t]][c];
      }
    }
    if (!counting_ && !interval_ok(0)) return false;

    partial_.clear();
    fresh_used_ = 0;
    images_.assign(n, {});
    used_.assign(n, std::vector<char>(pool_.size(), 0));
    return search_term(0);
  }

  // At a single datum, one remaining term contributes one of its values or
  // nothing, so the per-coordinate contribution of terms t.. lies within
  // [suffix_lo_[t], suffix_hi_[t]]. Prune any datum whose deficit escapes.
  bool interval_ok(std::size_t t) const {
    const std::size_t dim = inst_.dim();
    for (const auto& [b, want] : inst_.target().entries()) {
      const Tuple* have = partial_at(b);
      for (std::size_t c = 0; c < dim; ++c) {
        const Int deficit = want[c] - (have ? (*have)[c] : Int(0));
        if (deficit < suffix_lo_[t][c] || deficit > suffix_hi_[t][c]) return false;
      }
    }
    for (const auto& [b, have] : partial_) {
      if (inst_.target().entries().count(b)) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        const Int deficit = -have[c];
        if (deficit < suffix_lo_[t][c] || deficit > suffix_hi_[t][c]) return false;
      }
    }
    return true;
  }

  const Tuple* partial_at(DataValue b) const {
    auto it = partial_.find(b);
    return it == partial_.end() ? nullptr : &it->second;
  }

  // Whether the completed image list is the least representative of its
  // candidate class. Terms that use the same member may be reordered freely,
  // and fresh slots are interchangeable, so the class minimum is taken over
  // every same-member block permutation with fresh slots renamed in
  // first-use order. The in-search ordering checks (ascending first use,
  // key-sorted blocks) are necessary conditions for minimality but not
  // sufficient: a doubled fresh image can sort both before and after a
  // single one. Only the counting mode needs the exact filter; the decision
  // mode is indifferent to duplicate class representatives.
  bool is_block_minimal() const {
    const std::size_t n = chosen_.size();
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j < n && chosen_[j] == chosen_[i]) ++j;
      if (j - i > 1) blocks.emplace_back(i, j);
      i = j;
    }
    if (blocks.empty()) return true;

    std::vector<std::vector<std::size_t>> scratch = images_;
    std::vector<std::vector<std::size_t>> renamed(n);
    // -1, 0, 1 as scratch compares below, equal to, above images_ after the
    // first-use renaming of fresh slots.
    const auto compare_renamed = [&]() {
      std::map<std::size_t, std::size_t> names;
      for (std::size_t t = 0; t < n; ++t) {
        renamed[t].clear();
        renamed[t].reserve(scratch[t].size());
        for (std::size_t idx : scratch[t]) {
          if (idx < fresh_begin_) {
            renamed[t].push_back(idx);
          } else {
            auto [it, ignored] = names.try_emplace(idx, fresh_begin_ + names.size());
            renamed[t].push_back(it->second);
          }
        }
      }
      for (std::size_t t = 0; t < n; ++t) {
        if (key_less(renamed[t], images_[t])) return -1;
        if (key_less(images_[t], renamed[t])) return 1;
      }
      return 0;
    };

    bool minimal = true;
    const auto walk = [&](auto&& self, std::size_t bi) -> void {
      if (!minimal) return;
      if (bi == blocks.size()) {
        if (compare_renamed() < 0) minimal = false;
        return;
      }
      const auto [lo, hi] = blocks[bi];
      std::vector<std::size_t> order(hi - lo);
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      do {
        for (std::size_t i = 0; i < order.size(); ++i) scratch[lo + i] = images_[lo + order[i]];
        self(self, bi + 1);
      } while (minimal && std::next_permutation(order.begin(), order.end()));
    };
    walk(walk, 0);
    return minimal;
  }

  bool search_term(std::size_t t) {
    if (t == chosen_.size()) {
      if (counting_) {
        if (is_block_minimal()) ++candidates_;
        return false;
      }
      // interval_ok with an empty suffix already forced every deficit to 0.
      PermutationSumWitness w;
      for (std::size_t s = 0; s < chosen_.size(); ++s) {
        std::map<DataValue, DataValue> m;
        const auto& dom = domains_[chosen_[s]];
        for (std::size_t i = 0; i < dom.size(); ++i) m[dom[i]] = pool_[images_[s][i]];
        w.terms.push_back(WitnessTerm{active_[chosen_[s]], FiniteInjection::from_map(std::move(m))});
      }
      if (!verify_witness(inst_, w)) throw std::logic_error("enumerated candidate failed verification");
      found_ = std::move(w);
      return true;
    }
    return assign(t, 0);
  }

  bool assign(std::size_t t, std::size_t pos) {
    const std::size_t p = chosen_[t];
    if (pos == domains_[p].size()) {
      if (t > 0 && chosen_[t] == chosen_[t - 1] && key_less(images_[t], images_[t - 1])) return false;
      if (!counting_ && !interval_ok(t + 1)) return false;
      return search_term(t + 1);
    }
    const Tuple& w = values_[p][pos];
    const std::size_t dim = inst_.dim();
    const std::size_t limit = std::min(pool_.size(), fresh_begin_ + fresh_used_ + 1);
    for (std::size_t idx = 0; idx < limit; ++idx) {
      if (used_[t][idx]) continue;
      bump();
      if (!counting_) {
        // The current term cannot land here again (injectivity), so only
        // terms after t can still close this datum's deficit.
        const Tuple* have = partial_at(pool_[idx]);
        bool ok = true;
        for (std::size_t c = 0; c < dim; ++c) {
          const Int deficit = target_at_pool_[idx][c] - (have ? (*have)[c] : Int(0)) - w[c];
          if (deficit < suffix_lo_[t + 1][c] || deficit > suffix_hi_[t + 1][c]) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
      }
      const bool new_fresh = idx == fresh_begin_ + fresh_used_;
      auto [it, inserted] = partial_.try_emplace(pool_[idx], dim);
      it->second += w;
      used_[t][idx] = 1;
      if (new_fresh) ++fresh_used_;
      images_[t].push_back(idx);

      const bool stop = assign(t, pos + 1);

      images_[t].pop_back();
      if (new_fresh) --fresh_used_;
      used_[t][idx] = 0;
      it->second -= w;
      if (it->second.is_zero()) partial_.erase(it);
      if (stop) return true;
    }
    return false;
  }

  // Shape-major order: fixed pool slots sort by position and before fresh
  // slots; fresh slots are indistinguishable at shape level. Pool position
  // breaks full-shape ties, so equal terms admit one sorted sequence.
  bool key_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const bool af = a[i] >= fresh_begin_;
      const bool bf = b[i] >= fresh_begin_;
      if (af != bf) return bf;
      if (!af && a[i] != b[i]) return a[i] < b[i];
    }
    return a < b;
  }

  const ExpressibilityInstance& inst_;
  const bool counting_;
  const std::size_t max_terms_;
  const std::size_t node_cap_;

  std::vector<DataValue> pool_;
  std::size_t fresh_begin_ = 0;
  std::vector<Tuple> target_at_pool_;

  std::vector<std::size_t> active_;
  std::vector<std::vector<DataValue>> domains_;
  std::vector<std::vector<Tuple>> values_;
  std::vector<std::vector<Int>> member_lo_, member_hi_;
  std::vector<Tuple> weights_;

  std::size_t nodes_ = 0;
  std::size_t candidates_ = 0;
  std::optional<PermutationSumWitness> found_;

  std::vector<std::size_t> chosen_;
  std::vector<std::vector<Int>> suffix_lo_, suffix_hi_;
  std::map<DataValue, Tuple> partial_;
  std::vector<std::vector<char>> used_;
  std::vector<std::vector<std::size_t>> images_;
  std::size_t fresh_used_ = 0;
};

}  // namespace

OracleResult oracle_decide(const ExpressibilityInstance& inst, const OracleBudget& budget) {
  Searcher s(inst, budget, /*counting=*/false);
  s.run();
  OracleResult r;
  r.nodes = s.nodes();
  if (s.found()) {
    r.decision = OracleDecision::Yes;
    r.witness = s.found();
  } else {
    r.decision = OracleDecision::NoUpToBudget;
  }
  return r;
}

std::size_t oracle_count_candidates(const ExpressibilityInstance& inst, const OracleBudget& budget) {
  Searcher s(inst, budget, /*counting=*/true);
  s.run();
  return s.candidates();
}

ExpressibilityInstance random_instance(const InstanceShape& shape, Rng& rng) {
  if (shape.dim == 0) throw std::invalid_argument("instance dimension must be positive");
  if (shape.entry_lo > shape.entry_hi) throw std::invalid_argument("empty entry range");
  const std::size_t universe =
      2 * std::max(shape.max_member_support, shape.max_target_support) + 2;

  auto draw = [&](std::size_t max_support) {
    std::map<DataValue, Tuple> entries;
    if (max_support > 0) {
      const std::size_t k = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_support)));
      std::set<std::uint64_t> picked;
      while (picked.size() < k) picked.insert(rng.below(universe));
      for (std::uint64_t id : picked) {
        std::vector<Int> t(shape.dim);
        for (std::size_t c = 0; c < shape.dim; ++c) t[c] = Int(rng.range(shape.entry_lo, shape.entry_hi));
        entries.emplace(DataValue{id}, Tuple::of(std::move(t)));
      }
    }
    return DataVector::from_entries(shape.dim, std::move(entries));
  };

  std::vector<DataVector> members;
  for (std::size_t i = 0; i < shape.member_count; ++i) {
    DataVector v = draw(shape.max_member_support);
    members.push_back(v);
    if (shape.mirrored) members.push_back(-v);
  }
  DataVector target = draw(shape.max_target_support);
  return ExpressibilityInstance::make(shape.dim, std::move(members), std::move(target));
}

}  // namespace datavec
