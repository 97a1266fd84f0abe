#include "datavec/bca.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "datavec/errors.hpp"
#include "datavec/expressibility.hpp"
#include "textlex.hpp"

namespace datavec {

Bca parse_bca(std::string_view text, Interner& interner) {
  textlex::Lexer lex(text);
  Bca a;
  std::map<std::string, std::size_t> ids;
  auto state_id = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    a.states.push_back(name);
    ids.emplace(name, a.states.size() - 1);
    return a.states.size() - 1;
  };

  lex.expect_keyword("counters");
  const Int k = lex.expect_number("counter dimension");
  const auto k64 = to_int64(k);
  if (!k64 || *k64 < 1) lex.fail("counter dimension must be a positive integer");
  a.counters = static_cast<std::size_t>(*k64);
  lex.expect_punct(";");

  lex.expect_keyword("state");
  a.initial = state_id(lex.expect_ident("initial state"));
  a.final_state = state_id(lex.expect_ident("final state"));
  lex.expect_punct(";");

  while (!lex.at_end()) {
    lex.expect_keyword("edge");
    const std::size_t from = state_id(lex.expect_ident("source state"));
    lex.expect_punct("->");
    const std::size_t to = state_id(lex.expect_ident("target state"));
    lex.expect_keyword("label");
    lex.expect_punct("{");
    std::map<DataValue, Tuple> entries;
    if (!lex.try_punct("}")) {
      do {
        const DataValue v = interner.intern(lex.expect_ident("data value"));
        if (entries.count(v)) lex.fail("data value listed twice in a label");
        lex.expect_punct(":");
        lex.expect_punct("[");
        std::vector<Int> t;
        do {
          t.push_back(lex.expect_number("tuple entry"));
        } while (lex.try_punct(","));
        lex.expect_punct("]");
        if (t.size() != a.counters) lex.fail("tuple does not match the counter dimension");
        entries.emplace(v, Tuple::of(std::move(t)));
      } while (lex.try_punct(","));
      lex.expect_punct("}");
    }
    lex.expect_punct(";");
    a.edges.push_back(
        BcaEdge{from, to, DataVector::from_entries(a.counters, std::move(entries))});
  }
  return a;
}

DataVector pad_dims(const DataVector& v, std::size_t new_dim) {
  if (new_dim < v.dim()) throw std::invalid_argument("cannot pad to a smaller dimension");
  std::map<DataValue, Tuple> entries;
  for (const auto& [a, t] : v.entries()) {
    Tuple nt(new_dim);
    for (std::size_t c = 0; c < v.dim(); ++c) nt[c] = t[c];
    entries.emplace(a, std::move(nt));
  }
  return DataVector::from_entries(new_dim, std::move(entries));
}

DataVector augment_counters(const Bca& a, std::size_t edge_index, DataValue step_datum) {
  if (edge_index >= a.edges.size()) throw std::invalid_argument("edge index out of range");
  const BcaEdge& e = a.edges[edge_index];
  const std::size_t dim = a.counters + a.states.size();
  DataVector out = pad_dims(e.label, dim);
  Tuple delta(dim);
  delta[a.counters + e.to] += 1;
  delta[a.counters + e.from] -= 1;
  if (!delta.is_zero()) out += lift(delta, step_datum);
  return out;
}

std::vector<std::vector<std::size_t>> skeletons(const Bca& a, std::size_t max_length,
                                                std::size_t cap, bool* capped) {
  if (capped) *capped = false;
  std::vector<std::vector<std::size_t>> collected;
  // Walks of equal length extend in lexicographic edge order, so the whole
  // enumeration is ordered by (length, edge sequence). `cap` bounds the
  // number of walks explored, collected or not.
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> frontier;
  frontier.emplace_back(std::vector<std::size_t>{}, a.initial);
  std::size_t explored = 0;
  for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> next;
    for (const auto& [walk, at] : frontier) {
      for (std::size_t e = 0; e < a.edges.size(); ++e) {
        if (a.edges[e].from != at) continue;
        if (++explored > cap) {
          if (capped) *capped = true;
          return collected;
        }
        std::vector<std::size_t> extended = walk;
        extended.push_back(e);
        if (a.edges[e].to == a.final_state) collected.push_back(extended);
        next.emplace_back(std::move(extended), a.edges[e].to);
      }
    }
    frontier = std::move(next);
  }
  return collected;
}

namespace {

void merge_stats(IlpStats& into, const IlpStats& other) {
  into.nodes += other.nodes;
  into.lp_calls += other.lp_calls;
  into.lp_pivots += other.lp_pivots;
  into.presolve_infeasible = into.presolve_infeasible || other.presolve_infeasible;
}

// One skeleton edge set: feasibility of some sum over every edge leaving the
// skeleton's states, the skeleton's own edges used at least once each.
bool solve_candidate(const ExpressibilityInstance& inst,
                     const std::vector<std::size_t>& required_positions, IlpStats& stats) {
  const std::size_t max_fresh = support_bound(inst) - inst.target().support().size();
  std::vector<std::size_t> widths;
  for (std::size_t k = 1; k < max_fresh; k *= 2) widths.push_back(k);
  widths.push_back(max_fresh);
  for (std::size_t width : widths) {
    IlpBuild b = build_ilp(inst, width);
    for (std::size_t pos : required_positions) {
      const auto it = b.count_var.find(pos);
      // A member with no unknowns has empty effect; using it once is free,
      // so its lower bound is vacuous.
      if (it == b.count_var.end()) continue;
      LinearRow row;
      row.coeffs.assign(b.sys.num_vars, Rat(0));
      row.coeffs[it->second] = 1;
      row.rel = Relation::Ge;
      row.rhs = 1;
      b.sys.rows.push_back(std::move(row));
    }
    const IlpResult r = ilp_feasible(b.sys);
    merge_stats(stats, r.stats);
    if (r.feasible) return true;  // sound at any width
  }
  return false;  // conclusive only at the full support bound, which ran last
}

struct Candidate {
  ExpressibilityInstance inst;
  std::vector<std::size_t> required_positions;
};

}  // namespace

ReachResult reachable(const Bca& a, const DataVector& from, const DataVector& to,
                      const ReachOptions& options) {
  if (from.dim() != a.counters || to.dim() != a.counters)
    throw std::invalid_argument("configuration dimension does not match the counters");

  ReachResult result;
  if (a.initial == a.final_state && from == to) {
    result.decision = ReachDecision::Yes;  // the empty run
    return result;
  }

  const std::size_t walk_bound = options.max_skeleton_length
                                     ? options.max_skeleton_length
                                     : a.states.size() * a.states.size();
  bool capped = false;
  const auto walks = skeletons(a, walk_bound, options.skeleton_cap, &capped);
  result.stats.skeleton_walks = walks.size();

  std::set<std::set<std::size_t>> seen;
  std::vector<std::set<std::size_t>> edge_sets;
  for (const auto& walk : walks) {
    std::set<std::size_t> s(walk.begin(), walk.end());
    if (seen.insert(s).second) edge_sets.push_back(std::move(s));
  }

  std::set<DataValue> used = from.support();
  for (DataValue v : to.support()) used.insert(v);
  for (const BcaEdge& e : a.edges)
    for (DataValue v : e.label.support()) used.insert(v);
  const DataValue step = fresh_values(used, 1)[0];

  const std::size_t dim = a.counters + a.states.size();
  DataVector target = pad_dims(to - from, dim);
  if (a.initial != a.final_state) {
    Tuple swing(dim);
    swing[a.counters + a.final_state] += 1;
    swing[a.counters + a.initial] -= 1;
    target += lift(swing, step);
  }

  std::vector<Candidate> candidates;
  for (const auto& edge_set : edge_sets) {
    std::set<std::size_t> states{a.initial, a.final_state};
    for (std::size_t e : edge_set) {
      states.insert(a.edges[e].from);
      states.insert(a.edges[e].to);
    }
    std::vector<DataVector> members;
    std::vector<std::size_t> required;
    for (std::size_t e = 0; e < a.edges.size(); ++e) {
      if (!states.count(a.edges[e].from)) continue;
      if (edge_set.count(e)) required.push_back(members.size());
      members.push_back(augment_counters(a, e, step));
    }
    candidates.push_back(
        Candidate{ExpressibilityInstance::make(dim, std::move(members), target), std::move(required)});
  }
  result.stats.candidates = candidates.size();

  bool yes = false;
  if (options.threads <= 1 || candidates.size() <= 1) {
    for (const Candidate& c : candidates) {
      if (solve_candidate(c.inst, c.required_positions, result.stats.ilp)) {
        yes = true;
        break;
      }
    }
  } else {
    std::vector<IlpStats> stats(candidates.size());
    std::vector<char> feasible(candidates.size(), 0);
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= candidates.size()) return;
        try {
          feasible[i] = solve_candidate(candidates[i].inst, candidates[i].required_positions,
                                        stats[i]);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const std::size_t n = std::min(options.threads, candidates.size());
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      merge_stats(result.stats.ilp, stats[i]);
      yes = yes || feasible[i] != 0;
    }
  }

  if (yes)
    result.decision = ReachDecision::Yes;
  else
    result.decision = capped ? ReachDecision::InconclusiveCapped : ReachDecision::No;
  return result;
}

namespace {

void injective_maps(const std::vector<DataValue>& domain, const std::vector<DataValue>& candidates,
                    std::vector<DataValue>& picked, std::vector<char>& used,
                    const std::function<void(const std::vector<DataValue>&)>& visit) {
  if (picked.size() == domain.size()) {
    visit(picked);
    return;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    picked.push_back(candidates[i]);
    injective_maps(domain, candidates, picked, used, visit);
    picked.pop_back();
    used[i] = 0;
  }
}

}  // namespace

BfsResult bfs_oracle(const Bca& a, const DataVector& from, const DataVector& to,
                     const BfsOptions& options) {
  if (from.dim() != a.counters || to.dim() != a.counters)
    throw std::invalid_argument("configuration dimension does not match the counters");
  if (options.value_bound < 0) throw std::invalid_argument("value bound must be nonnegative");

  std::set<DataValue> fixed = from.support();
  for (DataValue v : to.support()) fixed.insert(v);
  const std::vector<DataValue> slots = fresh_values(fixed, options.fresh_bound);

  // Values outside the endpoints' supports are interchangeable: configurations
  // are stored with those values renamed onto the canonical slots in tuple
  // order, which collapses every renaming class to one representative.
  auto canonical = [&](const DataVector& m) {
    std::map<DataValue, Tuple> entries;
    std::vector<Tuple> free;
    for (const auto& [v, t] : m.entries()) {
      if (fixed.count(v))
        entries.emplace(v, t);
      else
        free.push_back(t);
    }
    std::sort(free.begin(), free.end());
    if (free.size() > slots.size()) throw std::logic_error("fresh bound violated");
    for (std::size_t i = 0; i < free.size(); ++i) entries.emplace(slots[i], std::move(free[i]));
    return DataVector::from_entries(m.dim(), std::move(entries));
  };

  bool bounded = false;
  std::set<std::pair<std::size_t, std::map<DataValue, Tuple>>> visited;
  std::deque<std::pair<std::size_t, DataVector>> queue;

  const DataVector start = canonical(from);
  if (a.initial == a.final_state && start == to) return BfsResult{BfsDecision::Yes, 1};
  visited.emplace(a.initial, start.entries());
  queue.emplace_back(a.initial, start);

  while (!queue.empty()) {
    const auto [state, marking] = queue.front();
    queue.pop_front();
    for (const BcaEdge& e : a.edges) {
      if (e.from != state) continue;
      const std::set<DataValue> supp = e.label.support();
      const std::vector<DataValue> domain(supp.begin(), supp.end());

      std::vector<DataValue> candidates(fixed.begin(), fixed.end());
      std::size_t free_now = 0;
      for (const auto& [v, t] : marking.entries())
        if (!fixed.count(v)) {
          candidates.push_back(v);
          ++free_now;
        }
      const std::size_t offered = std::min(domain.size(), slots.size() - free_now);
      for (std::size_t i = 0; i < offered; ++i) candidates.push_back(slots[free_now + i]);
      if (offered < domain.size()) bounded = true;  // some modes are out of reach
      if (candidates.size() < domain.size()) continue;

      std::vector<DataValue> picked;
      std::vector<char> used(candidates.size(), 0);
      bool found = false;
      injective_maps(domain, candidates, picked, used, [&](const std::vector<DataValue>& images) {
        if (found) return;
        std::map<DataValue, DataValue> m;
        for (std::size_t i = 0; i < domain.size(); ++i) m[domain[i]] = images[i];
        DataVector next = marking + apply_injection(e.label, FiniteInjection::from_map(std::move(m)));
        for (const auto& [v, t] : next.entries())
          for (std::size_t c = 0; c < next.dim(); ++c)
            if (t[c] > options.value_bound || t[c] < -options.value_bound) {
              bounded = true;
              return;
            }
        next = canonical(next);
        if (!visited.emplace(e.to, next.entries()).second) return;
        if (visited.size() > options.visited_cap)
          throw BudgetExceeded("configuration search cap exceeded");
        if (e.to == a.final_state && next == to) {
          found = true;
          return;
        }
        queue.emplace_back(e.to, std::move(next));
      });
      if (found) return BfsResult{BfsDecision::Yes, visited.size()};
    }
  }
  return BfsResult{bounded ? BfsDecision::NoUpToBound : BfsDecision::No, visited.size()};
}

Bca random_bca(const BcaShape& shape, Rng& rng) {
  if (shape.counters == 0 || shape.max_states == 0 || shape.max_edges == 0)
    throw std::invalid_argument("automaton shape bounds must be positive");
  if (shape.entry_lo > shape.entry_hi) throw std::invalid_argument("empty entry range");
  Bca a;
  a.counters = shape.counters;
  const std::size_t n =
      static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(shape.max_states)));
  for (std::size_t i = 0; i < n; ++i) a.states.push_back("q" + std::to_string(i));
  a.initial = rng.below(n);
  a.final_state = rng.below(n);
  const std::size_t universe = 2 * std::max<std::size_t>(shape.max_label_support, 1) + 2;
  const std::size_t m =
      static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(shape.max_edges)));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t from = rng.below(n);
    const std::size_t to = rng.below(n);
    std::map<DataValue, Tuple> entries;
    const std::size_t k =
        static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(shape.max_label_support)));
    std::set<std::uint64_t> picked;
    while (picked.size() < k) picked.insert(rng.below(universe));
    for (std::uint64_t id : picked) {
      std::vector<Int> t(shape.counters);
      for (std::size_t c = 0; c < shape.counters; ++c)
        t[c] = Int(rng.range(shape.entry_lo, shape.entry_hi));
      entries.emplace(DataValue{id}, Tuple::of(std::move(t)));
    }
    a.edges.push_back(
        BcaEdge{from, to, DataVector::from_entries(shape.counters, std::move(entries))});
  }
  return a;
}

}  // namespace datavec
