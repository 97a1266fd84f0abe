#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datavec/ilp.hpp"
#include "datavec/interner.hpp"
#include "datavec/rng.hpp"
#include "datavec/vector.hpp"

namespace datavec {

// A data blind counter automaton: finite states, counter vectors indexed by
// data values, no guards. An edge step picks an injective renaming of its
// label's support and adds the renamed label to the counters.
struct BcaEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  DataVector label;  // dimension = counters
};

struct Bca {
  std::size_t counters = 1;
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::size_t final_state = 0;
  std::vector<BcaEdge> edges;
};

// Text format:
//   counters 1;
//   state q0 qf;
//   edge q0 -> q0 label {a: [1]};
//   edge q0 -> qf label {};
// States are registered in order of first mention.
Bca parse_bca(std::string_view text, Interner& interner);

// The same vector over `new_dim >= v.dim()` coordinates, extra ones zero.
DataVector pad_dims(const DataVector& v, std::size_t new_dim);

// The edge label over counters + |states| coordinates: the padded label plus,
// at `step_datum`, +1 on the target-state coordinate and -1 on the source's.
// Sums of these track both counter displacement and state in/out balance.
DataVector augment_counters(const Bca& a, std::size_t edge_index, DataValue step_datum);

// All walks initial -> final of length 1..max_length, as edge index
// sequences, in order of increasing length then lexicographic. Enumeration
// stops after exploring `cap` walks of any endpoint (sets *capped when
// non-null), so a capped result may be missing walks.
std::vector<std::vector<std::size_t>> skeletons(const Bca& a, std::size_t max_length,
                                                std::size_t cap, bool* capped = nullptr);

enum class ReachDecision {
  Yes,                 // a run exists
  No,                  // no run exists
  InconclusiveCapped,  // skeleton enumeration was capped before a Yes
};

struct ReachStats {
  std::size_t skeleton_walks = 0;
  std::size_t candidates = 0;  // distinct skeleton edge sets solved
  IlpStats ilp;
};

struct ReachResult {
  ReachDecision decision = ReachDecision::No;
  ReachStats stats;
};

struct ReachOptions {
  std::size_t max_skeleton_length = 0;  // 0: |states|^2
  std::size_t skeleton_cap = 100000;
  std::size_t threads = 1;  // > 1 fans candidate systems out to worker threads
};

// Whether some run takes (initial, from) to (final, to). Decided through the
// walk skeletons: for each distinct skeleton edge set, an integer system over
// augmented labels (every edge leaving a skeleton state, the skeleton's own
// edges used at least once) is checked for a sum matching the displacement
// plus the state-balance target; any feasible system certifies a run, and the
// skeleton bound makes an exhaustive miss conclusive.
ReachResult reachable(const Bca& a, const DataVector& from, const DataVector& to,
                      const ReachOptions& options = ReachOptions{});

enum class BfsDecision {
  Yes,
  No,           // the bounded exploration was exhaustive
  NoUpToBound,  // exhausted, but a bound pruned at least one branch
};

struct BfsOptions {
  Int value_bound = 5;          // per-coordinate counter magnitude
  std::size_t fresh_bound = 3;  // distinct values beyond the endpoints' supports
  std::size_t visited_cap = 200000;
};

struct BfsResult {
  BfsDecision decision = BfsDecision::NoUpToBound;
  std::size_t visited = 0;
};

// Reference decision by explicit breadth-first search over configurations,
// with configurations canonicalized up to renaming of values outside the
// endpoints' supports. Throws BudgetExceeded past `visited_cap`.
BfsResult bfs_oracle(const Bca& a, const DataVector& from, const DataVector& to,
                     const BfsOptions& options = BfsOptions{});

struct BcaShape {
  std::size_t counters = 1;
  std::size_t max_states = 3;
  std::size_t max_edges = 4;
  std::size_t max_label_support = 2;
  std::int64_t entry_lo = -1;
  std::int64_t entry_hi = 1;
};

Bca random_bca(const BcaShape& shape, Rng& rng);

}  // namespace datavec
