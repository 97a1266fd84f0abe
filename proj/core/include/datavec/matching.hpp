#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace datavec {

// A bipartite graph on index sets [0, left_count) x [0, right_count).
struct BipartiteGraph {
  std::size_t left_count = 0;
  std::size_t right_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

// Maximum matching via augmenting paths. Left nodes are processed in index
// order and adjacency lists in sorted order, so the result is deterministic.
Matching max_bipartite_matching(const BipartiteGraph& g);

// Merges a matching covering left_cover with a matching covering right_cover
// into one matching covering both. Walks the components of the union: cycles
// and odd-edge-count paths have perfect matchings; an even-edge-count path
// has one endpoint outside both cover sets, which is dropped.
// Throws if the inputs are not matchings of the claimed sets, or if the merge
// is impossible (which cannot happen for genuine matchings).
Matching combine_matchings(const Matching& ml, const Matching& mr, const BipartiteGraph& g,
                           const std::vector<std::size_t>& left_cover,
                           const std::vector<std::size_t>& right_cover);

}  // namespace datavec
