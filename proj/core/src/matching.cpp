#include "datavec/matching.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace datavec {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool try_augment(std::size_t u, const std::vector<std::vector<std::size_t>>& adj,
                 std::vector<char>& seen, std::vector<std::size_t>& match_l,
                 std::vector<std::size_t>& match_r) {
  for (std::size_t v : adj[u]) {
    if (seen[v]) continue;
    seen[v] = 1;
    if (match_r[v] == kNone || try_augment(match_r[v], adj, seen, match_l, match_r)) {
      match_l[u] = v;
      match_r[v] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

Matching max_bipartite_matching(const BipartiteGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.left_count);
  for (const auto& [l, r] : g.edges) {
    if (l >= g.left_count || r >= g.right_count) {
      throw std::invalid_argument("max_bipartite_matching: edge index out of range");
    }
    adj[l].push_back(r);
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  std::vector<std::size_t> match_l(g.left_count, kNone);
  std::vector<std::size_t> match_r(g.right_count, kNone);
  for (std::size_t u = 0; u < g.left_count; ++u) {
    std::vector<char> seen(g.right_count, 0);
    try_augment(u, adj, seen, match_l, match_r);
  }
  Matching out;
  for (std::size_t u = 0; u < g.left_count; ++u) {
    if (match_l[u] != kNone) out.emplace_back(u, match_l[u]);
  }
  return out;
}

namespace {

struct MatchingIndex {
  std::vector<std::size_t> by_left;
  std::vector<std::size_t> by_right;
};

MatchingIndex index_matching(const Matching& m, const BipartiteGraph& g, const char* label) {
  std::set<std::pair<std::size_t, std::size_t>> graph_edges(g.edges.begin(), g.edges.end());
  MatchingIndex ix;
  ix.by_left.assign(g.left_count, kNone);
  ix.by_right.assign(g.right_count, kNone);
  for (const auto& [l, r] : m) {
    if (l >= g.left_count || r >= g.right_count) {
      throw std::invalid_argument(std::string("combine_matchings: ") + label +
                                  " has an edge index out of range");
    }
    if (!graph_edges.count({l, r})) {
      throw std::invalid_argument(std::string("combine_matchings: ") + label +
                                  " uses an edge absent from the graph");
    }
    if (ix.by_left[l] != kNone || ix.by_right[r] != kNone) {
      throw std::invalid_argument(std::string("combine_matchings: ") + label +
                                  " is not a matching");
    }
    ix.by_left[l] = r;
    ix.by_right[r] = l;
  }
  return ix;
}

struct Node {
  bool is_left = true;
  std::size_t idx = 0;
  bool operator==(const Node&) const = default;
};

struct WalkEdge {
  std::size_t l = 0;
  std::size_t r = 0;
  bool from_first = true;  // true: edge taken from the left-covering matching
};

// Follows the unique edge of the requested matching out of `n`, if any.
// Returns the edge and moves `n` to the opposite endpoint.
bool step(Node& n, const MatchingIndex& m, WalkEdge& e) {
  if (n.is_left) {
    std::size_t r = m.by_left[n.idx];
    if (r == kNone) return false;
    e.l = n.idx;
    e.r = r;
    n = Node{false, r};
  } else {
    std::size_t l = m.by_right[n.idx];
    if (l == kNone) return false;
    e.l = l;
    e.r = n.idx;
    n = Node{true, l};
  }
  return true;
}

}  // namespace

Matching combine_matchings(const Matching& ml, const Matching& mr, const BipartiteGraph& g,
                           const std::vector<std::size_t>& left_cover,
                           const std::vector<std::size_t>& right_cover) {
  MatchingIndex a = index_matching(ml, g, "left matching");
  MatchingIndex b = index_matching(mr, g, "right matching");
  std::set<std::size_t> lcov(left_cover.begin(), left_cover.end());
  std::set<std::size_t> rcov(right_cover.begin(), right_cover.end());
  for (std::size_t l : lcov) {
    if (l >= g.left_count) {
      throw std::invalid_argument("combine_matchings: left cover index out of range");
    }
    if (a.by_left[l] == kNone) {
      throw std::invalid_argument(
          "combine_matchings: left matching does not cover the left set");
    }
  }
  for (std::size_t r : rcov) {
    if (r >= g.right_count) {
      throw std::invalid_argument("combine_matchings: right cover index out of range");
    }
    if (b.by_right[r] == kNone) {
      throw std::invalid_argument(
          "combine_matchings: right matching does not cover the right set");
    }
  }

  std::vector<char> seen_left(g.left_count, 0);
  std::vector<char> seen_right(g.right_count, 0);
  auto mark = [&](const Node& n) {
    if (n.is_left) {
      seen_left[n.idx] = 1;
    } else {
      seen_right[n.idx] = 1;
    }
  };
  auto degree = [&](const Node& n) {
    int d = 0;
    if (n.is_left) {
      d += a.by_left[n.idx] != kNone;
      d += b.by_left[n.idx] != kNone;
    } else {
      d += a.by_right[n.idx] != kNone;
      d += b.by_right[n.idx] != kNone;
    }
    return d;
  };
  auto covered = [&](const Node& n) {
    return n.is_left ? lcov.count(n.idx) > 0 : rcov.count(n.idx) > 0;
  };

  Matching out;
  // Walks the union component containing `start`, whose first edge belongs to
  // matching `a` iff start_in_first. Components are paths or cycles because
  // every node touches at most one edge of each matching.
  auto walk = [&](Node start, bool start_in_first) {
    std::vector<WalkEdge> path;
    Node cur = start;
    bool use_first = start_in_first;
    bool cycle = false;
    mark(cur);
    for (;;) {
      WalkEdge e;
      e.from_first = use_first;
      if (!step(cur, use_first ? a : b, e)) break;
      path.push_back(e);
      use_first = !use_first;
      if (cur == start) {
        cycle = true;
        break;
      }
      mark(cur);
    }
    if (path.empty()) return;
    if (cycle) {
      for (const auto& e : path) {
        if (e.from_first) out.emplace_back(e.l, e.r);
      }
      return;
    }
    if (path.size() % 2 == 1) {
      // Odd edge count: taking every other edge starting at the first end
      // covers every node of the path.
      for (std::size_t i = 0; i < path.size(); i += 2) out.emplace_back(path[i].l, path[i].r);
      return;
    }
    // Even edge count: one endpoint must be dropped. The two end edges belong
    // to different matchings, so at most one endpoint can sit in each cover
    // set, and a node outside both cover sets exists at one end.
    if (!covered(start)) {
      for (std::size_t i = 1; i < path.size(); i += 2) out.emplace_back(path[i].l, path[i].r);
      return;
    }
    if (!covered(cur)) {
      for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
        out.emplace_back(path[i].l, path[i].r);
      }
      return;
    }
    throw std::logic_error("combine_matchings: component cannot cover both required endpoints");
  };

  // Path endpoints first (degree-one nodes), lowest index first, then cycles.
  for (std::size_t l = 0; l < g.left_count; ++l) {
    Node n{true, l};
    if (!seen_left[l] && degree(n) == 1) walk(n, a.by_left[l] != kNone);
  }
  for (std::size_t r = 0; r < g.right_count; ++r) {
    Node n{false, r};
    if (!seen_right[r] && degree(n) == 1) walk(n, a.by_right[r] != kNone);
  }
  for (std::size_t l = 0; l < g.left_count; ++l) {
    if (!seen_left[l] && degree(Node{true, l}) == 2) walk(Node{true, l}, true);
  }
  for (std::size_t r = 0; r < g.right_count; ++r) {
    if (!seen_right[r] && degree(Node{false, r}) == 2) walk(Node{false, r}, true);
  }

  std::sort(out.begin(), out.end());
  std::vector<char> got_left(g.left_count, 0);
  std::vector<char> got_right(g.right_count, 0);
  for (const auto& [l, r] : out) {
    if (got_left[l] || got_right[r]) {
      throw std::logic_error("combine_matchings: merged edges collide");
    }
    got_left[l] = 1;
    got_right[r] = 1;
  }
  for (std::size_t l : lcov) {
    if (!got_left[l]) throw std::logic_error("combine_matchings: merged matching misses a left node");
  }
  for (std::size_t r : rcov) {
    if (!got_right[r]) {
      throw std::logic_error("combine_matchings: merged matching misses a right node");
    }
  }
  return out;
}

}  // namespace datavec
