#include "datavec/ilp.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>

#include "datavec/hnf.hpp"
#include "datavec/simplex.hpp"

namespace datavec {

namespace {

struct IntRow {
  std::vector<Int> coeffs;
  Relation rel = Relation::Eq;
  Int rhs = 0;
};

IntRow integerize(const LinearRow& row) {
  Int scale = rat_den(row.rhs);
  for (const auto& c : row.coeffs) scale = int_lcm(scale, rat_den(c));
  IntRow out;
  out.rel = row.rel;
  out.rhs = rat_num(row.rhs) * (scale / rat_den(row.rhs));
  out.coeffs.reserve(row.coeffs.size());
  for (const auto& c : row.coeffs) {
    out.coeffs.push_back(rat_num(c) * (scale / rat_den(c)));
  }
  return out;
}

struct Node {
  std::vector<Int> lo;
  std::vector<std::optional<Int>> hi;
  // Minimum coordinate sum of the parent's relaxation: a valid lower bound
  // for every point in this box, used as the best-first priority.
  Rat bound = 0;
  std::uint64_t seq = 0;
};

struct NodeOrder {
  // Min-heap: smallest bound first, then insertion order, which keeps the
  // search deterministic and explores floor children before their ceil
  // siblings at equal bounds.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

bool satisfies(const std::vector<IntRow>& rows, const std::vector<Int>& point) {
  for (const auto& r : rows) {
    Int acc = 0;
    for (std::size_t j = 0; j < point.size(); ++j) {
      if (point[j] != 0) acc += r.coeffs[j] * point[j];
    }
    const bool ok = r.rel == Relation::Eq   ? acc == r.rhs
                    : r.rel == Relation::Le ? acc <= r.rhs
                                            : acc >= r.rhs;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

IlpResult ilp_feasible(const LinearSystem& sys) {
  const std::size_t n = sys.num_vars;
  IlpResult res;

  std::vector<IntRow> rows;
  rows.reserve(sys.rows.size());
  for (const auto& row : sys.rows) {
    if (row.coeffs.size() != n) {
      throw std::invalid_argument("ilp_feasible: row width does not match num_vars");
    }
    rows.push_back(integerize(row));
  }

  // Integer-lattice test: do the equality rows alone have an integer
  // solution when signs are ignored? Run once up front and again after
  // implied-equality tightening below, which can add rows that expose new
  // divisibility obstructions.
  auto lattice_feasible = [&](const std::vector<IntRow>& rs) {
    std::vector<std::size_t> eq;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i].rel == Relation::Eq) eq.push_back(i);
    }
    if (eq.empty()) return true;
    if (n == 0) {
      for (std::size_t i : eq) {
        if (rs[i].rhs != 0) return false;
      }
      return true;
    }
    std::vector<std::vector<Int>> columns(n, std::vector<Int>(eq.size(), 0));
    std::vector<Int> target(eq.size(), 0);
    for (std::size_t k = 0; k < eq.size(); ++k) {
      const IntRow& r = rs[eq[k]];
      for (std::size_t j = 0; j < n; ++j) columns[j][k] = r.coeffs[j];
      target[k] = r.rhs;
    }
    SubgroupSolver lattice(eq.size(), std::move(columns));
    return lattice.solve(target).has_value();
  };
  if (!lattice_feasible(rows)) {
    res.stats.presolve_infeasible = true;
    return res;
  }

  LinearSystem base;
  base.num_vars = n;
  for (const auto& r : rows) {
    LinearRow lr;
    lr.rel = r.rel;
    lr.rhs = Rat(r.rhs);
    lr.coeffs.reserve(n);
    for (const auto& c : r.coeffs) lr.coeffs.push_back(Rat(c));
    base.rows.push_back(std::move(lr));
  }

  // Implied-equality tightening: an inequality whose slack cannot be positive
  // anywhere on the relaxation holds with equality in every solution.
  // Counting often forces whole groups of rows tight (a block of row sums can
  // pin every column sum it feeds), and rewriting them as equalities lets the
  // lattice test see parity and divisibility obstructions that no relaxation
  // vertex ever shows.
  {
    bool converted = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].rel == Relation::Eq) continue;
      const bool le = rows[i].rel == Relation::Le;
      std::vector<Rat> objective(n, Rat(0));
      for (std::size_t j = 0; j < n; ++j) {
        objective[j] = le ? Rat(rows[i].coeffs[j]) : Rat(-rows[i].coeffs[j]);
      }
      LpOptimum probe = lp_minimize(base, objective);
      ++res.stats.lp_calls;
      res.stats.lp_pivots += probe.pivots;
      if (!probe.feasible) {
        // The relaxation itself is empty, so no integer point exists.
        res.stats.presolve_infeasible = true;
        return res;
      }
      if (probe.unbounded) continue;
      const Rat tight = le ? Rat(rows[i].rhs) : Rat(-rows[i].rhs);
      if (probe.value == tight) {
        rows[i].rel = Relation::Eq;
        base.rows[i].rel = Relation::Eq;
        converted = true;
        ++res.stats.implied_equalities;
      }
    }
    if (converted && !lattice_feasible(rows)) {
      res.stats.presolve_infeasible = true;
      return res;
    }
  }

  // Implied zero fixing: a variable whose maximum over the relaxation is
  // zero is zero in every solution. The lattice test ignores signs, so it
  // cannot learn this on its own; materializing each fix as an equality row
  // hands it the consequence of nonnegativity it needs (for instance, a
  // block whose count is forced to zero pins all of its cells, and only then
  // do divisibility obstructions among the remaining variables surface).
  // Only variables already at zero in the minimum-mass optimum can qualify.
  {
    std::vector<Rat> ones(n, Rat(1));
    LpOptimum root = lp_minimize(base, ones);
    ++res.stats.lp_calls;
    res.stats.lp_pivots += root.pivots;
    if (!root.feasible) {
      res.stats.presolve_infeasible = true;
      return res;
    }
    bool fixed_any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (root.solution[j] != 0) continue;
      std::vector<Rat> objective(n, Rat(0));
      objective[j] = Rat(-1);
      LpOptimum up = lp_minimize(base, objective);
      ++res.stats.lp_calls;
      res.stats.lp_pivots += up.pivots;
      if (!up.feasible || up.unbounded || up.value != 0) continue;
      IntRow fix;
      fix.coeffs.assign(n, Int(0));
      fix.coeffs[j] = 1;
      fix.rel = Relation::Eq;
      fix.rhs = 0;
      rows.push_back(fix);
      LinearRow lfix;
      lfix.coeffs.assign(n, Rat(0));
      lfix.coeffs[j] = 1;
      lfix.rel = Relation::Eq;
      lfix.rhs = 0;
      base.rows.push_back(std::move(lfix));
      fixed_any = true;
      ++res.stats.fixed_zero;
    }
    if (fixed_any && !lattice_feasible(rows)) {
      res.stats.presolve_infeasible = true;
      return res;
    }
  }

  // Theoretical magnitude cap for some solution of any feasible instance,
  // used only to bound the search; never added as a row. A node whose
  // relaxation already needs more total mass than n such coordinates can be
  // discarded: the witness below the cap lives in another box.
  Int cap;
  {
    Int amax = 1;
    for (const auto& r : rows) {
      for (const auto& c : r.coeffs) {
        if (abs(c) > amax) amax = abs(c);
      }
      if (abs(r.rhs) > amax) amax = abs(r.rhs);
    }
    std::size_t m = rows.size();
    std::size_t ineq = 0;
    for (const auto& r : rows) {
      if (r.rel != Relation::Eq) ++ineq;
    }
    Int base_mag = Int(m) * amax + 1;
    cap = Int(n + ineq + 1) * boost::multiprecision::pow(base_mag, static_cast<unsigned>(2 * m + 1));
  }
  const Rat mass_cap = Rat(Int(n) * cap);

  auto build_lp = [&](const Node& nd) {
    LinearSystem lp = base;
    for (std::size_t j = 0; j < n; ++j) {
      if (nd.lo[j] > 0) {
        LinearRow lr;
        lr.coeffs.assign(n, Rat(0));
        lr.coeffs[j] = 1;
        lr.rel = Relation::Ge;
        lr.rhs = Rat(nd.lo[j]);
        lp.rows.push_back(std::move(lr));
      }
      if (nd.hi[j]) {
        LinearRow lr;
        lr.coeffs.assign(n, Rat(0));
        lr.coeffs[j] = 1;
        lr.rel = Relation::Le;
        lr.rhs = Rat(*nd.hi[j]);
        lp.rows.push_back(std::move(lr));
      }
    }
    return lp;
  };

  const std::vector<Rat> mass(n, Rat(1));

  // Best-first branch and bound on the minimum-mass relaxation. Ordering by
  // the relaxation bound keeps the search out of the unbounded cancelling
  // directions these systems often have: boxes that can only hold ever
  // heavier points sink in the queue instead of trapping a depth-first dive.
  std::uint64_t seq = 0;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
  Node root;
  root.lo.assign(n, Int(0));
  root.hi.assign(n, std::nullopt);
  root.seq = seq++;
  queue.push(std::move(root));

  while (!queue.empty()) {
    Node nd = queue.top();
    queue.pop();
    bool empty_box = false;
    for (std::size_t j = 0; j < n; ++j) {
      if ((nd.hi[j] && nd.lo[j] > *nd.hi[j]) || nd.lo[j] > cap) {
        empty_box = true;
        break;
      }
    }
    if (empty_box) continue;

    ++res.stats.nodes;
    LpOptimum lp = lp_minimize(build_lp(nd), mass);
    ++res.stats.lp_calls;
    res.stats.lp_pivots += lp.pivots;
    if (!lp.feasible) continue;
    if (lp.unbounded) {
      throw std::logic_error("ilp_feasible: nonnegative mass came out unbounded");
    }
    if (lp.value > mass_cap) continue;

    std::size_t branch = n;
    Rat best_score = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& v = lp.solution[j];
      if (rat_is_integer(v)) continue;
      Rat frac = v - Rat(rat_floor(v));
      Rat score = frac <= Rat(1) - frac ? frac : Rat(1) - frac;
      if (branch == n || score > best_score) {
        branch = j;
        best_score = score;
      }
    }

    std::vector<Int> point;
    point.reserve(n);
    for (std::size_t j = 0; j < n; ++j) point.push_back(rat_floor(lp.solution[j]));
    if (branch == n) {
      // The optimal vertex itself is integral.
      if (!satisfies(rows, point)) {
        throw std::logic_error("ilp_feasible: integral point fails verification");
      }
      res.feasible = true;
      res.solution = std::move(point);
      return res;
    }
    if (satisfies(rows, point)) {
      // Rounding the vertex toward the box floor already works.
      res.feasible = true;
      res.solution = std::move(point);
      return res;
    }

    Int fl = rat_floor(lp.solution[branch]);
    Node ceil_side = nd;
    ceil_side.lo[branch] = fl + 1;
    ceil_side.bound = lp.value;
    ceil_side.seq = seq + 1;
    Node floor_side = std::move(nd);
    floor_side.hi[branch] = floor_side.hi[branch] ? std::min(*floor_side.hi[branch], fl) : fl;
    floor_side.bound = lp.value;
    floor_side.seq = seq;
    seq += 2;
    queue.push(std::move(floor_side));
    queue.push(std::move(ceil_side));
  }
  return res;
}

}  // namespace datavec
