#include "datavec/simplex.hpp"

#include <limits>
#include <stdexcept>

namespace datavec {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense simplex tableau over exact rationals. Column layout: the original
// unknowns, then one slack/surplus per inequality, then one artificial per
// Ge/Eq row; the last column holds the right-hand sides. Pivoting follows
// Bland's rule (first improving column, smallest basic variable among the
// minimum ratios), which rules out cycling.
struct Tableau {
  std::size_t n = 0;     // original unknowns
  std::size_t m = 0;     // rows
  std::size_t cols = 0;  // total variable columns
  std::size_t first_artificial = 0;
  std::vector<std::vector<Rat>> t;
  std::vector<std::size_t> basis;
  std::vector<Rat> d;  // reduced-cost row of the active objective
  std::size_t pivots = 0;

  explicit Tableau(const LinearSystem& sys) {
    n = sys.num_vars;
    m = sys.rows.size();
    for (const auto& row : sys.rows) {
      if (row.coeffs.size() != n) {
        throw std::invalid_argument("simplex: row width does not match num_vars");
      }
    }

    // Normalized copies with nonnegative right-hand sides.
    std::vector<std::vector<Rat>> coef(m);
    std::vector<Relation> rel(m);
    std::vector<Rat> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      coef[i] = sys.rows[i].coeffs;
      rel[i] = sys.rows[i].rel;
      rhs[i] = sys.rows[i].rhs;
      if (rhs[i] < 0) {
        for (auto& c : coef[i]) c = -c;
        rhs[i] = -rhs[i];
        if (rel[i] == Relation::Le) {
          rel[i] = Relation::Ge;
        } else if (rel[i] == Relation::Ge) {
          rel[i] = Relation::Le;
        }
      }
    }

    cols = n;
    std::vector<std::size_t> slack_col(m, kNone);
    std::vector<std::size_t> artif_col(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
      if (rel[i] != Relation::Eq) slack_col[i] = cols++;
    }
    first_artificial = cols;
    for (std::size_t i = 0; i < m; ++i) {
      if (rel[i] != Relation::Le) artif_col[i] = cols++;
    }

    t.assign(m, std::vector<Rat>(cols + 1, Rat(0)));
    basis.assign(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) t[i][j] = coef[i][j];
      t[i][cols] = rhs[i];
      if (rel[i] == Relation::Le) {
        t[i][slack_col[i]] = 1;
        basis[i] = slack_col[i];
      } else {
        if (rel[i] == Relation::Ge) t[i][slack_col[i]] = -1;
        t[i][artif_col[i]] = 1;
        basis[i] = artif_col[i];
      }
    }
  }

  void pivot(std::size_t leave, std::size_t enter) {
    ++pivots;
    Rat piv = t[leave][enter];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols; ++j) {
      if (t[leave][j] != 0) {
        t[leave][j] /= piv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j : nz) t[i][j] -= f * t[leave][j];
      t[i][enter] = 0;
    }
    if (d[enter] != 0) {
      Rat f = d[enter];
      for (std::size_t j : nz) d[j] -= f * t[leave][j];
      d[enter] = 0;
    }
    basis[leave] = enter;
  }

  // Runs Bland iterations on the current reduced-cost row, entering only
  // columns below `limit`. Returns false when an improving column has no
  // blocking row (the objective decreases without bound).
  bool iterate(std::size_t limit) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < limit; ++j) {
        if (d[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;

      std::size_t leave = kNone;
      Rat best_ratio = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rat ratio = t[i][cols] / t[i][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  // Phase 1: minimize the sum of artificials. True iff that minimum is zero,
  // i.e. the system is feasible.
  bool phase1() {
    d.assign(cols + 1, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] >= first_artificial) {
        for (std::size_t j = 0; j <= cols; ++j) d[j] += t[i][j];
      }
    }
    if (!iterate(first_artificial)) {
      throw std::logic_error("simplex: bounded objective found an unbounded ray");
    }
    return d[cols] == 0;
  }

  // After a successful phase 1, pivots leftover zero-level artificials out of
  // the basis and discards rows that are redundant over the real columns, so
  // phase 2 can never push an artificial positive again.
  void evict_artificials() {
    for (std::size_t i = 0; i < m;) {
      if (basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (t[i][j] != 0) {
          enter = j;
          break;
        }
      }
      if (enter != kNone) {
        pivot(i, enter);
        ++i;
      } else {
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        --m;
      }
    }
  }

  std::vector<Rat> extract() const {
    std::vector<Rat> solution(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) solution[basis[i]] = t[i][cols];
    }
    return solution;
  }
};

}  // namespace

LpResult lp_feasible(const LinearSystem& sys) {
  Tableau tab(sys);
  LpResult out;
  out.feasible = tab.phase1();
  out.pivots = tab.pivots;
  if (out.feasible) out.solution = tab.extract();
  return out;
}

LpOptimum lp_minimize(const LinearSystem& sys, const std::vector<Rat>& objective) {
  if (objective.size() != sys.num_vars) {
    throw std::invalid_argument("lp_minimize: objective width does not match num_vars");
  }
  Tableau tab(sys);
  LpOptimum out;
  out.feasible = tab.phase1();
  if (!out.feasible) {
    out.pivots = tab.pivots;
    return out;
  }
  tab.evict_artificials();

  // Phase 2 objective row: d[j] = (cost of basis) . column j - cost_j, so a
  // positive entry marks a column that lowers the objective; the rhs cell
  // then carries the current objective value.
  auto cost = [&](std::size_t j) { return j < tab.n ? objective[j] : Rat(0); };
  tab.d.assign(tab.cols + 1, Rat(0));
  for (std::size_t j = 0; j <= tab.cols; ++j) {
    Rat z = 0;
    for (std::size_t i = 0; i < tab.m; ++i) z += cost(tab.basis[i]) * tab.t[i][j];
    tab.d[j] = z - (j < tab.cols ? cost(j) : Rat(0));
  }
  if (!tab.iterate(tab.first_artificial)) {
    out.unbounded = true;
    out.pivots = tab.pivots;
    return out;
  }
  out.solution = tab.extract();
  out.value = tab.d[tab.cols];
  out.pivots = tab.pivots;
  return out;
}

}  // namespace datavec
