#include "datavec/hnf.hpp"

#include <stdexcept>
#include <utility>

namespace datavec {

namespace {

void check_rectangular(const std::vector<std::vector<Int>>& m) {
  for (const auto& row : m) {
    if (row.size() != m.front().size()) {
      throw std::invalid_argument("hnf: matrix rows have unequal widths");
    }
  }
}

}  // namespace

HnfResult hnf(const std::vector<std::vector<Int>>& m) {
  HnfResult res;
  res.h = m;
  if (!m.empty()) check_rectangular(m);
  const std::size_t rows = m.size();
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  res.u.assign(cols, std::vector<Int>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j) res.u[j][j] = 1;

  auto col_negate = [&](std::size_t j) {
    for (std::size_t i = 0; i < rows; ++i) res.h[i][j] = -res.h[i][j];
    for (std::size_t i = 0; i < cols; ++i) res.u[i][j] = -res.u[i][j];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(res.h[i][a], res.h[i][b]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(res.u[i][a], res.u[i][b]);
  };
  // col_a -= q * col_b
  auto col_addmul = [&](std::size_t a, std::size_t b, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i) res.h[i][a] -= q * res.h[i][b];
    for (std::size_t i = 0; i < cols; ++i) res.u[i][a] -= q * res.u[i][b];
  };

  std::size_t p = 0;  // next pivot column
  for (std::size_t i = 0; i < rows && p < cols; ++i) {
    // Euclidean reduction across columns p.. until row i holds at most one
    // nonzero entry there.
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = p; j < cols; ++j) {
        if (res.h[i][j] == 0) continue;
        if (best == cols || abs(res.h[i][j]) < abs(res.h[i][best])) best = j;
      }
      if (best == cols) break;  // row i is zero from p on: no pivot here
      bool lone = true;
      for (std::size_t j = p; j < cols; ++j) {
        if (j != best && res.h[i][j] != 0) {
          Int q = floor_div(res.h[i][j], res.h[i][best]);
          col_addmul(j, best, q);
          if (res.h[i][j] != 0) lone = false;
        }
      }
      if (lone) {
        col_swap(p, best);
        break;
      }
    }
    if (res.h[i][p] == 0) continue;
    if (res.h[i][p] < 0) col_negate(p);
    // Canonical reduction of earlier columns against the new pivot.
    for (std::size_t j = 0; j < p; ++j) {
      Int q = floor_div(res.h[i][j], res.h[i][p]);
      col_addmul(j, p, q);
    }
    res.pivots.emplace_back(i, p);
    ++p;
  }
  return res;
}

Int integer_determinant(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("integer_determinant: matrix not square");
  }
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = n;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m[i][k] != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

SubgroupSolver::SubgroupSolver(std::size_t dim, std::vector<std::vector<Int>> generators)
    : dim_(dim), count_(generators.size()) {
  if (dim == 0) throw std::invalid_argument("subgroup solver: dimension must be positive");
  std::vector<std::vector<Int>> m(dim, std::vector<Int>(count_, 0));
  for (std::size_t j = 0; j < count_; ++j) {
    if (generators[j].size() != dim) {
      throw std::invalid_argument("subgroup solver: generator has wrong dimension");
    }
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = generators[j][i];
  }
  nf_ = hnf(m);
}

namespace {
std::vector<std::vector<Int>> tuples_to_columns(const std::vector<Tuple>& generators) {
  std::vector<std::vector<Int>> cols;
  cols.reserve(generators.size());
  for (const auto& t : generators) cols.push_back(t.entries());
  return cols;
}
}  // namespace

SubgroupSolver::SubgroupSolver(std::size_t dim, const std::vector<Tuple>& generators)
    : SubgroupSolver(dim, tuples_to_columns(generators)) {}

std::optional<std::vector<Int>> SubgroupSolver::solve(const std::vector<Int>& target) const {
  if (target.size() != dim_) {
    throw std::invalid_argument("subgroup solver: target has wrong dimension");
  }
  std::vector<Int> y(count_, 0);
  std::size_t next_pivot = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (next_pivot < nf_.pivots.size() && nf_.pivots[next_pivot].first == i) {
      std::size_t pcol = nf_.pivots[next_pivot].second;
      Int r = target[i];
      for (std::size_t j = 0; j < pcol; ++j) r -= nf_.h[i][j] * y[j];
      const Int& piv = nf_.h[i][pcol];
      if (r % piv != 0) return std::nullopt;
      y[pcol] = r / piv;
      ++next_pivot;
    }
  }
  // Verify every row (covers rows without pivots and guards the whole solve).
  for (std::size_t i = 0; i < dim_; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < count_; ++j) {
      if (y[j] != 0) acc += nf_.h[i][j] * y[j];
    }
    if (acc != target[i]) return std::nullopt;
  }
  std::vector<Int> z(count_, 0);
  for (std::size_t r = 0; r < count_; ++r) {
    Int acc = 0;
    for (std::size_t j = 0; j < count_; ++j) {
      if (y[j] != 0) acc += nf_.u[r][j] * y[j];
    }
    z[r] = acc;
  }
  return z;
}

std::optional<std::vector<Int>> SubgroupSolver::solve(const Tuple& target) const {
  return solve(target.entries());
}

bool SubgroupSolver::contains(const Tuple& target) const { return solve(target).has_value(); }

bool subgroup_member(std::size_t dim, const std::vector<Tuple>& generators, const Tuple& target) {
  return SubgroupSolver(dim, generators).contains(target);
}

}  // namespace datavec
