#include "datavec/histogram.hpp"

#include <algorithm>
#include <stdexcept>

#include "datavec/errors.hpp"
#include "datavec/matching.hpp"

namespace datavec {

Histogram Histogram::make(std::set<DataValue> rows,
                          std::map<std::pair<DataValue, DataValue>, Int> cells) {
  Histogram h;
  h.rows_ = std::move(rows);
  for (auto it = cells.begin(); it != cells.end();) {
    if (it->second < 0) {
      throw std::invalid_argument("histogram: negative cell");
    }
    if (!h.rows_.count(it->first.first)) {
      throw std::invalid_argument("histogram: cell row outside the row set");
    }
    if (it->second == 0) {
      it = cells.erase(it);
    } else {
      ++it;
    }
  }
  std::map<DataValue, Int> row_sum;
  std::map<DataValue, Int> col_sum;
  for (const auto& [key, val] : cells) {
    row_sum[key.first] += val;
    col_sum[key.second] += val;
  }
  Int degree = 0;
  bool first = true;
  for (DataValue r : h.rows_) {
    Int s = 0;
    if (auto it = row_sum.find(r); it != row_sum.end()) s = it->second;
    if (first) {
      degree = s;
      first = false;
    } else if (s != degree) {
      throw std::invalid_argument("histogram: row sums differ");
    }
  }
  if (h.rows_.empty() && !cells.empty()) {
    throw std::invalid_argument("histogram: cells without rows");
  }
  for (const auto& [c, s] : col_sum) {
    if (s > degree) {
      throw std::invalid_argument("histogram: column sum exceeds the degree");
    }
  }
  h.cells_ = std::move(cells);
  h.degree_ = degree;
  return h;
}

Int Histogram::at(DataValue row, DataValue col) const {
  auto it = cells_.find({row, col});
  return it == cells_.end() ? Int(0) : it->second;
}

std::set<DataValue> Histogram::columns() const {
  std::set<DataValue> out;
  for (const auto& [key, val] : cells_) out.insert(key.second);
  return out;
}

std::set<DataValue> Histogram::saturated_columns() const {
  std::map<DataValue, Int> col_sum;
  for (const auto& [key, val] : cells_) col_sum[key.second] += val;
  std::set<DataValue> out;
  for (const auto& [c, s] : col_sum) {
    if (s == degree_) out.insert(c);
  }
  return out;
}

Histogram Histogram::operator+(const Histogram& other) const {
  if (!same_rows(other)) {
    throw std::invalid_argument("histogram sum: row sets differ");
  }
  auto cells = cells_;
  for (const auto& [key, val] : other.cells_) cells[key] += val;
  return make(rows_, std::move(cells));
}

SimpleHistogram SimpleHistogram::make(Histogram h) {
  if (h.degree() != 1) {
    throw std::invalid_argument("simple histogram: degree must be one");
  }
  return SimpleHistogram(std::move(h));
}

SimpleHistogram SimpleHistogram::from_injection(const FiniteInjection& pi) {
  if (pi.map().empty()) {
    throw std::invalid_argument("simple histogram: injection domain is empty");
  }
  std::set<DataValue> rows;
  std::map<std::pair<DataValue, DataValue>, Int> cells;
  for (const auto& [a, b] : pi.map()) {
    rows.insert(a);
    cells[{a, b}] = 1;
  }
  return SimpleHistogram(Histogram::make(std::move(rows), std::move(cells)));
}

FiniteInjection SimpleHistogram::to_injection() const {
  std::map<DataValue, DataValue> m;
  for (const auto& [key, val] : hist_.cells()) m[key.first] = key.second;
  return FiniteInjection::from_map(std::move(m));
}

DataVector eval(const DataVector& v, const Histogram& h) {
  for (DataValue a : v.support()) {
    if (!h.rows().count(a)) {
      throw std::invalid_argument("eval: vector support escapes the histogram rows");
    }
  }
  std::map<DataValue, Tuple> acc;
  for (const auto& [key, val] : h.cells()) {
    const Tuple& t = v.value(key.first);
    if (t.is_zero()) continue;
    auto [it, inserted] = acc.try_emplace(key.second, t.scaled(val));
    if (!inserted) it->second += t.scaled(val);
  }
  return DataVector::from_entries(v.dim(), std::move(acc));
}

SimpleHistogram extract_simple(const Histogram& h) {
  if (h.degree() <= 0) {
    throw std::invalid_argument("extract_simple: histogram degree must be positive");
  }
  std::vector<DataValue> row_ids(h.rows().begin(), h.rows().end());
  std::set<DataValue> col_set = h.columns();
  std::vector<DataValue> col_ids(col_set.begin(), col_set.end());
  std::map<DataValue, std::size_t> row_index;
  std::map<DataValue, std::size_t> col_index;
  for (std::size_t i = 0; i < row_ids.size(); ++i) row_index[row_ids[i]] = i;
  for (std::size_t j = 0; j < col_ids.size(); ++j) col_index[col_ids[j]] = j;

  BipartiteGraph g;
  g.left_count = row_ids.size();
  g.right_count = col_ids.size();
  for (const auto& [key, val] : h.cells()) {
    g.edges.emplace_back(row_index.at(key.first), col_index.at(key.second));
  }

  Matching row_side = max_bipartite_matching(g);
  if (row_side.size() != row_ids.size()) {
    throw std::logic_error("extract_simple: no matching covers every row");
  }

  std::set<DataValue> saturated = h.saturated_columns();
  std::vector<std::size_t> saturated_idx;
  for (DataValue c : saturated) saturated_idx.push_back(col_index.at(c));

  // Match the saturated columns directly (as the left side of the transposed
  // graph) so the cover is guaranteed rather than hoped for.
  BipartiteGraph gt;
  gt.left_count = saturated_idx.size();
  gt.right_count = row_ids.size();
  std::map<std::size_t, std::size_t> sat_pos;
  for (std::size_t k = 0; k < saturated_idx.size(); ++k) sat_pos[saturated_idx[k]] = k;
  for (const auto& [l, r] : g.edges) {
    if (auto it = sat_pos.find(r); it != sat_pos.end()) gt.edges.emplace_back(it->second, l);
  }
  Matching sat_side_t = max_bipartite_matching(gt);
  if (sat_side_t.size() != saturated_idx.size()) {
    throw std::logic_error("extract_simple: no matching covers every saturated column");
  }
  Matching col_side;
  for (const auto& [k, l] : sat_side_t) col_side.emplace_back(l, saturated_idx[k]);

  std::vector<std::size_t> all_rows(row_ids.size());
  for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
  Matching merged = combine_matchings(row_side, col_side, g, all_rows, saturated_idx);

  std::map<std::pair<DataValue, DataValue>, Int> cells;
  for (const auto& [l, r] : merged) {
    cells[{row_ids[l], col_ids[r]}] = 1;
  }
  return SimpleHistogram::make(Histogram::make(h.rows(), std::move(cells)));
}

std::vector<SimpleHistogram> decompose(const Histogram& h, std::size_t max_parts) {
  if (h.degree() > Int(max_parts)) {
    throw BudgetExceeded("decompose: histogram degree exceeds the part budget");
  }
  std::vector<SimpleHistogram> parts;
  Histogram cur = h;
  while (cur.degree() > 0) {
    SimpleHistogram part = extract_simple(cur);
    auto cells = cur.cells();
    for (const auto& [key, val] : part.histogram().cells()) {
      auto it = cells.find(key);
      it->second -= val;
    }
    cur = Histogram::make(cur.rows(), std::move(cells));
    parts.push_back(std::move(part));
  }
  return parts;
}

}  // namespace datavec
