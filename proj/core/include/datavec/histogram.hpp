#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "datavec/numbers.hpp"
#include "datavec/vector.hpp"

namespace datavec {

// A table of nonnegative integers indexed by (row, column) data values whose
// row index set is fixed and whose row sums all equal one common value, the
// degree; column sums never exceed the degree. Only positive cells are stored.
class Histogram {
 public:
  // Validating factory. Every row key must come from `rows`, cells must be
  // nonnegative (zeros are dropped), all row sums must agree, and no column
  // sum may exceed the common row sum. An empty row set forces empty cells
  // and degree zero.
  static Histogram make(std::set<DataValue> rows,
                        std::map<std::pair<DataValue, DataValue>, Int> cells);

  const std::set<DataValue>& rows() const { return rows_; }
  const std::map<std::pair<DataValue, DataValue>, Int>& cells() const { return cells_; }
  const Int& degree() const { return degree_; }

  // Cell lookup; zero when the cell is absent.
  Int at(DataValue row, DataValue col) const;
  // Columns holding at least one positive cell, in id order.
  std::set<DataValue> columns() const;
  // Columns whose sum equals the degree (all of them when degree is zero is
  // impossible since such columns would hold no positive cells).
  std::set<DataValue> saturated_columns() const;
  bool same_rows(const Histogram& other) const { return rows_ == other.rows_; }

  // Cell-wise sum; requires identical row sets. Degrees add.
  Histogram operator+(const Histogram& other) const;
  bool operator==(const Histogram& other) const = default;

 private:
  Histogram() = default;
  std::set<DataValue> rows_;
  std::map<std::pair<DataValue, DataValue>, Int> cells_;
  Int degree_ = 0;
};

// A degree-one histogram: each row holds a single 1 and columns are hit at
// most once, i.e. exactly an injection from the row set into data values.
class SimpleHistogram {
 public:
  // Validates that `h` has degree one.
  static SimpleHistogram make(Histogram h);
  static SimpleHistogram from_injection(const FiniteInjection& pi);

  const Histogram& histogram() const { return hist_; }
  FiniteInjection to_injection() const;
  bool operator==(const SimpleHistogram& other) const = default;

 private:
  explicit SimpleHistogram(Histogram h) : hist_(std::move(h)) {}
  Histogram hist_;
};

// Pushes `v` through `h`: the result maps each column to the sum over rows of
// v(row) * h(row, column). Requires supp(v) to lie inside the rows of `h`.
// When `h` is the cell-wise sum of simple histograms, this equals the sum of
// the corresponding pushforwards of `v`.
DataVector eval(const DataVector& v, const Histogram& h);

// Splits one simple histogram off `h` (degree must be positive) such that the
// remainder is again a histogram over the same rows, of degree one less.
// The extracted part covers every row and every saturated column.
SimpleHistogram extract_simple(const Histogram& h);

// Full split into degree-many simple histograms over the same rows, summing
// back to `h`. Throws BudgetExceeded when the degree exceeds `max_parts`.
std::vector<SimpleHistogram> decompose(const Histogram& h, std::size_t max_parts = 1000000);

}  // namespace datavec
