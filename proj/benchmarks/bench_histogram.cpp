#include <benchmark/benchmark.h>

#include <map>
#include <set>
#include <vector>

#include "datavec/histogram.hpp"
#include "datavec/interner.hpp"
#include "datavec/rng.hpp"

namespace {

using namespace datavec;

// A degree-n histogram built as a sum of n random simple ones.
Histogram random_histogram(std::size_t rows, std::size_t degree, Rng& rng) {
  std::set<DataValue> row_set;
  for (std::size_t i = 0; i < rows; ++i) row_set.insert(DataValue{i});
  std::map<std::pair<DataValue, DataValue>, Int> cells;
  for (std::size_t part = 0; part < degree; ++part) {
    std::set<std::uint64_t> cols;
    while (cols.size() < rows) cols.insert(100 + rng.below(2 * rows));
    auto it = cols.begin();
    for (std::size_t r = 0; r < rows; ++r, ++it) cells[{DataValue{r}, DataValue{*it}}] += 1;
  }
  return Histogram::make(row_set, std::move(cells));
}

void BM_decompose(benchmark::State& state) {
  Rng rng(99);
  const auto h = random_histogram(static_cast<std::size_t>(state.range(0)),
                                  static_cast<std::size_t>(state.range(1)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(h));
  }
}

BENCHMARK(BM_decompose)->Args({2, 4})->Args({4, 16})->Args({6, 64});

}  // namespace

BENCHMARK_MAIN();
