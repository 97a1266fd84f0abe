#include <benchmark/benchmark.h>

#include <vector>

#include "datavec/hnf.hpp"
#include "datavec/ilp.hpp"
#include "datavec/rng.hpp"
#include "datavec/simplex.hpp"

namespace {

using namespace datavec;

LinearSystem random_system(std::size_t rows, std::size_t vars, Rng& rng) {
  LinearSystem sys;
  sys.num_vars = vars;
  for (std::size_t r = 0; r < rows; ++r) {
    LinearRow row;
    row.coeffs.assign(vars, Rat(0));
    for (std::size_t c = 0; c < vars; ++c) row.coeffs[c] = Rat(rng.range(-3, 3));
    row.rel = r % 2 ? Relation::Le : Relation::Ge;
    row.rhs = Rat(rng.range(-5, 5));
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

void BM_lp_feasible(benchmark::State& state) {
  Rng rng(7);
  const auto sys = random_system(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(lp_feasible(sys));
}
BENCHMARK(BM_lp_feasible)->Args({8, 12})->Args({16, 24})->Args({32, 48});

void BM_ilp_feasible(benchmark::State& state) {
  Rng rng(13);
  const auto sys = random_system(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ilp_feasible(sys));
}
BENCHMARK(BM_ilp_feasible)->Args({4, 6})->Args({8, 10});

void BM_hnf(benchmark::State& state) {
  Rng rng(21);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  for (auto& row : m)
    for (auto& x : row) x = Int(rng.range(-9, 9));
  for (auto _ : state) benchmark::DoNotOptimize(hnf(m));
}
BENCHMARK(BM_hnf)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
