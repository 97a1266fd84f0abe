#include <benchmark/benchmark.h>

#include "datavec/expressibility.hpp"
#include "datavec/oracle.hpp"
#include "datavec/reversibility.hpp"
#include "datavec/rng.hpp"

namespace {

using namespace datavec;

void BM_is_permutation_sum(benchmark::State& state) {
  Rng rng(5);
  InstanceShape shape;
  shape.dim = 2;
  shape.member_count = static_cast<std::size_t>(state.range(0));
  const auto inst = random_instance(shape, rng);
  for (auto _ : state) benchmark::DoNotOptimize(is_permutation_sum(inst, false));
}
BENCHMARK(BM_is_permutation_sum)->Arg(2)->Arg(3);

// The subgroup route on a large reversible member set.
void BM_fast_route(benchmark::State& state) {
  Rng rng(17);
  InstanceShape shape;
  shape.dim = 10;
  shape.member_count = static_cast<std::size_t>(state.range(0)) / 2;
  shape.mirrored = true;
  shape.max_member_support = 10;
  shape.max_target_support = 10;
  shape.entry_lo = -3;
  shape.entry_hi = 3;
  const auto inst = random_instance(shape, rng);
  const auto report = is_reversible_set(inst.members());
  if (!report.reversible) {
    state.SkipWithError("mirrored set should be reversible");
    return;
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(fast_is_permutation_sum(inst, *report.certificate, false));
}
BENCHMARK(BM_fast_route)->Arg(20)->Arg(100);

}  // namespace
