#include "gradedlc/cech.hpp"
#include "gradedlc/lcmod.hpp"
#include "gradedlc/snf.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace gradedlc;

namespace {

ExecutionPolicy policy_for(std::int64_t parallel) {
  return parallel ? ExecutionPolicy{Execution::parallel, 0} : ExecutionPolicy{Execution::serial, 1};
}

// Reisner: all 64 classes, integral modules with actions.
void BM_AssembleIntegral(benchmark::State& state) {
  for (auto _ : state) {
    LocalCohomology lc(builtin_reisner(), policy_for(state.range(0)));
    benchmark::DoNotOptimize(lc.integral().size());
  }
}
BENCHMARK(BM_AssembleIntegral)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_AssembleModular(benchmark::State& state) {
  for (auto _ : state) {
    LocalCohomology lc(builtin_reisner(), policy_for(state.range(0)));
    benchmark::DoNotOptimize(lc.modular(2).size());
  }
}
BENCHMARK(BM_AssembleModular)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_AssemblePlusP(benchmark::State& state) {
  for (auto _ : state) {
    LocalCohomology lc(builtin_reisner(), policy_for(state.range(0)));
    benchmark::DoNotOptimize(lc.plus_p(2).modules.size());
  }
}
BENCHMARK(BM_AssemblePlusP)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

IntMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> v(-9, 9);
  IntMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = v(rng);
  return a;
}

SnfArithmetic arithmetic_for(std::int64_t bigint) { return bigint ? SnfArithmetic::bigint_only : SnfArithmetic::automatic; }

// Dense small matrices, still inside int64. range(1): 0 checked int64 first, 1 GMP only
void BM_SnfDense(benchmark::State& state) {
  const IntMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    auto s = snf(a, Transforms::both, arithmetic_for(state.range(1)));
    benchmark::DoNotOptimize(s.rank);
  }
}
BENCHMARK(BM_SnfDense)->ArgsProduct({{4, 6}, {0, 1}})->ArgNames({"n", "bigint"});

// Largest differential of the Reisner Cech piece at the top class: the real workload.
const IntMatrix& cech_differential() {
  static const IntMatrix d = [] {
    auto piece = graded_cech(builtin_reisner(), full_mask(6));
    IntMatrix best;
    for (const auto& m : piece.complex.differentials)
      if (m.rows() * m.cols() > best.rows() * best.cols()) best = m;
    return best;
  }();
  return d;
}

void BM_SnfCech(benchmark::State& state) {
  const IntMatrix& a = cech_differential();
  for (auto _ : state) {
    auto s = snf(a, Transforms::both, arithmetic_for(state.range(0)));
    benchmark::DoNotOptimize(s.rank);
  }
  state.counters["rows"] = static_cast<double>(a.rows());
  state.counters["cols"] = static_cast<double>(a.cols());
}
BENCHMARK(BM_SnfCech)->Arg(0)->Arg(1)->ArgName("bigint")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
