// Serial reference versus OpenMP-parallel kernels.
#include <benchmark/benchmark.h>

#include "ddal/crosscheck.hpp"
#include "ddal/entailment.hpp"

namespace {

// A valid query forces the oracle to visit every model.
ddal::Theory three_actions() {
  return ddal::parse_theory("actions a b c\nfact P(a) \\/ F(b)\n");
}

const ddal::Formula& valid_query(const ddal::Theory& t) {
  static const ddal::Formula q = ddal::parse_formula("P(a) \\/ F(b) \\/ P(c * !c)", t.vocabulary);
  return q;
}

void BM_OracleSerial(benchmark::State& state) {
  const ddal::Theory t = three_actions();
  for (auto _ : state) benchmark::DoNotOptimize(ddal::oracle_entails_serial(t, valid_query(t)));
}
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);

void BM_OracleParallel(benchmark::State& state) {
  const ddal::Theory t = three_actions();
  for (auto _ : state) benchmark::DoNotOptimize(ddal::oracle_entails(t, valid_query(t)));
}
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond);

void BM_EntailsSearch(benchmark::State& state) {
  const ddal::Theory t = three_actions();
  for (auto _ : state) benchmark::DoNotOptimize(ddal::entails(t, valid_query(t)).holds);
}
BENCHMARK(BM_EntailsSearch)->Unit(benchmark::kMicrosecond);

ddal::CrosscheckConfig bench_config() {
  ddal::CrosscheckConfig cfg;
  cfg.cases = 20;
  return cfg;
}

void BM_CrosscheckSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(ddal::run_crosscheck_serial(bench_config()).passed());
}
BENCHMARK(BM_CrosscheckSerial)->Unit(benchmark::kMillisecond);

void BM_CrosscheckParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(ddal::run_crosscheck(bench_config()).passed());
}
BENCHMARK(BM_CrosscheckParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
