#include <benchmark/benchmark.h>

#include "lenseq/analysis.hpp"
#include "lenseq/geometry.hpp"
#include "lenseq/sequence.hpp"
#include "lenseq/underground.hpp"

namespace {

using namespace lenseq;

const Seed kVesica{3, 1, 3};

void BM_Extend(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SequenceWindow w = extend(kVesica, n, n);
    benchmark::DoNotOptimize(w.terms().data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Extend)->Range(8, 512)->Complexity();

void BM_Factorize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SequenceWindow w = extend(kVesica, n, n);
  for (auto _ : state) {
    UndergroundWindow f = factorize(w);
    benchmark::DoNotOptimize(f.terms.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Factorize)->Range(8, 256)->Complexity();

void BM_DivisibilitySweep(benchmark::State& state) {
  // The exact integrality test across a block of small seeds, the same shape
  // of work the acceptance sweep does at scale.
  const int lim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    int hits = 0;
    for (int a = -lim; a <= lim; ++a) {
      for (int b = 1; b <= lim; ++b) {
        for (int c = -lim; c <= lim; ++c) {
          hits += divisibility_exact({a, b, c});
        }
      }
    }
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_DivisibilitySweep)->Arg(6)->Arg(10);

void BM_BinetEval(benchmark::State& state) {
  BinetForm form = binet_form(kVesica);
  long n = state.range(0);
  for (auto _ : state) {
    Rational v = binet_eval(form, n);
    benchmark::DoNotOptimize(v.get_num().get_mpz_t());
  }
}
BENCHMARK(BM_BinetEval)->Arg(12)->Arg(48);

void BM_ChainLayout(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SequenceWindow w = extend(kVesica, n, n);
  for (auto _ : state) {
    ChainLayout l = chain_layout(w);
    benchmark::DoNotOptimize(l.chain.data());
  }
}
BENCHMARK(BM_ChainLayout)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
