#include <benchmark/benchmark.h>

#include "drinfeld2/phi.hpp"
#include "drinfeld2/snf.hpp"
#include "drinfeld2/witt.hpp"

using namespace d2;

static void BM_WittMul(benchmark::State& state) {
  int64_t p = state.range(0);
  int m = static_cast<int>(state.range(1));
  auto k = FqCtx::get(p, 2);
  Rng rng(1);
  std::vector<Fq> a, b;
  for (int i = 0; i < m; ++i) {
    a.push_back(random_fq(k, rng));
    b.push_back(random_fq(k, rng));
  }
  WittVec<Fq> x(a), y(b);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_WittMul)->Args({2, 3})->Args({3, 4})->Args({5, 4});

static void BM_Snf4x4(benchmark::State& state) {
  auto R = ZqCtx::get(3, 4, 1);
  Rng rng(2);
  Mat<Zq> M(4, 4, Zq::zero(R));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) M.at(i, j) = random_zq(R, rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf_solve(M));
}
BENCHMARK(BM_Snf4x4);

static void BM_PhiRoundtrip(benchmark::State& state) {
  auto R = ZqCtx::get(2, 6, 2);
  auto k = R->residue_field();
  auto C = QpCtx::get(2, 10);
  ChartPoint pt{k, Fq::gen(k), Fq::zero(k)};
  for (auto _ : state) {
    SpecialDieudonne M = phi_inverse(pt, R);
    benchmark::DoNotOptimize(phi_forward(M, 6, C));
  }
}
BENCHMARK(BM_PhiRoundtrip);

BENCHMARK_MAIN();
