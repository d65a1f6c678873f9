#include <benchmark/benchmark.h>

#include "psv/recon.hpp"

using namespace psv;

namespace {

std::array<SmoothChar, 3> generic_chi(const PadicContext* ctx) {
  return {SmoothChar::trivial(ctx), SmoothChar::unramified(ctx, Cyclo(3L)),
          SmoothChar::unramified(ctx, Cyclo(5L))};
}

void BM_cyclo_mul(benchmark::State& state) {
  Cyclo a = Cyclo(Rational(3, 7)) * Cyclo::zeta(8, 3);
  Cyclo b = Cyclo(1L) + Cyclo::zeta(8);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_cyclo_mul);

void BM_residue_mul(benchmark::State& state) {
  PadicContext ctx(3, 1, 3);
  ResidueRing r = ctx.ring(3);
  RElem a = r.from_int(14), b = r.from_int(22);
  for (auto _ : state) benchmark::DoNotOptimize(r.mul(a, b));
}
BENCHMARK(BM_residue_mul);

void BM_iwasawa(benchmark::State& state) {
  PadicContext ctx(3, 1, 4);
  MatF g(&ctx, 3);
  long vals[9] = {5, 7, 1, 3, 2, 8, 6, 4, 9};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      g.at(i, j) = FScalar::from_rational(
          &ctx, Rational(vals[i * 3 + j], i == j ? 3 : 1));
  for (auto _ : state) benchmark::DoNotOptimize(iwasawa_decompose(g));
}
BENCHMARK(BM_iwasawa);

void BM_model_build(benchmark::State& state) {
  long p = state.range(0);
  int M = static_cast<int>(state.range(1));
  PadicContext ctx(p, 1, M);
  for (auto _ : state)
    benchmark::DoNotOptimize(FlagModel::build(&ctx, 3, M));
}
BENCHMARK(BM_model_build)->Args({2, 1})->Args({3, 1})->Args({2, 2});

void BM_ps_eval(benchmark::State& state) {
  PadicContext ctx(3, 1, 2);
  FlagModel fm = FlagModel::build(&ctx, 3, 2);
  auto chi = generic_chi(&ctx);
  PSVector f;
  f.model = &fm;
  f.chi = chi;
  f.values.assign(fm.size(), Cyclo(1L));
  MatF g = MatF::from_ints(&ctx, 3, {2, 5, 1, 3, 1, 7, 9, 4, 1});
  for (auto _ : state) benchmark::DoNotOptimize(ps_eval(f, g));
}
BENCHMARK(BM_ps_eval);

void BM_hecke_tau(benchmark::State& state) {
  PadicContext ctx(2, 1, 2);
  FlagModel fm = FlagModel::build(&ctx, 3, 2);
  auto chi = generic_chi(&ctx);
  std::vector<PSVector> eig = zlplus_eigenspace(fm, chi);
  MatF z1 = MatF::identity(&ctx, 3);
  z1.at(0, 0) = FScalar::uniformizer_pow(&ctx, 1);
  z1.at(1, 1) = FScalar::uniformizer_pow(&ctx, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hecke_tau(z1, eig[0]));
}
BENCHMARK(BM_hecke_tau);

void BM_eigenspace(benchmark::State& state) {
  PadicContext ctx(2, 1, 2);
  FlagModel fm = FlagModel::build(&ctx, 3, 2);
  auto chi = generic_chi(&ctx);
  for (auto _ : state)
    benchmark::DoNotOptimize(zlplus_eigenspace(fm, chi));
}
BENCHMARK(BM_eigenspace);

}  // namespace

BENCHMARK_MAIN();
