#include <benchmark/benchmark.h>

#include <random>

#include "ptwell/actions.hpp"
#include "ptwell/fdsolve.hpp"
#include "ptwell/quantization.hpp"

using namespace ptwell;

static void BM_ActionSet(benchmark::State& state) {
  const ActionContext ctx(PerturbedPotential::quartic(), -1.0, static_cast<int>(state.range(0)));
  const cplx E(-1.02, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(action_set(ctx, E, 1e-3));
}
BENCHMARK(BM_ActionSet)->Arg(64)->Arg(128)->Arg(256);

static void BM_EvalF(benchmark::State& state) {
  const ActionContext ctx(PerturbedPotential::quartic(), -1.0);
  const SpectralParams p(0.2, 1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(eval_f(ctx, cplx(-1.05, 1e-4), p));
}
BENCHMARK(BM_EvalF);

static void BM_PolyRoots(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<cplx> c(state.range(0) + 1);
  for (auto& x : c) x = cplx(g(rng), g(rng));
  const ComplexPolynomial p(c);
  for (auto _ : state) benchmark::DoNotOptimize(poly_roots(p));
}
BENCHMARK(BM_PolyRoots)->Arg(4)->Arg(8)->Arg(16);

static void BM_ShiftedLU(benchmark::State& state) {
  const auto op = assemble(PerturbedPotential::quartic(), Grid(5.0, static_cast<int>(state.range(0))), 0.01, 1e-3);
  std::vector<cplx> b(op.size(), cplx(1.0, 0.5));
  for (auto _ : state) {
    ShiftedLU lu(op, cplx(-0.5, 0.01));
    auto x = b;
    lu.solve_in_place(x);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ShiftedLU)->RangeMultiplier(2)->Range(1000, 16000)->Complexity(benchmark::oN);

static void BM_EigsNear(benchmark::State& state) {
  const auto op = assemble(PerturbedPotential::quartic(), Grid(5.0, 4000), 0.01, 1e-3);
  const ArnoldiOptions opt{static_cast<int>(state.range(0)), 1e-10, 20};
  for (auto _ : state) benchmark::DoNotOptimize(eigs_near(op, cplx(-0.5, 0.0), opt));
}
BENCHMARK(BM_EigsNear)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
