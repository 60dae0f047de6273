#include <meanlab/expr.hpp>
#include <meanlab/families.hpp>
#include <meanlab/invariance.hpp>
#include <meanlab/means.hpp>
#include <meanlab/partials.hpp>
#include <meanlab/wronskian.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace meanlab;

const Interval kDomain{0.5, 4.0};

FunctionPair hyperbolicPair() {
  return FunctionPair(Expr::parse("sinh(x)"), Expr::parse("cosh(x)"), kDomain);
}

void BM_ParseAndDifferentiate(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Expr e = Expr::parse("exp(2*x) * (1 + x^2) / cosh(x)");
    Expr d = e.derivative(order);
    benchmark::DoNotOptimize(d.eval(1.7));
  }
}
BENCHMARK(BM_ParseAndDifferentiate)->Arg(1)->Arg(2)->Arg(4);

void BM_RootSolveEval(benchmark::State& state) {
  auto pair = hyperbolicPair();
  WeightPair w{2.0, 1.0};
  double x = 1.0, y = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bajraktarevicEval(pair, x, y, w));
    x = 0.7 + 0.3 * (x - 0.7 < 1.0 ? x : 0.7);
  }
}
BENCHMARK(BM_RootSolveEval);

void BM_ClosedFormTrig(benchmark::State& state) {
  FamilySpec spec{-1.0, Expr::parse("2 + sin(x)"), Interval{0.1, 0.9}};
  auto fam = build(spec);
  auto branch = resolveBranch(fam.first, -1.0);
  WeightPair w{2.0, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        closedFormMean(spec, branch, 0.3, 0.8, w, PairSlot::First));
}
BENCHMARK(BM_ClosedFormTrig);

void BM_DiagonalPartial(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  auto pair = hyperbolicPair();
  WronskianProfile profile(pair);
  WeightPair w{2.0, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(diagonalPartial(profile, w, 2.0, order));
}
BENCHMARK(BM_DiagonalPartial)->DenseRange(1, 4);

void BM_InvarianceGrid(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  auto fam = build(FamilySpec{1.0, Expr::parse("exp(x)"), Interval{0.5, 2.0}});
  WeightPair w{2.0, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        checkArithmeticInvariance(fam.first, fam.second, w, grid, 1e-9));
}
BENCHMARK(BM_InvarianceGrid)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
