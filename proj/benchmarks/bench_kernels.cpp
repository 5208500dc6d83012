#include <benchmark/benchmark.h>

#include <cmath>

#include "lamtop/matrixlab.hpp"
#include "lamtop/spectra.hpp"
#include "lamtop/symbol.hpp"

using namespace lamtop;

namespace {

const RationalRotation kRot13(1, 3);
const FourierSymbol kPhi({{1, Complex(1.0)}, {0, Complex(-std::cbrt(2.0))}});
const FourierSymbol kProd = product_symbol(twist(kPhi, kRot13), kRot13, 3);

void BM_ProductSymbol(benchmark::State& state) {
  long q = state.range(0);
  RationalRotation r(1, q);
  FourierSymbol tw = twist(kPhi, r);
  for (auto _ : state) {
    benchmark::DoNotOptimize(product_symbol(tw, r, q));
  }
}
BENCHMARK(BM_ProductSymbol)->Arg(2)->Arg(3)->Arg(6)->Arg(12);

void BM_SupNorm(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sup_norm(kPhi));
  }
}
BENCHMARK(BM_SupNorm);

void BM_MinDistance(benchmark::State& state) {
  CircleSeed seed = make_circle_seed(kProd, 4096);
  Complex w(0.3, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_distance(kProd, seed, w, 1e-9, -1.0));
  }
}
BENCHMARK(BM_MinDistance);

void BM_Winding(benchmark::State& state) {
  Complex mu(-2.0, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(winding_number(kProd, mu));
  }
}
BENCHMARK(BM_Winding);

void BM_BuildLambdaToeplitz(benchmark::State& state) {
  long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_lambda_toeplitz(kPhi, kRot13, n));
  }
}
BENCHMARK(BM_BuildLambdaToeplitz)->Arg(256)->Arg(1024);

void BM_OpNorm(benchmark::State& state) {
  long n = state.range(0);
  DenseOperator t = build_lambda_toeplitz(kPhi, kRot13, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(op_norm(t));
  }
}
BENCHMARK(BM_OpNorm)->Arg(256)->Arg(1024);

void BM_SmallestSingular(benchmark::State& state) {
  long n = state.range(0);
  DenseOperator t = build_lambda_toeplitz(kPhi, kRot13, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smallest_singular(t, Complex(2.0)));
  }
}
BENCHMARK(BM_SmallestSingular)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
