// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <benchmark/benchmark.h>

#include "ccres/model.hpp"
#include "ccres/scanner.hpp"
#include "ccres/wavesim.hpp"

namespace {

const ccres::QuadratureSpec kQuad{1e-12, 20000, 0.0};

void BM_GreenKernel(benchmark::State& state) {
  const auto sp = ccres::model::SpectralPoint::from_k({0.1, static_cast<double>(state.range(0))}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ccres::model::green_kernel_Q(sp, -0.7, 0.4, kQuad));
}
BENCHMARK(BM_GreenKernel)->Arg(4)->Arg(32);

// Full p = 0 weighted norm (all modes) at |xi - n/2| = range.
void BM_WeightedNorm(benchmark::State& state) {
  const ccres::model::ModelManifold m;
  const auto grid = ccres::model::RadialGrid::standard();
  const auto sp = ccres::model::SpectralPoint::from_xi({0.5, static_cast<double>(state.range(0))}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ccres::model::weighted_resolvent_norm(m, sp, grid, kQuad, {}));
}
BENCHMARK(BM_WeightedNorm)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_MatchingDeterminant(benchmark::State& state) {
  ccres::model::ModelManifold m;
  const auto j = static_cast<std::size_t>(state.range(1));
  // Mode 1 sees e^{2r}: keep its well left of the barrier.
  const auto V = j == 0 ? ccres::scan::PotentialProfile::square_well(50.0, 0.0, 10.0)
                        : ccres::scan::PotentialProfile::square_well(50.0, -8.0, 0.0);
  const auto sp = ccres::model::SpectralPoint::from_xi({0.4, static_cast<double>(state.range(0))}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ccres::scan::matching_determinant(m, j, V, sp));
}
BENCHMARK(BM_MatchingDeterminant)->Args({5, 0})->Args({25, 0})->Args({5, 1})->Unit(benchmark::kMicrosecond);

void BM_ComplexScaling(benchmark::State& state) {
  ccres::model::ModelManifold m;
  const auto V = ccres::scan::PotentialProfile::square_well(50.0, 0.0, 10.0);
  ccres::scan::ComplexScalingOptions o;
  o.nodes_per_element = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ccres::scan::complex_scaled_resonances(m, 0, V, o));
}
BENCHMARK(BM_ComplexScaling)->Arg(16)->Unit(benchmark::kMillisecond);

// Leapfrog to t = 1 on [-20, 20], h = 0.01, one mode.
void BM_Evolve(benchmark::State& state) {
  ccres::model::ModelManifold m;
  const ccres::wave::RadialGrid g{-20.0, 20.0, 0.01};
  const auto data = ccres::wave::CauchyData::gaussian(g, {0}, 0.0, 0.5);
  const auto V = ccres::scan::PotentialProfile::zero();
  for (auto _ : state) benchmark::DoNotOptimize(ccres::wave::evolve(m, V, data, {1.0}));
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

}  // namespace
