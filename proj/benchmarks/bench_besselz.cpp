// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <benchmark/benchmark.h>

#include "ccres/besselz.hpp"

namespace bz = ccres::besselz;

namespace {

const ccres::QuadratureSpec kQuad{1e-12, 20000, 0.0};

void BM_ModifiedI(benchmark::State& state) {
  const ccres::cld k(0.1L, static_cast<long double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bz::modified_I(k, 2.5L, kQuad));
}
BENCHMARK(BM_ModifiedI)->Arg(1)->Arg(16)->Arg(64);

void BM_ModifiedK(benchmark::State& state) {
  const ccres::cld k(0.1L, static_cast<long double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bz::modified_K(k, 2.5L, kQuad));
}
BENCHMARK(BM_ModifiedK)->Arg(1)->Arg(16)->Arg(64);

void BM_IntegralK(benchmark::State& state) {
  const ccres::cld k(0.1L, static_cast<long double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bz::integral_K(k, 2.5L, kQuad));
}
BENCHMARK(BM_IntegralK)->Arg(1)->Arg(16)->Arg(64);

void BM_SchlafliI(benchmark::State& state) {
  const ccres::cld k(0.1L, static_cast<long double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bz::schlafli_I(k, 2.5L, kQuad));
}
BENCHMARK(BM_SchlafliI)->Arg(1)->Arg(8);

}  // namespace
