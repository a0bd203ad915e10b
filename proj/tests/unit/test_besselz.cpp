// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cmath>
#include <complex>
#include <vector>

#include "ccres/besselz.hpp"
#include "ccres/errors.hpp"
#include "doctest.h"

namespace bz = ccres::besselz;
using ccres::cld;
using cd = std::complex<double>;

namespace {

struct Reference {
  double re_k, im_k, z;
  cd i, k;
};

// 40-digit reference values (mpmath besseli / besselk).
const std::vector<Reference> kReference = {
    {0, 0, 1, {1.2660658777520083356, 0}, {0.42102443824070833334, 0}},
    {1, 0, 1, {0.56515910399248502721, 0}, {0.60190723019723457474, 0}},
    {0.5, 0, 2, {2.0462368630890550366, 0}, {0.11993777196806144737, 0}},
    {0, 2, 1, {-0.30760240414883722754, -6.8706518846869085698}, {0.08061699762236597857, 0}},
    {0, -2, 1, {-0.30760240414883722754, 6.8706518846869085698}, {0.08061699762236597857, 0}},
    {0.25, 5, 2, {-108.99374937711241114, 303.60056622682238781},
     {-0.00038741974056788415108, -0.00004321808043141670777}},
    {0, 3, 0.5, {12.789342886384506432, 22.409092122989667924}, {-0.011362530752479869532, 0}},
    {-0.2, 1.5, 0.01, {3.4937096783750183598, -10.214731534601211989},
     {0.3185736077591473882, -0.10334758441917464425}},
    {0.1, 10, 0.001, {-129081.80929848302282, -282852.85493271894655},
     {1.6765864120356265894e-7, 6.5699095770715726122e-8}},
    {3.3, -2.2, 7.5, {89.528657375627860794, 144.07635812258816553},
     {0.0002293954726036440377, -0.00028824736431254729728}},
    {-4.5, 0.7, 3, {1.1401440741417522054, -0.88381896335352903091},
     {0.35272625732817786104, -0.35352243278950618785}},
    {10, 0, 0.001, {2.6911445166297473192e-40, 0}, {1.8579455483904004196e+38, 0}},
    {0, 64, 0.5, {-2.0096048892537223002e+42, -1.076260500539907227e+42}, {3.2360157310747311167e-45, 0}},
    {0.25, 64, 20, {7.866916342106555764e+41, -1.2534254532512944163e+42},
     {5.2160148196428145741e-45, -7.6522037953341884326e-46}},
    {0, 32, 0.0001, {3.4651357168856885448e+20, -3.2754852882423384017e+20}, {4.5020695362728556681e-23, 0}},
    {-0.24, 20, 3, {4503315392393.6113304, -5803311922524.2751111},
     {1.4543435554906424939e-14, -3.2612057000171434369e-15}},
};

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }
cd narrow(cld v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

const ccres::QuadratureSpec kQuad{1e-12, 20000, 0.0};

}  // namespace

TEST_CASE("fast evaluators match reference values") {
  for (const auto& r : kReference) {
    CAPTURE(r.re_k);
    CAPTURE(r.im_k);
    CAPTURE(r.z);
    const cld k(r.re_k, r.im_k);
    CHECK(rel(narrow(bz::modified_I(k, r.z, kQuad).unscaled_value()), r.i) < 1e-10);
    CHECK(rel(narrow(bz::modified_K(k, r.z, kQuad).unscaled_value()), r.k) < 1e-10);
  }
}

TEST_CASE("integral representations match reference values") {
  for (const auto& r : kReference) {
    CAPTURE(r.re_k);
    CAPTURE(r.im_k);
    CAPTURE(r.z);
    const cld k(r.re_k, r.im_k);
    const auto ki = bz::integral_K(k, r.z, kQuad);
    CHECK(rel(narrow(ki.unscaled_value()), r.k) < std::max(1e-10, 10.0 * double(ki.rel_error)));
    const auto ii = bz::integral_I(k, r.z, kQuad);
    if (ii.rel_error < 1e-9) CHECK(rel(narrow(ii.unscaled_value()), r.i) < 1e-9);
  }
}

TEST_CASE("eval_I closed values and conjugation") {
  CHECK(bz::eval_I({0, 0}, 0.0, kQuad).value == cd(1.0, 0.0));
  CHECK(std::abs(bz::eval_I({0, 0}, 1.0, kQuad).value - 1.26606588) < 1e-8);
  const cd a = bz::eval_I({0, 2}, 1.0, kQuad).value;
  const cd b = bz::eval_I({0, -2}, 1.0, kQuad).value;
  CHECK(std::abs(a - std::conj(b)) < 1e-12 * std::abs(a));
  const auto real_order = bz::eval_I({1.5, 0}, 2.0, kQuad);
  CHECK(std::abs(real_order.value.imag()) < 1e-12);
  CHECK(real_order.error_estimate >= 0.0);
}

TEST_CASE("eval_K values, evenness and domain") {
  CHECK(std::abs(bz::eval_K({0, 0}, 1.0, kQuad).value - 0.42102444) < 1e-8);
  const double half = std::sqrt(M_PI / 4.0) * std::exp(-2.0);
  CHECK(std::abs(bz::eval_K({0.5, 0}, 2.0, kQuad).value - half) < 1e-14);
  for (cd k : {cd(0.2, 3.0), cd(-0.1, 7.5), cd(2.0, -1.0)}) {
    const cd p = bz::eval_K(bz::ComplexOrder(k), 1.3, kQuad).value;
    const cd m = bz::eval_K(bz::ComplexOrder(-k), 1.3, kQuad).value;
    CHECK(std::abs(p - m) < 1e-11 * std::abs(p));
  }
  CHECK_THROWS_AS(bz::eval_K({0, 1}, 0.0, kQuad), ccres::DomainError);
  CHECK_THROWS_AS(bz::eval_K({0, 1}, -1.0, kQuad), ccres::DomainError);
}

TEST_CASE("eval_I overflow is a range error") {
  CHECK_THROWS_AS(bz::eval_I({0, 0}, 800.0, kQuad), ccres::RangeError);
  const auto scaled = bz::integral_I(cld(0), 800.0L, kQuad);
  CHECK(std::isfinite(double(std::abs(scaled.value))));
}

TEST_CASE("series oracle") {
  CHECK(bz::series_oracle_I({0, 0}, 0.0, 1) == cd(1.0, 0.0));
  CHECK(std::abs(bz::series_oracle_I({1, 0}, 1.0, 20) - 0.56515910) < 1e-8);
  const cd s = bz::series_oracle_I({0, 0}, 2.0, 30);
  CHECK(std::abs(s - bz::eval_I({0, 0}, 2.0, kQuad).value) < 1e-8);
  CHECK_THROWS_AS(bz::series_oracle_I({0, 0}, 10.0, 3), ccres::ConvergenceError);
  CHECK_THROWS_AS(bz::series_oracle_I({0, 0}, 1.0, 0), ccres::DomainError);
}

TEST_CASE("wronskian residual") {
  CHECK(bz::wronskian_residual({0, 0}, 1.0, kQuad) < 1e-6);
  CHECK(bz::wronskian_residual({0, 3}, 0.5, kQuad) < 1e-5);
  CHECK(bz::wronskian_residual({0.25, 5}, 2.0, kQuad) < 1e-5);
}

TEST_CASE("derivatives agree with the Wronskian identity") {
  for (cd k : {cd(0.1, 0.0), cd(0.0, 6.0), cd(-0.2, 25.0), cd(0.25, 60.0)}) {
    for (double z : {0.01, 0.7, 5.0, 40.0}) {
      CAPTURE(k);
      CAPTURE(z);
      const cld kk(k.real(), k.imag());
      const auto i = bz::modified_I(kk, z, kQuad);
      const auto kv = bz::modified_K(kk, z, kQuad);
      // Scales cancel: e^{z} e^{-z}.
      const cld w = i.value * kv.derivative - i.derivative * kv.value;
      const long double scale = std::abs(i.value * kv.derivative) + std::abs(i.derivative * kv.value);
      CHECK(double(std::abs(w + 1.0L / z) / scale) < 1e-9);
    }
  }
}
