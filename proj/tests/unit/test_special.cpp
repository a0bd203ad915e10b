// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cmath>
#include <complex>

#include "ccres/special.hpp"
#include "doctest.h"

using ccres::cld;

namespace {

std::complex<double> gamma_of(std::complex<double> z) {
  const cld g = std::exp(ccres::log_gamma(cld(z.real(), z.imag())));
  return {static_cast<double>(g.real()), static_cast<double>(g.imag())};
}

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("log_gamma matches the real log gamma on the positive axis") {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 33.3, 150.0}) {
    const cld v = ccres::log_gamma(cld(x, 0.0L));
    CHECK(static_cast<double>(v.real()) == doctest::Approx(std::lgamma(x)).epsilon(1e-14));
  }
}

TEST_CASE("gamma at one half is sqrt(pi)") {
  CHECK(std::abs(gamma_of({0.5, 0.0}) - std::sqrt(M_PI)) < 1e-14);
  CHECK(std::abs(gamma_of({-0.5, 0.0}) + 2.0 * std::sqrt(M_PI)) < 1e-13);
}

TEST_CASE("modulus of gamma on the imaginary axis") {
  for (double y : {0.3, 1.0, 4.0, 9.5, 30.0, 64.0}) {
    const double expected = M_PI / (y * std::sinh(M_PI * y));
    const double got = std::norm(gamma_of({0.0, y}));
    CHECK(got / expected == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("complex gamma against reference values") {
  CHECK(rel(gamma_of({-2.5, 3.0}), {0.00047978841084189701217, 0.00029885571114485886816}) < 1e-13);
  CHECK(rel(gamma_of({0.3, -7.0}), {0.000028487579955011350965, -7.7289635745084296675e-7}) < 1e-13);
  CHECK(rel(gamma_of({-7.2, 0.4}), {-0.000026765520090592192003, 0.00024283738891761188752}) < 1e-12);
  CHECK(rel(gamma_of({20.0, 30.0}), {-1453876687.5534809679, 1163777777.803157272}) < 1e-13);
}

TEST_CASE("reciprocal gamma vanishes at the poles") {
  for (int n = 0; n <= 5; ++n) CHECK(ccres::reciprocal_gamma(cld(-n, 0.0L)) == cld(0.0L));
  const cld r = ccres::reciprocal_gamma(cld(4.0L, 0.0L));
  CHECK(static_cast<double>(r.real()) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}
