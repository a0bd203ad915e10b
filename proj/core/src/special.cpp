// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/special.hpp"

#include <cmath>
#include <numbers>

namespace ccres {
namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// B_{2m} / (2m (2m-1)) for m = 1..10.
constexpr long double kStirling[10] = {
    1.0L / 12.0L,         -1.0L / 360.0L,       1.0L / 1260.0L,
    -1.0L / 1680.0L,      1.0L / 1188.0L,       -691.0L / 360360.0L,
    1.0L / 156.0L,        -3617.0L / 122400.0L, 43867.0L / 244188.0L,
    -174611.0L / 125400.0L};

cld stirling(cld z) {
  const cld inv = 1.0L / z;
  const cld inv2 = inv * inv;
  cld series = 0.0L;
  cld power = inv;
  for (long double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2.0L * kPi) + series;
}

// log(sin(pi z)) without overflow for large |Im z|.
cld log_sin_pi(cld z) {
  const cld i{0.0L, 1.0L};
  if (std::abs(z.imag()) < 5.0L) return std::log(std::sin(kPi * z));
  if (z.imag() > 0) {
    // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
    return -i * kPi * z + std::log(1.0L - std::exp(2.0L * i * kPi * z)) - std::log(2.0L * i) +
           i * kPi;
  }
  return i * kPi * z + std::log(1.0L - std::exp(-2.0L * i * kPi * z)) - std::log(2.0L * i);
}

}  // namespace

cld log_gamma(cld z) {
  if (z.real() < 0.5L) {
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0L - z);
  }
  // Shift up: log Gamma(z) = log Gamma(z + n) - log prod_{j<n} (z + j).
  cld shift = 0.0L;
  cld product = 1.0L;
  int count = 0;
  while (z.real() < 16.0L) {
    product *= z;
    z += 1.0L;
    if (++count == 8) {
      shift += std::log(product);
      product = 1.0L;
      count = 0;
    }
  }
  shift += std::log(product);
  return stirling(z) - shift;
}

cld reciprocal_gamma(cld z) {
  const long double re = z.real();
  if (z.imag() == 0.0L && re <= 0.0L && re == std::floor(re)) return 0.0L;
  return std::exp(-log_gamma(z));
}

}  // namespace ccres
