// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/quadrature.hpp"

namespace ccres {

double cosh_truncation_point(double coeff, double growth, double target) {
  if (!(coeff > 0.0)) throw DomainError("cosh_truncation_point: coefficient must be positive");
  auto excess = [&](double u) { return coeff * std::cosh(u) - growth * u - target; };
  // The excess is convex with its minimum at sinh(u) = growth / coeff.
  double lo = growth > 0.0 ? std::asinh(growth / coeff) : 0.0;
  if (excess(lo) >= 0.0) return 0.0;
  double hi = std::max(1.0, 2.0 * lo);
  while (excess(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace ccres
