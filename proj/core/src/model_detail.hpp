// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "ccres/model.hpp"

namespace ccres::model::detail {

/// Solutions of -u'' + (e^{2r} mu^2 + kappa^2) u = 0 sampled on a grid:
/// u decays towards r -> -inf, v towards r -> +inf, u(r) = u_hat e^{s},
/// v(r) = v_hat e^{-s}, and W[u, v] = u v' - u' v = -1.
struct ModeSamples {
  std::vector<std::complex<double>> u, du, v, dv;  // scaled values and r-derivatives
  std::vector<double> s;                           // exponential scale
  std::vector<double> potential;                   // e^{2r} mu^2
};

ModeSamples sample_mode(double mu, std::complex<double> kappa, const std::vector<double>& r,
                        const QuadratureSpec& quad);

/// sample_mode memoized for composite grids (keyed by interval, size, rule,
/// mu, kappa and tolerances); bounded by a byte budget with LRU eviction.
std::shared_ptr<const ModeSamples> cached_samples(double mu, std::complex<double> kappa, const RadialGrid& grid,
                                                  const QuadratureSpec& quad);

void require_continuation_region(std::complex<double> kappa);

/// Row action a_i G + b_i G_r applied to a kernel whose columns carry
/// column_i, plus an explicit diagonal term (the delta of G_rr).
struct RowOperator {
  std::vector<std::complex<double>> a;
  std::vector<double> b, column, diag_extra;
};

/// d^p/dr^p [w(r) G(r, t) w(t)] with w(r, d) the d-th derivative of the weight.
RowOperator weighted_row(const ModeSamples& m, const std::vector<double>& r, std::complex<double> kappa, int p,
                         const std::function<double(double, int)>& w);

/// sqrt(w)-weighted structured matrix of the row operator.
SemiSeparable assemble(const ModeSamples& m, const std::vector<double>& weights, const RowOperator& row);

}  // namespace ccres::model::detail
