// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <vector>

#include "ccres/besselz.hpp"
#include "ccres/report.hpp"

namespace ccres::besselz {

/// Grid suprema of |f(e^t)| / envelope(t, k) for the four pointwise
/// envelopes (C = 1):
///   I_pos:    |I_k(e^t)|  vs e^{e^t} e^{-t} / |k|   (t > 0)
///   K_pos:    |K_k(e^t)|  vs e^{-e^t} e^{-t} / |k|  (t > 0)
///   I_nonpos: |I_k(e^t)|  vs 1 / |k|                (t <= 0)
///   K_nonpos: |K_k(e^t)|  vs 1 / |k|                (t <= 0)
/// The grid is refined once (midpoints in k and in t) and a bound passes when
/// its supremum is finite and changes by less than 5% under the refinement.
/// Rows cover the refined grid; the summary adds the location of the
/// supremum and the fitted growth rate d ln(sup_t ratio) / d|Im k|.
/// Throws DomainError for an empty grid or a k outside |Re k| <= 1/4, |Im k| >= 1.
EstimateReport check_pointwise_bounds(const std::vector<ComplexOrder>& k_grid,
                                      const std::vector<double>& t_grid, const QuadratureSpec& quad);

/// Ratio |int_0^inf cosh(ku) e^{-e^t cosh u} du| / |int_0^inf sinh(ku) e^{-e^t E(u)} du|
/// for the two exponent readings E(u) = cosh(ku) ("appendix_printed") and
/// E(u) = cosh(u) ("appendix_cosh_u"). An integral whose partial integrals do
/// not settle is reported with a non-finite right side. Passes when at least
/// one reading has a finite, refinement-stable supremum.
/// Throws DegenerateDenominatorError when a convergent right side is below 1e-300.
EstimateReport check_appendix_inequality(const std::vector<ComplexOrder>& k_grid,
                                         const std::vector<double>& t_grid, const QuadratureSpec& quad);

/// k = i m for m = first..last, the grid used by the default experiments.
std::vector<ComplexOrder> imaginary_order_grid(int first, int last);
/// Uniform grid lo, lo + step, ..., hi.
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace ccres::besselz
