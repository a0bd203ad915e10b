// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>
#include <string_view>

#include "ccres/quadrature.hpp"

/// Modified Bessel functions I_k and K_k of complex order k and positive
/// argument, evaluated from their integral representations.
namespace ccres::besselz {

/// Complex order k of a modified Bessel function.
struct ComplexOrder {
  double re = 0.0;
  double im = 0.0;

  constexpr ComplexOrder() = default;
  constexpr ComplexOrder(double r, double i) : re(r), im(i) {}
  explicit ComplexOrder(std::complex<double> k) : re(k.real()), im(k.imag()) {}

  std::complex<double> value() const { return {re, im}; }
  cld wide() const { return {static_cast<long double>(re), static_cast<long double>(im)}; }
  bool finite() const;
  double modulus() const { return std::abs(value()); }
  /// |Re k| <= 1/4 and |Im k| >= 1: the set where the pointwise bounds are stated.
  bool in_bound_region() const;
};

enum class Method {
  ClosedForm,
  SchlafliIntegral,  ///< two-term representation of I_k on [0, pi] and [0, inf)
  PoissonIntegral,   ///< (z/2)^k / (sqrt(pi) Gamma(k+1/2)) * int sech^{2k+1}(w) e^{-z tanh w} dw
  DirectIntegral,    ///< K_k = int_0^inf cosh(k u) e^{-z cosh u} du
  RotatedContour,    ///< same integrand on the line u + i*theta through the saddle
  AscendingSeries,
};

std::string_view to_string(Method m);

/// Public result of eval_I / eval_K.
struct BesselEval {
  std::complex<double> value;
  double error_estimate = 0.0;
  Method method = Method::ClosedForm;
};

/// Function value and z-derivative in wide precision with an exponential
/// scale: the true value is value * exp(log_scale). I-type results carry
/// log_scale = z and K-type results log_scale = -z.
struct ScaledBessel {
  cld value{};
  cld derivative{};
  long double log_scale = 0.0L;
  long double rel_error = 0.0L;
  Method method = Method::ClosedForm;

  cld unscaled_value() const { return value * std::exp(log_scale); }
  cld unscaled_derivative() const { return derivative * std::exp(log_scale); }
};

// Building blocks. All require z > 0 and throw ConvergenceError when the
// quadrature fails; rel_error reports the achieved accuracy including the
// rounding floor set by cancellation.
ScaledBessel schlafli_I(cld k, long double z, const QuadratureSpec& quad);
ScaledBessel poisson_I(cld k, long double z, const QuadratureSpec& quad);
ScaledBessel direct_K(cld k, long double z, const QuadratureSpec& quad);
ScaledBessel rotated_K(cld k, long double z, const QuadratureSpec& quad);
ScaledBessel series_I(cld k, long double z);
/// Two-sided ascending series for K (k not an integer).
ScaledBessel series_K(cld k, long double z);

/// Integral evaluation of I_k: the two-term representation, falling back to
/// the Poisson integral when cancellation limits accuracy and Re k > -1/2.
ScaledBessel integral_I(cld k, long double z, const QuadratureSpec& quad);
/// Integral evaluation of K_k = K_{-k}: direct for small |Im k|, otherwise
/// the saddle-rotated contour.
ScaledBessel integral_K(cld k, long double z, const QuadratureSpec& quad);

/// Cheapest accurate evaluation: the ascending series when it is well
/// conditioned, otherwise the integral route.
ScaledBessel modified_I(cld k, long double z, const QuadratureSpec& quad);
ScaledBessel modified_K(cld k, long double z, const QuadratureSpec& quad);

/// I_k(z) for z >= 0 from its integral representation.
/// Throws RangeError when the value exceeds double range (use integral_I).
BesselEval eval_I(ComplexOrder k, double z, const QuadratureSpec& quad);
/// K_{-k}(z) = K_k(z) for z > 0 from its integral representation.
BesselEval eval_K(ComplexOrder k, double z, const QuadratureSpec& quad);

/// Partial sum of sum_m (z/2)^{k+2m} / (m! Gamma(k+m+1)) over at most
/// `terms` terms. Validation oracle; throws ConvergenceError when the
/// truncation tail bound is not yet below rounding after `terms` terms.
std::complex<double> series_oracle_I(ComplexOrder k, double z, int terms);

/// |I_k K_k' - I_k' K_k + 1/z| with derivatives from fourth-order centered
/// differences (step 1e-3 z) of eval_I and eval_K.
double wronskian_residual(ComplexOrder k, double z, const QuadratureSpec& quad);

/// Residual together with the error budget it should be judged against.
struct WronskianCheck {
  double residual = 0.0;
  /// quad.rel_tol * (|I K'| + |I' K|): evaluation error carried into the products.
  double evaluation_bound = 0.0;
  /// Truncation (step h vs 2h) plus rounding bound of the difference stencil.
  double differencing_bound = 0.0;
};
WronskianCheck wronskian_check(ComplexOrder k, double z, const QuadratureSpec& quad);

}  // namespace ccres::besselz
