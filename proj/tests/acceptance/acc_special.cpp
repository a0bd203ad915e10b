// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cmath>
#include <complex>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "acceptance.hpp"
#include "ccres/bounds.hpp"

namespace ccres::acceptance {

namespace {

namespace bz = besselz;
using cl = std::complex<long double>;
using cd = std::complex<double>;

constexpr double kFidelityTol = 1e-8;
constexpr double kWronskianTol = 1e-5;
const QuadratureSpec kQuad{1e-12, 20000, 0.0};

// K_k(z) = int_0^inf e^{-z cosh t} cosh(k t) dt, 30-point Gauss-Legendre on
// panels of width 0.05 until the integrand is below e^{-80}.
cd reference_K(cd k, double z) {
  const long double a = std::abs(k.real());
  long double T = 0.05L;
  while (z * std::cosh(T) - a * T < 80.0L) T += 0.05L;
  const cl kk(k.real(), k.imag());
  long double re = 0.0L, im = 0.0L;
  for (long double lo = 0.0L; lo < T - 1e-12L; lo += 0.05L) {
    const auto f = [&](long double t, bool imag) {
      const cl v = std::exp(-z * std::cosh(t)) * std::cosh(kk * t);
      return imag ? v.imag() : v.real();
    };
    re += boost::math::quadrature::gauss<long double, 30>::integrate([&](long double t) { return f(t, false); }, lo, lo + 0.05L);
    im += boost::math::quadrature::gauss<long double, 30>::integrate([&](long double t) { return f(t, true); }, lo, lo + 0.05L);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// Half-integer orders n + 1/2 in closed form (finite sums).
long double half_K(int n, long double z) {
  long double s = 0.0L, c = 1.0L;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) c *= static_cast<long double>((n + j) * (n - j + 1)) / (2.0L * j * z);
    s += c;
  }
  return std::sqrt(M_PIl / (2.0L * z)) * std::exp(-z) * s;
}

long double half_I(int n, long double z) {
  long double plus = 0.0L, minus = 0.0L, c = 1.0L;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) c *= static_cast<long double>((n + j) * (n - j + 1)) / (2.0L * j * z);
    plus += (j % 2 ? -c : c);
    minus += c;
  }
  return (std::exp(z) * plus - (n % 2 ? -1.0L : 1.0L) * std::exp(-z) * minus) / std::sqrt(2.0L * M_PIl * z);
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

Outcome fidelity() {
  const std::vector<double> zs{1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  std::vector<cd> ks;
  for (double re : {-9.5, -4.5, -1.3, -0.25, 0.0, 0.25, 0.5, 1.0, 3.3, 7.0, 9.9})
    for (double im : {0.0, 0.7, 2.0, 5.0, 9.0})
      if (std::abs(cd(re, im)) <= 10.0) ks.emplace_back(re, im);

  double worst_series = 0.0, worst_quad = 0.0, worst_half = 0.0;
  int n = 0;
  for (cd k : ks)
    for (double z : zs) {
      const bz::ComplexOrder o(k);
      worst_series = std::max(worst_series, rel(bz::eval_I(o, z, kQuad).value, bz::series_oracle_I(o, z, 600)));
      worst_quad = std::max(worst_quad, rel(bz::eval_K(o, z, kQuad).value, reference_K(k, z)));
      n += 2;
    }
  for (int m = 0; m <= 9; ++m)
    for (double z : zs) {
      const bz::ComplexOrder o(m + 0.5, 0.0);
      worst_half = std::max(worst_half, rel(bz::eval_K(o, z, kQuad).value, cd(static_cast<double>(half_K(m, z)), 0.0)));
      // The finite sum for I cancels at small z once m grows.
      if (m <= 3 && (m == 0 || z >= 0.5))
        worst_half = std::max(worst_half, rel(bz::eval_I(o, z, kQuad).value, cd(static_cast<double>(half_I(m, z)), 0.0)));
      n += 2;
    }

  // Wronskian sample: |Re k| <= 1/4, |Im k| <= 10, z log-uniform in [1e-3, 10].
  std::mt19937_64 gen(1);
  const auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  double worst_w = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double re = 0.25 * (2 * unit() - 1), im = 10.0 * (2 * unit() - 1), z = 1e-3 * std::pow(1e4, unit());
    const double w = bz::wronskian_residual({re, im}, z, kQuad);
    worst_w = std::max(worst_w, std::isfinite(w) ? w : INFINITY);
  }
  const double worst = std::max({worst_series, worst_quad, worst_half});
  return {worst < kFidelityTol && worst_w < kWronskianTol,
          std::to_string(n) + " comparisons: series " + num(worst_series) + ", quadrature " + num(worst_quad) +
              ", half-integer " + num(worst_half) + " (tol " + num(kFidelityTol) + "); wronskian max " + num(worst_w) +
              " (tol " + num(kWronskianTol) + ")"};
}

std::string summary_line(const EstimateReport& rep) {
  std::string s;
  for (std::size_t i = 0; i < rep.summary.size(); ++i) {
    if (i) s += ", ";
    s += std::get<std::string>(rep.summary.cell(i, "bound_id")) + " sup " + num(rep.summary.number(i, "sup_ratio")) +
         " delta " + num(rep.summary.number(i, "refinement_delta"));
  }
  return s;
}

Outcome pointwise() {
  const auto rep = bz::check_pointwise_bounds(bz::imaginary_order_grid(1, 64), bz::uniform_grid(-10, 3, 0.05), kQuad);
  return {rep.pass, summary_line(rep)};
}

Outcome appendix() {
  const auto rep = bz::check_appendix_inequality(bz::imaginary_order_grid(1, 64), bz::uniform_grid(-5, 2, 0.25), kQuad);
  return {rep.pass, summary_line(rep)};
}

}  // namespace

std::vector<Criterion> special_criteria() {
  return {{"special_function_fidelity", 120.0, fidelity},
          {"pointwise_bounds", 300.0, pointwise},
          {"appendix_inequality", 0.0, appendix}};
}

}  // namespace ccres::acceptance
