// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <vector>

#include "ccres/errors.hpp"

namespace ccres {

using cld = std::complex<long double>;

/// Pair of complex values integrated together (typically f and df/dz).
using cld2 = std::array<cld, 2>;

inline long double magnitude(const cld& v) { return std::abs(v); }
inline long double magnitude(const cld2& v) { return std::abs(v[0]) + std::abs(v[1]); }
inline cld2 operator+(const cld2& a, const cld2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline cld2 operator-(const cld2& a, const cld2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline cld2& operator+=(cld2& a, const cld2& b) { return a = a + b; }
inline cld2 operator*(const cld2& a, long double s) { return {a[0] * s, a[1] * s}; }

/// Accuracy request for the adaptive integrator.
struct QuadratureSpec {
  double rel_tol = 1e-12;
  int max_subdivisions = 20000;
  double abs_tol = 0.0;

  bool valid() const { return rel_tol > 0.0 && max_subdivisions >= 1 && abs_tol >= 0.0; }
};

template <class V = cld>
struct QuadResult {
  V value{};
  /// Discretization error estimate plus the rounding floor eps * abs_integral.
  long double error = 0.0L;
  /// Integral of |f|; measures cancellation.
  long double abs_integral = 0.0L;
  long double previous_estimate = 0.0L;
  int panels = 0;
  bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (positive half).
inline constexpr long double kKronrodX[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L};
inline constexpr long double kKronrodW[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr long double kGaussW[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class V>
struct Panel {
  long double a, b;
  V value;
  long double error;
  long double abs_value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class V, class F>
Panel<V> gauss_kronrod(F& f, long double a, long double b) {
  const long double half = 0.5L * (b - a);
  const long double mid = 0.5L * (a + b);
  const V fc = f(mid);
  V kronrod = fc * kKronrodW[7];
  V gauss = fc * kGaussW[3];
  long double abs_sum = magnitude(fc) * kKronrodW[7];
  for (int j = 0; j < 7; ++j) {
    const long double dx = half * kKronrodX[j];
    const V f1 = f(mid - dx);
    const V f2 = f(mid + dx);
    kronrod += (f1 + f2) * kKronrodW[j];
    abs_sum += (magnitude(f1) + magnitude(f2)) * kKronrodW[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kGaussW[j / 2];
  }
  return Panel<V>{a, b, kronrod * half, magnitude((kronrod - gauss) * half),
                  abs_sum * std::abs(half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex-valued f
/// over [a, b]. The interval is first split into min_panels equal panels;
/// the panel with the largest error is bisected until the total error is
/// below max(rel_tol*|I|, abs_tol) or the rounding floor is reached.
/// Does not throw on non-convergence; inspect QuadResult::converged.
template <class V = cld, class F>
QuadResult<V> integrate(F&& f, long double a, long double b, const QuadratureSpec& spec,
                        int min_panels = 1) {
  QuadResult<V> out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  constexpr long double eps = std::numeric_limits<long double>::epsilon();
  min_panels = std::max(1, min_panels);
  std::priority_queue<detail::Panel<V>> heap;
  V total{};
  long double err = 0.0L, absint = 0.0L;
  const long double step = (b - a) / min_panels;
  for (int i = 0; i < min_panels; ++i) {
    const long double lo = a + step * i;
    const long double hi = (i + 1 == min_panels) ? b : a + step * (i + 1);
    auto p = detail::gauss_kronrod<V>(f, lo, hi);
    total += p.value;
    err += p.error;
    absint += p.abs_value;
    heap.push(p);
  }
  int panels = min_panels;
  long double previous = magnitude(total);
  auto done = [&] {
    const long double target =
        std::max<long double>(spec.rel_tol * magnitude(total), spec.abs_tol);
    return err <= target || err <= 50.0L * eps * absint;
  };
  while (!done()) {
    if (panels >= spec.max_subdivisions || !std::isfinite(static_cast<double>(err))) {
      out.value = total;
      out.error = err + eps * absint;
      out.abs_integral = absint;
      out.previous_estimate = previous;
      out.panels = panels;
      out.converged = false;
      return out;
    }
    const detail::Panel<V> worst = heap.top();
    heap.pop();
    const long double mid = 0.5L * (worst.a + worst.b);
    auto left = detail::gauss_kronrod<V>(f, worst.a, mid);
    auto right = detail::gauss_kronrod<V>(f, mid, worst.b);
    previous = magnitude(total);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    absint += left.abs_value + right.abs_value - worst.abs_value;
    if (err < 0.0L) {
      // Rebuild to shed accumulated cancellation in the running sums.
      err = 0.0L;
      std::vector<detail::Panel<V>> all;
      while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
      }
      all.push_back(left);
      all.push_back(right);
      for (auto& p : all) {
        err += p.error;
        heap.push(p);
      }
    } else {
      heap.push(left);
      heap.push(right);
    }
    ++panels;
  }
  out.value = total;
  out.error = err + eps * absint;
  out.abs_integral = absint;
  out.previous_estimate = previous;
  out.panels = panels;
  out.converged = true;
  return out;
}

/// Smallest U >= 0 with coeff*cosh(U) - growth*U >= target (coeff > 0).
/// Used to truncate semi-infinite integrals whose integrand is bounded by
/// exp(-coeff*cosh(u) + growth*u).
double cosh_truncation_point(double coeff, double growth, double target);

}  // namespace ccres
