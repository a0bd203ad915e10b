// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "ccres/cvcheck.hpp"
#include "ccres/errors.hpp"
#include "ccres/linalg.hpp"

namespace ccres::cv {

namespace {

using cd = std::complex<double>;

// exp(-1/(1 - t^2)) on (-1, 1) with two t-derivatives.
std::array<double, 3> bump(double t) {
  if (std::abs(t) >= 1.0) return {0.0, 0.0, 0.0};
  const double d = 1.0 - t * t;
  const double g1 = -2.0 * t / (d * d);
  const double g2 = -(2.0 + 6.0 * t * t) / (d * d * d);
  const double phi = std::exp(-1.0 / d);
  return {phi, g1 * phi, (g2 + g1 * g1) * phi};
}

struct Sides {
  double lhs = 0.0, rhs = 0.0, boundary = 0.0;
};

Sides evaluate(const WarpedMetric& metric, const TestFunction& tf, const CVScanSpec& spec, double lambda) {
  const double alpha0 = metric.alpha.min();
  const double scale = 1.0 / (alpha0 * lambda);
  const double lo = tf.center - tf.width, hi = tf.center + tf.width;
  const int order = 8;
  const int panels = std::max(16, static_cast<int>(std::ceil(4.0 * tf.width * (lambda + 4.0))));
  const auto [gx, gw] = gauss_legendre(order);
  const int ny = metric.alpha.constant() ? 1 : 32;
  const double hp = (hi - lo) / panels;
  Sides out;
  for (int pnl = 0; pnl < panels; ++pnl) {
    for (int q = 0; q < order; ++q) {
      const double r = lo + hp * (pnl + 0.5 * (gx[q] + 1.0));
      const double wr = 0.5 * hp * gw[q];
      const auto s = sigma_of_r(metric, r);
      const auto dens = log_density(s);
      const double sig_inv = metric.n == 1 ? 1.0 / s.value(0, 0) : 0.0;
      const auto b = bump((r - tf.center) / tf.width);
      const double phi = tf.amplitude * b[0];
      const double phi1 = tf.amplitude * b[1] / tf.width;
      const double phi2 = tf.amplitude * b[2] / (tf.width * tf.width);
      for (int j = 0; j < ny; ++j) {
        const double y = 2.0 * M_PI * j / ny;
        const double al = metric.alpha.value(y), al1 = metric.alpha.value(y, 1), al2 = metric.alpha.value(y, 2);
        // u = phi(r) e^{i theta}, theta = lambda alpha0 r / alpha(y).
        const double k = tf.modulated ? lambda * alpha0 / al : 0.0;
        const double ty = tf.modulated ? -lambda * alpha0 * r * al1 / (al * al) : 0.0;
        const double tyy =
            tf.modulated ? -lambda * alpha0 * r * (al2 / (al * al) - 2.0 * al1 * al1 / (al * al * al)) : 0.0;
        const cd e = std::polar(1.0, k * r);
        const cd u = phi * e;
        const cd ur = (phi1 + cd(0, k) * phi) * e;
        const cd urr = (phi2 + cd(0, 2.0 * k) * phi1 - k * k * phi) * e;
        const cd uy = cd(0, ty) * u;
        const cd uyy = (cd(0, tyy) - ty * ty) * u;
        const double q = al * al * (0.25 * dens.l * dens.l + 0.5 * dens.dl);
        const double c = al1 / al * sig_inv;
        const cd pu = scale * scale * (-al * al * urr - sig_inv * uyy + q * u + c * uy) - u +
                      cd(0, scale * scale * spec.epsilon) * u;
        const double w = wr * (2.0 * M_PI / ny) / al;
        const double h1 = std::norm(u) + std::norm(scale * al * ur) + scale * scale * sig_inv * std::norm(uy);
        out.lhs += w * std::pow(r, -2.0 * spec.s) * h1;
        out.rhs += w * lambda * lambda * std::pow(r, 2.0 * spec.s) * std::norm(pu);
      }
    }
  }
  // Boundary pairing Im <alpha0^{-2} alpha d_r u, u> at r = a; the measure
  // dy / alpha cancels the alpha. Im(u_r conj u) = k phi^2.
  const auto b = bump((metric.a - tf.center) / tf.width);
  const double phi = tf.amplitude * b[0];
  for (int j = 0; j < ny; ++j) {
    const double al = metric.alpha.value(2.0 * M_PI * j / ny);
    const double k = tf.modulated ? lambda * alpha0 / al : 0.0;
    out.boundary += (2.0 * M_PI / ny) * k * phi * phi / (alpha0 * alpha0);
  }
  return out;
}

}  // namespace

EstimateReport energy_estimate_check(const WarpedMetric& metric, const TestFunction& u, const CVScanSpec& spec) {
  metric.validate();
  spec.validate();
  if (!(u.width > 0.0)) throw DomainError("test function width must be positive");
  if (u.amplitude != 0.0 && (u.center - u.width <= metric.a || u.center + u.width >= metric.r_max))
    throw SupportError("test function support [" + std::to_string(u.center - u.width) + ", " +
                       std::to_string(u.center + u.width) + "] must lie inside (a, r_max)");
  EstimateReport rep;
  rep.rows = Table({"metric_id", "check_id", "r", "value", "bound", "margin"});
  rep.summary = Table({"metric_id", "check_id", "constant", "exponent", "pass"});

  std::vector<double> lambdas = spec.lambdas, c1;
  std::vector<Sides> sides;
  for (double l : lambdas) {
    sides.push_back(evaluate(metric, u, spec, l));
    const auto& s = sides.back();
    if (s.lhs == 0.0 && s.rhs == 0.0)
      c1.push_back(0.0);
    else if (s.rhs == 0.0)
      c1.push_back(std::numeric_limits<double>::infinity());
    else
      c1.push_back(s.lhs / s.rhs);
  }
  const double c_max = *std::max_element(c1.begin(), c1.end());
  bool stable = std::isfinite(c_max);
  for (std::size_t i = 0; i < c1.size(); ++i)
    for (std::size_t j = 0; j < c1.size(); ++j) {
      const double span = std::max(lambdas[i], lambdas[j]) / std::min(lambdas[i], lambdas[j]);
      if (span <= 10.0 && c1[j] > 2.0 * c1[i] && c1[j] > 0.0) stable = false;
    }
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (c1.size() >= 2 && c_max > 0.0 && std::all_of(c1.begin(), c1.end(), [](double c) { return c > 0.0; })) {
    double mx = 0, my = 0, sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < c1.size(); ++i) {
      mx += std::log(lambdas[i]);
      my += std::log(c1[i]);
    }
    mx /= c1.size();
    my /= c1.size();
    for (std::size_t i = 0; i < c1.size(); ++i) {
      sxy += (std::log(lambdas[i]) - mx) * (std::log(c1[i]) - my);
      sxx += std::pow(std::log(lambdas[i]) - mx, 2);
    }
    slope = sxy / sxx;
  }
  double boundary = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double bound = c_max * sides[i].rhs;
    rep.rows.add({metric.id, std::string("energy_lhs_vs_C1_rhs"), lambdas[i], sides[i].lhs, bound,
                  bound - sides[i].lhs});
    rep.rows.add({metric.id, std::string("energy_C1"), lambdas[i], c1[i], c_max, c_max - c1[i]});
    boundary = std::max(boundary, sides[i].boundary);
  }
  rep.summary.add({metric.id, std::string("energy_C1"), c_max, slope, stable});
  rep.summary.add({metric.id, std::string("energy_boundary_term"), boundary,
                   std::numeric_limits<double>::quiet_NaN(), boundary == 0.0});
  rep.pass = stable && boundary == 0.0;
  return rep;
}

}  // namespace ccres::cv
