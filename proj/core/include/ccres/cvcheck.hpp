// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccres/report.hpp"

/// Warped ends g = alpha(y)^{-2} dr^2 + sigma(r) with the boundary at
/// r = +inf (x = e^{-r}); the opposite orientation of ccres::model, where
/// r = ln x.
namespace ccres::cv {

/// One correction x^i (ln x)^j h_ij of h(x).
struct PolyhomTerm {
  int i = 1;
  int j = 0;
  Eigen::MatrixXd h;
};

/// h(x) = h0 + sum x^i (ln x)^j h_ij with 0 <= j <= U_i. The coefficient
/// tensors are constant on the cross-section.
struct PolyhomExpansion {
  Eigen::MatrixXd h0 = Eigen::MatrixXd::Identity(1, 1);
  std::vector<PolyhomTerm> terms;
  /// Largest allowed j per i; terms with i absent are rejected.
  std::map<int, int> U;

  /// Throws DomainError on shape, symmetry or index violations, and when h0
  /// is not positive definite.
  void validate() const;
};

/// alpha(y) = mean + sum_m (cos_m cos(m y) + sin_m sin(m y)) on the circle,
/// m = 1, 2, ...
struct AlphaProfile {
  double mean = 1.0;
  std::vector<double> cos_coeffs, sin_coeffs;

  bool constant() const;
  /// d^d alpha / dy^d, d = 0, 1, 2.
  double value(double y, int derivative = 0) const;
  /// Sampled extrema over the circle.
  double min() const;
  double max() const;
};

enum class SigmaKind {
  Conformal,  ///< sigma(r) = e^{2r} h(e^{-r})
  Cylinder,   ///< sigma(r) = h0
};

struct WarpedMetric {
  std::string id = "hyperbolic";
  int n = 1;
  AlphaProfile alpha;
  PolyhomExpansion expansion;
  SigmaKind kind = SigmaKind::Conformal;
  double a = 1.0;
  double r_max = 40.0;

  /// Exact hyperbolic end: h = h0 = identity.
  static WarpedMetric hyperbolic(int n = 1);
  /// h0 plus one term x^i (ln x)^j h_ij with h_ij = amplitude * identity.
  static WarpedMetric polyhomogeneous(int i, int j, double amplitude, int n = 1);
  static WarpedMetric cylinder(int n = 1);

  /// Throws DomainError on a < 1, r_max <= a, alpha <= 0 somewhere, a
  /// non-constant alpha with n != 1, or an invalid expansion.
  void validate() const;
};

/// sigma and its first three r-derivatives.
struct SigmaJet {
  Eigen::MatrixXd value, d1, d2, d3;
};

/// Evaluates the expansion term by term at x = e^{-r}, including the
/// (ln x)^j = (-r)^j factors. Throws MetricDegeneracyError when sigma is not
/// positive definite at r.
SigmaJet sigma_of_r(const WarpedMetric& metric, double r);

/// l = (ln p)', p = |sigma|^{1/2}, with its first two derivatives.
struct LogDensity {
  double l = 0.0, dl = 0.0, d2l = 0.0;
};
LogDensity log_density(const SigmaJet& s);

struct CVGrid {
  /// Nodes in r (uniform, covering [a, r_max]) and on the circle.
  std::vector<double> r, y;
  static CVGrid uniform(const WarpedMetric& metric, int r_points, int y_points);
};

struct ConjugatedPotential {
  CVGrid grid;
  /// Scalar part as printed: -(p'/p)^2/4 - (dp)^2 sigma^{-1}/(4 p^2)
  /// + p Delta_g p^{-1}/2 - ..., rows r, columns y.
  Eigen::MatrixXd q0;
  /// Scalar part of the exact conjugation p^{1/2} Delta_g p^{-1/2}:
  /// alpha^2 (l^2/4 + l'/2).
  Eigen::MatrixXd q_exact;
  /// Coefficient of d_y (n = 1): (alpha'/alpha) sigma^{11}.
  Eigen::MatrixXd first_order;
  /// r-derivative of q0.
  Eigen::MatrixXd dq0_dr;
};

/// r-derivatives analytic; y-derivatives of alpha by centered differences
/// with step 1e-4.
ConjugatedPotential conjugated_potential(const WarpedMetric& metric, const CVGrid& grid);

struct CVScanSpec {
  /// High-energy parameter lambda; for the resolvent check, |Im xi|.
  std::vector<double> lambdas{4, 8, 16, 32};
  double s = 0.625;
  double delta = 0.5;
  double delta0 = 0.25;
  double epsilon = 0.0;
  double lambda0 = 1.0;
  /// Offsets Re xi - n/2 scanned by the resolvent check.
  std::vector<double> re_offsets{0.0, 1.0};
  /// Circle collocation points for a non-constant alpha.
  int coupled_modes = 4;
  /// Radial points per unit length for the assumption grid.
  int r_density = 40;

  /// Throws DomainError unless 1/2 < s <= 1/2 + delta0, lambda0 >= 1 and
  /// every lambda >= lambda0.
  void validate() const;
};

/// Assumption report: rows metric_id, check_id, r, value, bound, margin;
/// summary metric_id, check_id, constant, exponent, pass.
EstimateReport check_assumptions(const WarpedMetric& metric, const CVGrid& grid, const CVScanSpec& spec);

/// chi((r - center)/width) e^{i lambda alpha0 r / alpha(y)} times amplitude,
/// chi the standard C-infinity bump on (-1, 1). modulated = false drops the
/// phase.
struct TestFunction {
  double center = 6.0;
  double width = 3.0;
  double amplitude = 1.0;
  bool modulated = true;
};

/// Both sides of the weighted energy inequality per lambda. Rows carry
/// lambda in the r column. Throws SupportError when the bump touches a or
/// r_max.
EstimateReport energy_estimate_check(const WarpedMetric& metric, const TestFunction& u, const CVScanSpec& spec);

/// Weighted outgoing resolvent norms ||x^{1/2} R(xi) x^{1/2}||_{L^2 -> H^p}
/// on Re xi = n/2 + offset, |Im xi| = lambda, with the fitted |Im xi| power
/// per line. Requires n = 1.
EstimateReport high_energy_resolvent_check(const WarpedMetric& metric, const CVScanSpec& spec, int p);

/// One weighted resolvent norm (the building block of the check above).
struct ResolventSample {
  double norm = 0.0;
  /// Fourier mode (separable) attaining the maximum, or -1 when coupled.
  int argmax_mode = -1;
  int modes_evaluated = 0;
  bool converged = true;
};
ResolventSample weighted_resolvent_norm(const WarpedMetric& metric, std::complex<double> xi, int p,
                                        const CVScanSpec& spec);
/// Norm restricted to the Fourier mode e^{i m y}; constant alpha only.
double separable_mode_norm(const WarpedMetric& metric, std::complex<double> xi, int p, int m);

}  // namespace ccres::cv
