// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccres/model.hpp"
#include "ccres/quadrature.hpp"
#include "ccres/report.hpp"

/// Resonances of the model operator perturbed by a compactly supported
/// potential V(r) (r = ln x, boundary at r = -inf): zeros of the matching
/// determinant between the boundary-side solution (continued I_kappa) and
/// the barrier-side decaying solution (K_kappa).
namespace ccres::scan {

/// Real potential with support [lo, hi]; V may jump only at lo, hi and the
/// listed breakpoints.
class PotentialProfile {
 public:
  static PotentialProfile zero();
  /// V = -depth on [lo, hi].
  static PotentialProfile square_well(double depth, double lo, double hi);
  /// amplitude exp(-((r - center)/width)^2), cut at |r - center| = 6 width.
  static PotentialProfile gaussian(double amplitude, double center, double width);
  /// Two Gaussian bumps at center -/+ separation/2.
  static PotentialProfile double_bump(double amplitude, double center, double separation, double width);
  /// Piecewise linear through (nodes, values); zero outside [nodes.front(), nodes.back()].
  static PotentialProfile sampled(std::vector<double> nodes, std::vector<double> values);

  double operator()(double r) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  /// Points in (lo, hi) where V or V' may jump.
  std::vector<double> breakpoints() const;
  const std::string& id() const { return id_; }
  double sup_abs() const;

 private:
  enum class Kind { Zero, Square, Gaussian, DoubleBump, Sampled };
  PotentialProfile() = default;
  Kind kind_ = Kind::Zero;
  double a_ = 0.0, b_ = 0.0, c_ = 0.0, d_ = 0.0;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> nodes_, values_;
  std::string id_ = "free";
};

struct MatchingOptions {
  /// Matching point; NaN selects the middle of the support.
  double matching_point = std::numeric_limits<double>::quiet_NaN();
  double ode_rel_tol = 1e-12;
  double ode_abs_tol = 1e-14;
  QuadratureSpec quad{1e-12, 20000, 0.0};
};

/// D = -W[u_bdy, u_bar], normalized so that D = 1 for V = 0 (both for
/// mu > 0 with I_kappa, K_kappa and for zero modes with e^{kappa r},
/// e^{-kappa r}/(2 kappa)). Entire in kappa; requires Re kappa > -1/4.
std::complex<double> matching_determinant(const model::ModelManifold& model, std::size_t j, const PotentialProfile& V,
                                          const model::SpectralPoint& sp, const MatchingOptions& opt = {});

/// Boundary-side and barrier-side solutions of
/// -u'' + (mu^2 e^{2r} + V) u = -kappa^2 u sampled at increasing points rs,
/// with D = -W[bdy, bar]. Common exponential scale factors are dropped, so
/// only ratios such as bdy(r) bar(s) / D are meaningful. Re kappa > -1/4.
/// With a source f sampled at rs (linear in between), also returns
/// bdy_int[i] = int_{rs[0]}^{rs[i]} bdy f and bar_int[i] = int_{rs[i]}^{rs.back()} bar f.
struct OutgoingPair {
  std::vector<std::complex<double>> bdy, bar, bdy_int, bar_int;
  std::complex<double> D;
};
OutgoingPair outgoing_solutions(double mu, std::complex<double> kappa, const PotentialProfile& V,
                                const std::vector<double>& rs, const MatchingOptions& opt = {},
                                const std::vector<std::complex<double>>* source = nullptr);

/// Rectangle in the xi-plane.
struct Rect {
  double re_lo = 0.3, re_hi = 1.0, im_lo = 1.0, im_hi = 30.0;
};

struct ScanOptions {
  int re_points = 400;
  int im_points = 400;
  /// Spectrum entries scanned.
  std::vector<std::size_t> modes{0};
  /// A local minimum of |D| is a candidate when it lies this factor below
  /// the median of its (2 w + 1)^2 neighbourhood.
  double dip_factor = 1e4;
  int median_half_width = 4;
  /// Also report grid cells around which arg D winds.
  bool cell_winding = true;
  /// Im xi intervals kept out of the scan (|Im xi| in [lo, hi]).
  std::vector<std::pair<double, double>> excluded_im;
  MatchingOptions matching;
};

struct Candidate {
  std::size_t mode = 0;
  std::complex<double> xi;
  double abs_D = 0.0;
  double local_median = 0.0;
};

struct ResonanceMap {
  Rect rect;
  int n = 1;
  std::vector<std::size_t> modes;
  std::vector<double> re, im;
  /// |D| per mode: rows im, columns re.
  std::vector<Eigen::MatrixXd> abs_D;
  std::vector<Candidate> candidates;
  /// 95th percentile of |arg D| changes between neighbouring samples (the
  /// largest steps sit next to zeros). Cell winding needs this well below pi.
  double phase_step_q95 = 0.0;
  /// Filled in by fit_region_boundary callers.
  double C1 = std::numeric_limits<double>::quiet_NaN();
  double C2 = std::numeric_limits<double>::quiet_NaN();

  /// re_xi, im_xi, mode_j, abs_D; ordered by (im, re, mode).
  Table region_table() const;
};

/// |D| on the grid and dip candidates for an arbitrary determinant.
ResonanceMap scan_function(const std::function<std::complex<double>(std::complex<double>)>& D, int n, const Rect& rect,
                           const ScanOptions& opt);

/// scan_function over each retained mode of the perturbed model. Throws
/// DomainError when the rectangle leaves {Re xi > n/2 - 1/4, |Im xi| >= 1}.
ResonanceMap scan_region(const model::ModelManifold& model, const PotentialProfile& V, const Rect& rect,
                         const ScanOptions& opt = {});

struct Resonance {
  std::size_t mode = 0;
  std::complex<double> xi;
  int multiplicity = 0;
  double residual = 0.0;
  /// False when polishing and winding disagree; note says why.
  bool resolved = true;
  std::string note;
};

struct ZeroSearchOptions {
  double residual_tol = 1e-10;
  int winding_points = 128;
  int max_newton = 60;
};

/// Polishes each candidate (secant iteration on D) and counts the winding
/// number on a small circle; duplicates are merged. Ordered by (Im, Re).
std::vector<Resonance> find_zeros(const std::function<std::complex<double>(std::complex<double>)>& D,
                                  const ResonanceMap& map, std::size_t mode, const ZeroSearchOptions& opt = {});
std::vector<Resonance> find_resonances(const model::ModelManifold& model, const PotentialProfile& V,
                                       const ResonanceMap& map, const ZeroSearchOptions& opt = {});

struct RegionFit {
  /// Largest C1 leaving every fitted zero on or left of Re xi = n/2 - C1/Im xi.
  double C1 = 0.0;
  /// Least-squares constant of (n/2 - Re xi) Im xi and its relative rms residual.
  double C1_lsq = 0.0;
  double residual = 0.0;
  double C2 = 0.0;
  std::size_t used = 0;
  bool ok = false;
};

/// C2 is the smallest zero height from which the constant fit has residual
/// < 20% over at least three zeros. Throws InsufficientDataError with fewer
/// than three zeros above Im xi = 1.
RegionFit fit_region_boundary(const std::vector<Resonance>& zeros, int n);

/// zeros table: re_xi, im_xi, multiplicity, residual (plus mode_j, resolved).
Table zeros_table(const std::vector<Resonance>& zeros);

struct ComplexScalingOptions {
  double angle = 0.6;
  /// Length of the rotated tails (left; right for zero modes).
  double tail = 12.0;
  /// Unrotated extent past hi() into the barrier (mu > 0).
  double barrier_extent = 8.0;
  double element_length = 1.0;
  int nodes_per_element = 24;
};

/// Independent resonance computation: exterior complex scaling of the mode
/// operator on spectral elements (breakpoints on element edges); returns
/// xi = n/2 + kappa for every eigenvalue with Im kappa > 0.
std::vector<std::complex<double>> complex_scaled_resonances(const model::ModelManifold& model, std::size_t j,
                                                            const PotentialProfile& V,
                                                            const ComplexScalingOptions& opt = {});

}  // namespace ccres::scan
