// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccres/model.hpp"
#include "ccres/report.hpp"
#include "ccres/scanner.hpp"

/// Wave equation on the model, mode by mode: for each retained mode j,
/// s^2 d_t^2 u = -(-d_r^2 + mu_j^2 e^{2r} + n^2/4 + V) u, with s = alpha0 when
/// alpha0 sits inside D_t (the default) and s = 1 otherwise.
namespace ccres::wave {

using cvec = Eigen::VectorXcd;

struct RadialGrid {
  double r_min = -70.0;
  double r_max = 70.0;
  double h = 0.005;

  std::size_t size() const;
  double r(std::size_t i) const { return r_min + h * static_cast<double>(i); }
  void validate() const;
};

enum class TimeScaling { AlphaInTime, Unscaled };

/// f1 = u(0), f2 = D_t u(0) per retained mode, on the grid.
struct CauchyData {
  RadialGrid grid;
  std::vector<std::size_t> modes;
  std::vector<cvec> f1, f2;
  /// Interval outside which both are negligible (below 1e-15).
  double support_lo = 0.0, support_hi = 0.0;

  /// f1 = amplitude exp(-((r - center)/width)^2) cos(wavenumber (r - center))
  /// in every listed mode, f2 = 0. Support is center -/+ 6 width.
  static CauchyData gaussian(const RadialGrid& grid, std::vector<std::size_t> modes, double center, double width,
                             double amplitude = 1.0, double wavenumber = 0.0);
  static CauchyData zero(const RadialGrid& grid, std::vector<std::size_t> modes, double lo, double hi);
  void validate() const;
};

/// Fields on [grid index first, first + count) at each requested time.
struct Snapshots {
  RadialGrid grid;
  std::vector<std::size_t> modes;
  std::size_t first = 0, count = 0;
  std::vector<double> times;
  /// u[time][mode] and d_t u likewise.
  std::vector<std::vector<cvec>> u, ut;
  /// Discrete (leapfrog-conserved) energy of the full grid at each time.
  std::vector<double> energy;
  double dt = 0.0;

  double r(std::size_t i) const { return grid.r(first + i); }
  /// Header (magic, grid spec, time count, mode list) then row-major complex
  /// u samples ordered (time, mode, r), little-endian doubles.
  void write_binary(const std::string& path) const;
};

struct EvolveOptions {
  /// 0 picks cfl * the stability limit.
  double dt = 0.0;
  double cfl = 0.9;
  TimeScaling scaling = TimeScaling::AlphaInTime;
  /// Grid is cut (Dirichlet) where mu^2 e^{2r} exceeds this.
  double barrier_cap = 1e6;
  /// Recorded grid range; NaN records everything.
  double record_lo = std::numeric_limits<double>::quiet_NaN();
  double record_hi = std::numeric_limits<double>::quiet_NaN();
};

/// Leapfrog per mode, Dirichlet at the grid ends. Throws StabilityError when
/// a requested dt exceeds the CFL bound, DomainError on unsorted times.
Snapshots evolve(const model::ModelManifold& model, const scan::PotentialProfile& V, const CauchyData& data,
                 const std::vector<double>& times, const EvolveOptions& opt = {});

/// Smooth step: 0 for t <= eps, 1 for t >= 1, built from exp(-1/x).
class TimeCutoff {
 public:
  explicit TimeCutoff(double eps = 0.1);
  double eps() const { return eps_; }
  double operator()(double t) const;
  double d1(double t) const;
  double d2(double t) const;

 private:
  double eps_;
};

/// v = chi u, d_t v = chi u_t + chi' u. Requires the snapshot times to
/// cover [0, 1] when any lie inside it.
Snapshots apply_cutoff(const Snapshots& u, const TimeCutoff& chi);

struct ContourOptions {
  /// Contour Im lambda = -shift, Re lambda in [-lambda_max, lambda_max].
  double shift = 0.3;
  double lambda_max = 60.0;
  double lambda_step = 0.1;
  /// Frequencies |Re lambda| < low_cut are also summed separately.
  double low_cut = 1.0;
  /// Relative tolerance of the truncation check at +-lambda_max.
  double tail_tol = 1e-4;
  scan::MatchingOptions matching{std::numeric_limits<double>::quiet_NaN(), 1e-10, 1e-13, {1e-12, 20000, 0.0}};
};

struct ContourResult {
  double t = 0.0;
  std::vector<double> r;
  /// v per mode on r.
  std::vector<cvec> v;
  /// Part of v from |Re lambda| < low_cut.
  std::vector<cvec> v_low;
  /// max |integrand| at the ends of the lambda range over its max.
  double tail_ratio = 0.0;
};

/// v(t) = (1/2 pi) int e^{i lambda t} R(lambda) F^(lambda) d lambda on the
/// shifted line, F = s^2 (chi'' u + 2 chi' u_t) from the given snapshots of
/// u (which must resolve [eps, 1]), evaluated on window points. The
/// resolvent is built from scan::outgoing_solutions. The mode operator must
/// be positive (a negative eigenvalue puts a pole below the contour and the
/// evolution grows). Throws ConvergenceError when tail_ratio exceeds tail_tol.
ContourResult contour_synthesis(const model::ModelManifold& model, const scan::PotentialProfile& V,
                                const Snapshots& early, const TimeCutoff& chi, double t, double window_lo,
                                double window_hi, TimeScaling scaling = TimeScaling::AlphaInTime,
                                const ContourOptions& opt = {});

struct DecayWindow {
  double t_lo = 0.0, t_hi = 0.0;
  double exponent = 0.0;
  bool saturated = false;
};

struct DecayReport {
  std::vector<double> times, norms;
  std::vector<DecayWindow> windows;
  double window_lo = 0.0, window_hi = 0.0;
  double energy_drift = 0.0;
  /// "fitted" or "floor_saturated".
  std::string status;
  bool pass = false;

  /// t, local_norm, window_id, fitted_exponent.
  Table table() const;
};

struct DecayOptions {
  double t_min = 5.0, t_max = 100.0;
  double sample_step = 0.25;
  double floor = 1e-14;
  double exponent_limit = -3.0;
  EvolveOptions evolve;
};

/// L2 norm (summed over modes) of v on the data support dilated by 2 about
/// its centre; log-log fits on dyadic windows [t_max/2^{i+1}, t_max/2^i]
/// inside [t_min, t_max]. PASS needs every window fitted, the last exponent
/// <= exponent_limit and exponents non-increasing in time.
DecayReport verify_decay(const model::ModelManifold& model, const scan::PotentialProfile& V, const CauchyData& data,
                         const DecayOptions& opt = {});

}  // namespace ccres::wave
