// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ccres/linalg.hpp"
#include "ccres/quadrature.hpp"
#include "ccres/report.hpp"

/// The product model (0, inf)_x x M with metric (dx^2 + H0)/x^2 in the
/// coordinate r = ln x, its mode decomposition over the cross-section
/// spectrum and the weighted resolvent rho (P0 - Xi)^{-1} rho.
namespace ccres::model {

/// One distinct cross-section frequency. mu^2 is the eigenvalue of the
/// cross-section Laplacian, so the mode operator carries e^{2r} mu^2.
struct SpectrumEntry {
  double mu = 0.0;
  int multiplicity = 1;
};

class CrossSectionSpectrum {
 public:
  /// Circle of length L: mu_m = 2 pi |m| / L, multiplicity 2 for m >= 1.
  static CrossSectionSpectrum circle(double length, int max_mode);
  /// Flat torus (R/LZ)^dim with all lattice frequencies up to mu_max.
  static CrossSectionSpectrum flat_torus(int dim, double length, double mu_max);
  /// Round unit sphere S^dim: mu_l = sqrt(l (l + dim - 1)), l <= max_degree.
  static CrossSectionSpectrum round_sphere(int dim, int max_degree);
  /// Explicit ascending list.
  static CrossSectionSpectrum from_list(std::vector<SpectrumEntry> entries);

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const std::string& source() const { return source_; }
  /// Cross-section dimension when known from the descriptor.
  std::optional<int> dimension() const { return dimension_; }

 private:
  CrossSectionSpectrum(std::vector<SpectrumEntry> e, std::string source, std::optional<int> dim);
  std::vector<SpectrumEntry> entries_;
  std::string source_;
  std::optional<int> dimension_;
};

/// Which operator the spectral parameter enters.
enum class ScalingMode {
  SpectralFamily,  ///< Delta_{g0} - alpha0^2 xi (n - xi)
  ProofOperator,   ///< P0 - xi (n - xi)
};

struct ModelManifold {
  int n = 1;
  CrossSectionSpectrum spectrum = CrossSectionSpectrum::circle(2.0 * M_PI, 128);
  double alpha0 = 1.0;
  ScalingMode scaling = ScalingMode::SpectralFamily;

  /// Throws DomainError on n < 1, alpha0 <= 0 or a dimension mismatch.
  void validate() const;
};

/// xi with k = xi - n/2 and Xi = xi (n - xi); built only through the factories.
class SpectralPoint {
 public:
  static SpectralPoint from_xi(std::complex<double> xi, int n);
  static SpectralPoint from_k(std::complex<double> k, int n);

  std::complex<double> xi() const { return xi_; }
  std::complex<double> k() const { return k_; }
  std::complex<double> Xi() const { return Xi_; }
  int n() const { return n_; }

 private:
  SpectralPoint(std::complex<double> xi, int n);
  std::complex<double> xi_, k_, Xi_;
  int n_;
};

/// Order kappa of the mode problem -u'' + (e^{2r} mu^2 + kappa^2) u. Equal to
/// k except in SpectralFamily mode with alpha0 != 1, where
/// kappa^2 = n^2/4 - alpha0^2 Xi on the branch kappa ~ alpha0 k.
std::complex<double> mode_order(const ModelManifold& model, const SpectralPoint& sp);

struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Interval and rule the nodes were built from (zero for hand-made grids).
  double lower = 0.0, upper = 0.0;
  int order = 0;

  /// Composite Gauss-Legendre rule with `order` nodes per panel; nodes is
  /// rounded up to a multiple of order.
  static RadialGrid composite_gauss(double lo, double hi, int nodes, int order = 8);
  /// Default model grid: [-14, 2], 1200 nodes.
  static RadialGrid standard();
  /// Same interval and rule with twice the nodes; needs a composite grid.
  RadialGrid refined() const;

  std::size_t size() const { return nodes.size(); }
  double lo() const { return nodes.front(); }
  double hi() const { return nodes.back(); }
  /// Nodes strictly increasing, weights positive.
  void validate() const;
  /// Additionally covers [-10, 2], the support of the weight.
  void validate_for_weight() const;
};

/// rho(r) = e^{r/2} chi(r), chi = 1 for r <= -1, 0 for r >= 1, with a
/// smoothstep transition of degree 3, 5 or 7 (C^1, C^2, C^3).
class CutoffWeight {
 public:
  explicit CutoffWeight(int degree = 5);
  int degree() const { return degree_; }
  double chi(double r, int derivative = 0) const;
  /// d^i/dr^i of rho, i = 0, 1, 2.
  double rho(double r, int derivative = 0) const;
  /// sup |(e^{r/2} chi)^{(i)} e^{-r/2}| over r.
  double envelope_constant(int derivative) const;

 private:
  int degree_;
};

struct KernelMatrix {
  RadialGrid grid;
  cmat values;
  /// True when rho(r_i) rho(t_j) is already multiplied in.
  bool weighted = false;
};

struct Reduction {
  double shift = 0.0;
  bool is_zero_mode = false;
};

/// Translation r -> r + ln mu_j taking the mode operator to
/// Q = -d^2 + e^{2r} + n^2/4; zero modes are flagged instead.
Reduction reduce_to_Q(const ModelManifold& model, std::size_t j);

/// I_kappa(e^{min(r,t)}) K_kappa(e^{max(r,t)}), the kernel of (Q - Xi)^{-1}.
/// Requires Re kappa > -1/4.
std::complex<double> green_kernel_Q(const SpectralPoint& sp, double r, double t, const QuadratureSpec& quad);

/// Dense rho(r_i) G_j(r_i, t_j) rho(t_j) for spectrum entry j.
KernelMatrix mode_kernel(const ModelManifold& model, std::size_t j, const SpectralPoint& sp,
                         const RadialGrid& grid, const QuadratureSpec& quad);

struct OperatorNorm {
  double norm = 0.0;
  double hilbert_schmidt = 0.0;
  bool converged = true;
};

/// Largest singular value of diag(sqrt w) K diag(sqrt w) and the
/// Hilbert-Schmidt norm of the same matrix.
OperatorNorm operator_norm(const KernelMatrix& kernel);

/// Structured (O(N) apply) form of d^p/dr^p [rho G_j rho] on the grid, in the
/// sqrt(w)-weighted basis. For p = 2 the delta term -rho^2 is on the diagonal.
SemiSeparable mode_operator(const ModelManifold& model, std::size_t j, std::complex<double> kappa,
                            const RadialGrid& grid, const QuadratureSpec& quad, int p,
                            const CutoffWeight& weight = CutoffWeight());

struct ResolventNorm {
  double norm = 0.0;
  /// Spectrum entries actually assembled.
  std::size_t modes_used = 0;
  /// Upper bound on every omitted mode's norm (NaN when the rule is not rigorous).
  double tail_bound = 0.0;
  std::vector<double> per_mode;
  bool converged = true;
};

/// Mode truncation: J = 0 selects the automatic rule, otherwise the first J
/// spectrum entries are used.
struct NormOptions {
  int p = 0;
  std::size_t J = 0;
  double lanczos_tol = 1e-9;
  CutoffWeight weight = CutoffWeight();
};

/// max_j || d_r^p rho (P0^{(j)} - Xi)^{-1} rho ||, block by block. Requires
/// Re xi > n/2 - 1/4 and |Im xi| >= 1.
ResolventNorm weighted_resolvent_norm(const ModelManifold& model, const SpectralPoint& sp,
                                      const RadialGrid& grid, const QuadratureSpec& quad,
                                      const NormOptions& options);

/// xi-derivative of the weighted resolvent: Cauchy integral over a circle of
/// the given radius with `points` trapezoid nodes, or the centered difference
/// with step h. Norms are maxima over modes as above.
ResolventNorm derivative_norm_cauchy(const ModelManifold& model, const SpectralPoint& sp, double radius,
                                     int points, const RadialGrid& grid, const QuadratureSpec& quad,
                                     const NormOptions& options);
ResolventNorm derivative_norm_centered(const ModelManifold& model, const SpectralPoint& sp, double h,
                                       const RadialGrid& grid, const QuadratureSpec& quad,
                                       const NormOptions& options);

/// sup over the grid of |k|^2 |I rho|(t) int_t^inf |K rho| and the mirrored
/// product, with one grid refinement for stability.
EstimateReport check_product_bounds(const ModelManifold& model, std::size_t j, const SpectralPoint& sp,
                                    const RadialGrid& grid, const QuadratureSpec& quad);

struct PropRegion {
  /// Offsets Re xi - n/2 of the vertical lines sampled.
  std::vector<double> re_offsets{1e-6, -0.2};
  /// Values of |xi - n/2|.
  std::vector<double> radii{2, 4, 8, 16, 32, 64};
};

/// Half the distance from xi to the boundary of Re xi > n/2 - 1/4, |Im xi| >= 1.
double cauchy_radius(const SpectralPoint& sp);

/// q = 0: weighted_resolvent_norm; q = 1: derivative_norm_cauchy on the
/// circle of radius cauchy_radius(sp) with 16 nodes.
ResolventNorm prop_norm(const ModelManifold& model, const SpectralPoint& sp, int q, const RadialGrid& grid,
                        const QuadratureSpec& quad, const NormOptions& options);

/// Norm-law scan: per line, the log-log slope of the norm against
/// |xi - n/2| and the constant C = max norm |xi - n/2|^{2-p}. Rows follow the
/// norm-scan schema; a line passes when slope <= -2 + p + 0.2 and C changes by
/// less than 5% when the grid is refined. q = 1 adds the Cauchy versus
/// centered-difference comparison (10% agreement).
EstimateReport verify_prop_model(const ModelManifold& model, const PropRegion& region, int p, int q,
                                 const RadialGrid& grid, const QuadratureSpec& quad, std::size_t J = 0);

}  // namespace ccres::model
