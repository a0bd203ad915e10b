// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "ccres/errors.hpp"
#include "ccres/model.hpp"
#include "model_detail.hpp"

namespace ccres::model {

using cd = std::complex<double>;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_prop_region(const SpectralPoint& sp) {
  const double half = 0.5 * sp.n();
  if (!(sp.xi().real() > half - 0.25) || !(std::abs(sp.xi().imag()) >= 1.0)) {
    std::ostringstream os;
    os << "xi = " << sp.xi().real() << " + " << sp.xi().imag()
       << "i is outside Re xi > n/2 - 1/4, |Im xi| >= 1";
    throw DomainError(os.str());
  }
}

// Builds the per-mode operator whose norm is taken: d_r^p rho G rho at the
// point kappa, or a linear combination over several points.
using ModeAction = std::function<OperatorAction(std::size_t j)>;

ResolventNorm max_over_modes(const ModelManifold& model, const ModeAction& build, const NormOptions& options,
                             const std::function<double(std::size_t)>& tail_bound_after) {
  ResolventNorm out;
  const std::size_t total = model.spectrum.size();
  const std::size_t limit = options.J > 0 ? std::min(options.J, total) : total;
  out.tail_bound = kNaN;
  for (std::size_t j = 0; j < limit; ++j) {
    const auto est = largest_singular_value(build(j), options.lanczos_tol);
    out.per_mode.push_back(est.value);
    out.converged = out.converged && est.converged;
    out.norm = std::max(out.norm, est.value);
    out.modes_used = j + 1;
    if (j + 1 < total) {
      out.tail_bound = tail_bound_after(j);
      if (options.J == 0 && out.tail_bound < out.norm) break;
    } else {
      out.tail_bound = 0.0;
    }
  }
  return out;
}

}  // namespace

namespace {

double smallest_nonzero_mu(const CrossSectionSpectrum& spectrum) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : spectrum.entries())
    if (e.mu > 0.0) best = std::min(best, e.mu);
  return best;
}

double largest_mu(const CrossSectionSpectrum& spectrum) {
  double best = 0.0;
  for (const auto& e : spectrum.entries()) best = std::max(best, e.mu);
  return best;
}

// Every mode with mu > 0 is the mu = 1 kernel translated by ln mu, so
// || d_r^d rho G_mu rho || <= C_p / mu where C_p is assembled from
// N_d = || e^{s/2} d_s^d G_1 e^{s/2} || on the union of all translated
// supports. Valid for p = 0, 1.
double tail_constant(const ModelManifold& model, cd kappa, const RadialGrid& grid, const QuadratureSpec& quad,
                     int p, const CutoffWeight& weight, double lanczos_tol) {
  const double mu_min = smallest_nonzero_mu(model.spectrum);
  if (!std::isfinite(mu_min)) return 0.0;
  const double lo = grid.lo() + std::log(mu_min);
  const double hi = std::min(grid.hi(), 1.0) + std::log(largest_mu(model.spectrum));
  const double density = static_cast<double>(grid.nodes.size()) / (grid.hi() - grid.lo());
  const int order = 8;
  const int nodes = order * std::max(1, static_cast<int>(std::ceil(density * (hi - lo) / order)));
  const auto window = RadialGrid::composite_gauss(lo, hi, nodes, order);
  const auto sampled = detail::cached_samples(1.0, kappa, window, quad);
  const auto& m = *sampled;

  const std::size_t n = window.nodes.size();
  auto envelope_norm = [&](int d) {
    detail::RowOperator row;
    row.a.assign(n, 0.0);
    row.b.assign(n, 0.0);
    row.column.resize(n);
    row.diag_extra.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::exp(0.5 * window.nodes[i]);
      row.column[i] = e;
      if (d == 0)
        row.a[i] = e;
      else
        row.b[i] = e;
    }
    return largest_singular_value(as_action(detail::assemble(m, window.weights, row)), lanczos_tol).value;
  };
  const double n0 = envelope_norm(0);
  if (p == 0) return weight.envelope_constant(0) * n0;
  return weight.envelope_constant(1) * n0 + weight.envelope_constant(0) * envelope_norm(1);
}

// p = 2 has no uniform 1/mu decay: the local part tends to sup rho^2. Modes
// are summed until mu passes the turning scale of the highest-order term.
bool p2_cutoff_reached(double mu_next, cd kappa) { return mu_next > 2.0 * std::abs(kappa) + 4.0; }

std::function<double(std::size_t)> make_tail_rule(const ModelManifold& model, cd kappa, const RadialGrid& grid,
                                                  const QuadratureSpec& quad, const NormOptions& options,
                                                  double scale) {
  const auto& entries = model.spectrum.entries();
  if (options.p == 2) {
    return [&entries, kappa](std::size_t j) {
      return p2_cutoff_reached(entries[j + 1].mu, kappa) ? -std::numeric_limits<double>::infinity() : kNaN;
    };
  }
  auto constant = std::make_shared<double>(kNaN);
  return [=, &model, &grid, &quad, &entries](std::size_t j) {
    const double mu = entries[j + 1].mu;
    if (mu <= 0.0) return std::numeric_limits<double>::infinity();
    if (std::isnan(*constant))
      *constant = scale * tail_constant(model, kappa, grid, quad, options.p, options.weight, options.lanczos_tol);
    return *constant / mu;
  };
}

void require_grid(const RadialGrid& grid) {
  grid.validate();
  grid.validate_for_weight();
}

}  // namespace

ResolventNorm weighted_resolvent_norm(const ModelManifold& model, const SpectralPoint& sp, const RadialGrid& grid,
                                      const QuadratureSpec& quad, const NormOptions& options) {
  model.validate();
  require_prop_region(sp);
  require_grid(grid);
  const cd kappa = mode_order(model, sp);
  auto build = [&](std::size_t j) {
    return as_action(mode_operator(model, j, kappa, grid, quad, options.p, options.weight));
  };
  auto out = max_over_modes(model, build, options, make_tail_rule(model, kappa, grid, quad, options, 1.0));
  if (options.p == 2 && out.tail_bound == -std::numeric_limits<double>::infinity()) out.tail_bound = kNaN;
  return out;
}

namespace {

ResolventNorm combination_norm(const ModelManifold& model, const std::vector<SpectralPoint>& points,
                               const std::vector<cd>& coefficients, const RadialGrid& grid,
                               const QuadratureSpec& quad, const NormOptions& options) {
  std::vector<cd> kappas;
  for (const auto& pt : points) {
    require_prop_region(pt);
    kappas.push_back(mode_order(model, pt));
  }
  auto build = [&](std::size_t j) {
    std::vector<std::pair<cd, OperatorAction>> terms;
    for (std::size_t i = 0; i < kappas.size(); ++i)
      terms.emplace_back(coefficients[i],
                         as_action(mode_operator(model, j, kappas[i], grid, quad, options.p, options.weight)));
    return linear_combination(std::move(terms));
  };
  // Truncation is fixed by the caller or by the p <= 1 bound summed over the
  // combination's coefficients at the worst point.
  std::function<double(std::size_t)> tail;
  if (options.J > 0 || options.p == 2) {
    tail = [&](std::size_t j) {
      const auto& e = model.spectrum.entries();
      return p2_cutoff_reached(e[j + 1].mu, kappas.front()) ? -std::numeric_limits<double>::infinity() : kNaN;
    };
  } else {
    double weight_sum = 0.0;
    for (const cd& c : coefficients) weight_sum += std::abs(c);
    auto worst = std::make_shared<double>(kNaN);
    tail = [&, weight_sum, worst](std::size_t j) {
      const double mu = model.spectrum.entries()[j + 1].mu;
      if (mu <= 0.0) return std::numeric_limits<double>::infinity();
      if (std::isnan(*worst)) {
        *worst = 0.0;
        for (const cd& kappa : kappas)
          *worst = std::max(*worst, tail_constant(model, kappa, grid, quad, options.p, options.weight,
                                                  options.lanczos_tol));
      }
      return weight_sum * *worst / mu;
    };
  }
  auto out = max_over_modes(model, build, options, tail);
  if (!(out.tail_bound > -std::numeric_limits<double>::infinity())) out.tail_bound = kNaN;
  return out;
}

}  // namespace

ResolventNorm derivative_norm_cauchy(const ModelManifold& model, const SpectralPoint& sp, double radius, int points,
                                     const RadialGrid& grid, const QuadratureSpec& quad, const NormOptions& options) {
  model.validate();
  require_prop_region(sp);
  require_grid(grid);
  if (!(radius > 0.0) || points < 4) throw DomainError("Cauchy circle needs radius > 0 and at least 4 points");
  // f'(xi) = (1 / (M r)) sum_m f(xi + r w_m) w_m^{-1}, w_m = e^{2 pi i m / M}.
  std::vector<SpectralPoint> nodes;
  std::vector<cd> coefficients;
  for (int m = 0; m < points; ++m) {
    const cd w = std::polar(1.0, 2.0 * M_PI * m / points);
    nodes.push_back(SpectralPoint::from_xi(sp.xi() + radius * w, sp.n()));
    coefficients.push_back(1.0 / (static_cast<double>(points) * radius * w));
  }
  return combination_norm(model, nodes, coefficients, grid, quad, options);
}

ResolventNorm derivative_norm_centered(const ModelManifold& model, const SpectralPoint& sp, double h,
                                       const RadialGrid& grid, const QuadratureSpec& quad,
                                       const NormOptions& options) {
  model.validate();
  require_prop_region(sp);
  require_grid(grid);
  if (!(h > 0.0)) throw DomainError("difference step must be positive");
  const std::vector<SpectralPoint> nodes{SpectralPoint::from_xi(sp.xi() + h, sp.n()),
                                         SpectralPoint::from_xi(sp.xi() - h, sp.n())};
  const std::vector<cd> coefficients{1.0 / (2.0 * h), -1.0 / (2.0 * h)};
  return combination_norm(model, nodes, coefficients, grid, quad, options);
}

}  // namespace ccres::model
