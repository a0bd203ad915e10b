// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "ccres/errors.hpp"
#include "ccres/parallel.hpp"

namespace ccres::besselz {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kStability = 0.05;

struct GridPoint {
  ComplexOrder k;
  bool base;
};

std::string name_point(ComplexOrder k) {
  std::ostringstream os;
  os << "k = " << k.re << (k.im < 0 ? " - " : " + ") << std::abs(k.im) << "i";
  return os.str();
}

void require_bound_region(const std::vector<ComplexOrder>& k_grid, const std::vector<double>& t_grid) {
  if (k_grid.empty() || t_grid.empty()) throw DomainError("bound checks need non-empty k and t grids");
  for (const auto& k : k_grid)
    if (!k.in_bound_region())
      throw DomainError("grid point outside |Re k| <= 1/4, |Im k| >= 1: " + name_point(k));
  for (double t : t_grid)
    if (!std::isfinite(t)) throw DomainError("t grid contains a non-finite value");
}

// Original points plus midpoints between neighbours.
std::vector<GridPoint> refine_k(const std::vector<ComplexOrder>& grid) {
  std::vector<GridPoint> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.push_back({grid[i], true});
    if (i + 1 < grid.size()) {
      const ComplexOrder mid(0.5 * (grid[i].re + grid[i + 1].re), 0.5 * (grid[i].im + grid[i + 1].im));
      if (mid.in_bound_region()) out.push_back({mid, false});
    }
  }
  return out;
}

std::vector<std::pair<double, bool>> refine_t(std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<std::pair<double, bool>> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.push_back({grid[i], true});
    if (i + 1 < grid.size()) out.push_back({0.5 * (grid[i] + grid[i + 1]), false});
  }
  return out;
}

struct Sample {
  ComplexOrder k;
  double t;
  bool base;
  double lhs, rhs, ratio;
};

struct Supremum {
  double base = -1.0, refined = -1.0;
  const Sample* where = nullptr;
  bool finite = true;
};

Supremum supremum(const std::vector<const Sample*>& samples) {
  Supremum s;
  for (const Sample* p : samples) {
    if (!std::isfinite(p->ratio)) {
      s.finite = false;
      continue;
    }
    if (p->ratio > s.refined) {
      s.refined = p->ratio;
      s.where = p;
    }
    if (p->base) s.base = std::max(s.base, p->ratio);
  }
  return s;
}

double refinement_delta(const Supremum& s) {
  if (!s.finite || s.refined <= 0.0 || s.base < 0.0) return kNaN;
  return std::abs(s.refined - s.base) / s.refined;
}

// Least-squares slope of ln(max_t ratio) against |Im k| over base samples.
double growth_rate(const std::vector<const Sample*>& samples) {
  std::map<double, double> best;
  for (const Sample* p : samples) {
    if (!p->base || !std::isfinite(p->ratio) || p->ratio <= 0.0) continue;
    auto [it, inserted] = best.emplace(std::abs(p->k.im), p->ratio);
    if (!inserted) it->second = std::max(it->second, p->ratio);
  }
  if (best.size() < 2) return kNaN;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(best.size());
  for (auto [x, r] : best) {
    const double y = std::log(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Table bound_rows_table() { return Table({"bound_id", "re_k", "im_k", "t", "lhs", "rhs", "ratio"}); }

Table bound_summary_table() {
  return Table({"bound_id", "sup_ratio", "refinement_delta", "pass", "argmax_re_k", "argmax_im_k",
                "argmax_t", "k_growth_rate", "points", "nonfinite_points"});
}

void summarize(const std::string& id, const std::vector<const Sample*>& samples, Table& summary,
               bool& all_pass) {
  if (samples.empty()) return;
  const Supremum s = supremum(samples);
  const double delta = refinement_delta(s);
  const bool pass = s.finite && s.where != nullptr && std::isfinite(delta) && delta < kStability;
  std::int64_t nonfinite = 0;
  for (const Sample* p : samples) nonfinite += std::isfinite(p->ratio) ? 0 : 1;
  summary.add({id, s.finite ? s.refined : std::numeric_limits<double>::infinity(), delta, pass,
               s.where ? s.where->k.re : kNaN, s.where ? s.where->k.im : kNaN,
               s.where ? s.where->t : kNaN, growth_rate(samples),
               static_cast<std::int64_t>(samples.size()), nonfinite});
  all_pass = all_pass && pass;
}

}  // namespace

std::vector<ComplexOrder> imaginary_order_grid(int first, int last) {
  std::vector<ComplexOrder> out;
  for (int m = first; m <= last; ++m) out.emplace_back(0.0, static_cast<double>(m));
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw DomainError("uniform_grid needs step > 0 and hi >= lo");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

EstimateReport check_pointwise_bounds(const std::vector<ComplexOrder>& k_grid,
                                      const std::vector<double>& t_grid, const QuadratureSpec& quad) {
  require_bound_region(k_grid, t_grid);
  const auto ks = refine_k(k_grid);
  const auto ts = refine_t(t_grid);
  // Per k: samples of I and K at every t.
  std::vector<std::vector<Sample>> i_samples(ks.size()), k_samples(ks.size());
  parallel_for(ks.size(), [&](std::size_t a) {
    const ComplexOrder k = ks[a].k;
    const cld kk = k.wide();
    const long double log_abs_k = std::log(std::abs(kk));
    for (const auto& [t, t_base] : ts) {
      const long double z = std::exp(static_cast<long double>(t));
      const ScaledBessel vi = modified_I(kk, z, quad);
      const ScaledBessel vk = modified_K(kk, z, quad);
      const long double log_i = std::log(std::abs(vi.value)) + vi.log_scale;
      const long double log_k = std::log(std::abs(vk.value)) + vk.log_scale;
      // Envelope logs for C = 1.
      const long double log_rhs_i = t > 0 ? z - t - log_abs_k : -log_abs_k;
      const long double log_rhs_k = t > 0 ? -z - t - log_abs_k : -log_abs_k;
      const bool base = ks[a].base && t_base;
      i_samples[a].push_back({k, t, base, double(std::exp(log_i)), double(std::exp(log_rhs_i)),
                              double(std::exp(log_i - log_rhs_i))});
      k_samples[a].push_back({k, t, base, double(std::exp(log_k)), double(std::exp(log_rhs_k)),
                              double(std::exp(log_k - log_rhs_k))});
    }
  });

  EstimateReport report;
  report.rows = bound_rows_table();
  report.summary = bound_summary_table();
  std::map<std::string, std::vector<const Sample*>> groups;
  for (std::size_t a = 0; a < ks.size(); ++a) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const bool pos = ts[j].first > 0.0;
      groups[pos ? "I_pos" : "I_nonpos"].push_back(&i_samples[a][j]);
      groups[pos ? "K_pos" : "K_nonpos"].push_back(&k_samples[a][j]);
    }
  }
  report.pass = true;
  for (const char* id : {"I_pos", "K_pos", "I_nonpos", "K_nonpos"}) {
    const auto& g = groups[id];
    for (const Sample* p : g) report.rows.add({std::string(id), p->k.re, p->k.im, p->t, p->lhs, p->rhs, p->ratio});
    summarize(id, g, report.summary, report.pass);
  }
  return report;
}

namespace {

// int_0^inf sinh(k u) e^{-z cosh u} du.
cld sinh_cosh_u_integral(cld k, long double z, const QuadratureSpec& quad) {
  const long double growth = std::abs(k.real()) + std::abs(k.imag());
  const long double target =
      std::log(1.0L / static_cast<long double>(quad.rel_tol)) + 5.0L + std::log1p(std::abs(k)) + z;
  const long double U = cosh_truncation_point(static_cast<double>(z), static_cast<double>(growth),
                                              static_cast<double>(target));
  // Scaled by e^{z}.
  auto f = [&](long double u) -> cld { return std::sinh(k * u) * std::exp(-z * (std::cosh(u) - 1.0L)); };
  const int panels = static_cast<int>(std::ceil(std::abs(k.imag()) * U / kPi)) + 1;
  const auto r = integrate(f, 0.0L, U, quad, panels);
  if (!r.converged)
    throw ConvergenceError("sinh(ku) e^{-z cosh u} integral did not converge",
                           static_cast<double>(r.previous_estimate), static_cast<double>(std::abs(r.value)));
  return r.value * std::exp(-z);
}

// Partial integrals of sinh(k u) e^{-z cosh(k u)} over two cutoffs a
// quarter and a half period past whole periods; returns NaN when they
// disagree or cannot be computed.
double sinh_cosh_ku_integral(cld k, long double z, const QuadratureSpec& quad) {
  const long double period = 2.0L * kPi / std::abs(k.imag());
  auto f = [&](long double u) -> cld { return std::sinh(k * u) * std::exp(-z * std::cosh(k * u)); };
  const long double u1 = 10.25L * period, u2 = 20.5L * period;
  const auto r1 = integrate(f, 0.0L, u1, quad, 41);
  const long double a1 = std::abs(r1.value);
  if (!r1.converged || !std::isfinite(double(a1))) return kNaN;
  const auto r2 = integrate(f, 0.0L, u2, quad, 82);
  const long double a2 = std::abs(r2.value);
  if (!r2.converged || !std::isfinite(double(a2))) return kNaN;
  if (std::abs(r2.value - r1.value) > 1e-8L * std::max(a1, a2)) return kNaN;
  return static_cast<double>(a2);
}

}  // namespace

EstimateReport check_appendix_inequality(const std::vector<ComplexOrder>& k_grid,
                                         const std::vector<double>& t_grid, const QuadratureSpec& quad) {
  require_bound_region(k_grid, t_grid);
  const auto ks = refine_k(k_grid);
  const auto ts = refine_t(t_grid);
  std::vector<std::vector<Sample>> printed(ks.size()), cosh_u(ks.size());
  parallel_for(ks.size(), [&](std::size_t a) {
    const ComplexOrder k = ks[a].k;
    const cld kk = k.wide();
    for (const auto& [t, t_base] : ts) {
      const long double z = std::exp(static_cast<long double>(t));
      const double lhs = static_cast<double>(std::abs(modified_K(kk, z, quad).unscaled_value()));
      const bool base = ks[a].base && t_base;
      const double rhs_u = static_cast<double>(std::abs(sinh_cosh_u_integral(kk, z, quad)));
      if (rhs_u < 1e-300) {
        std::ostringstream os;
        os << "right side below 1e-300 at " << name_point(k) << ", t = " << t;
        throw DegenerateDenominatorError(os.str());
      }
      cosh_u[a].push_back({k, t, base, lhs, rhs_u, lhs / rhs_u});
      const double rhs_p = sinh_cosh_ku_integral(kk, z, quad);
      if (std::isfinite(rhs_p) && rhs_p < 1e-300) {
        std::ostringstream os;
        os << "printed-reading right side below 1e-300 at " << name_point(k) << ", t = " << t;
        throw DegenerateDenominatorError(os.str());
      }
      printed[a].push_back({k, t, base, lhs, rhs_p, lhs / rhs_p});
    }
  });

  EstimateReport report;
  report.rows = bound_rows_table();
  report.summary = bound_summary_table();
  bool any_pass = false;
  for (auto [id, samples] : {std::pair<const char*, std::vector<std::vector<Sample>>*>{"appendix_printed", &printed},
                             {"appendix_cosh_u", &cosh_u}}) {
    std::vector<const Sample*> g;
    for (const auto& row : *samples)
      for (const auto& s : row) {
        g.push_back(&s);
        report.rows.add({std::string(id), s.k.re, s.k.im, s.t, s.lhs, s.rhs, s.ratio});
      }
    bool pass = true;
    summarize(id, g, report.summary, pass);
    any_pass = any_pass || pass;
  }
  report.pass = any_pass;
  return report;
}

}  // namespace ccres::besselz
