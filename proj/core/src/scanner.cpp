// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/scanner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "ccres/besselz.hpp"
#include "ccres/errors.hpp"
#include "ccres/parallel.hpp"

namespace ccres::scan {
namespace {

using cd = std::complex<double>;
// (u, u', int f u) with f a source that is linear on each propagation call.
using State = std::array<cd, 3>;
namespace odeint = boost::numeric::odeint;

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double gauss(double r, double c, double w) {
  const double t = (r - c) / w;
  return std::abs(t) > 6.0 ? 0.0 : std::exp(-t * t);
}

// Solution data at a point, value and r-derivative times e^{log_scale}.
struct Edge {
  cd u, du;
  double log_scale = 0.0;
};

Edge boundary_side(double mu, cd kappa, double r, const QuadratureSpec& quad) {
  if (mu == 0.0) {
    const cd ph = std::exp(cd(0.0, (kappa * r).imag()));
    return {ph, kappa * ph, (kappa * r).real()};
  }
  const long double z = static_cast<long double>(mu) * std::exp(static_cast<long double>(r));
  const auto b = besselz::modified_I(ccres::cld(kappa.real(), kappa.imag()), z, quad);
  return {cd(b.value), cd(b.derivative * ccres::cld(z)), static_cast<double>(b.log_scale)};
}

Edge barrier_side(double mu, cd kappa, double r, const QuadratureSpec& quad) {
  if (mu == 0.0) {
    const cd ph = std::exp(cd(0.0, -(kappa * r).imag()));
    return {ph / (2.0 * kappa), -0.5 * ph, -(kappa * r).real()};
  }
  const long double z = static_cast<long double>(mu) * std::exp(static_cast<long double>(r));
  const auto b = besselz::modified_K(ccres::cld(kappa.real(), kappa.imag()), z, quad);
  return {cd(b.value), cd(b.derivative * ccres::cld(z)), static_cast<double>(b.log_scale)};
}

// Carries (u, u') from r0 to r1 through the perturbed mode equation,
// stopping at breakpoints so that jumps of V are never stepped across. The
// third component accumulates the integral of f u, f linear from f0 at r0
// to f1 at r1.
State propagate(State s, double r0, double r1, double mu, cd kappa, const PotentialProfile& V,
                const MatchingOptions& opt, cd f0 = 0.0, cd f1 = 0.0) {
  if (r0 == r1) return s;
  std::vector<double> stops{r0};
  std::vector<double> jumps = V.breakpoints();
  if (!V.is_zero()) {
    jumps.push_back(V.lo());
    jumps.push_back(V.hi());
  }
  for (double b : jumps)
    if ((b - r0) * (b - r1) < 0.0) stops.push_back(b);
  std::sort(stops.begin(), stops.end(), [&](double x, double y) { return r1 > r0 ? x < y : x > y; });
  stops.push_back(r1);
  const cd k2 = kappa * kappa;
  const double mu2 = mu * mu;
  for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
    const double a = stops[i], b = stops[i + 1];
    // Evaluate V inside the open piece so one-sided values are used.
    const double mid = 0.5 * (a + b);
    auto rhs = [&](const State& x, State& dx, double r) {
      const double rr = (r - mid) * (1.0 - 1e-13) + mid;
      dx[0] = x[1];
      dx[1] = (mu2 * std::exp(2.0 * r) + k2 + V(rr)) * x[0];
      dx[2] = (f0 + (f1 - f0) * ((r - r0) / (r1 - r0))) * x[0];
    };
    const double scale = std::abs(kappa) + std::sqrt(V.sup_abs()) + mu * std::exp(std::max(a, b)) + 1.0;
    const double dt0 = (b > a ? 1.0 : -1.0) * std::min(0.05, 0.5 / scale);
    auto stepper = odeint::make_controlled(opt.ode_abs_tol, opt.ode_rel_tol, odeint::runge_kutta_fehlberg78<State>());
    try {
      odeint::integrate_adaptive(stepper, rhs, s, a, b, dt0);
    } catch (const std::exception& e) {
      throw NumericError(std::string("mode ODE integration failed: ") + e.what());
    }
    for (const cd& v : s)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("mode ODE integration overflowed");
  }
  return s;
}

}  // namespace

PotentialProfile PotentialProfile::zero() { return PotentialProfile(); }

PotentialProfile PotentialProfile::square_well(double depth, double lo, double hi) {
  if (!(hi > lo) || !std::isfinite(depth)) throw DomainError("square well needs lo < hi and finite depth");
  PotentialProfile p;
  p.kind_ = Kind::Square;
  p.a_ = depth;
  p.lo_ = lo;
  p.hi_ = hi;
  p.id_ = "square_well_d" + num(depth) + "_[" + num(lo) + "," + num(hi) + "]";
  return p;
}

PotentialProfile PotentialProfile::gaussian(double amplitude, double center, double width) {
  if (!(width > 0.0) || !std::isfinite(amplitude)) throw DomainError("gaussian needs width > 0");
  PotentialProfile p;
  p.kind_ = Kind::Gaussian;
  p.a_ = amplitude;
  p.c_ = center;
  p.d_ = width;
  p.lo_ = center - 6.0 * width;
  p.hi_ = center + 6.0 * width;
  p.id_ = "gaussian_a" + num(amplitude) + "_c" + num(center) + "_w" + num(width);
  return p;
}

PotentialProfile PotentialProfile::double_bump(double amplitude, double center, double separation, double width) {
  if (!(width > 0.0) || !(separation > 0.0)) throw DomainError("double bump needs positive width and separation");
  PotentialProfile p;
  p.kind_ = Kind::DoubleBump;
  p.a_ = amplitude;
  p.b_ = separation;
  p.c_ = center;
  p.d_ = width;
  p.lo_ = center - separation / 2 - 6.0 * width;
  p.hi_ = center + separation / 2 + 6.0 * width;
  p.id_ = "double_bump_a" + num(amplitude) + "_c" + num(center) + "_s" + num(separation) + "_w" + num(width);
  return p;
}

PotentialProfile PotentialProfile::sampled(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() < 2 || nodes.size() != values.size()) throw DomainError("sampled potential needs >= 2 matching nodes");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("sampled potential nodes must increase");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("sampled potential must be bounded");
  PotentialProfile p;
  p.kind_ = Kind::Sampled;
  p.lo_ = nodes.front();
  p.hi_ = nodes.back();
  p.nodes_ = std::move(nodes);
  p.values_ = std::move(values);
  p.id_ = "sampled_" + std::to_string(p.nodes_.size());
  return p;
}

double PotentialProfile::operator()(double r) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Square:
      return r >= lo_ && r <= hi_ ? -a_ : 0.0;
    case Kind::Gaussian:
      return a_ * gauss(r, c_, d_);
    case Kind::DoubleBump:
      return a_ * (gauss(r, c_ - b_ / 2, d_) + gauss(r, c_ + b_ / 2, d_));
    case Kind::Sampled: {
      if (r < lo_ || r > hi_) return 0.0;
      const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
      if (it == nodes_.end()) return values_.back();
      const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
      const double t = (r - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
      return (1 - t) * values_[i - 1] + t * values_[i];
    }
  }
  return 0.0;
}

std::vector<double> PotentialProfile::breakpoints() const {
  if (kind_ == Kind::Sampled) return {nodes_.begin() + 1, nodes_.end() - 1};
  return {};
}

double PotentialProfile::sup_abs() const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Square:
    case Kind::Gaussian:
      return std::abs(a_);
    case Kind::DoubleBump:
      return std::abs(a_) * (1.0 + std::exp(-b_ * b_ / (d_ * d_)));
    case Kind::Sampled: {
      double m = 0.0;
      for (double v : values_) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

cd matching_determinant(const model::ModelManifold& model, std::size_t j, const PotentialProfile& V,
                        const model::SpectralPoint& sp, const MatchingOptions& opt) {
  model.validate();
  if (j >= model.spectrum.size()) throw IndexError("spectrum entry out of range");
  const cd kappa = model::mode_order(model, sp);
  if (!(kappa.real() > -0.25)) throw DomainError("matching determinant needs Re kappa > -1/4");
  const double mu = model.spectrum.entries()[j].mu;
  const double lo = V.lo(), hi = V.hi();
  double m = std::isnan(opt.matching_point) ? 0.5 * (lo + hi) : opt.matching_point;
  if (m < lo || m > hi) m = std::clamp(m, lo, hi);

  const Edge left = boundary_side(mu, kappa, lo, opt.quad);
  const Edge right = barrier_side(mu, kappa, hi, opt.quad);
  State a{left.u, left.du, 0.0}, b{right.u, right.du, 0.0};
  a = propagate(a, lo, m, mu, kappa, V, opt);
  b = propagate(b, hi, m, mu, kappa, V, opt);
  const cd w = a[0] * b[1] - a[1] * b[0];
  return -w * std::exp(left.log_scale + right.log_scale);
}

OutgoingPair outgoing_solutions(double mu, cd kappa, const PotentialProfile& V, const std::vector<double>& rs,
                                const MatchingOptions& opt, const std::vector<cd>* source) {
  if (rs.empty()) throw DomainError("outgoing_solutions needs sample points");
  for (std::size_t i = 1; i < rs.size(); ++i)
    if (!(rs[i] > rs[i - 1])) throw DomainError("outgoing_solutions needs increasing sample points");
  if (!(mu >= 0.0)) throw DomainError("mode parameter mu must be >= 0");
  if (source && source->size() != rs.size()) throw DomainError("source must be sampled at rs");
  const double a = V.is_zero() ? rs.front() : std::min(rs.front(), V.lo());
  const double b = V.is_zero() ? rs.back() : std::max(rs.back(), V.hi());
  auto f = [&](std::size_t i) { return source ? (*source)[i] : cd(0.0); };
  // Exponential scales dropped: they cancel in u_bdy u_bar / D.
  const Edge left = boundary_side(mu, kappa, a, opt.quad), right = barrier_side(mu, kappa, b, opt.quad);
  OutgoingPair out;
  const std::size_t n = rs.size();
  out.bdy.resize(n);
  out.bar.resize(n);
  if (source) {
    out.bdy_int.resize(n);
    out.bar_int.resize(n);
  }
  State s{left.u, left.du, 0.0};
  s = propagate(s, a, rs.front(), mu, kappa, V, opt);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) s = propagate(s, rs[i - 1], rs[i], mu, kappa, V, opt, f(i - 1), f(i));
    out.bdy[i] = s[0];
    if (source) out.bdy_int[i] = s[2];
  }
  State t{right.u, right.du, 0.0};
  t = propagate(t, b, rs.back(), mu, kappa, V, opt);
  out.D = -(s[0] * t[1] - s[1] * t[0]);
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 < n) t = propagate(t, rs[i + 1], rs[i], mu, kappa, V, opt, f(i + 1), f(i));
    out.bar[i] = t[0];
    if (source) out.bar_int[i] = -t[2];
  }
  return out;
}

Table ResonanceMap::region_table() const {
  Table t({"re_xi", "im_xi", "mode_j", "abs_D"});
  for (std::size_t i = 0; i < im.size(); ++i)
    for (std::size_t c = 0; c < re.size(); ++c)
      for (std::size_t m = 0; m < modes.size(); ++m)
        t.add({re[c], im[i], static_cast<std::int64_t>(modes[m]), abs_D[m](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c))});
  return t;
}

ResonanceMap scan_function(const std::function<cd(cd)>& D, int n, const Rect& rect, const ScanOptions& opt) {
  if (opt.re_points < 3 || opt.im_points < 3) throw DomainError("scan grid needs >= 3 points per direction");
  if (!(rect.re_hi > rect.re_lo) || !(rect.im_hi > rect.im_lo)) throw DomainError("empty scan rectangle");
  ResonanceMap map;
  map.rect = rect;
  map.n = n;
  map.modes = {0};
  for (int i = 0; i < opt.re_points; ++i)
    map.re.push_back(rect.re_lo + (rect.re_hi - rect.re_lo) * i / (opt.re_points - 1));
  for (int i = 0; i < opt.im_points; ++i)
    map.im.push_back(rect.im_lo + (rect.im_hi - rect.im_lo) * i / (opt.im_points - 1));
  auto excluded = [&](double y) {
    for (const auto& [a, b] : opt.excluded_im)
      if (std::abs(y) >= a && std::abs(y) <= b) return true;
    return false;
  };
  const auto nr = static_cast<Eigen::Index>(map.re.size()), ni = static_cast<Eigen::Index>(map.im.size());
  Eigen::MatrixXcd G(ni, nr);
  parallel_for(static_cast<std::size_t>(ni), [&](std::size_t i) {
    const double y = map.im[i];
    for (Eigen::Index c = 0; c < nr; ++c)
      G(static_cast<Eigen::Index>(i), c) =
          excluded(y) ? cd(std::numeric_limits<double>::quiet_NaN()) : D(cd(map.re[c], y));
  });
  const Eigen::MatrixXd g = G.cwiseAbs();
  map.abs_D.push_back(g);
  std::vector<double> steps;
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index c = 0; c < nr; ++c) {
      if (i + 1 < ni && g(i, c) > 0 && g(i + 1, c) > 0) steps.push_back(std::abs(std::arg(G(i + 1, c) / G(i, c))));
      if (c + 1 < nr && g(i, c) > 0 && g(i, c + 1) > 0) steps.push_back(std::abs(std::arg(G(i, c + 1) / G(i, c))));
    }
  if (!steps.empty()) {
    auto q = steps.begin() + static_cast<std::ptrdiff_t>(0.95 * static_cast<double>(steps.size() - 1));
    std::nth_element(steps.begin(), q, steps.end());
    map.phase_step_q95 = *q;
  }

  // Dips: local minima of |D| far below the median of their neighbourhood.
  const int w = opt.median_half_width;
  std::vector<double> window;
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index c = 0; c < nr; ++c) {
      const double v = g(i, c);
      if (!std::isfinite(v)) continue;
      bool minimum = true;
      for (Eigen::Index di = -1; di <= 1 && minimum; ++di)
        for (Eigen::Index dc = -1; dc <= 1; ++dc) {
          const Eigen::Index ii = i + di, cc = c + dc;
          if ((di || dc) && ii >= 0 && ii < ni && cc >= 0 && cc < nr && std::isfinite(g(ii, cc)) && g(ii, cc) < v) {
            minimum = false;
            break;
          }
        }
      if (!minimum) continue;
      window.clear();
      for (Eigen::Index ii = std::max<Eigen::Index>(0, i - w); ii <= std::min(ni - 1, i + w); ++ii)
        for (Eigen::Index cc = std::max<Eigen::Index>(0, c - w); cc <= std::min(nr - 1, c + w); ++cc)
          if (std::isfinite(g(ii, cc))) window.push_back(g(ii, cc));
      std::nth_element(window.begin(), window.begin() + window.size() / 2, window.end());
      const double median = window[window.size() / 2];
      if (v * opt.dip_factor < median) map.candidates.push_back({0, cd(map.re[c], map.im[i]), v, median});
    }
  // Cells around which arg D winds. A grid too coarse for the phase of D can
  // miss these, but never invents them.
  if (opt.cell_winding) {
    for (Eigen::Index i = 0; i + 1 < ni; ++i)
      for (Eigen::Index c = 0; c + 1 < nr; ++c) {
        const cd z[4] = {G(i, c), G(i, c + 1), G(i + 1, c + 1), G(i + 1, c)};
        bool finite = true;
        for (const cd& q : z) finite = finite && std::isfinite(q.real()) && std::isfinite(q.imag()) && q != 0.0;
        if (!finite) continue;
        double turn = 0.0;
        for (int e = 0; e < 4; ++e) turn += std::arg(z[(e + 1) % 4] / z[e]);
        if (std::abs(turn) < M_PI) continue;
        const cd mid(0.5 * (map.re[c] + map.re[c + 1]), 0.5 * (map.im[i] + map.im[i + 1]));
        const double v = std::min({g(i, c), g(i, c + 1), g(i + 1, c), g(i + 1, c + 1)});
        map.candidates.push_back({0, mid, v, std::numeric_limits<double>::quiet_NaN()});
      }
  }
  return map;
}

ResonanceMap scan_region(const model::ModelManifold& model, const PotentialProfile& V, const Rect& rect,
                         const ScanOptions& opt) {
  model.validate();
  const double half = model.n / 2.0;
  if (!(rect.re_lo > half - 0.25)) throw DomainError("scan rectangle must satisfy Re xi > n/2 - 1/4");
  if (rect.im_lo < 1.0 && rect.im_hi > -1.0) throw DomainError("scan rectangle must satisfy |Im xi| >= 1");
  if (opt.modes.empty()) throw DomainError("no modes retained");
  ResonanceMap out;
  for (std::size_t j : opt.modes) {
    if (j >= model.spectrum.size()) throw IndexError("retained mode outside the spectrum");
    auto D = [&](cd xi) {
      return matching_determinant(model, j, V, model::SpectralPoint::from_xi(xi, model.n), opt.matching);
    };
    auto m = scan_function(D, model.n, rect, opt);
    for (auto& c : m.candidates) c.mode = j;
    if (out.abs_D.empty()) {
      out = std::move(m);
      out.modes = {j};
    } else {
      out.modes.push_back(j);
      out.abs_D.push_back(m.abs_D.front());
      out.phase_step_q95 = std::max(out.phase_step_q95, m.phase_step_q95);
      out.candidates.insert(out.candidates.end(), m.candidates.begin(), m.candidates.end());
    }
  }
  return out;
}

std::vector<Resonance> find_zeros(const std::function<cd(cd)>& D, const ResonanceMap& map, std::size_t mode,
                                  const ZeroSearchOptions& opt) {
  const double dre = map.re.size() > 1 ? map.re[1] - map.re[0] : 1e-2;
  const double dim = map.im.size() > 1 ? map.im[1] - map.im[0] : 1e-2;
  const double h0 = std::min(dre, dim);
  std::vector<Resonance> out;
  for (const auto& cand : map.candidates) {
    if (cand.mode != mode) continue;
    Resonance res;
    res.mode = mode;
    // Secant iteration from two nearby points.
    cd x0 = cand.xi, x1 = cand.xi + cd(0.25 * h0, 0.25 * h0);
    cd f0 = D(x0), f1 = D(x1);
    bool ok = false;
    for (int it = 0; it < opt.max_newton; ++it) {
      if (f1 == f0) break;
      const cd x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = D(x1);
      if (std::abs(x1 - x0) < 1e-14 * (1.0 + std::abs(x1)) || std::abs(f1) < 1e-3 * opt.residual_tol) {
        ok = true;
        break;
      }
    }
    res.xi = x1;
    res.residual = std::abs(f1);
    const bool inside = x1.real() >= map.rect.re_lo && x1.real() <= map.rect.re_hi && x1.imag() >= map.rect.im_lo &&
                        x1.imag() <= map.rect.im_hi;
    // Winding number of D on a circle that excludes neighbouring zeros.
    const double rho = 0.3 * h0;
    double turn = 0.0;
    cd prev = D(x1 + rho);
    for (int q = 1; q <= opt.winding_points; ++q) {
      const cd cur = D(x1 + rho * std::polar(1.0, 2.0 * M_PI * q / opt.winding_points));
      turn += std::arg(cur / prev);
      prev = cur;
    }
    res.multiplicity = static_cast<int>(std::lround(turn / (2.0 * M_PI)));
    if (res.multiplicity >= 2) {
      // Secant is only linear on a multiple zero; Newton scaled by m is not.
      cd x = x1;
      for (int it = 0; it < opt.max_newton; ++it) {
        const double d = 1e-6 * (1.0 + std::abs(x));
        const cd fp = (D(x + d) - D(x - d)) / (2.0 * d);
        const cd fx = D(x);
        if (fx == 0.0 || fp == 0.0) break;
        const cd step = static_cast<double>(res.multiplicity) * fx / fp;
        x -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(x))) break;
      }
      if (std::abs(D(x)) <= res.residual) {
        x1 = x;
        res.xi = x;
        res.residual = std::abs(D(x));
        ok = true;
      }
    }
    if (!inside) continue;  // the secant wandered to a zero outside the scan
    if (!ok || res.residual >= opt.residual_tol) {
      res.resolved = false;
      res.note = "polish residual " + num(res.residual) + " above tolerance";
    } else if (res.multiplicity < 1) {
      res.resolved = false;
      res.note = "winding number " + std::to_string(res.multiplicity) + " on radius " + num(rho);
    }
    bool duplicate = false;
    for (auto& r : out)
      if (r.mode == mode && std::abs(r.xi - res.xi) < std::max(0.5 * rho, 1e-8 * (1.0 + std::abs(res.xi)))) {
        duplicate = true;
        if (!r.resolved && res.resolved) r = res;
      }
    if (!duplicate) out.push_back(res);
  }
  std::sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) {
    if (a.xi.imag() != b.xi.imag()) return a.xi.imag() < b.xi.imag();
    return a.xi.real() < b.xi.real();
  });
  return out;
}

std::vector<Resonance> find_resonances(const model::ModelManifold& model, const PotentialProfile& V,
                                       const ResonanceMap& map, const ZeroSearchOptions& opt) {
  std::vector<Resonance> all;
  for (std::size_t j : map.modes) {
    auto D = [&](cd xi) {
      const auto sp = model::SpectralPoint::from_xi(xi, model.n);
      return matching_determinant(model, j, V, sp);
    };
    auto z = find_zeros(D, map, j, opt);
    all.insert(all.end(), z.begin(), z.end());
  }
  std::stable_sort(all.begin(), all.end(), [](const Resonance& a, const Resonance& b) {
    if (a.xi.imag() != b.xi.imag()) return a.xi.imag() < b.xi.imag();
    return a.xi.real() < b.xi.real();
  });
  return all;
}

RegionFit fit_region_boundary(const std::vector<Resonance>& zeros, int n) {
  std::vector<std::pair<double, double>> pts;  // (Im xi, (n/2 - Re xi) Im xi)
  for (const auto& z : zeros)
    if (z.resolved && z.xi.imag() > 1.0) pts.emplace_back(z.xi.imag(), (n / 2.0 - z.xi.real()) * z.xi.imag());
  if (pts.size() < 3) throw InsufficientDataError("region fit needs >= 3 zeros above Im xi = 1, got " + std::to_string(pts.size()));
  std::sort(pts.begin(), pts.end());
  RegionFit best;
  best.residual = INFINITY;
  for (std::size_t start = 0; start + 3 <= pts.size(); ++start) {
    double mean = 0.0, lo = INFINITY;
    const std::size_t m = pts.size() - start;
    for (std::size_t i = start; i < pts.size(); ++i) {
      mean += pts[i].second;
      lo = std::min(lo, pts[i].second);
    }
    mean /= m;
    double ss = 0.0;
    for (std::size_t i = start; i < pts.size(); ++i) ss += (pts[i].second - mean) * (pts[i].second - mean);
    const double resid = std::sqrt(ss / m) / std::abs(mean);
    RegionFit f{lo, mean, resid, pts[start].first, m, resid < 0.2 && lo > 0.0};
    if (f.ok) return f;
    if (resid < best.residual) best = f;
  }
  return best;
}

Table zeros_table(const std::vector<Resonance>& zeros) {
  Table t({"re_xi", "im_xi", "multiplicity", "residual", "mode_j", "resolved"});
  for (const auto& z : zeros)
    t.add({z.xi.real(), z.xi.imag(), static_cast<std::int64_t>(z.multiplicity), z.residual,
           static_cast<std::int64_t>(z.mode), z.resolved});
  return t;
}

}  // namespace ccres::scan
