// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/wavesim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "ccres/errors.hpp"
#include "ccres/parallel.hpp"

namespace ccres::wave {
namespace {

using cd = std::complex<double>;

double time_factor(const model::ModelManifold& m, TimeScaling s) {
  return s == TimeScaling::AlphaInTime ? m.alpha0 : 1.0;
}

// Mode potential mu^2 e^{2r} + n^2/4 + V and the index past which the
// barrier is cut.
struct ModePotential {
  std::vector<double> W;
  std::size_t end = 0;  // exclusive; u = 0 from end on
};

ModePotential mode_potential(const model::ModelManifold& m, std::size_t j, const scan::PotentialProfile& V,
                             const RadialGrid& g, double cap) {
  const double mu = m.spectrum.entries()[j].mu;
  ModePotential p;
  const std::size_t n = g.size();
  p.W.resize(n);
  p.end = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = g.r(i), b = mu * mu * std::exp(2.0 * r);
    if (b > cap && p.end == n) p.end = i;
    p.W[i] = b + m.n * m.n / 4.0 + V(r);
  }
  return p;
}

// (A u)_i = (-(u_{i+1} - 2 u_i + u_{i-1}) / h^2 + W_i u_i) / s^2 with
// u_0 = u_{end-1} = 0.
void apply_A(const ModePotential& p, double h, double s2, const cvec& u, cvec& out) {
  const Eigen::Index last = static_cast<Eigen::Index>(p.end) - 1;
  out.setZero(u.size());
  const double ih2 = 1.0 / (h * h);
  for (Eigen::Index i = 1; i < last; ++i)
    out(i) = ((2.0 * u(i) - u(i - 1) - u(i + 1)) * ih2 + p.W[static_cast<std::size_t>(i)] * u(i)) / s2;
}

double dot_re(const cvec& a, const cvec& b, double h) { return h * (a.conjugate().cwiseProduct(b)).sum().real(); }

double l2(const cvec& a, double h) { return std::sqrt(h * a.squaredNorm()); }

}  // namespace

std::size_t RadialGrid::size() const { return static_cast<std::size_t>(std::floor((r_max - r_min) / h + 0.5)) + 1; }

void RadialGrid::validate() const {
  if (!(r_max > r_min) || !(h > 0.0) || !std::isfinite(r_min) || !std::isfinite(r_max))
    throw DomainError("radial grid needs r_min < r_max and h > 0");
  if (size() < 5) throw DomainError("radial grid needs at least 5 points");
}

CauchyData CauchyData::gaussian(const RadialGrid& grid, std::vector<std::size_t> modes, double center, double width,
                                double amplitude, double wavenumber) {
  grid.validate();
  if (!(width > 0.0)) throw DomainError("gaussian data needs width > 0");
  CauchyData d;
  d.grid = grid;
  d.modes = std::move(modes);
  d.support_lo = center - 6.0 * width;
  d.support_hi = center + 6.0 * width;
  const std::size_t n = grid.size();
  cvec f(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.r(i) - center, t = x / width;
    f(static_cast<Eigen::Index>(i)) = std::abs(t) > 6.0 ? 0.0 : amplitude * std::exp(-t * t) * std::cos(wavenumber * x);
  }
  d.f1.assign(d.modes.size(), f);
  d.f2.assign(d.modes.size(), cvec::Zero(static_cast<Eigen::Index>(n)));
  d.validate();
  return d;
}

CauchyData CauchyData::zero(const RadialGrid& grid, std::vector<std::size_t> modes, double lo, double hi) {
  grid.validate();
  CauchyData d;
  d.grid = grid;
  d.modes = std::move(modes);
  d.support_lo = lo;
  d.support_hi = hi;
  d.f1.assign(d.modes.size(), cvec::Zero(static_cast<Eigen::Index>(grid.size())));
  d.f2 = d.f1;
  d.validate();
  return d;
}

void CauchyData::validate() const {
  grid.validate();
  if (modes.empty()) throw DomainError("Cauchy data needs at least one mode");
  if (f1.size() != modes.size() || f2.size() != modes.size()) throw DomainError("one f1, f2 pair per mode");
  for (std::size_t m = 0; m < modes.size(); ++m) {
    if (static_cast<std::size_t>(f1[m].size()) != grid.size() || static_cast<std::size_t>(f2[m].size()) != grid.size())
      throw DomainError("Cauchy data must be sampled on the grid");
    if (!f1[m].allFinite() || !f2[m].allFinite()) throw DomainError("Cauchy data must be finite");
  }
  if (!(support_lo > grid.r_min && support_hi < grid.r_max && support_lo <= support_hi))
    throw SupportError("data support must lie strictly inside the grid");
}

void Snapshots::write_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path);
  auto put = [&](const auto& v) { out.write(reinterpret_cast<const char*>(&v), sizeof(v)); };
  out.write("CCRESNAP", 8);
  put(std::uint32_t{1});
  put(grid.r_min);
  put(grid.h);
  put(static_cast<std::uint64_t>(first));
  put(static_cast<std::uint64_t>(count));
  put(static_cast<std::uint64_t>(times.size()));
  put(static_cast<std::uint64_t>(modes.size()));
  for (std::size_t m : modes) put(static_cast<std::uint64_t>(m));
  for (double t : times) put(t);
  for (const auto& per_mode : u)
    for (const cvec& f : per_mode)
      for (Eigen::Index i = 0; i < f.size(); ++i) {
        put(f(i).real());
        put(f(i).imag());
      }
  if (!out) throw DataError("write failed: " + path);
}

Snapshots evolve(const model::ModelManifold& model, const scan::PotentialProfile& V, const CauchyData& data,
                 const std::vector<double>& times, const EvolveOptions& opt) {
  model.validate();
  data.validate();
  for (std::size_t m : data.modes)
    if (m >= model.spectrum.size()) throw IndexError("retained mode outside the spectrum");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (!(times[i] >= 0.0) || (i > 0 && !(times[i] > times[i - 1]))) throw DomainError("times must be >= 0 and increasing");
  const RadialGrid& g = data.grid;
  const double h = g.h, s = time_factor(model, opt.scaling), s2 = s * s;

  std::vector<ModePotential> pots;
  double wmax = 0.0;
  for (std::size_t m : data.modes) {
    pots.push_back(mode_potential(model, m, V, g, opt.barrier_cap));
    const auto& p = pots.back();
    if (p.end < 5) throw DomainError("barrier cut leaves fewer than 5 grid points");
    for (std::size_t i = 0; i < p.end; ++i) wmax = std::max(wmax, std::abs(p.W[i]));
  }
  // Leapfrog is stable for dt^2 lambda_max(A) < 4.
  const double limit = 2.0 * s / std::sqrt(4.0 / (h * h) + wmax);
  double dt = opt.dt;
  if (dt == 0.0) {
    if (!(opt.cfl > 0.0 && opt.cfl < 1.0)) throw DomainError("cfl must lie in (0, 1)");
    // Round to a divisor of 0.05 so that round times are hit exactly.
    const double quantum = 0.05;
    dt = quantum / std::ceil(quantum / (opt.cfl * limit));
  } else if (!(dt > 0.0) || dt >= limit) {
    throw StabilityError("time step " + std::to_string(dt) + " violates the CFL bound " + std::to_string(limit));
  }

  Snapshots out;
  out.grid = g;
  out.modes = data.modes;
  out.dt = dt;
  std::size_t lo = 0, hi = g.size();
  if (!std::isnan(opt.record_lo))
    lo = static_cast<std::size_t>(std::clamp(std::ceil((opt.record_lo - g.r_min) / h - 1e-9), 0.0, double(g.size() - 1)));
  if (!std::isnan(opt.record_hi))
    hi = static_cast<std::size_t>(std::clamp(std::floor((opt.record_hi - g.r_min) / h + 1e-9), 0.0, double(g.size() - 1))) + 1;
  if (hi <= lo) throw DomainError("empty recording range");
  out.first = lo;
  out.count = hi - lo;

  std::vector<std::size_t> steps;
  for (double t : times) steps.push_back(static_cast<std::size_t>(std::llround(t / dt)));
  for (std::size_t st : steps) out.times.push_back(static_cast<double>(st) * dt);
  const std::size_t nt = times.size(), nm = data.modes.size();
  out.u.assign(nt, std::vector<cvec>(nm));
  out.ut.assign(nt, std::vector<cvec>(nm));
  out.energy.assign(nt, 0.0);
  std::vector<std::vector<double>> energy(nm, std::vector<double>(nt, 0.0));
  const std::size_t last = steps.empty() ? 0 : steps.back();

  parallel_for(nm, [&](std::size_t m) {
    const ModePotential& p = pots[m];
    const Eigen::Index n = static_cast<Eigen::Index>(g.size());
    cvec prev = data.f1[m], cur(n), next(n), Au(n);
    // Dirichlet rows.
    prev(0) = 0.0;
    for (Eigen::Index i = static_cast<Eigen::Index>(p.end) - 1; i < n; ++i) prev(i) = 0.0;
    const cvec v0 = data.f2[m] / cd(0.0, s);  // D_t u = -s u_t / i
    apply_A(p, h, s2, prev, Au);
    cur = prev + dt * v0 - 0.5 * dt * dt * Au;
    cur(0) = 0.0;
    for (Eigen::Index i = static_cast<Eigen::Index>(p.end) - 1; i < n; ++i) cur(i) = 0.0;
    std::size_t k = 0, idx = 0;
    cvec um1 = prev;  // u^{k-1} for k >= 1
    cvec uk = prev, ukp1 = cur;
    while (idx < nt) {
      if (steps[idx] == k) {
        out.u[idx][m] = uk.segment(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(hi - lo));
        const cvec vel = k == 0 ? cvec(v0) : cvec((ukp1 - um1) / (2.0 * dt));
        out.ut[idx][m] = vel.segment(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(hi - lo));
        apply_A(p, h, s2, uk, Au);
        // Leapfrog invariant at k + 1/2.
        energy[m][idx] = 0.5 * (std::pow(l2(ukp1 - uk, h) / dt, 2) + dot_re(ukp1, Au, h));
        ++idx;
        continue;
      }
      if (k >= last) break;
      apply_A(p, h, s2, ukp1, Au);
      next = 2.0 * ukp1 - uk - dt * dt * Au;
      um1.swap(uk);
      uk.swap(ukp1);
      ukp1.swap(next);
      ++k;
    }
  });
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t m = 0; m < nm; ++m) out.energy[i] += energy[m][i];
  return out;
}

TimeCutoff::TimeCutoff(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("cutoff eps must lie in (0, 1)");
}

// chi = 1 / (1 + e^phi), phi = 1/s - 1/(1 - s), s = (t - eps)/(1 - eps).
double TimeCutoff::operator()(double t) const {
  const double s = (t - eps_) / (1.0 - eps_);
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double phi = 1.0 / s - 1.0 / (1.0 - s);
  return phi > 0 ? std::exp(-phi) / (1.0 + std::exp(-phi)) : 1.0 / (1.0 + std::exp(phi));
}

double TimeCutoff::d1(double t) const {
  const double s = (t - eps_) / (1.0 - eps_);
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double c = (*this)(t), dphi = -1.0 / (s * s) - 1.0 / ((1 - s) * (1 - s));
  return -c * (1.0 - c) * dphi / (1.0 - eps_);
}

double TimeCutoff::d2(double t) const {
  const double s = (t - eps_) / (1.0 - eps_);
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double c = (*this)(t);
  const double dphi = -1.0 / (s * s) - 1.0 / ((1 - s) * (1 - s));
  const double ddphi = 2.0 / (s * s * s) - 2.0 / ((1 - s) * (1 - s) * (1 - s));
  const double cs = -c * (1.0 - c) * dphi;
  const double css = -(1.0 - 2.0 * c) * cs * dphi - c * (1.0 - c) * ddphi;
  return css / ((1.0 - eps_) * (1.0 - eps_));
}

Snapshots apply_cutoff(const Snapshots& u, const TimeCutoff& chi) {
  Snapshots v = u;
  for (std::size_t i = 0; i < u.times.size(); ++i) {
    const double c = chi(u.times[i]), c1 = chi.d1(u.times[i]);
    for (std::size_t m = 0; m < u.modes.size(); ++m) {
      v.u[i][m] = c * u.u[i][m];
      v.ut[i][m] = c * u.ut[i][m] + c1 * u.u[i][m];
    }
  }
  return v;
}

ContourResult contour_synthesis(const model::ModelManifold& model, const scan::PotentialProfile& V,
                                const Snapshots& early, const TimeCutoff& chi, double t, double window_lo,
                                double window_hi, TimeScaling scaling, const ContourOptions& opt) {
  model.validate();
  if (!(opt.shift > 0.0) || !(opt.lambda_step > 0.0) || !(opt.lambda_max > opt.low_cut))
    throw DomainError("invalid contour options");
  if (!(window_hi > window_lo)) throw DomainError("empty window");
  // Forcing samples: snapshot times inside [eps, 1], uniformly spaced.
  std::vector<std::size_t> ti;
  for (std::size_t i = 0; i < early.times.size(); ++i)
    if (early.times[i] >= chi.eps() - 1e-12 && early.times[i] <= 1.0 + 1e-12) ti.push_back(i);
  if (ti.size() < 3) throw DomainError("snapshots do not resolve [eps, 1]");
  if (early.times[ti.front()] > chi.eps() + 1e-9 || early.times[ti.back()] < 1.0 - 1e-9)
    throw DomainError("snapshots must cover [eps, 1]");
  const double tau = (early.times[ti.back()] - early.times[ti.front()]) / static_cast<double>(ti.size() - 1);
  for (std::size_t q = 1; q < ti.size(); ++q)
    if (std::abs(early.times[ti[q]] - early.times[ti[q - 1]] - tau) > 1e-9) throw DomainError("forcing samples must be uniform");
  const double r0 = early.r(0), r1 = early.r(early.count - 1);
  if (window_lo < r0 || window_hi > r1) throw DomainError("window must lie inside the recorded range");

  const double s = time_factor(model, scaling), s2 = s * s;
  const std::size_t nr = early.count, nm = early.modes.size();
  std::vector<double> rs(nr);
  for (std::size_t i = 0; i < nr; ++i) rs[i] = early.r(i);
  std::vector<std::size_t> win;
  for (std::size_t i = 0; i < nr; ++i)
    if (rs[i] >= window_lo - 1e-12 && rs[i] <= window_hi + 1e-12) win.push_back(i);

  ContourResult res;
  res.t = t;
  for (std::size_t i : win) res.r.push_back(rs[i]);
  const auto nl = static_cast<std::size_t>(std::floor(opt.lambda_max / opt.lambda_step));
  const std::size_t count = 2 * nl + 1;
  double peak = 0.0, edge = 0.0;

  for (std::size_t m = 0; m < nm; ++m) {
    const double mu = model.spectrum.entries()[early.modes[m]].mu;
    // F(t_q, r) = s^2 (chi'' u + 2 chi' u_t); trapezoid weights vanish at the
    // ends because chi' and chi'' do.
    Eigen::MatrixXcd F(static_cast<Eigen::Index>(ti.size()), static_cast<Eigen::Index>(nr));
    for (std::size_t q = 0; q < ti.size(); ++q) {
      const double tq = early.times[ti[q]];
      F.row(static_cast<Eigen::Index>(q)) =
          (s2 * (chi.d2(tq) * early.u[ti[q]][m] + 2.0 * chi.d1(tq) * early.ut[ti[q]][m])).transpose();
    }
    std::vector<cvec> vhat(count);
    std::vector<double> mag(count, 0.0);
    parallel_for(count, [&](std::size_t l) {
      const double a = (static_cast<double>(l) - static_cast<double>(nl)) * opt.lambda_step;
      const cd lambda(a, -opt.shift);
      Eigen::VectorXcd phase(static_cast<Eigen::Index>(ti.size()));
      for (std::size_t q = 0; q < ti.size(); ++q)
        phase(static_cast<Eigen::Index>(q)) = std::exp(cd(0.0, -1.0) * lambda * early.times[ti[q]]) * tau;
      const cvec Fhat = F.transpose() * phase;
      std::vector<cd> src(Fhat.data(), Fhat.data() + Fhat.size());
      cd kappa = std::sqrt(model.n * model.n / 4.0 - s2 * lambda * lambda);
      if (kappa.real() < 0.0) kappa = -kappa;
      const auto sol = scan::outgoing_solutions(mu, kappa, V, rs, opt.matching, &src);
      cvec w(static_cast<Eigen::Index>(win.size()));
      for (std::size_t q = 0; q < win.size(); ++q) {
        const std::size_t i = win[q];
        w(static_cast<Eigen::Index>(q)) = (sol.bar[i] * sol.bdy_int[i] + sol.bdy[i] * sol.bar_int[i]) / sol.D;
      }
      mag[l] = w.cwiseAbs().maxCoeff();
      vhat[l] = std::move(w);
    });
    cvec v = cvec::Zero(static_cast<Eigen::Index>(win.size())), vl = v;
    for (std::size_t l = 0; l < count; ++l) {
      const double a = (static_cast<double>(l) - static_cast<double>(nl)) * opt.lambda_step;
      const cd wgt = std::exp(cd(0.0, 1.0) * cd(a, -opt.shift) * t) * (opt.lambda_step / (2.0 * M_PI));
      v += wgt * vhat[l];
      if (std::abs(a) < opt.low_cut) vl += wgt * vhat[l];
      peak = std::max(peak, mag[l]);
    }
    edge = std::max({edge, mag.front(), mag.back()});
    res.v.push_back(v);
    res.v_low.push_back(vl);
  }
  res.tail_ratio = peak > 0.0 ? edge / peak : 0.0;
  if (res.tail_ratio > opt.tail_tol)
    throw ConvergenceError("contour integrand not decayed at lambda_max", res.tail_ratio, opt.tail_tol);
  return res;
}

Table DecayReport::table() const {
  Table t({"t", "local_norm", "window_id", "fitted_exponent"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::int64_t id = -1;
    for (std::size_t w = 0; w < windows.size(); ++w)
      if (times[i] >= windows[w].t_lo && times[i] <= windows[w].t_hi) id = static_cast<std::int64_t>(w);
    const double e = id < 0 || windows[static_cast<std::size_t>(id)].saturated
                         ? std::numeric_limits<double>::quiet_NaN()
                         : windows[static_cast<std::size_t>(id)].exponent;
    t.add({times[i], norms[i], id, e});
  }
  return t;
}

DecayReport verify_decay(const model::ModelManifold& model, const scan::PotentialProfile& V, const CauchyData& data,
                         const DecayOptions& opt) {
  if (!(opt.t_min > 0.0 && opt.t_max > 2.0 * opt.t_min) || !(opt.sample_step > 0.0))
    throw DomainError("decay needs 0 < t_min < t_max / 2 and a positive sample step");
  DecayReport rep;
  const double c = 0.5 * (data.support_lo + data.support_hi), half = data.support_hi - data.support_lo;
  rep.window_lo = c - half;
  rep.window_hi = c + half;
  EvolveOptions eo = opt.evolve;
  eo.record_lo = rep.window_lo;
  eo.record_hi = rep.window_hi;
  std::vector<double> times{0.0};
  for (double t = opt.t_min; t <= opt.t_max + 1e-9; t += opt.sample_step) times.push_back(t);
  const Snapshots u = evolve(model, V, data, times, eo);
  const Snapshots v = apply_cutoff(u, TimeCutoff());
  double emax = 0.0;
  for (double e : u.energy) emax = std::max(emax, std::abs(e));
  for (double e : u.energy) rep.energy_drift = std::max(rep.energy_drift, emax > 0 ? std::abs(e - u.energy[0]) / emax : 0.0);
  for (std::size_t i = 1; i < v.times.size(); ++i) {
    double n2 = 0.0;
    for (std::size_t m = 0; m < v.modes.size(); ++m) n2 += v.grid.h * v.u[i][m].squaredNorm();
    rep.times.push_back(v.times[i]);
    rep.norms.push_back(std::sqrt(n2));
  }
  for (double hi = opt.t_max; hi / 2.0 >= opt.t_min - 1e-12; hi /= 2.0) rep.windows.insert(rep.windows.begin(), {hi / 2.0, hi});
  bool any_sat = false;
  for (auto& w : rep.windows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
      if (rep.times[i] < w.t_lo - 1e-9 || rep.times[i] > w.t_hi + 1e-9) continue;
      if (!(rep.norms[i] > opt.floor)) w.saturated = true;
      const double x = std::log(rep.times[i]), y = std::log(std::max(rep.norms[i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++k;
    }
    if (k < 2) throw InsufficientDataError("decay window has fewer than 2 samples");
    w.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    any_sat = any_sat || w.saturated;
  }
  rep.status = any_sat ? "floor_saturated" : "fitted";
  bool monotone = true;
  for (std::size_t w = 1; w < rep.windows.size(); ++w) monotone = monotone && rep.windows[w].exponent <= rep.windows[w - 1].exponent;
  rep.pass = !any_sat && monotone && rep.windows.back().exponent <= opt.exponent_limit;
  return rep;
}

}  // namespace ccres::wave
