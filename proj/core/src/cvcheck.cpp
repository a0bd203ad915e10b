// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/cvcheck.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ccres/errors.hpp"

namespace ccres::cv {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

bool symmetric(const Eigen::MatrixXd& m) { return m.rows() == m.cols() && (m - m.transpose()).norm() <= 1e-14 * (1.0 + m.norm()); }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// e^{c r} (-r)^j and its first three r-derivatives.
std::array<double, 4> exp_log_power(double c, int j, double r) {
  auto pw = [&](int e) { return e < 0 ? 0.0 : std::pow(-r, e); };
  // d/dr (-r)^e = -e (-r)^{e-1}
  const double f0 = pw(j), f1 = -j * pw(j - 1), f2 = j * (j - 1) * pw(j - 2), f3 = -j * (j - 1) * (j - 2) * pw(j - 3);
  const double e = std::exp(c * r);
  return {e * f0, e * (c * f0 + f1), e * (c * c * f0 + 2 * c * f1 + f2),
          e * (c * c * c * f0 + 3 * c * c * f1 + 3 * c * f2 + f3)};
}

}  // namespace

void PolyhomExpansion::validate() const {
  if (h0.rows() < 1 || !symmetric(h0)) throw DomainError("h0 must be a symmetric square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0);
  if (!(es.eigenvalues().minCoeff() > 0.0)) throw DomainError("h0 must be positive definite");
  for (const auto& t : terms) {
    if (t.i < 1) throw DomainError("expansion index i must be positive");
    const auto it = U.find(t.i);
    if (it == U.end()) throw DomainError("expansion has no bound U_i for i = " + std::to_string(t.i));
    if (t.j < 0 || t.j > it->second)
      throw DomainError("expansion index j = " + std::to_string(t.j) + " outside [0, U_i]");
    if (t.h.rows() != h0.rows() || !symmetric(t.h)) throw DomainError("h_ij must be symmetric and match h0");
  }
}

bool AlphaProfile::constant() const {
  auto zero = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
  };
  return zero(cos_coeffs) && zero(sin_coeffs);
}

double AlphaProfile::value(double y, int derivative) const {
  double out = derivative == 0 ? mean : 0.0;
  auto add = [&](const std::vector<double>& c, bool is_cos) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double m = static_cast<double>(i + 1);
      const double cs = std::cos(m * y), sn = std::sin(m * y);
      double term = 0.0;
      switch (derivative) {
        case 0: term = is_cos ? cs : sn; break;
        case 1: term = is_cos ? -m * sn : m * cs; break;
        default: term = is_cos ? -m * m * cs : -m * m * sn; break;
      }
      out += c[i] * term;
    }
  };
  add(cos_coeffs, true);
  add(sin_coeffs, false);
  return out;
}

double AlphaProfile::min() const {
  if (constant()) return mean;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4096; ++i) best = std::min(best, value(kTwoPi * i / 4096));
  return best;
}

double AlphaProfile::max() const {
  if (constant()) return mean;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4096; ++i) best = std::max(best, value(kTwoPi * i / 4096));
  return best;
}

WarpedMetric WarpedMetric::hyperbolic(int n) {
  WarpedMetric m;
  m.n = n;
  m.expansion.h0 = Eigen::MatrixXd::Identity(n, n);
  return m;
}

WarpedMetric WarpedMetric::polyhomogeneous(int i, int j, double amplitude, int n) {
  WarpedMetric m = hyperbolic(n);
  m.id = "polyhom_i" + std::to_string(i) + "_j" + std::to_string(j) + "_a" + fmt(amplitude);
  m.expansion.U[i] = std::max(j, 0);
  m.expansion.terms.push_back({i, j, amplitude * Eigen::MatrixXd::Identity(n, n)});
  return m;
}

WarpedMetric WarpedMetric::cylinder(int n) {
  WarpedMetric m = hyperbolic(n);
  m.id = "cylinder";
  m.kind = SigmaKind::Cylinder;
  return m;
}

void WarpedMetric::validate() const {
  if (n < 1) throw DomainError("boundary dimension n must be >= 1");
  if (!(a >= 1.0)) throw DomainError("radial domain must start at a >= 1");
  if (!(r_max > a)) throw DomainError("r_max must exceed a");
  if (expansion.h0.rows() != n) throw DomainError("h0 must be n x n");
  expansion.validate();
  if (!(alpha.min() > 0.0)) throw DomainError("alpha must be positive on the cross-section");
  if (!alpha.constant() && n != 1) throw DomainError("non-constant alpha is supported on circle cross-sections only");
}

SigmaJet sigma_of_r(const WarpedMetric& metric, double r) {
  if (!(r >= metric.a - 1e-12)) throw DomainError("sigma is evaluated on r >= a only (r = " + fmt(r) + ")");
  const auto& ex = metric.expansion;
  const auto n = ex.h0.rows();
  SigmaJet s{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n),
             Eigen::MatrixXd::Zero(n, n)};
  if (metric.kind == SigmaKind::Cylinder) {
    s.value = ex.h0;
  } else {
    // sigma = e^{2r} h0 + sum e^{(2 - i) r} (-r)^j h_ij
    auto add = [&](double c, int j, const Eigen::MatrixXd& h) {
      const auto f = exp_log_power(c, j, r);
      s.value += f[0] * h;
      s.d1 += f[1] * h;
      s.d2 += f[2] * h;
      s.d3 += f[3] * h;
    };
    add(2.0, 0, ex.h0);
    for (const auto& t : ex.terms) add(2.0 - t.i, t.j, t.h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.value, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0.0))
    throw MetricDegeneracyError("sigma(r) is not positive definite at r = " + fmt(r), r);
  return s;
}

LogDensity log_density(const SigmaJet& s) {
  // l = tr(S^{-1} S')/2 and derivatives.
  const Eigen::LDLT<Eigen::MatrixXd> f(s.value);
  const Eigen::MatrixXd a1 = f.solve(s.d1), a2 = f.solve(s.d2), a3 = f.solve(s.d3);
  LogDensity out;
  out.l = 0.5 * a1.trace();
  out.dl = 0.5 * (a2.trace() - (a1 * a1).trace());
  out.d2l = 0.5 * (a3.trace() - 3.0 * (a1 * a2).trace() + 2.0 * (a1 * a1 * a1).trace());
  return out;
}

CVGrid CVGrid::uniform(const WarpedMetric& metric, int r_points, int y_points) {
  if (r_points < 2 || y_points < 1) throw DomainError("grid needs >= 2 radial and >= 1 circle points");
  CVGrid g;
  for (int i = 0; i < r_points; ++i) g.r.push_back(metric.a + (metric.r_max - metric.a) * i / (r_points - 1));
  for (int j = 0; j < y_points; ++j) g.y.push_back(kTwoPi * j / y_points);
  return g;
}

ConjugatedPotential conjugated_potential(const WarpedMetric& metric, const CVGrid& grid) {
  metric.validate();
  if (grid.r.empty() || grid.y.empty()) throw DomainError("empty grid");
  for (double r : grid.r)
    if (r < metric.a - 1e-12 || r > metric.r_max + 1e-12) throw DomainError("grid leaves [a, r_max]");
  const auto nr = static_cast<Eigen::Index>(grid.r.size());
  const auto ny = static_cast<Eigen::Index>(grid.y.size());
  ConjugatedPotential out{grid, Eigen::MatrixXd(nr, ny), Eigen::MatrixXd(nr, ny), Eigen::MatrixXd::Zero(nr, ny),
                          Eigen::MatrixXd(nr, ny)};
  const double hy = 1e-4;
  for (Eigen::Index i = 0; i < nr; ++i) {
    const auto s = sigma_of_r(metric, grid.r[i]);
    const auto d = log_density(s);
    const double sigma_inv = metric.n == 1 ? 1.0 / s.value(0, 0) : 0.0;
    for (Eigen::Index j = 0; j < ny; ++j) {
      const double y = grid.y[j];
      const double al = metric.alpha.value(y);
      const double a2 = al * al;
      // p depends on r only, so the terms carrying d_y p vanish; the
      // Laplacian of p^{-1} leaves alpha^2 l'/2.
      out.q0(i, j) = -0.25 * d.l * d.l + 0.5 * a2 * d.dl;
      out.dq0_dr(i, j) = -0.5 * d.l * d.dl + 0.5 * a2 * d.d2l;
      out.q_exact(i, j) = a2 * (0.25 * d.l * d.l + 0.5 * d.dl);
      if (metric.n == 1 && !metric.alpha.constant()) {
        const double dal = (metric.alpha.value(y + hy) - metric.alpha.value(y - hy)) / (2 * hy);
        out.first_order(i, j) = dal / al * sigma_inv;
      }
    }
  }
  return out;
}

void CVScanSpec::validate() const {
  if (!(s > 0.5 && s <= 0.5 + delta0 + 1e-15)) throw DomainError("weight exponent needs 1/2 < s <= 1/2 + delta0");
  if (!(lambda0 >= 1.0)) throw DomainError("lambda0 must be >= 1");
  if (lambdas.empty()) throw DomainError("empty lambda grid");
  for (double l : lambdas)
    if (!(l >= lambda0)) throw DomainError("lambda grid must satisfy lambda >= lambda0");
  if (!(delta > 0.0) || !(delta0 > 0.0)) throw DomainError("decay exponents must be positive");
  if (coupled_modes < 1 || r_density < 1) throw DomainError("grid sizes must be positive");
}

EstimateReport check_assumptions(const WarpedMetric& metric, const CVGrid& grid, const CVScanSpec& spec) {
  spec.validate();
  const auto pot = conjugated_potential(metric, grid);
  EstimateReport rep;
  rep.rows = Table({"metric_id", "check_id", "r", "value", "bound", "margin"});
  rep.summary = Table({"metric_id", "check_id", "constant", "exponent", "pass"});
  const auto nr = static_cast<Eigen::Index>(grid.r.size());

  std::vector<double> abs_q(nr), dq(nr), lam(nr);
  double c_abs = 0.0, c_dq = -std::numeric_limits<double>::infinity();
  double c_lit = std::numeric_limits<double>::infinity(), c_rate = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < nr; ++i) {
    const double r = grid.r[i];
    abs_q[i] = pot.q0.row(i).cwiseAbs().maxCoeff();
    dq[i] = pot.dq0_dr.row(i).maxCoeff() * std::pow(r, 1.0 + spec.delta);
    // -d_r(sigma^{-1}) = sigma^{-1} sigma' sigma^{-1} >= (C/r) sigma^{-1} iff
    // the generalized eigenvalues of (sigma', sigma) are >= C/r.
    const auto s = sigma_of_r(metric, r);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(s.d1, s.value, Eigen::EigenvaluesOnly);
    lam[i] = ges.eigenvalues().minCoeff();
    c_abs = std::max(c_abs, abs_q[i]);
    c_dq = std::max(c_dq, dq[i]);
    c_lit = std::min(c_lit, r * lam[i]);
    c_rate = std::min(c_rate, lam[i]);
  }
  c_dq = std::max(c_dq, 0.0);
  // Largest C with -d_r sigma^{-1} - (C/r) sigma^{-1} >= 0 on the grid, by
  // bisection on the smallest generalized-eigenvalue margin.
  double lo = 0.0, hi = std::max(0.0, c_lit) + 1.0;
  auto feasible = [&](double c) {
    for (Eigen::Index i = 0; i < nr; ++i)
      if (lam[i] - c / grid.r[i] < -1e-13 * std::abs(lam[i])) return false;
    return true;
  };
  if (!feasible(0.0)) {
    hi = 0.0;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
  }
  const double c_bisect = feasible(0.0) ? lo : -std::numeric_limits<double>::infinity();

  for (Eigen::Index i = 0; i < nr; ++i) {
    const double r = grid.r[i];
    rep.rows.add({metric.id, std::string("assump1_abs_q"), r, abs_q[i], c_abs, c_abs - abs_q[i]});
    rep.rows.add({metric.id, std::string("assump1_dq_weighted"), r, dq[i], c_dq, c_dq - dq[i]});
    rep.rows.add({metric.id, std::string("assump2_eigen_margin"), r, lam[i], c_bisect / r, lam[i] - c_bisect / r});
  }
  const bool ok_abs = std::isfinite(c_abs), ok_dq = std::isfinite(c_dq);
  const bool ok_lit = c_bisect > 1e-12, ok_rate = c_rate > 1e-12;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.summary.add({metric.id, std::string("assump1_abs_q"), c_abs, nan, ok_abs});
  rep.summary.add({metric.id, std::string("assump1_dq_weighted"), c_dq, nan, ok_dq});
  rep.summary.add({metric.id, std::string("assump2_C_over_r"), c_bisect, nan, ok_lit});
  rep.summary.add({metric.id, std::string("assump2_rate"), c_rate, nan, ok_rate});
  rep.pass = ok_abs && ok_dq && ok_lit;
  return rep;
}

}  // namespace ccres::cv
