// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

// Outgoing resolvent of the warped end on [a, inf) x S^1 (Dirichlet at a),
// after conjugation by |sigma|^{1/4}: L = -alpha^2 d_r^2 + sigma^{11}(-d_y^2)
// + alpha^2 (l^2/4 + l'/2) + (alpha'/alpha) sigma^{11} d_y - alpha0^2 Xi,
// acting on L^2(dr dy / alpha). Numerov in r, a discrete transparent
// condition at r_max, Fourier modes (constant alpha) or collocation in y.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include <Eigen/Sparse>

#include "ccres/banded.hpp"
#include "ccres/cvcheck.hpp"
#include "ccres/errors.hpp"
#include "ccres/linalg.hpp"

namespace ccres::cv {
namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * M_PI;

// Radial data on r_t = a + t h, t = 0..N+1.
struct RadialData {
  double a = 0.0, h = 0.0;
  int N = 0;
  std::vector<double> r, sig_inv, pot, l;
};

RadialData radial_data(const WarpedMetric& metric, double h) {
  RadialData d;
  d.a = metric.a;
  d.N = static_cast<int>(std::ceil((metric.r_max - metric.a) / h));
  d.h = (metric.r_max - metric.a) / d.N;
  for (int t = 0; t <= d.N + 1; ++t) {
    const double r = d.a + t * d.h;
    const auto s = sigma_of_r(metric, r);
    const auto ld = log_density(s);
    d.r.push_back(r);
    d.sig_inv.push_back(1.0 / s.value(0, 0));
    d.pot.push_back(ld.l * ld.l / 4.0 + ld.dl / 2.0);
    d.l.push_back(ld.l);
  }
  return d;
}

// Fourier differentiation matrices of order 1 and 2 on n equispaced points.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> fourier_diff(int n) {
  Eigen::MatrixXcd F(n, n), Finv(n, n);
  Eigen::VectorXcd k1(n), k2(n);
  for (int m = 0; m < n; ++m) {
    const int k = m <= (n - 1) / 2 ? m : m - n;
    const bool nyquist = (n % 2 == 0) && m == n / 2;
    k1[m] = nyquist ? cd(0.0) : cd(0.0, k);
    k2[m] = nyquist ? -double(n / 2) * double(n / 2) : -double(k) * double(k);
    for (int j = 0; j < n; ++j) {
      const double y = kTwoPi * j / n;
      F(m, j) = std::polar(1.0, -(nyquist ? n / 2 : k) * y);
      Finv(j, m) = std::polar(1.0 / n, (nyquist ? n / 2 : k) * y);
    }
  }
  const Eigen::MatrixXcd d1 = Finv * k1.asDiagonal() * F;
  const Eigen::MatrixXcd d2 = Finv * k2.asDiagonal() * F;
  return {d1.real(), d2.real()};
}

// 4th-order first derivative on v_1..v_N with v_0 = 0; 2nd order next to
// the ends.
Eigen::SparseMatrix<double> radial_derivative(int N, double h) {
  std::vector<Eigen::Triplet<double>> tr;
  auto put = [&](int row, int col, double c) {
    if (col >= 1 && col <= N) tr.emplace_back(row - 1, col - 1, c);
  };
  for (int t = 1; t <= N; ++t) {
    if (t == N) {
      put(t, N, 3.0 / (2 * h));
      put(t, N - 1, -4.0 / (2 * h));
      put(t, N - 2, 1.0 / (2 * h));
    } else if (t == 1 || t == N - 1) {
      put(t, t + 1, 1.0 / (2 * h));
      put(t, t - 1, -1.0 / (2 * h));
    } else {
      put(t, t - 2, 1.0 / (12 * h));
      put(t, t - 1, -8.0 / (12 * h));
      put(t, t + 1, 8.0 / (12 * h));
      put(t, t + 2, -1.0 / (12 * h));
    }
  }
  Eigen::SparseMatrix<double> D(N, N);
  D.setFromTriplets(tr.begin(), tr.end());
  return D;
}

// Decaying Numerov root of z + 1/z = 2 m for v'' = A v at infinity.
cd transparent_root(cd A, double h, double im_xi) {
  cd s = std::sqrt(A);
  if (std::abs(s.real()) <= 1e-12 * std::abs(s)) s = cd(0.0, (im_xi >= 0 ? 1.0 : -1.0) * std::abs(s));
  const double c = h * h / 12.0;
  const cd m = (1.0 + 5.0 * c * A) / (1.0 - c * A);
  const cd w = std::sqrt(m * m - 1.0);
  const cd z1 = m + w, z2 = m - w, target = std::exp(-s * h);
  return std::abs(z1 - target) <= std::abs(z2 - target) ? z1 : z2;
}

// One block of the discretized problem: b = 1 for a Fourier mode, b = number
// of collocation points otherwise. Columns of V index y.
class BlockSolver {
 public:
  // dy1 / dy2: d/dy and d^2/dy^2 on the block (1x1 i m and -m^2 for a mode).
  BlockSolver(const RadialData& rd, const std::vector<double>& alpha, const std::vector<double>& dlog_alpha,
              const Eigen::MatrixXcd& dy1, const Eigen::MatrixXcd& dy2, cd E, double alpha0, double im_xi)
      : rd_(rd), b_(static_cast<int>(alpha.size())), alpha_(alpha), dy1_(dy1), lu_(rd.N * b_, 2 * b_ - 1, 2 * b_ - 1) {
    const int N = rd.N, b = b_;
    const double c = rd.h * rd.h / 12.0;
    auto A = [&](int t) {
      Eigen::MatrixXcd m = -rd.sig_inv[t] * dy2;
      for (int j = 0; j < b; ++j) {
        m.row(j) += dlog_alpha[j] * rd.sig_inv[t] * dy1.row(j);
        m(j, j) += alpha[j] * alpha[j] * rd.pot[t] - E;
        m.row(j) /= alpha[j] * alpha[j];
      }
      return m;
    };
    (void)alpha0;
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(b, b);
    Eigen::MatrixXcd Aprev = A(0), Acur = A(1), Anext;
    for (int t = 1; t <= N; ++t) {
      Anext = A(t + 1);
      Eigen::MatrixXcd diag = -2.0 * (I + 5.0 * c * Acur);
      if (t == N) {
        Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(b, b);
        for (int j = 0; j < b; ++j) Z(j, j) = transparent_root(Anext(j, j), rd.h, im_xi);
        diag += (I - c * Anext) * Z;
      }
      const Eigen::Index row = static_cast<Eigen::Index>(t - 1) * b;
      for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) {
          lu_.add(row + i, row + j, diag(i, j));
          if (t > 1) lu_.add(row + i, row - b + j, (I - c * Aprev)(i, j));
          if (t < N) lu_.add(row + i, row + b + j, (I - c * Anext)(i, j));
        }
      Aprev = Acur;
      Acur = Anext;
    }
    lu_.factor();
  }

  int block() const { return b_; }

  // v = M^{-1} B f for rows r_1..r_N, columns y.
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& f) const {
    return unflat(lu_.solve(flat(apply_B(f, false))));
  }
  Eigen::MatrixXcd solve_adjoint(const Eigen::MatrixXcd& g) const {
    return apply_B(unflat(lu_.solve_adjoint(flat(g))), true);
  }

 private:
  // (B f)_t = h^2/12 (b_{t-1} + 10 b_t + b_{t+1}), b = -f / alpha^2, f_0 = f_{N+1} = 0.
  // The 1/alpha^2 scaling sits on the right.
  Eigen::MatrixXcd apply_B(const Eigen::MatrixXcd& f, bool adjoint) const {
    const int N = rd_.N;
    const double c = rd_.h * rd_.h / 12.0;
    Eigen::MatrixXcd g = f;
    if (!adjoint) scale(g);
    // f(a) is not zero: linear extrapolation b_0 = 2 b_1 - b_2 turns row 1
    // into 12 b_1. Leaving it out costs a full order in h.
    Eigen::MatrixXcd out(N, b_);
    for (int t = 0; t < N; ++t) {
      out.row(t) = 10.0 * g.row(t);
      if (t > 0 && !(adjoint && t == 1)) out.row(t) += g.row(t - 1);
      if (t + 1 < N && !(!adjoint && t == 0)) out.row(t) += g.row(t + 1);
    }
    out.row(0) += 2.0 * g.row(0);
    out *= c;
    if (adjoint) scale(out);
    return out;
  }
  void scale(Eigen::MatrixXcd& m) const {
    for (int j = 0; j < b_; ++j) m.col(j) *= -1.0 / (alpha_[j] * alpha_[j]);
  }
  cvec flat(const Eigen::MatrixXcd& m) const {
    cvec v(m.size());
    for (Eigen::Index t = 0; t < m.rows(); ++t)
      for (int j = 0; j < b_; ++j) v[t * b_ + j] = m(t, j);
    return v;
  }
  Eigen::MatrixXcd unflat(const cvec& v) const {
    Eigen::MatrixXcd m(rd_.N, b_);
    for (Eigen::Index t = 0; t < m.rows(); ++t)
      for (int j = 0; j < b_; ++j) m(t, j) = v[t * b_ + j];
    return m;
  }

  const RadialData& rd_;
  int b_;
  std::vector<double> alpha_;
  Eigen::MatrixXcd dy1_;
  BandedLU lu_;
};

// ||W^{1/2} T E S E W^{-1/2}|| with E = e^{-r/2}, S the discrete resolvent
// and T = identity (p = 0) or the H^1 components (p = 1).
NormEstimate block_norm(const RadialData& rd, const BlockSolver& S, const std::vector<double>& alpha,
                        const Eigen::MatrixXcd& dy1, int p, double tol) {
  const int N = rd.N, b = S.block();
  Eigen::MatrixXd w(N, b), e(N, b), sq(N, b);
  for (int t = 0; t < N; ++t)
    for (int j = 0; j < b; ++j) {
      w(t, j) = std::sqrt(rd.h * kTwoPi / b / alpha[j]);
      e(t, j) = std::exp(-rd.r[t + 1] / 2.0);
      sq(t, j) = std::sqrt(rd.sig_inv[t + 1]);
    }
  const auto Dr = radial_derivative(N, rd.h);
  Eigen::MatrixXd shift(N, b), amat(N, b);
  for (int t = 0; t < N; ++t)
    for (int j = 0; j < b; ++j) {
      shift(t, j) = 0.5 * (1.0 + rd.l[t + 1]);
      amat(t, j) = alpha[j];
    }
  auto to_mat = [N, b](const cvec& x, Eigen::Index block) {
    Eigen::MatrixXcd m(N, b);
    for (int t = 0; t < N; ++t)
      for (int j = 0; j < b; ++j) m(t, j) = x[block * N * b + t * b + j];
    return m;
  };
  auto put = [N, b](cvec& x, Eigen::Index block, const Eigen::MatrixXcd& m) {
    for (int t = 0; t < N; ++t)
      for (int j = 0; j < b; ++j) x[block * N * b + t * b + j] = m(t, j);
  };
  // v'(a) enters the H^1 part with trapezoid weight h/2 (v(a) = 0); a
  // one-sided third-order stencil.
  std::vector<double> edge(b);
  for (int j = 0; j < b; ++j)
    edge[j] = std::sqrt(0.5 * rd.h * kTwoPi / b / alpha[j]) * alpha[j] * std::exp(-rd.a / 2.0) / (6.0 * rd.h);
  const Eigen::Index n = static_cast<Eigen::Index>(N) * b;
  const int blocks = p == 0 ? 1 : 3;
  OperatorAction op;
  op.size = n;
  op.apply = [&, blocks](const cvec& x) {
    const Eigen::MatrixXcd f = to_mat(x, 0).cwiseQuotient(w).cwiseProduct(e);
    const Eigen::MatrixXcd v = S.solve(f);
    cvec y(n * blocks + (p == 1 ? b : 0));
    put(y, 0, v.cwiseProduct(e).cwiseProduct(w));
    if (p == 1) {
      const Eigen::MatrixXcd dv = Dr * v - shift.cwiseProduct(v);
      put(y, 1, dv.cwiseProduct(amat).cwiseProduct(e).cwiseProduct(w));
      const Eigen::MatrixXcd yv = v * dy1.transpose();
      put(y, 2, yv.cwiseProduct(sq).cwiseProduct(e).cwiseProduct(w));
      for (int j = 0; j < b; ++j) y[3 * n + j] = edge[j] * (18.0 * v(0, j) - 9.0 * v(1, j) + 2.0 * v(2, j));
    }
    return y;
  };
  op.apply_adjoint = [&, blocks](const cvec& y) {
    Eigen::MatrixXcd g = to_mat(y, 0).cwiseProduct(w).cwiseProduct(e);
    if (p == 1) {
      const Eigen::MatrixXcd g1 = to_mat(y, 1).cwiseProduct(w).cwiseProduct(e).cwiseProduct(amat);
      g += Eigen::MatrixXcd(Dr.transpose() * g1) - shift.cwiseProduct(g1);
      const Eigen::MatrixXcd g2 = to_mat(y, 2).cwiseProduct(w).cwiseProduct(e).cwiseProduct(sq);
      g += g2 * dy1.conjugate();
      for (int j = 0; j < b; ++j) {
        const cd z = edge[j] * y[3 * n + j];
        g(0, j) += 18.0 * z;
        g(1, j) -= 9.0 * z;
        g(2, j) += 2.0 * z;
      }
    }
    const Eigen::MatrixXcd f = S.solve_adjoint(g).cwiseProduct(e).cwiseQuotient(w);
    cvec x(n);
    put(x, 0, f);
    return x;
  };
  (void)blocks;
  return largest_singular_value(op, tol, 30);
}

double step_for(const RadialData& probe, const std::vector<double>& alpha, double ymax2, cd E) {
  double amax = 0.0;
  for (std::size_t t = 0; t < probe.r.size(); ++t)
    for (double al : alpha)
      amax = std::max(amax, std::abs((probe.sig_inv[t] * ymax2 + al * al * probe.pot[t] - E) / (al * al)));
  return std::min(0.02, 0.3 / (std::sqrt(amax) + 1.0));
}

constexpr double kLanczosTol = 1e-6;

double mode_norm(const WarpedMetric& metric, const RadialData& probe, int m, cd E, double im_xi, int p,
                 bool& converged) {
  const std::vector<double> alpha{metric.alpha.mean}, dla{0.0};
  const double h = step_for(probe, alpha, double(m) * m, E);
  const RadialData rd = radial_data(metric, h);
  Eigen::MatrixXcd d1(1, 1), d2(1, 1);
  d1(0, 0) = cd(0.0, m);
  d2(0, 0) = -double(m) * m;
  const BlockSolver S(rd, alpha, dla, d1, d2, E, metric.alpha.mean, im_xi);
  const auto est = block_norm(rd, S, alpha, d1, p, kLanczosTol);
  converged = converged && est.converged;
  return est.value;
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ResolventSample weighted_resolvent_norm(const WarpedMetric& metric, std::complex<double> xi, int p,
                                        const CVScanSpec& spec) {
  metric.validate();
  if (metric.n != 1) throw DomainError("the resolvent solver handles n = 1 only");
  if (metric.expansion.h0.rows() != 1) throw DomainError("the resolvent solver needs a 1x1 cross-section metric");
  if (p != 0 && p != 1) throw DomainError("p must be 0 or 1");
  const double alpha0 = metric.alpha.min();
  const cd Xi = xi * (double(metric.n) - xi);
  const cd E = alpha0 * alpha0 * Xi;
  const double im_xi = xi.imag();
  ResolventSample out;

  if (!metric.alpha.constant()) {
    const int b = spec.coupled_modes;
    if (b < 1) throw DomainError("coupled_modes must be positive");
    std::vector<double> alpha(b), dla(b);
    for (int j = 0; j < b; ++j) {
      const double y = kTwoPi * j / b;
      alpha[j] = metric.alpha.value(y);
      dla[j] = metric.alpha.value(y, 1) / alpha[j];
    }
    const auto [d1r, d2r] = fourier_diff(b);
    const Eigen::MatrixXcd d1 = d1r.cast<cd>(), d2 = d2r.cast<cd>();
    const RadialData probe = radial_data(metric, 0.05);
    const double ymax = double(b / 2) * double(b / 2);
    const RadialData rd = radial_data(metric, step_for(probe, alpha, ymax, E));
    const BlockSolver S(rd, alpha, dla, d1, d2, E, alpha0, im_xi);
    const auto est = block_norm(rd, S, alpha, d1, p, kLanczosTol);
    out.norm = est.value;
    out.converged = est.converged;
    out.modes_evaluated = b;
    return out;
  }

  // Separable: the norm is the maximum over Fourier modes m >= 0 (m and -m
  // agree). Sample 0..16, then geometrically up to where the barrier
  // sigma^{11} m^2 at r = a exceeds the energy by a wide margin, and fill in
  // every integer around the best candidate.
  const RadialData probe = radial_data(metric, 0.05);
  const double h0 = metric.expansion.h0(0, 0);
  const int cap = static_cast<int>(std::ceil(8.0 * (std::abs(im_xi) + 1.0) * std::sqrt(h0) * std::exp(metric.a))) + 16;
  std::vector<int> cand;
  for (int m = 0; m <= std::min(16, cap); ++m) cand.push_back(m);
  for (double m = 16.0 * 1.15; m <= cap; m *= 1.15)
    if (static_cast<int>(m) > cand.back()) cand.push_back(static_cast<int>(m));
  if (cand.back() != cap) cand.push_back(cap);

  std::map<int, double> seen;
  auto eval = [&](int m) {
    if (!seen.count(m)) seen[m] = mode_norm(metric, probe, m, E, im_xi, p, out.converged);
    return seen[m];
  };
  std::size_t best = 0;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (eval(cand[i]) > eval(cand[best])) best = i;
  const int lo = cand[best == 0 ? 0 : best - 1], hi = cand[std::min(best + 1, cand.size() - 1)];
  for (int m = lo; m <= hi; ++m) eval(m);

  for (const auto& [m, v] : seen)
    if (v > out.norm) {
      out.norm = v;
      out.argmax_mode = m;
    }
  out.modes_evaluated = static_cast<int>(seen.size());
  return out;
}

double separable_mode_norm(const WarpedMetric& metric, std::complex<double> xi, int p, int m) {
  metric.validate();
  if (metric.n != 1 || !metric.alpha.constant()) throw DomainError("separable modes need n = 1 and constant alpha");
  if (p != 0 && p != 1) throw DomainError("p must be 0 or 1");
  const double alpha0 = metric.alpha.mean;
  const cd E = alpha0 * alpha0 * xi * (double(metric.n) - xi);
  bool converged = true;
  return mode_norm(metric, radial_data(metric, 0.05), std::abs(m), E, xi.imag(), p, converged);
}

EstimateReport high_energy_resolvent_check(const WarpedMetric& metric, const CVScanSpec& spec, int p) {
  spec.validate();
  if (spec.lambdas.size() < 2) throw InsufficientDataError("the power fit needs at least two lambdas");
  EstimateReport rep;
  rep.rows = Table({"metric_id", "check_id", "r", "value", "bound", "margin"});
  rep.summary = Table({"metric_id", "check_id", "constant", "exponent", "pass"});
  rep.pass = true;
  const double target = -1.0 + p;
  for (double off : spec.re_offsets) {
    const std::string id = "resolvent_p" + std::to_string(p) + "_re=" + fmt_g(off);
    std::vector<double> norms;
    bool converged = true;
    for (double lam : spec.lambdas) {
      const cd xi(metric.n / 2.0 + off, lam);
      const auto s = weighted_resolvent_norm(metric, xi, p, spec);
      norms.push_back(s.norm);
      converged = converged && s.converged;
    }
    double C = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i) C = std::max(C, norms[i] * std::pow(spec.lambdas[i], -target));
    for (std::size_t i = 0; i < norms.size(); ++i) {
      const double bound = C * std::pow(spec.lambdas[i], target);
      rep.rows.add({metric.id, id, spec.lambdas[i], norms[i], bound, bound - norms[i]});
    }
    const double exponent = loglog_fit(spec.lambdas, norms);
    const bool pass = std::isfinite(exponent) && exponent <= target + 0.2 && converged;
    rep.summary.add({metric.id, id, C, exponent, pass});
    rep.pass = rep.pass && pass;
  }
  return rep;
}

}  // namespace ccres::cv
