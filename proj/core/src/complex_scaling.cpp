// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

// Exterior complex scaling of -u'' + (mu^2 e^{2r} + V) u = -kappa^2 u on
// Gauss-Lobatto spectral elements. The weak form with the scaled Jacobian c
// is int u_s v_s / c + c W u v = lambda int c u v, so interface conditions
// come out of the assembly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ccres/errors.hpp"
#include "ccres/scanner.hpp"

namespace ccres::scan {
namespace {

using cd = std::complex<double>;

// Gauss-Lobatto-Legendre nodes and weights on [-1, 1].
void lobatto(int p, std::vector<double>& x, std::vector<double>& w) {
  // p + 1 nodes: endpoints and the roots of P_p'.
  x.assign(p + 1, 0.0);
  w.assign(p + 1, 0.0);
  auto legendre = [p](double t, double& P, double& dP) {
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= p; ++k) {
      const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    P = p1;
    dP = p * (t * p1 - p0) / (t * t - 1.0);
  };
  x[0] = -1.0;
  x[p] = 1.0;
  for (int i = 1; i < p; ++i) {
    double t = -std::cos(M_PI * i / p);
    for (int it = 0; it < 100; ++it) {
      // Newton on (1 - t^2) P_p'(t) via the Legendre recurrence.
      double P, dP;
      legendre(t, P, dP);
      const double d2P = (2 * t * dP - p * (p + 1) * P) / (1 - t * t);
      const double step = dP / d2P;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    x[i] = t;
  }
  for (int i = 0; i <= p; ++i) {
    double t = x[i], p0 = 1.0, p1 = t;
    for (int k = 2; k <= p; ++k) {
      const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    w[i] = 2.0 / (p * (p + 1) * p1 * p1);
  }
}

// Lagrange differentiation matrix at the given nodes.
Eigen::MatrixXd diff_matrix(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> bw(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) bw[i] /= x[i] - x[j];
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (i != j) {
        D(i, j) = bw[j] / bw[i] / (x[i] - x[j]);
        D(i, i) -= D(i, j);
      }
  }
  return D;
}

struct Element {
  double s0, s1;  // real parameter
  double anchor;  // r = anchor + (s - anchor) c
  cd c;
};

void split(std::vector<Element>& out, double a, double b, double len, double anchor, cd c) {
  const int m = std::max(1, static_cast<int>(std::ceil((b - a) / len - 1e-9)));
  for (int i = 0; i < m; ++i) out.push_back({a + (b - a) * i / m, a + (b - a) * (i + 1) / m, anchor, c});
}

}  // namespace

std::vector<cd> complex_scaled_resonances(const model::ModelManifold& model, std::size_t j, const PotentialProfile& V,
                                          const ComplexScalingOptions& opt) {
  model.validate();
  if (j >= model.spectrum.size()) throw IndexError("spectrum entry out of range");
  if (!(opt.angle > 0.0 && opt.angle < M_PI / 2)) throw DomainError("scaling angle must lie in (0, pi/2)");
  if (!(opt.tail > 0.0) || !(opt.element_length > 0.0) || opt.nodes_per_element < 3)
    throw DomainError("invalid complex scaling discretization");
  const double mu = model.spectrum.entries()[j].mu;
  const cd c = std::polar(1.0, -opt.angle);
  const double lo = V.lo(), hi = V.hi();

  std::vector<Element> els;
  split(els, lo - opt.tail, lo, opt.element_length, lo, c);
  std::vector<double> cuts{lo};
  for (double b : V.breakpoints()) cuts.push_back(b);
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) split(els, cuts[i], cuts[i + 1], opt.element_length, 0.0, 1.0);
  if (mu == 0.0)
    split(els, hi, hi + opt.tail, opt.element_length, hi, c);
  else
    split(els, hi, hi + opt.barrier_extent, opt.element_length, 0.0, 1.0);

  const int p = opt.nodes_per_element - 1;
  std::vector<double> gx, gw;
  lobatto(p, gx, gw);
  const Eigen::MatrixXd Dref = diff_matrix(gx);

  const int total = static_cast<int>(els.size()) * p + 1;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(total, total);
  Eigen::VectorXcd M = Eigen::VectorXcd::Zero(total);
  for (std::size_t e = 0; e < els.size(); ++e) {
    const Element& el = els[e];
    const double J = 0.5 * (el.s1 - el.s0);
    const int base = static_cast<int>(e) * p;
    const double mid = 0.5 * (el.s0 + el.s1);
    for (int q = 0; q <= p; ++q) {
      const double s = mid + J * gx[q];
      const cd r = el.anchor + (s - el.anchor) * el.c;
      // V is sampled strictly inside the element so jumps at edges do not leak.
      const double sv = mid + (s - mid) * (1.0 - 1e-12);
      const double vr = el.c == cd(1.0) ? V(sv) : 0.0;
      const cd W = mu * mu * std::exp(2.0 * r) + vr;
      A(base + q, base + q) += el.c * W * gw[q] * J;
      M(base + q) += el.c * gw[q] * J;
      for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= p; ++b)
          A(base + a, base + b) += gw[q] * Dref(q, a) * Dref(q, b) / (J * el.c);
    }
  }
  // Dirichlet at both ends; the lumped mass is diagonal, so the problem
  // reduces to an ordinary eigenproblem.
  const int n = total - 2;
  Eigen::MatrixXcd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) B(i, k) = A(i + 1, k + 1) / M(i + 1);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("complex scaling eigensolver failed", NAN, NAN);

  const double a = model.alpha0, half = model.n / 2.0;
  const bool family = model.scaling == model::ScalingMode::SpectralFamily && a != 1.0;
  std::vector<cd> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    cd kappa = cd(0.0, 1.0) * std::sqrt(es.eigenvalues()(i));
    if (kappa.imag() < 0.0) kappa = -kappa;
    if (!(kappa.imag() > 0.0)) continue;
    // Rotated continuum lies on arg kappa = pi/2 + angle; keep the sector
    // the scaling actually uncovers.
    if (std::arg(kappa) > M_PI / 2 + 0.5 * opt.angle) continue;
    cd k = kappa;
    if (family) {
      k = std::sqrt((kappa * kappa - (1.0 - a * a) * half * half) / (a * a));
      if (k.imag() < 0.0) k = -k;
    }
    out.push_back(half + k);
  }
  std::sort(out.begin(), out.end(), [](cd x, cd y) { return x.imag() < y.imag(); });
  return out;
}

}  // namespace ccres::scan
