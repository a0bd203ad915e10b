// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/linalg.hpp"

#include <cmath>
#include <memory>

#include "ccres/errors.hpp"

namespace ccres {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre needs n >= 1");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

cvec SemiSeparable::apply(const cvec& x) const {
  const Eigen::Index n = size();
  if (x.size() != n) throw DataError("SemiSeparable::apply size mismatch");
  cvec y(n);
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i > 0) acc = (acc + lower_right[i - 1] * x[i - 1]) * std::exp(scale[i - 1] - scale[i]);
    y[i] = lower_left[i] * acc + diag[i] * x[i];
  }
  acc = 0.0;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (i + 1 < n) acc = (acc + upper_right[i + 1] * x[i + 1]) * std::exp(scale[i] - scale[i + 1]);
    y[i] += upper_left[i] * acc;
  }
  return y;
}

SemiSeparable SemiSeparable::adjoint() const {
  SemiSeparable a;
  a.lower_left = upper_right.conjugate();
  a.lower_right = upper_left.conjugate();
  a.upper_left = lower_right.conjugate();
  a.upper_right = lower_left.conjugate();
  a.diag = diag.conjugate();
  a.scale = scale;
  return a;
}

cmat SemiSeparable::dense() const {
  const Eigen::Index n = size();
  cmat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j < i) m(i, j) = lower_left[i] * lower_right[j] * std::exp(scale[j] - scale[i]);
      else if (j > i) m(i, j) = upper_left[i] * upper_right[j] * std::exp(scale[i] - scale[j]);
      else m(i, j) = diag[i];
    }
  return m;
}

OperatorAction as_action(SemiSeparable op) {
  auto fwd = std::make_shared<SemiSeparable>(std::move(op));
  auto adj = std::make_shared<SemiSeparable>(fwd->adjoint());
  return {fwd->size(), [fwd](const cvec& x) { return fwd->apply(x); },
          [adj](const cvec& x) { return adj->apply(x); }};
}

OperatorAction as_action(cmat op) {
  auto m = std::make_shared<cmat>(std::move(op));
  if (m->rows() != m->cols()) throw DataError("operator matrix must be square");
  return {m->rows(), [m](const cvec& x) -> cvec { return (*m) * x; },
          [m](const cvec& x) -> cvec { return m->adjoint() * x; }};
}

OperatorAction linear_combination(std::vector<std::pair<std::complex<double>, OperatorAction>> terms) {
  if (terms.empty()) throw DataError("linear_combination of no operators");
  const Eigen::Index n = terms.front().second.size;
  for (const auto& t : terms)
    if (t.second.size != n) throw DataError("linear_combination size mismatch");
  auto shared = std::make_shared<std::vector<std::pair<std::complex<double>, OperatorAction>>>(std::move(terms));
  return {n,
          [shared, n](const cvec& x) {
            cvec y = cvec::Zero(n);
            for (const auto& [c, op] : *shared) y += c * op.apply(x);
            return y;
          },
          [shared, n](const cvec& x) {
            cvec y = cvec::Zero(n);
            for (const auto& [c, op] : *shared) y += std::conj(c) * op.apply_adjoint(x);
            return y;
          }};
}

NormEstimate largest_singular_value(const OperatorAction& a, double rel_tol, int max_restarts) {
  const Eigen::Index n = a.size;
  NormEstimate out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  auto gram = [&](const cvec& x) { return a.apply_adjoint(a.apply(x)); };
  // Deterministic, non-degenerate start.
  cvec v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = std::complex<double>(1.0 + 0.5 * std::sin(1.7 * i), 0.3 * std::cos(0.9 * i));
  v.normalize();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(n, 48));
  double theta = 0.0;
  for (int restart = 0; restart <= max_restarts; ++restart) {
    std::vector<cvec> basis{v}, images;
    double last_beta = 0.0;
    for (int m = 0; m < m_max; ++m) {
      images.push_back(gram(basis[m]));
      ++out.iterations;
      if (!images.back().allFinite()) throw DataError("operator produced non-finite values");
      cvec w = images.back();
      // Full reorthogonalization, twice for stability.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) w -= q * q.dot(w);
      last_beta = w.norm();
      if (last_beta <= 1e-14 * images.back().norm() || m + 1 == m_max) break;
      basis.push_back(w / last_beta);
    }
    // Rayleigh-Ritz on the Krylov basis (projected Gram operator).
    const int k = static_cast<int>(images.size());
    Eigen::MatrixXcd h(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) h(i, j) = basis[i].dot(images[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
    const int top = k - 1;
    const double new_theta = es.eigenvalues()[top];
    cvec ritz = cvec::Zero(n);
    cvec image = cvec::Zero(n);
    for (int j = 0; j < k; ++j) {
      ritz += es.eigenvectors()(j, top) * basis[j];
      image += es.eigenvectors()(j, top) * images[j];
    }
    const double residual = (image - new_theta * ritz).norm();
    theta = new_theta;
    if (theta <= 0.0) {
      out.value = 0.0;
      out.converged = true;
      return out;
    }
    if (residual <= rel_tol * theta) {
      out.value = std::sqrt(theta);
      out.converged = true;
      return out;
    }
    v = ritz.normalized();
  }
  out.value = std::sqrt(theta);
  out.converged = false;
  return out;
}

}  // namespace ccres
