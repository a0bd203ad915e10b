// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/banded.hpp"

#include <algorithm>
#include <cmath>

#include "ccres/errors.hpp"

namespace ccres {

BandedLU::BandedLU(Eigen::Index n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1), data_(static_cast<std::size_t>(n) * width_), pivot_(n) {
  if (n < 1 || kl < 0 || ku < 0) throw DomainError("invalid band matrix shape");
}

void BandedLU::add(Eigen::Index i, Eigen::Index j, std::complex<double> v) {
  if (factored_) throw UsageError("band matrix already factored");
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || j - i > ku_ || i - j > kl_)
    throw IndexError("band entry outside the band");
  at(i, j) += v;
}

void BandedLU::factor() {
  double big = 0.0, small = INFINITY;
  const int upper = kl_ + ku_;
  for (Eigen::Index k = 0; k < n_; ++k) {
    const Eigen::Index last_row = std::min(n_ - 1, k + kl_);
    const Eigen::Index last_col = std::min(n_ - 1, k + upper);
    Eigen::Index p = k;
    for (Eigen::Index i = k + 1; i <= last_row; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
    pivot_[k] = p;
    if (p != k)
      for (Eigen::Index j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
    const std::complex<double> d = at(k, k);
    if (d == 0.0) {
      condition_ = INFINITY;
      throw NumericError("band matrix is singular at pivot " + std::to_string(k), condition_);
    }
    big = std::max(big, std::abs(d));
    small = std::min(small, std::abs(d));
    for (Eigen::Index i = k + 1; i <= last_row; ++i) {
      const std::complex<double> l = at(i, k) / d;
      at(i, k) = l;
      if (l != 0.0)
        for (Eigen::Index j = k + 1; j <= last_col; ++j) at(i, j) -= l * at(k, j);
    }
  }
  condition_ = big / small;
  factored_ = true;
}

cvec BandedLU::solve(const cvec& b) const {
  if (!factored_) throw UsageError("factor() before solve()");
  cvec x = b;
  for (Eigen::Index k = 0; k < n_; ++k) {
    if (pivot_[k] != k) std::swap(x[k], x[pivot_[k]]);
    const Eigen::Index last_row = std::min(n_ - 1, k + kl_);
    for (Eigen::Index i = k + 1; i <= last_row; ++i) x[i] -= at(i, k) * x[k];
  }
  for (Eigen::Index k = n_ - 1; k >= 0; --k) {
    const Eigen::Index last_col = std::min(n_ - 1, k + kl_ + ku_);
    std::complex<double> s = x[k];
    for (Eigen::Index j = k + 1; j <= last_col; ++j) s -= at(k, j) * x[j];
    x[k] = s / at(k, k);
  }
  return x;
}

cvec BandedLU::solve_adjoint(const cvec& b) const {
  if (!factored_) throw UsageError("factor() before solve_adjoint()");
  cvec x = b;
  // U^H y = b, forward.
  for (Eigen::Index k = 0; k < n_; ++k) {
    const Eigen::Index first = std::max<Eigen::Index>(0, k - kl_ - ku_);
    std::complex<double> s = x[k];
    for (Eigen::Index i = first; i < k; ++i) s -= std::conj(at(i, k)) * x[i];
    x[k] = s / std::conj(at(k, k));
  }
  // Undo the unit-lower factors and row swaps in reverse order.
  for (Eigen::Index k = n_ - 1; k >= 0; --k) {
    const Eigen::Index last_row = std::min(n_ - 1, k + kl_);
    for (Eigen::Index i = k + 1; i <= last_row; ++i) x[k] -= std::conj(at(i, k)) * x[i];
    if (pivot_[k] != k) std::swap(x[k], x[pivot_[k]]);
  }
  return x;
}

}  // namespace ccres
