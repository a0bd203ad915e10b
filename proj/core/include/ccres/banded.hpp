// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>
#include <vector>

#include "ccres/linalg.hpp"

namespace ccres {

/// Complex band matrix with kl sub- and ku super-diagonals, LU-factored with
/// partial pivoting (fill-in up to kl + ku above the diagonal).
class BandedLU {
 public:
  BandedLU(Eigen::Index n, int kl, int ku);

  Eigen::Index size() const { return n_; }
  /// Adds to entry (i, j); |i - j| must lie inside the band. Before factor().
  void add(Eigen::Index i, Eigen::Index j, std::complex<double> v);
  /// Throws NumericError on an exactly singular pivot; condition() then
  /// holds the ratio of largest to smallest pivot seen.
  void factor();
  cvec solve(const cvec& b) const;
  /// Solves A^H x = b.
  cvec solve_adjoint(const cvec& b) const;
  double condition() const { return condition_; }

 private:
  std::complex<double>& at(Eigen::Index i, Eigen::Index j) { return data_[i * width_ + (j - i + kl_)]; }
  const std::complex<double>& at(Eigen::Index i, Eigen::Index j) const {
    return data_[i * width_ + (j - i + kl_)];
  }
  Eigen::Index n_;
  int kl_, ku_, width_;
  std::vector<std::complex<double>> data_;
  std::vector<Eigen::Index> pivot_;
  bool factored_ = false;
  double condition_ = 0.0;
};

}  // namespace ccres
