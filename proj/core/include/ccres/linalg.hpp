// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ccres {

using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Matrix with rank-one lower and upper triangles and a separate diagonal:
///   M_ij = lower_left_i  lower_right_j exp(s_j - s_i)   (j < i)
///   M_ij = upper_left_i  upper_right_j exp(s_i - s_j)   (j > i)
///   M_ii = diag_i
/// with s nondecreasing, so every exponential factor is at most one. This is
/// the structure of a Green kernel u(min) v(max) sampled on sorted nodes, with
/// the growth of u and decay of v factored out into s.
struct SemiSeparable {
  cvec lower_left, lower_right, upper_left, upper_right, diag;
  Eigen::VectorXd scale;

  Eigen::Index size() const { return diag.size(); }
  cvec apply(const cvec& x) const;
  SemiSeparable adjoint() const;
  cmat dense() const;
};

/// y = A x and y = A^H x for an operator known only through its action.
/// size is the domain dimension; apply may map into a different dimension.
struct OperatorAction {
  Eigen::Index size = 0;
  std::function<cvec(const cvec&)> apply;
  std::function<cvec(const cvec&)> apply_adjoint;
};

OperatorAction as_action(SemiSeparable op);
OperatorAction as_action(cmat op);
/// sum_m c_m A_m; all terms must share a size.
OperatorAction linear_combination(std::vector<std::pair<std::complex<double>, OperatorAction>> terms);

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest singular value via Lanczos on A^H A with full
/// reorthogonalization and explicit restarts. Deterministic start vector.
NormEstimate largest_singular_value(const OperatorAction& a, double rel_tol = 1e-10, int max_restarts = 30);

}  // namespace ccres
