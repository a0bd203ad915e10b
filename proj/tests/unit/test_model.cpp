// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cmath>

#include "ccres/errors.hpp"
#include "ccres/model.hpp"
#include "doctest.h"

using namespace ccres::model;
using cd = std::complex<double>;

namespace {

const ccres::QuadratureSpec kQuad{1e-12, 20000, 0.0};

ModelManifold with_modes(std::vector<SpectrumEntry> e) {
  ModelManifold m;
  m.spectrum = CrossSectionSpectrum::from_list(std::move(e));
  return m;
}

RadialGrid small_grid() { return RadialGrid::composite_gauss(-12.0, 2.0, 400); }

}  // namespace

TEST_CASE("translation reduction") {
  const auto m = with_modes({{0.0, 1}, {1.0, 2}, {2.0, 2}});
  CHECK(reduce_to_Q(m, 0).is_zero_mode);
  CHECK(reduce_to_Q(m, 1).shift == doctest::Approx(0.0));
  CHECK(reduce_to_Q(m, 2).shift == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(reduce_to_Q(m, 3), ccres::IndexError);
}

TEST_CASE("Green kernel value, symmetry and ODE residual") {
  const auto one = SpectralPoint::from_k(1.0, 1);
  CHECK(std::abs(green_kernel_Q(one, 0.0, 0.0, kQuad) - 0.34017780915) < 1e-5);

  const auto sp = SpectralPoint::from_k(cd(0.1, 6.0), 1);
  CHECK(std::abs(green_kernel_Q(sp, -0.7, 0.4, kQuad) - green_kernel_Q(sp, 0.4, -0.7, kQuad)) < 1e-14);

  // (-d_r^2 + e^{2r} + k^2) G(., t) = 0 away from r = t.
  const double h = 1e-3, t = 0.2;
  for (double r : {-2.5, -0.6, 1.1}) {
    const cd g0 = green_kernel_Q(sp, r, t, kQuad);
    const cd gp = green_kernel_Q(sp, r + h, t, kQuad);
    const cd gm = green_kernel_Q(sp, r - h, t, kQuad);
    const cd lhs = -(gp - 2.0 * g0 + gm) / (h * h) + (std::exp(2 * r) + sp.k() * sp.k()) * g0;
    const double scale = std::abs((std::exp(2 * r) + sp.k() * sp.k()) * g0);
    CHECK(std::abs(lhs) < 1e-6 * scale * 10);
  }
}

TEST_CASE("zero-mode kernel normalization") {
  const auto m = with_modes({{0.0, 1}});
  RadialGrid g;
  g.nodes = {-5.0, -5.0 + std::log(2.0)};
  g.weights = {1.0, 1.0};
  const auto km = mode_kernel(m, 0, SpectralPoint::from_k(1.0, 1), g, kQuad);
  const double rho0 = std::exp(0.5 * g.nodes[0]), rho1 = std::exp(0.5 * g.nodes[1]);
  CHECK(std::abs(km.values(0, 0) / (rho0 * rho0) - 0.5) < 1e-14);
  CHECK(std::abs(km.values(0, 1) / (rho0 * rho1) - 0.25) < 1e-14);
  CHECK_THROWS_AS(mode_kernel(m, 0, SpectralPoint::from_k(0.0, 1), g, kQuad), ccres::PoleError);
}

TEST_CASE("translation covariance of mode kernels") {
  const auto m = with_modes({{1.0, 1}, {2.0, 1}});
  const auto sp = SpectralPoint::from_k(cd(0.05, 3.0), 1);
  const auto g = RadialGrid::composite_gauss(-11.0, 2.0, 48);
  const auto km = mode_kernel(m, 1, sp, g, kQuad);
  const CutoffWeight w;
  const double shift = std::log(2.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); i += 5)
    for (std::size_t j = 0; j < g.size(); j += 7) {
      const cd ref = w.rho(g.nodes[i]) * w.rho(g.nodes[j]) *
                     green_kernel_Q(sp, g.nodes[i] + shift, g.nodes[j] + shift, kQuad);
      worst = std::max(worst, std::abs(km.values(i, j) - ref) / std::max(1e-300, std::abs(ref)));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("operator norm basics") {
  const auto g = RadialGrid::composite_gauss(-11.0, 2.0, 64);
  KernelMatrix zero{g, ccres::cmat::Zero(64, 64), true};
  CHECK(operator_norm(zero).norm == 0.0);

  ccres::cmat rank1(64, 64);
  double na = 0, nb = 0;
  for (int i = 0; i < 64; ++i) {
    na += g.weights[i] * std::pow(std::sin(g.nodes[i]), 2);
    nb += g.weights[i] * std::exp(-std::abs(g.nodes[i]));
    for (int j = 0; j < 64; ++j) rank1(i, j) = std::sin(g.nodes[i]) * std::exp(-0.5 * std::abs(g.nodes[j]));
  }
  KernelMatrix r1{g, rank1, true};
  CHECK(operator_norm(r1).norm == doctest::Approx(std::sqrt(na * nb)).epsilon(1e-9));

  const auto m = with_modes({{0.0, 1}});
  const auto nz = operator_norm(mode_kernel(m, 0, SpectralPoint::from_k(cd(1, 5), 1), g, kQuad));
  CHECK(nz.norm > 0.0);
  CHECK(nz.norm <= nz.hilbert_schmidt * (1 + 1e-12));

  rank1(3, 3) = NAN;
  CHECK_THROWS_AS(operator_norm(KernelMatrix{g, rank1, true}), ccres::DataError);
}

TEST_CASE("structured operator matches the dense kernel") {
  const auto m = with_modes({{0.0, 1}, {1.5, 1}});
  const auto sp = SpectralPoint::from_k(cd(-0.2, 4.0), 1);
  const auto g = RadialGrid::composite_gauss(-11.0, 2.0, 96);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto km = mode_kernel(m, j, sp, g, kQuad);
    Eigen::VectorXd sw(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) sw[i] = std::sqrt(g.weights[i]);
    const ccres::cmat ref = sw.asDiagonal() * km.values * sw.asDiagonal();
    const ccres::cmat got = mode_operator(m, j, sp.k(), g, kQuad, 0).dense();
    CHECK((got - ref).norm() < 1e-12 * ref.norm());
  }
}

TEST_CASE("first-derivative operator is the r-derivative of the weighted kernel") {
  const auto m = with_modes({{1.0, 1}});
  const auto sp = SpectralPoint::from_k(cd(0.0, 3.0), 1);
  const auto g = RadialGrid::composite_gauss(-11.0, 2.0, 320);
  const CutoffWeight w;
  const ccres::cmat d1 = mode_operator(m, 0, sp.k(), g, kQuad, 1).dense();
  // (A f)(r) = sum_t rho(r) G(r, t) rho(t) f(t) w_t, differentiated in r by a
  // centered difference at a node.
  ccres::cvec f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-std::pow(g.nodes[i] + 1.0, 2));
  auto apply0 = [&](double r) {
    cd acc = 0;
    for (std::size_t t = 0; t < g.size(); ++t)
      acc += w.rho(r) * green_kernel_Q(sp, r, g.nodes[t], kQuad) * w.rho(g.nodes[t]) * f[t] * g.weights[t];
    return acc;
  };
  const std::size_t i = 150;
  const double h = 1e-4;
  const cd fd = (apply0(g.nodes[i] + h) - apply0(g.nodes[i] - h)) / (2 * h);
  cd got = 0;
  for (std::size_t t = 0; t < g.size(); ++t) got += d1(i, t) * std::sqrt(g.weights[t]) * f[t];
  got /= std::sqrt(g.weights[i]);
  CHECK(std::abs(got - fd) < 1e-3 * std::abs(fd));
}

TEST_CASE("block norm is the max over modes") {
  const auto g = small_grid();
  const auto sp = SpectralPoint::from_xi(cd(0.5 + 1e-6, 2.0), 1);
  NormOptions opt;
  opt.J = 100;
  const auto all = weighted_resolvent_norm(with_modes({{0, 1}, {1, 2}, {2, 2}, {3, 2}}), sp, g, kQuad, opt);
  const auto low = weighted_resolvent_norm(with_modes({{0, 1}, {1, 2}}), sp, g, kQuad, opt);
  const auto high = weighted_resolvent_norm(with_modes({{2, 2}, {3, 2}}), sp, g, kQuad, opt);
  CHECK(all.norm == doctest::Approx(std::max(low.norm, high.norm)).epsilon(1e-8));
  CHECK(all.modes_used == 4);

  // Single block equals the dense norm of that block.
  const auto one = with_modes({{1, 2}});
  const auto single = weighted_resolvent_norm(one, sp, g, kQuad, opt);
  CHECK(single.norm == doctest::Approx(operator_norm(mode_kernel(one, 0, sp, g, kQuad)).norm).epsilon(1e-7));

  // Barrier modes far beyond the grid do not move the maximum.
  const auto far = weighted_resolvent_norm(with_modes({{0, 1}, {1, 2}, {40, 2}, {80, 2}}), sp, g, kQuad, opt);
  CHECK(std::abs(far.norm - low.norm) < 1e-8);
}

TEST_CASE("automatic truncation reports a tail bound below the norm") {
  const auto g = small_grid();
  ModelManifold m;
  m.spectrum = CrossSectionSpectrum::circle(2 * M_PI, 40);
  const auto res = weighted_resolvent_norm(m, SpectralPoint::from_xi(cd(0.5 + 1e-6, 4.0), 1), g, kQuad, {});
  CHECK(res.modes_used < m.spectrum.size());
  CHECK(res.tail_bound < res.norm);
  CHECK(res.converged);
}

TEST_CASE("p = 0 norm decreases along the critical line") {
  const auto g = small_grid();
  const auto m = with_modes({{0, 1}, {1, 2}, {2, 2}});
  NormOptions opt;
  opt.J = 3;
  double prev = INFINITY;
  for (double im : {2.0, 4.0, 8.0, 16.0}) {
    const double v = weighted_resolvent_norm(m, SpectralPoint::from_xi(cd(0.5 + 1e-6, im), 1), g, kQuad, opt).norm;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("norm preconditions") {
  const auto g = small_grid();
  const ModelManifold m;
  CHECK_THROWS_AS(weighted_resolvent_norm(m, SpectralPoint::from_xi(cd(0.2, 3.0), 1), g, kQuad, {}),
                  ccres::DomainError);
  CHECK_THROWS_AS(weighted_resolvent_norm(m, SpectralPoint::from_xi(cd(0.6, 0.5), 1), g, kQuad, {}),
                  ccres::DomainError);
  NormOptions bad;
  bad.p = 3;
  CHECK_THROWS_AS(weighted_resolvent_norm(m, SpectralPoint::from_xi(cd(0.6, 3.0), 1), g, kQuad, bad),
                  ccres::DomainError);
}

TEST_CASE("Cauchy and centered xi-derivatives agree") {
  const auto g = small_grid();
  const auto m = with_modes({{0, 1}, {1, 2}});
  const auto sp = SpectralPoint::from_xi(cd(0.5 - 0.2, 2.0), 1);
  NormOptions opt;
  opt.J = 2;
  const double c = derivative_norm_cauchy(m, sp, cauchy_radius(sp), 16, g, kQuad, opt).norm;
  const double d = derivative_norm_centered(m, sp, 1e-3, g, kQuad, opt).norm;
  CHECK(std::abs(c - d) < 1e-3 * d);
}

TEST_CASE("product bounds") {
  const ModelManifold m;
  const auto g = RadialGrid::standard();
  const auto two = check_product_bounds(m, 1, SpectralPoint::from_k(cd(0, 2), 1), g, kQuad);
  const auto sixteen = check_product_bounds(m, 1, SpectralPoint::from_k(cd(0, 16), 1), g, kQuad);
  CHECK(two.pass);
  CHECK(sixteen.pass);
  for (std::size_t i = 0; i < 2; ++i) {
    const double a = two.summary.number(i, "sup_ratio"), b = sixteen.summary.number(i, "sup_ratio");
    CHECK(std::isfinite(a));
    CHECK(b < 10 * a);
    CHECK(b > a / 10);
  }
  CHECK_THROWS_AS(check_product_bounds(m, 1, SpectralPoint::from_k(cd(0.3, 2), 1), g, kQuad), ccres::DomainError);
}

TEST_CASE("weight sanity") {
  for (int degree : {3, 5, 7}) {
    const CutoffWeight w(degree);
    CHECK(w.rho(-1.5) == std::exp(-0.75));
    CHECK(w.rho(-1.0) == std::exp(-0.5));
    CHECK(w.rho(1.0) == 0.0);
    CHECK(w.rho(1.7) == 0.0);
    double prev = 1.0;
    for (double r = -1.0; r <= 1.0; r += 0.01) {
      const double c = w.chi(r);
      CHECK(c <= prev + 1e-15);
      CHECK(c >= 0.0);
      prev = c;
    }
  }
  CHECK_THROWS(CutoffWeight(4));
}
