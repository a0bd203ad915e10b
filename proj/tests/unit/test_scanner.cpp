// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <algorithm>
#include <cmath>

#include "ccres/errors.hpp"
#include "ccres/scanner.hpp"
#include "doctest.h"

using namespace ccres;
using namespace ccres::scan;
using cd = std::complex<double>;

namespace {

model::ModelManifold model_n1() {
  model::ModelManifold m;
  m.n = 1;
  return m;
}

cd D_at(const model::ModelManifold& m, std::size_t j, const PotentialProfile& V, cd xi, const MatchingOptions& o = {}) {
  return matching_determinant(m, j, V, model::SpectralPoint::from_xi(xi, m.n), o);
}

// Zero mode, V = -V0 on [0, L]: transfer across the well by hand.
cd square_well_closed_form(cd k, double V0, double L) {
  const cd q = std::sqrt(k * k - V0);
  return std::exp(-k * L) * (std::cosh(q * L) + (k * k + q * q) / (2.0 * k * q) * std::sinh(q * L));
}

}  // namespace

TEST_CASE("potential profiles") {
  const auto w = PotentialProfile::square_well(5.0, -1.0, 2.0);
  CHECK(w(0.0) == -5.0);
  CHECK(w(3.0) == 0.0);
  CHECK(w.lo() == -1.0);
  CHECK(w.sup_abs() == 5.0);
  const auto g = PotentialProfile::gaussian(2.0, 1.0, 0.5);
  CHECK(g(1.0) == doctest::Approx(2.0));
  CHECK(g(1.0 + 0.5) == doctest::Approx(2.0 * std::exp(-1.0)));
  CHECK(g(1.0 + 3.01) == 0.0);
  const auto s = PotentialProfile::sampled({0.0, 1.0, 3.0}, {0.0, 2.0, 0.0});
  CHECK(s(0.5) == doctest::Approx(1.0));
  CHECK(s(2.0) == doctest::Approx(1.0));
  CHECK(s.breakpoints() == std::vector<double>{1.0});
  const auto d = PotentialProfile::double_bump(1.0, 0.0, 4.0, 0.3);
  CHECK(d(-2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d(0.0) < 1e-10);
  CHECK(PotentialProfile::zero().is_zero());
  CHECK_THROWS_AS(PotentialProfile::square_well(1.0, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(PotentialProfile::gaussian(1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(PotentialProfile::sampled({0.0, 0.0}, {1.0, 1.0}), DomainError);
}

TEST_CASE("matching determinant normalization and symmetry") {
  const auto m = model_n1();
  const auto free = PotentialProfile::zero();
  for (std::size_t j : {0, 1, 3})
    for (cd xi : {cd(0.3, 2.0), cd(0.9, 17.0), cd(0.27, 29.0)}) CHECK(std::abs(D_at(m, j, free, xi) - 1.0) < 1e-9);

  const auto well = PotentialProfile::square_well(20.0, 0.0, 4.0);
  const auto bump = PotentialProfile::gaussian(3.0, -1.0, 0.7);
  for (cd xi : {cd(0.8, 3.0), cd(1.4, 11.0)}) {
    CHECK(std::abs(D_at(m, 0, well, std::conj(xi)) - std::conj(D_at(m, 0, well, xi))) < 1e-10 * std::abs(D_at(m, 0, well, xi)));
    const cd b = D_at(m, 1, bump, xi);
    CHECK(std::abs(D_at(m, 1, bump, std::conj(xi)) - std::conj(b)) < 1e-9 * std::abs(b));
  }

  // Matching point +-1 around the middle of the support.
  for (cd xi : {cd(0.3, 5.0), cd(0.7, 22.0)}) {
    MatchingOptions lo, hi;
    lo.matching_point = 1.0;
    hi.matching_point = 3.0;
    const cd d0 = D_at(m, 0, well, xi), d1 = D_at(m, 0, well, xi, lo), d2 = D_at(m, 0, well, xi, hi);
    CHECK(std::abs(d1 - d0) < 1e-8 * std::abs(d0));
    CHECK(std::abs(d2 - d0) < 1e-8 * std::abs(d0));
    MatchingOptions bm;
    bm.matching_point = -2.0;
    const cd e0 = D_at(m, 2, bump, xi), e1 = D_at(m, 2, bump, xi, bm);
    CHECK(std::abs(e1 - e0) < 1e-8 * std::abs(e0));
  }
}

TEST_CASE("square well determinant against the closed form") {
  const auto m = model_n1();
  for (double L : {3.0, 10.0})
    for (cd xi : {cd(0.7, 3.0), cd(0.4, 12.5), cd(0.28, 25.0)}) {
      const auto V = PotentialProfile::square_well(50.0, 0.0, L);
      const cd oracle = square_well_closed_form(xi - 0.5, 50.0, L);
      CHECK(std::abs(D_at(m, 0, V, xi) - oracle) < 1e-9 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("matching determinant preconditions") {
  const auto m = model_n1();
  const auto V = PotentialProfile::square_well(1.0, 0.0, 1.0);
  CHECK_THROWS_AS(D_at(m, 0, V, cd(0.25, 3.0)), DomainError);
  CHECK_THROWS_AS(D_at(m, 10000, V, cd(0.6, 3.0)), IndexError);
}

TEST_CASE("synthetic determinants") {
  const cd z0(0.5 - 0.05, 7.0);
  Rect r{0.3, 1.0, 1.0, 30.0};
  ScanOptions o;
  o.re_points = 60;
  o.im_points = 200;
  auto D = [&](cd xi) { return xi - z0; };
  const auto map = scan_function(D, 1, r, o);
  CHECK(!map.candidates.empty());
  const auto zs = find_zeros(D, map, 0);
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0].xi - z0) < 1e-10);
  CHECK(zs[0].multiplicity == 1);
  CHECK(zs[0].resolved);

  auto D2 = [&](cd xi) { return (xi - z0) * (xi - z0) * (xi - cd(0.8, 20.0)); };
  const auto map2 = scan_function(D2, 1, r, o);
  const auto z2 = find_zeros(D2, map2, 0);
  REQUIRE(z2.size() == 2);
  CHECK(z2[0].multiplicity == 2);
  CHECK(std::abs(z2[1].xi - cd(0.8, 20.0)) < 1e-10);
  CHECK(z2[1].multiplicity == 1);

  const auto t = zeros_table(z2);
  CHECK(t.number(0, "im_xi") == doctest::Approx(7.0));
}

TEST_CASE("region fit") {
  std::vector<Resonance> on_curve;
  for (double y : {2.0, 4.0, 8.0, 16.0, 29.0}) on_curve.push_back({0, cd(0.5 - 1.0 / y, y), 1, 0.0, true, ""});
  const auto f = fit_region_boundary(on_curve, 1);
  CHECK(f.C1 == doctest::Approx(1.0).epsilon(0.05));
  CHECK(f.C1_lsq == doctest::Approx(1.0).epsilon(0.05));
  CHECK(f.ok);

  // Scatter: C1 is an envelope, every zero on or left of the curve.
  std::vector<Resonance> noisy;
  for (int i = 0; i < 12; ++i) {
    const double y = 2.0 + 2.0 * i, c = 1.0 + 0.1 * std::sin(3.0 * i);
    noisy.push_back({0, cd(0.5 - c / y, y), 1, 0.0, true, ""});
  }
  const auto g = fit_region_boundary(noisy, 1);
  for (const auto& z : noisy)
    if (z.xi.imag() >= g.C2) CHECK(z.xi.real() <= 0.5 - g.C1 / z.xi.imag() + 1e-12);
  CHECK(g.residual < 0.2);

  CHECK_THROWS_AS(fit_region_boundary({on_curve[0], on_curve[1]}, 1), InsufficientDataError);
  CHECK_THROWS_AS(fit_region_boundary({}, 1), InsufficientDataError);
}

TEST_CASE("free model has no resonances in the strip") {
  const auto m = model_n1();
  ScanOptions o;
  o.re_points = 20;
  o.im_points = 120;
  o.modes = {0, 1};
  const auto map = scan_region(m, PotentialProfile::zero(), Rect{0.3, 1.0, 1.0, 30.0}, o);
  CHECK(map.candidates.empty());
  CHECK(map.abs_D.size() == 2);
  CHECK((map.abs_D[0].array() - 1.0).abs().maxCoeff() < 1e-8);
  CHECK(find_resonances(m, PotentialProfile::zero(), map).empty());
  CHECK_THROWS_AS(fit_region_boundary(find_resonances(m, PotentialProfile::zero(), map), 1), InsufficientDataError);
  const auto t = map.region_table();
  CHECK(t.rows().size() == 20u * 120u * 2u);

  CHECK_THROWS_AS(scan_region(m, PotentialProfile::zero(), Rect{0.2, 1.0, 1.0, 30.0}, o), DomainError);
  CHECK_THROWS_AS(scan_region(m, PotentialProfile::zero(), Rect{0.3, 1.0, 0.5, 30.0}, o), DomainError);
}

TEST_CASE("square well chain and complex scaling") {
  const auto m = model_n1();
  const auto V = PotentialProfile::square_well(50.0, 0.0, 10.0);
  ScanOptions o;
  o.re_points = 20;
  o.im_points = 160;
  const auto map = scan_region(m, V, Rect{0.26, 0.5, 1.0, 6.0}, o);
  CHECK(map.candidates.size() >= 3);
  CHECK(map.phase_step_q95 < 1.0);
  const auto zs = find_resonances(m, V, map);
  CHECK(zs.size() == 7);
  ComplexScalingOptions co;
  co.tail = 8.0;
  co.nodes_per_element = 16;
  const auto cs = complex_scaled_resonances(m, 0, V, co);
  for (const auto& z : zs) {
    CHECK(z.resolved);
    CHECK(z.multiplicity == 1);
    CHECK(z.residual < 1e-10);
    CHECK(z.xi.real() < 0.5);
    double best = INFINITY;
    for (cd x : cs) best = std::min(best, std::abs(x - z.xi));
    CHECK(best < 1e-4);
  }

  // Physical sheet.
  const auto phys = scan_region(m, V, Rect{0.55, 1.5, 1.0, 10.0}, o);
  CHECK(phys.candidates.empty());
}

TEST_CASE("well under the barrier: mu > 0 mode against complex scaling") {
  const auto m = model_n1();
  const auto V = PotentialProfile::square_well(50.0, -8.0, 0.0);
  ScanOptions o;
  o.re_points = 16;
  o.im_points = 100;
  o.modes = {1};
  const auto map = scan_region(m, V, Rect{0.26, 0.5, 1.0, 4.0}, o);
  const auto zs = find_resonances(m, V, map);
  CHECK(zs.size() >= 3);
  ComplexScalingOptions co;
  co.tail = 8.0;
  co.nodes_per_element = 16;
  const auto cs = complex_scaled_resonances(m, 1, V, co);
  for (const auto& z : zs) {
    CHECK(z.mode == 1);
    double best = INFINITY;
    for (cd x : cs) best = std::min(best, std::abs(x - z.xi));
    CHECK(best < 1e-6);
  }
}
