// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ccres/errors.hpp"
#include "ccres/wavesim.hpp"
#include "doctest.h"

using namespace ccres;
using namespace ccres::wave;
using cd = std::complex<double>;

namespace {

model::ModelManifold model_n1() {
  model::ModelManifold m;
  m.n = 1;
  return m;
}

std::vector<double> early_times(double step, double t_end) {
  std::vector<double> t;
  for (int i = 0; i * step <= 1.0 + 1e-12; ++i) t.push_back(i * step);
  if (t_end > 1.0) t.push_back(t_end);
  return t;
}

double rel_diff(const cvec& a, const cvec& b) { return (a - b).norm() / a.norm(); }

}  // namespace

TEST_CASE("time cutoff") {
  const TimeCutoff chi(0.2);
  CHECK(chi(0.1) == 0.0);
  CHECK(chi(2.0) == 1.0);
  CHECK(chi(0.6) > 0.0);
  CHECK(chi(0.6) < 1.0);
  CHECK(chi(0.6) == doctest::Approx(0.5));
  double prev = 0.0;
  for (double t = 0.2; t <= 1.0; t += 0.01) {
    CHECK(chi(t) >= prev);
    prev = chi(t);
  }
  for (double t : {0.3, 0.55, 0.8, 0.95}) {
    const double d = 1e-5;
    CHECK(chi.d1(t) == doctest::Approx((chi(t + d) - chi(t - d)) / (2 * d)).epsilon(1e-6));
    CHECK(chi.d2(t) == doctest::Approx((chi.d1(t + d) - chi.d1(t - d)) / (2 * d)).epsilon(1e-5));
  }
  CHECK(chi.d1(0.2001) < 1e-10);
  CHECK(chi.d2(0.9999) < 1e-10);
  CHECK_THROWS_AS(TimeCutoff(0.0), DomainError);
  CHECK_THROWS_AS(TimeCutoff(1.0), DomainError);
}

TEST_CASE("evolve: zero data, energy, finite speed") {
  const auto m = model_n1();
  const RadialGrid g{-20.0, 20.0, 0.01};
  const auto V = scan::PotentialProfile::zero();

  const auto zero = CauchyData::zero(g, {0, 1}, -1.0, 1.0);
  const auto z = evolve(m, V, zero, {0.0, 1.0, 3.0});
  for (const auto& per_mode : z.u)
    for (const auto& f : per_mode) CHECK(f.cwiseAbs().maxCoeff() == 0.0);

  const auto data = CauchyData::gaussian(g, {0, 2}, 0.0, 0.5);
  const auto u = evolve(m, scan::PotentialProfile::gaussian(2.0, 1.0, 0.5), data, {0.0, 10.0});
  CHECK(std::abs(u.energy[1] - u.energy[0]) < 1e-5 * u.energy[0]);
  CHECK(std::abs(u.energy[1] - u.energy[0]) < 1e-6 * 10.0 * u.energy[0]);

  // Narrow data: nothing beyond the light cone (speed 1) at t = 0.5.
  const auto narrow = CauchyData::gaussian(g, {0}, 0.0, 0.1);
  const auto w = evolve(m, V, narrow, {0.5});
  double outside = 0.0;
  for (std::size_t i = 0; i < w.count; ++i)
    if (std::abs(w.r(i)) > 0.6 + 0.5 + 0.05) outside = std::max(outside, std::abs(w.u[0][0](static_cast<Eigen::Index>(i))));
  CHECK(outside < 1e-6);

  EvolveOptions bad;
  bad.dt = 0.02;
  CHECK_THROWS_AS(evolve(m, V, data, {1.0}, bad), StabilityError);
  CHECK_THROWS_AS(evolve(m, V, data, {1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(CauchyData::gaussian(g, {0}, 18.0, 1.0), SupportError);
}

TEST_CASE("cutoff application") {
  const auto m = model_n1();
  const RadialGrid g{-10.0, 10.0, 0.01};
  const auto data = CauchyData::gaussian(g, {0}, 0.0, 0.5);
  const TimeCutoff chi(0.1);
  const auto u = evolve(m, scan::PotentialProfile::zero(), data, {0.05, 0.55, 2.0});
  const auto v = apply_cutoff(u, chi);
  CHECK(v.u[0][0].cwiseAbs().maxCoeff() == 0.0);
  CHECK((v.u[2][0] - u.u[2][0]).cwiseAbs().maxCoeff() == 0.0);
  bool between = true;
  for (Eigen::Index i = 0; i < u.u[1][0].size(); ++i) {
    const double a = std::abs(u.u[1][0](i)), b = std::abs(v.u[1][0](i));
    if (a > 1e-12) between = between && b > 0.0 && b < a;
  }
  CHECK(between);
}

TEST_CASE("contour synthesis against time stepping") {
  const auto m = model_n1();
  const RadialGrid g{-20.0, 20.0, 0.01};
  const auto V = scan::PotentialProfile::zero();
  const auto data = CauchyData::gaussian(g, {0}, 0.0, 0.5);
  EvolveOptions eo;
  eo.dt = 0.005;
  eo.record_lo = -6.0;
  eo.record_hi = 6.0;
  const auto u = evolve(m, V, data, early_times(0.005, 5.0), eo);
  const TimeCutoff chi(0.1);
  const auto v = apply_cutoff(u, chi);
  ContourOptions co;
  co.lambda_max = 40.0;
  co.lambda_step = 0.2;
  co.tail_tol = 1e-2;
  const auto c = contour_synthesis(m, V, u, chi, 5.0, -6.0, 6.0, TimeScaling::AlphaInTime, co);
  CHECK(rel_diff(v.u.back()[0], c.v[0]) < 1e-3);

  co.lambda_step = 0.1;
  const auto c2 = contour_synthesis(m, V, u, chi, 5.0, -6.0, 6.0, TimeScaling::AlphaInTime, co);
  CHECK(rel_diff(c2.v[0], c.v[0]) < 1e-4);

  // Causality: nothing before eps.
  const auto c0 = contour_synthesis(m, V, u, chi, 0.05, -6.0, 6.0, TimeScaling::AlphaInTime, co);
  CHECK(c0.v[0].cwiseAbs().maxCoeff() < 1e-3 * c.v[0].cwiseAbs().maxCoeff());

  const auto zero = CauchyData::zero(g, {0}, -1.0, 1.0);
  const auto uz = evolve(m, V, zero, early_times(0.005, 5.0), eo);
  const auto cz = contour_synthesis(m, V, uz, chi, 5.0, -6.0, 6.0, TimeScaling::AlphaInTime, co);
  CHECK(cz.v[0].cwiseAbs().maxCoeff() == 0.0);

  co.lambda_max = 5.0;
  co.tail_tol = 1e-6;
  CHECK_THROWS_AS(contour_synthesis(m, V, u, chi, 5.0, -6.0, 6.0, TimeScaling::AlphaInTime, co), ConvergenceError);
  CHECK_THROWS_AS(contour_synthesis(m, V, u, chi, 5.0, -8.0, 6.0), DomainError);
}

TEST_CASE("contour synthesis in a barrier mode with a potential") {
  auto m = model_n1();
  m.alpha0 = 1.3;
  const RadialGrid g{-20.0, 6.0, 0.01};
  const auto V = scan::PotentialProfile::gaussian(2.0, -0.5, 0.5);
  const auto data = CauchyData::gaussian(g, {1}, -1.0, 0.4);
  EvolveOptions eo;
  eo.dt = 0.005;
  eo.record_lo = -5.8;
  eo.record_hi = 2.0;
  const auto u = evolve(m, V, data, early_times(0.005, 3.0), eo);
  const TimeCutoff chi(0.1);
  const auto v = apply_cutoff(u, chi);
  ContourOptions co;
  co.lambda_max = 40.0;
  co.lambda_step = 0.2;
  co.tail_tol = 1e-2;
  const auto c = contour_synthesis(m, V, u, chi, 3.0, -3.4, 1.4, TimeScaling::AlphaInTime, co);
  cvec step(static_cast<Eigen::Index>(c.r.size()));
  for (std::size_t i = 0; i < c.r.size(); ++i)
    step(static_cast<Eigen::Index>(i)) = v.u.back()[0](static_cast<Eigen::Index>(std::lround((c.r[i] - v.r(0)) / g.h)));
  CHECK(rel_diff(step, c.v[0]) < 1e-3);
}

TEST_CASE("decay report") {
  const auto m = model_n1();
  const RadialGrid g{-20.0, 20.0, 0.02};
  DecayOptions o;
  o.t_min = 2.0;
  o.t_max = 10.0;
  const auto zero = verify_decay(m, scan::PotentialProfile::zero(), CauchyData::zero(g, {0}, -1.0, 1.0), o);
  CHECK(zero.status == "floor_saturated");
  CHECK_FALSE(zero.pass);
  CHECK(zero.windows.size() == 2);

  const auto rep = verify_decay(m, scan::PotentialProfile::zero(), CauchyData::gaussian(g, {0}, 0.0, 0.5), o);
  CHECK(rep.status == "fitted");
  CHECK(rep.window_lo == doctest::Approx(-6.0));
  CHECK(rep.window_hi == doctest::Approx(6.0));
  CHECK(rep.energy_drift < 1e-10);
  const auto t = rep.table();
  CHECK(t.rows().size() == rep.times.size());
  CHECK(t.number(0, "t") == doctest::Approx(2.0));
  for (double n : rep.norms) CHECK(n >= 0.0);
}

TEST_CASE("snapshot dump") {
  const auto m = model_n1();
  const RadialGrid g{-5.0, 5.0, 0.05};
  const auto u = evolve(m, scan::PotentialProfile::zero(), CauchyData::gaussian(g, {0, 1}, 0.0, 0.5), {0.0, 1.0});
  const std::string path = "test_wavesim_snap.bin";
  u.write_binary(path);
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  const auto size = static_cast<std::size_t>(in.tellg());
  // magic + version + 2 doubles + 4 counts + 2 modes + 2 times + samples
  CHECK(size == 8 + 4 + 16 + 32 + 16 + 16 + 2 * 2 * u.count * 16);
  std::remove(path.c_str());
}
