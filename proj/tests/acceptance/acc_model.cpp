// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cmath>
#include <complex>

#include "acceptance.hpp"
#include "ccres/cvcheck.hpp"
#include "ccres/model.hpp"

namespace ccres::acceptance {

namespace {

using cd = std::complex<double>;

const QuadratureSpec kQuad{1e-12, 20000, 0.0};

constexpr double kSlopeTol = 0.2;
constexpr double kCauchyGap = 0.10;
constexpr double kKernelResidual = 1e-6;
constexpr double kExponentTol = 0.2;
constexpr double kRmaxDrift = 0.1;
constexpr double kAssumptionC = 2.0, kAssumptionCTol = 1e-6;

Outcome norm_law() {
  const model::ModelManifold m;
  const auto grid = model::RadialGrid::standard();
  const model::PropRegion region;
  bool pass = true;
  std::string detail;
  for (int p = 0; p <= 2; ++p) {
    const auto rep = model::verify_prop_model(m, region, p, 0, grid, kQuad);
    for (std::size_t i = 0; i < rep.summary.size(); ++i) {
      const double slope = rep.summary.number(i, "slope"), delta = rep.summary.number(i, "refinement_delta");
      pass = pass && std::abs(slope - (-2.0 + p)) <= kSlopeTol && delta < 0.05;
      detail += "p" + std::to_string(p) + " " + std::get<std::string>(rep.summary.cell(i, "line_id")) + " slope " +
                num(slope) + "; ";
    }
  }
  // Cauchy versus centered derivative on the lower radii; each Cauchy point
  // assembles 16 resolvents.
  model::PropRegion low = region;
  low.radii = {2, 4, 8, 16};
  const auto q1 = model::verify_prop_model(m, low, 0, 1, grid, kQuad);
  for (std::size_t i = 0; i < q1.summary.size(); ++i) {
    const double gap = q1.summary.number(i, "cauchy_centered_gap");
    pass = pass && gap <= kCauchyGap;
    detail += "q1 " + std::get<std::string>(q1.summary.cell(i, "line_id")) + " gap " + num(gap) + "; ";
  }
  return {pass, detail + "targets -2, -1, 0 +- " + num(kSlopeTol)};
}

// (-d_r^2 + e^{2r} + k^2) G(., t) = 0 off the diagonal; sixth-order second
// difference with step min(0.01, 0.1/|k|).
Outcome kernel_residual() {
  const auto grid = model::RadialGrid::standard();
  std::vector<cd> ks{{0, 1}, {0, 4}, {0, 16}, {0, 64}, {0.25, 3}, {-0.2, 10}, {0.1, 6}};
  double worst = 0.0;
  int n = 0;
  for (cd k : ks) {
    const auto sp = model::SpectralPoint::from_k(k, 1);
    const double h = std::min(0.01, 0.1 / std::abs(k));
    for (std::size_t it = 0; it < grid.size(); it += 150)
      for (std::size_t ir = 0; ir < grid.size(); ir += 37) {
        const double r = grid.nodes[ir], t = grid.nodes[it];
        if (std::abs(r - t) < 4 * h) continue;
        const double c[] = {2, -27, 270, -490, 270, -27, 2};
        cd d2 = 0.0;
        for (int j = -3; j <= 3; ++j) d2 += c[j + 3] * model::green_kernel_Q(sp, r + j * h, t, kQuad);
        d2 /= 180.0 * h * h;
        const cd pot = (std::exp(2 * r) + k * k) * model::green_kernel_Q(sp, r, t, kQuad);
        const double scale = std::max(std::abs(d2), std::abs(pot));
        worst = std::max(worst, std::abs(pot - d2) / scale);
        ++n;
      }
  }
  return {worst < kKernelResidual, std::to_string(n) + " off-diagonal points, max relative residual " + num(worst) +
                                       " (tol " + num(kKernelResidual) + ")"};
}

std::vector<double> exponents(const cv::WarpedMetric& metric, int p) {
  const auto rep = cv::high_energy_resolvent_check(metric, cv::CVScanSpec(), p);
  std::vector<double> out;
  for (std::size_t i = 0; i < rep.summary.size(); ++i) out.push_back(rep.summary.number(i, "exponent"));
  return out;
}

Outcome nontrapping_law() {
  bool pass = true;
  std::string detail;
  for (auto metric : {cv::WarpedMetric::hyperbolic(), cv::WarpedMetric::polyhomogeneous(1, 1, 0.05)}) {
    auto doubled = metric;
    doubled.r_max = 2.0 * metric.r_max;
    for (int p = 0; p <= 1; ++p) {
      const auto e = exponents(metric, p), e2 = exponents(doubled, p);
      pass = pass && !e.empty() && e.size() == e2.size();
      for (std::size_t i = 0; i < e.size() && i < e2.size(); ++i) {
        pass = pass && std::abs(e[i] - (-1.0 + p)) <= kExponentTol && std::abs(e[i] - e2[i]) < kRmaxDrift;
        detail += metric.id + " p" + std::to_string(p) + " " + num(e[i]) + " (2R " + num(e2[i]) + "); ";
      }
    }
  }
  return {pass, detail + "targets -1, 0 +- " + num(kExponentTol)};
}

double assumption_constant(const cv::WarpedMetric& m, bool& pass) {
  const cv::CVScanSpec spec;
  const auto grid = cv::CVGrid::uniform(m, static_cast<int>(spec.r_density * (m.r_max - m.a)) + 1, 1);
  const auto rep = cv::check_assumptions(m, grid, spec);
  for (std::size_t i = 0; i < rep.summary.size(); ++i)
    if (std::get<std::string>(rep.summary.cell(i, "check_id")) == "assump2_C_over_r") {
      pass = std::get<bool>(rep.summary.cell(i, "pass"));
      return rep.summary.number(i, "constant");
    }
  pass = false;
  return NAN;
}

Outcome assumptions() {
  bool hyp_pass = false, cyl_pass = true;
  const double c_hyp = assumption_constant(cv::WarpedMetric::hyperbolic(), hyp_pass);
  const double c_cyl = assumption_constant(cv::WarpedMetric::cylinder(), cyl_pass);
  const bool ok = hyp_pass && std::abs(c_hyp - kAssumptionC) <= kAssumptionCTol && !cyl_pass && c_cyl == 0.0;
  return {ok, "hyperbolic C " + std::to_string(c_hyp) + (hyp_pass ? " pass" : " fail") + "; cylinder C " +
                  std::to_string(c_cyl) + (cyl_pass ? " pass" : " fail")};
}

}  // namespace

std::vector<Criterion> model_criteria() {
  return {{"norm_law", 600.0, norm_law},
          {"green_kernel_residual", 0.0, kernel_residual},
          {"nontrapping_law", 0.0, nontrapping_law},
          {"assumption_checks", 0.0, assumptions}};
}

}  // namespace ccres::acceptance
