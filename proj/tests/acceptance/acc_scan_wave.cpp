// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "acceptance.hpp"
#include "ccres/scanner.hpp"
#include "ccres/wavesim.hpp"
#include "runner.hpp"

namespace ccres::acceptance {

namespace {

using cd = std::complex<double>;
namespace fs = std::filesystem;

constexpr double kFitResidual = 0.2;
constexpr double kCrossCheck = 1e-4;
constexpr double kDecayExponent = -3.0;
constexpr double kContourAgreement = 1e-3;

model::ModelManifold model_n1() {
  model::ModelManifold m;
  m.n = 1;
  return m;
}

struct Well {
  double depth, length;
};

Outcome region_shape() {
  const auto m = model_n1();
  bool pass = true;
  std::string detail;

  scan::ScanOptions free_opt;
  free_opt.re_points = 40;
  free_opt.im_points = 400;
  free_opt.modes = {0, 1, 2};
  const auto V0 = scan::PotentialProfile::zero();
  const auto free_map = scan::scan_region(m, V0, scan::Rect{0.26, 1.5, 1.0, 30.0}, free_opt);
  const auto free_zeros = scan::find_resonances(m, V0, free_map);
  pass = free_zeros.empty() && free_map.candidates.empty();
  detail += "free: " + std::to_string(free_zeros.size()) + " zeros; ";

  scan::ScanOptions opt;
  opt.re_points = 60;
  opt.im_points = 1600;
  scan::ComplexScalingOptions cs_opt;
  cs_opt.nodes_per_element = 32;
  for (const Well w : {Well{50, 10}, Well{50, 20}, Well{20, 10}}) {
    const auto V = scan::PotentialProfile::square_well(w.depth, 0.0, w.length);
    const auto map = scan::scan_region(m, V, scan::Rect{0.26, 0.5, 1.0, 30.0}, opt);
    const auto zeros = scan::find_resonances(m, V, map);
    bool winding = !zeros.empty();
    for (const auto& z : zeros) winding = winding && z.resolved && z.multiplicity >= 1;

    const auto cs = scan::complex_scaled_resonances(m, 0, V, cs_opt);
    double worst = 0.0;
    for (const auto& z : zeros) {
      double d = INFINITY;
      for (cd x : cs) d = std::min(d, std::abs(x - z.xi));
      worst = std::max(worst, d);
    }

    bool fit_ok = false, inside = true;
    std::string fit_text = "fit: too few zeros";
    if (zeros.size() >= 3) {
      const auto fit = scan::fit_region_boundary(zeros, m.n);
      for (const auto& z : zeros)
        if (z.xi.imag() >= fit.C2) inside = inside && (0.5 - z.xi.real()) * z.xi.imag() >= fit.C1;
      fit_ok = fit.C1 > 0.0 && fit.residual < kFitResidual;
      fit_text = "C1 " + num(fit.C1) + " C2 " + num(fit.C2) + " residual " + num(fit.residual);
    }
    pass = pass && winding && worst < kCrossCheck && fit_ok && inside;
    detail += "V0 " + num(w.depth) + " L " + num(w.length) + ": " + std::to_string(zeros.size()) + " zeros" +
              (winding ? "" : " (winding failed)") + ", complex scaling " + num(worst) + ", " + fit_text +
              (inside ? "" : " (zero right of curve)") + "; ";
  }
  return {pass, detail};
}

double rel_diff(const wave::Snapshots& v, const wave::ContourResult& c) {
  double num2 = 0.0, den2 = 0.0;
  for (std::size_t i = 0; i < c.r.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(std::lround((c.r[i] - v.r(0)) / v.grid.h));
    const cd a = v.u.back()[0](idx), b = c.v[0](static_cast<Eigen::Index>(i));
    num2 += std::norm(a - b);
    den2 += std::norm(a);
  }
  return std::sqrt(num2 / den2);
}

double contour_agreement(double alpha0, std::size_t mode, const scan::PotentialProfile& V, double t_end) {
  auto m = model_n1();
  m.alpha0 = alpha0;
  const wave::RadialGrid g{-20.0, mode == 0 ? 20.0 : 6.0, 0.005};
  const auto data = wave::CauchyData::gaussian(g, {mode}, mode == 0 ? 0.0 : -1.0, mode == 0 ? 0.5 : 0.4);
  wave::EvolveOptions eo;
  eo.dt = 0.0025;
  eo.record_lo = -6.0;
  eo.record_hi = 2.0;
  std::vector<double> times;
  for (int i = 0; i <= 400; ++i) times.push_back(i * 0.0025);
  times.push_back(t_end);
  const auto u = wave::evolve(m, V, data, times, eo);
  const wave::TimeCutoff chi(0.1);
  const auto v = wave::apply_cutoff(u, chi);
  wave::ContourOptions co;
  const auto c = wave::contour_synthesis(m, V, u, chi, t_end, -3.4, 1.4, wave::TimeScaling::AlphaInTime, co);
  return rel_diff(v, c);
}

Outcome wave_decay() {
  const auto m = model_n1();
  const wave::RadialGrid g{-70.0, 70.0, 0.01};
  const auto data = wave::CauchyData::gaussian(g, {0}, 0.0, 0.5);
  wave::DecayOptions o;
  o.exponent_limit = kDecayExponent;
  const auto free = wave::verify_decay(m, scan::PotentialProfile::zero(), data, o);
  const auto trap = wave::verify_decay(m, scan::PotentialProfile::double_bump(300.0, 0.0, 3.0, 0.3), data, o);

  const auto list = [](const wave::DecayReport& r) {
    std::string s;
    for (const auto& w : r.windows) s += (s.empty() ? "" : ", ") + num(w.exponent);
    return s;
  };
  const bool contrast = trap.status == "fitted" && !trap.pass;
  const double d0 = contour_agreement(1.0, 0, scan::PotentialProfile::zero(), 5.0);
  const double d1 = contour_agreement(1.3, 1, scan::PotentialProfile::gaussian(2.0, -0.5, 0.5), 3.0);
  const bool pass = free.pass && contrast && d0 < kContourAgreement && d1 < kContourAgreement;
  return {pass, "non-trapping exponents [" + list(free) + "] need last <= " + num(kDecayExponent) +
                    " and non-increasing: " + (free.pass ? "yes" : "no") + "; trapping [" + list(trap) +
                    "] violates: " + (contrast ? "yes" : "no") + "; stepping vs contour " + num(d0) + " (free mode 0), " +
                    num(d1) + " (mode 1, bump, alpha0 1.3), tol " + num(kContourAgreement)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto root = fs::temp_directory_path() / "ccres_acceptance_determinism";
  fs::remove_all(root);
  bool pass = true;
  int files = 0;
  for (const std::string kind : {"bessel-bounds", "cv-assumptions"}) {
    std::vector<runner::RunManifest> runs;
    for (const char* tag : {"a", "b"}) {
      auto cfg = runner::ExperimentConfig::parse("[experiment]\nkind = " + kind + "\nseed = 7\n");
      cfg.tree.put("experiment.output_dir", (root / tag / kind).string());
      runs.push_back(runner::run_experiment(cfg));
    }
    pass = pass && runs[0].artifacts.size() == runs[1].artifacts.size() && !runs[0].artifacts.empty();
    for (std::size_t i = 0; i < runs[0].artifacts.size() && i < runs[1].artifacts.size(); ++i) {
      const auto& f = runs[0].artifacts[i].file;
      pass = pass && f == runs[1].artifacts[i].file &&
             slurp(root / "a" / kind / f) == slurp(root / "b" / kind / f) &&
             runs[0].artifacts[i].sha256 == runs[1].artifacts[i].sha256;
      ++files;
    }
  }
  fs::remove_all(root);
  return {pass, std::to_string(files) + " CSVs compared byte for byte across two runs"};
}

}  // namespace

std::vector<Criterion> scan_wave_criteria() {
  return {{"region_shape", 1800.0, region_shape}, {"wave_decay", 0.0, wave_decay}, {"determinism", 0.0, determinism}};
}

}  // namespace ccres::acceptance
