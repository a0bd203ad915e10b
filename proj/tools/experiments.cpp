// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>

#include <boost/algorithm/string/join.hpp>

#include "ccres/bounds.hpp"
#include "ccres/cvcheck.hpp"
#include "ccres/errors.hpp"
#include "ccres/model.hpp"
#include "ccres/scanner.hpp"
#include "ccres/wavesim.hpp"
#include "config_util.hpp"
#include "runner.hpp"

#ifndef CCRES_VERSION
#define CCRES_VERSION "unknown"
#endif

namespace ccres::runner {

namespace {

namespace fs = std::filesystem;

class Run {
 public:
  Run(const ExperimentConfig& cfg, RunManifest& m) : cfg_(cfg), m_(m), r_(cfg.tree, scratch_), dir_(cfg.output_dir()) {}

  const Reader& r() const { return r_; }

  void write(const Table& t, const std::string& suffix) {
    const std::string file = cfg_.name() + "_" + suffix + ".csv";
    t.write_csv(dir_ / file);
    m_.artifacts.push_back({file, sha256_file(dir_ / file), fs::file_size(dir_ / file)});
  }

  void check(const std::string& id, bool pass, const std::string& detail) { m_.checks.push_back({id, pass, detail}); }

  /// Runs one step; a module error fails `id` and marks the run partial.
  void step(const std::string& id, const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const Error& e) {
      check(id, false, std::string("error: ") + e.what());
      m_.partial = true;
    }
    m_.timings.emplace_back(id, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }

  QuadratureSpec quad() const {
    return {r_.number("quadrature.rel_tol"), static_cast<int>(r_.integer("quadrature.max_subdivisions", 1, 100000000)),
            0.0};
  }

 private:
  const ExperimentConfig& cfg_;
  RunManifest& m_;
  std::vector<std::string> scratch_;
  Reader r_;
  fs::path dir_;
};

std::string fmt(double v) { return format_double(v); }

std::vector<besselz::ComplexOrder> orders(const Reader& r) {
  return besselz::imaginary_order_grid(static_cast<int>(r.integer("orders.first", 1, 100000)),
                                       static_cast<int>(r.integer("orders.last", 1, 100000)));
}

std::vector<double> times(const Reader& r) {
  return besselz::uniform_grid(r.number("times.lo"), r.number("times.hi"), r.number("times.step"));
}

// Uniform double in [0, 1) from the raw engine output, so the sample does
// not depend on the standard library's distribution implementation.
double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

void bessel_bounds(Run& run, std::uint64_t seed) {
  const auto& r = run.r();
  const auto quad = run.quad();
  run.step("wronskian", [&] {
    std::mt19937_64 gen(seed);
    const long n = r.integer("wronskian.samples", 1, 100000);
    const double re_max = r.number("wronskian.re_max"), im_max = r.number("wronskian.im_max");
    const double zlo = r.number("wronskian.z_lo"), zhi = r.number("wronskian.z_hi");
    const double tol = r.number("wronskian.tolerance");
    Table t({"k_re", "k_im", "z", "residual", "evaluation_bound", "differencing_bound"});
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
      const double re = re_max * (2.0 * unit(gen) - 1.0), im = im_max * (2.0 * unit(gen) - 1.0);
      const double z = zlo * std::pow(zhi / zlo, unit(gen));
      const besselz::ComplexOrder k(re, im);
      const auto w = besselz::wronskian_check(k, z, quad);
      t.add({k.re, k.im, z, w.residual, w.evaluation_bound, w.differencing_bound});
      worst = std::max(worst, std::isfinite(w.residual) ? w.residual : INFINITY);
    }
    run.write(t, "wronskian");
    run.check("wronskian", worst < tol, "max residual " + fmt(worst) + " vs " + fmt(tol));
  });
  run.step("pointwise_bounds", [&] {
    const auto rep = besselz::check_pointwise_bounds(orders(r), times(r), quad);
    run.write(rep.rows, "bounds");
    run.write(rep.summary, "bounds_summary");
    run.check("pointwise_bounds", rep.pass, "finite and refinement-stable suprema for all four envelopes");
  });
}

void appendix(Run& run) {
  const auto& r = run.r();
  run.step("appendix", [&] {
    const auto rep = besselz::check_appendix_inequality(orders(r), times(r), run.quad());
    run.write(rep.rows, "appendix");
    run.write(rep.summary, "appendix_summary");
    std::vector<std::string> ok;
    const auto id = rep.summary.column("bound_id"), pass = rep.summary.column("pass");
    for (const auto& row : rep.summary.rows())
      if (std::get<bool>(row[pass])) ok.push_back(std::get<std::string>(row[id]));
    run.check("appendix", rep.pass, ok.empty() ? "no reading stable" : "stable readings: " + boost::join(ok, ", "));
  });
}

model::ModelManifold model_of(const Reader& r) {
  model::ModelManifold m;
  m.n = static_cast<int>(r.integer("model.n", 1, 64));
  m.alpha0 = r.number("model.alpha0");
  m.scaling = r.str("model.scaling") == "proof" ? model::ScalingMode::ProofOperator : model::ScalingMode::SpectralFamily;
  m.spectrum = model::CrossSectionSpectrum::circle(2.0 * std::numbers::pi, static_cast<int>(r.integer("model.max_mode", 0, 100000)));
  m.validate();
  return m;
}

void model_norms(Run& run) {
  const auto& r = run.r();
  const auto m = model_of(r);
  const auto grid = model::RadialGrid::composite_gauss(r.number("grid.lo"), r.number("grid.hi"),
                                                       static_cast<int>(r.integer("grid.nodes", 8, 10000000)),
                                                       static_cast<int>(r.integer("grid.order", 1, 64)));
  model::PropRegion region;
  region.re_offsets = r.list("norms.re_offsets");
  region.radii = r.list("norms.radii");
  const auto J = static_cast<std::size_t>(r.integer("norms.J", 0, 1000000));
  for (long q : r.int_list("norms.q"))
    for (long p : r.int_list("norms.p")) {
      const std::string id = "norm_law_p" + std::to_string(p) + "_q" + std::to_string(q);
      run.step(id, [&] {
        const auto rep = model::verify_prop_model(m, region, static_cast<int>(p), static_cast<int>(q), grid, run.quad(), J);
        run.write(rep.rows, "norms_p" + std::to_string(p) + "_q" + std::to_string(q));
        run.write(rep.summary, "norms_p" + std::to_string(p) + "_q" + std::to_string(q) + "_summary");
        run.check(id, rep.pass, "slope <= " + std::to_string(-2 + p) + " + 0.2 on every line");
      });
    }
}

cv::WarpedMetric metric_of(const Reader& r) {
  const auto id = r.str("metric.id");
  auto m = id == "polyhom" ? cv::WarpedMetric::polyhomogeneous(static_cast<int>(r.integer("metric.i", 1, 64)),
                                                               static_cast<int>(r.integer("metric.j", 0, 64)),
                                                               r.number("metric.amplitude"))
           : id == "cylinder" ? cv::WarpedMetric::cylinder()
                              : cv::WarpedMetric::hyperbolic();
  m.a = r.number("metric.a");
  m.r_max = r.number("metric.r_max");
  m.validate();
  return m;
}

cv::CVScanSpec spec_of(const Reader& r) {
  cv::CVScanSpec s;
  s.lambdas = r.list("cv.lambdas");
  s.s = r.number("cv.s");
  s.delta = r.number("cv.delta");
  s.delta0 = r.number("cv.delta0");
  s.lambda0 = r.number("cv.lambda0");
  s.re_offsets = r.list("cv.re_offsets");
  s.coupled_modes = static_cast<int>(r.integer("cv.coupled_modes", 1, 256));
  s.r_density = static_cast<int>(r.integer("cv.r_density", 1, 100000));
  s.validate();
  return s;
}

void cv_assumptions(Run& run) {
  const auto& r = run.r();
  run.step("assumptions", [&] {
    const auto m = metric_of(r);
    const auto spec = spec_of(r);
    const int nr = static_cast<int>(std::lround(spec.r_density * (m.r_max - m.a))) + 1;
    const auto grid = cv::CVGrid::uniform(m, nr, static_cast<int>(r.integer("cv.y_points", 1, 100000)));
    const auto rep = cv::check_assumptions(m, grid, spec);
    run.write(rep.rows, "assumptions");
    run.write(rep.summary, "assumptions_summary");
    const auto id = rep.summary.column("check_id"), pass = rep.summary.column("pass");
    for (std::size_t i = 0; i < rep.summary.size(); ++i)
      run.check(std::get<std::string>(rep.summary.rows()[i][id]), std::get<bool>(rep.summary.rows()[i][pass]),
                "constant " + fmt(rep.summary.number(i, "constant")));
  });
}

void cv_energy(Run& run) {
  const auto& r = run.r();
  run.step("energy", [&] {
    cv::TestFunction u;
    u.center = r.number("test_function.center");
    u.width = r.number("test_function.width");
    u.amplitude = r.number("test_function.amplitude");
    u.modulated = r.boolean("test_function.modulated");
    const auto rep = cv::energy_estimate_check(metric_of(r), u, spec_of(r));
    run.write(rep.rows, "energy");
    run.write(rep.summary, "energy_summary");
    run.check("energy", rep.pass, "C1 stable within 2x per decade of lambda");
  });
}

void cv_highenergy(Run& run) {
  const auto& r = run.r();
  const double tol = r.number("highenergy.exponent_tolerance");
  for (long p : r.int_list("highenergy.p")) {
    const std::string id = "highenergy_p" + std::to_string(p);
    run.step(id, [&] {
      const auto rep = cv::high_energy_resolvent_check(metric_of(r), spec_of(r), static_cast<int>(p));
      run.write(rep.rows, "highenergy_p" + std::to_string(p));
      run.write(rep.summary, "highenergy_p" + std::to_string(p) + "_summary");
      const double target = -1.0 + static_cast<double>(p);
      bool pass = !rep.summary.empty();
      std::vector<std::string> ex;
      for (std::size_t i = 0; i < rep.summary.size(); ++i) {
        const double e = rep.summary.number(i, "exponent");
        pass = pass && std::isfinite(e) && std::abs(e - target) <= tol;
        ex.push_back(fmt(e));
      }
      run.check(id, pass, "exponents " + boost::join(ex, ", ") + " vs " + fmt(target) + " +- " + fmt(tol));
    });
  }
}

scan::PotentialProfile potential_of(const Reader& r) {
  const auto k = r.str("potential.kind");
  if (k == "square_well") return scan::PotentialProfile::square_well(r.number("potential.depth"), r.number("potential.lo"), r.number("potential.hi"));
  if (k == "gaussian")
    return scan::PotentialProfile::gaussian(r.number("potential.amplitude"), r.number("potential.center"), r.number("potential.width"));
  if (k == "double_bump")
    return scan::PotentialProfile::double_bump(r.number("potential.amplitude"), r.number("potential.center"),
                                               r.number("potential.separation"), r.number("potential.width"));
  return scan::PotentialProfile::zero();
}

void scan_experiment(Run& run) {
  const auto& r = run.r();
  const auto m = model_of(r);
  const auto V = potential_of(r);
  const scan::Rect rect{r.number("scan.re_lo"), r.number("scan.re_hi"), r.number("scan.im_lo"), r.number("scan.im_hi")};
  scan::ScanOptions so;
  so.re_points = static_cast<int>(r.integer("scan.re_points", 2, 100000));
  so.im_points = static_cast<int>(r.integer("scan.im_points", 2, 100000));
  so.modes.clear();
  for (long j : r.int_list("scan.modes")) so.modes.push_back(static_cast<std::size_t>(j));
  so.dip_factor = r.number("scan.dip_factor");
  so.cell_winding = r.boolean("scan.cell_winding");

  scan::ResonanceMap map;
  std::vector<scan::Resonance> zeros;
  bool scanned = false;
  run.step("scan", [&] {
    map = scan::scan_region(m, V, rect, so);
    run.write(map.region_table(), "region_map");
    zeros = scan::find_resonances(m, V, map);
    run.write(scan::zeros_table(zeros), "zeros");
    scanned = true;
  });
  if (!scanned) return;

  if (r.str("scan.expect") == "none") {
    run.check("no_resonances", zeros.empty(),
              std::to_string(zeros.size()) + " zeros, " + std::to_string(map.candidates.size()) + " candidates");
  } else {
    bool resolved = !zeros.empty();
    for (const auto& z : zeros) resolved = resolved && z.resolved && z.multiplicity >= 1;
    run.check("winding", resolved,
              std::to_string(zeros.size()) + " zeros, phase step q95 " + fmt(map.phase_step_q95));
    run.step("region_fit", [&] {
      const auto fit = scan::fit_region_boundary(zeros, m.n);
      Table t({"C1", "C2", "residual", "C1_lsq", "used"});
      t.add({fit.C1, fit.C2, fit.residual, fit.C1_lsq, static_cast<std::int64_t>(fit.used)});
      run.write(t, "fit_summary");
      const double lim = r.number("scan.fit_residual");
      run.check("region_fit", fit.C1 > 0.0 && fit.residual < lim,
                "C1 " + fmt(fit.C1) + ", C2 " + fmt(fit.C2) + ", residual " + fmt(fit.residual));
    });
  }

  if (r.boolean("scan.cross_check") && !zeros.empty()) {
    run.step("complex_scaling", [&] {
      scan::ComplexScalingOptions co;
      co.nodes_per_element = static_cast<int>(r.integer("scan.cs_nodes", 4, 256));
      co.tail = r.number("scan.cs_tail");
      Table t({"mode_j", "re_xi", "im_xi", "cs_re_xi", "cs_im_xi", "distance"});
      double worst = 0.0;
      for (std::size_t j : so.modes) {
        const auto cs = scan::complex_scaled_resonances(m, j, V, co);
        for (const auto& z : zeros) {
          if (z.mode != j) continue;
          std::complex<double> best(NAN, NAN);
          double d = INFINITY;
          for (auto x : cs)
            if (std::abs(x - z.xi) < d) d = std::abs(x - z.xi), best = x;
          t.add({static_cast<std::int64_t>(j), z.xi.real(), z.xi.imag(), best.real(), best.imag(), d});
          worst = std::max(worst, d);
        }
      }
      run.write(t, "cross_check");
      const double tol = r.number("scan.cross_check_tolerance");
      run.check("complex_scaling", worst < tol, "max distance " + fmt(worst) + " vs " + fmt(tol));
    });
  }
}

void wave_decay(Run& run) {
  const auto& r = run.r();
  run.step("decay", [&] {
    const auto m = model_of(r);
    const wave::RadialGrid g{r.number("wave.r_min"), r.number("wave.r_max"), r.number("wave.h")};
    std::vector<std::size_t> modes;
    for (long j : r.int_list("data.modes")) modes.push_back(static_cast<std::size_t>(j));
    const auto data = wave::CauchyData::gaussian(g, modes, r.number("data.center"), r.number("data.width"),
                                                 r.number("data.amplitude"), r.number("data.wavenumber"));
    wave::DecayOptions o;
    o.t_min = r.number("wave.t_min");
    o.t_max = r.number("wave.t_max");
    o.sample_step = r.number("wave.sample_step");
    o.floor = r.number("wave.floor");
    o.exponent_limit = r.number("wave.exponent_limit");
    o.evolve.dt = r.number("wave.dt");
    o.evolve.cfl = r.number("wave.cfl");
    o.evolve.scaling = r.str("wave.time_scaling") == "unscaled" ? wave::TimeScaling::Unscaled : wave::TimeScaling::AlphaInTime;
    const auto rep = wave::verify_decay(m, potential_of(r), data, o);
    run.write(rep.table(), "decay");
    Table w({"window_id", "t_lo", "t_hi", "fitted_exponent", "saturated"});
    std::vector<std::string> ex;
    for (std::size_t i = 0; i < rep.windows.size(); ++i) {
      const auto& win = rep.windows[i];
      w.add({static_cast<std::int64_t>(i), win.t_lo, win.t_hi, win.exponent, win.saturated});
      ex.push_back(fmt(win.exponent));
    }
    run.write(w, "windows");
    const std::string detail = rep.status + "; exponents " + boost::join(ex, ", ") + "; energy drift " + fmt(rep.energy_drift);
    if (r.str("wave.expect") == "violation")
      run.check("decay_violated", rep.status == "fitted" && !rep.pass, detail);
    else
      run.check("decay", rep.pass, detail);
  });
}

}  // namespace

bool RunManifest::all_pass() const {
  if (partial || checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

RunManifest run_experiment(const ExperimentConfig& config) {
  const auto diags = validate_config(config);
  if (!diags.empty()) throw UsageError("invalid config: " + boost::join(diags, "; "));

  RunManifest m;
  m.config = config.resolved();
  m.tool_version = CCRES_VERSION;
  const auto dir = m.config.output_dir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory " + dir.string());

  const auto t0 = std::chrono::steady_clock::now();
  Run run(m.config, m);
  const auto kind = m.config.kind();
  try {
    if (kind == "bessel-bounds") bessel_bounds(run, m.config.seed());
    else if (kind == "appendix") appendix(run);
    else if (kind == "model-norms") model_norms(run);
    else if (kind == "cv-assumptions") cv_assumptions(run);
    else if (kind == "cv-energy") cv_energy(run);
    else if (kind == "cv-highenergy") cv_highenergy(run);
    else if (kind == "scan") scan_experiment(run);
    else if (kind == "wave-decay") wave_decay(run);
  } catch (const Error& e) {
    m.checks.push_back({"setup", false, std::string("error: ") + e.what()});
    m.partial = true;
  }

  Table summary({"check_id", "pass", "detail"});
  for (const auto& c : m.checks) summary.add({c.id, c.pass, c.detail});
  run.write(summary, "summary");
  m.timings.emplace_back("total", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

  const auto path = dir / (m.config.name() + "_manifest.json");
  std::ofstream out(path, std::ios::binary);
  out << m.json();
  if (!out) throw UsageError("cannot write manifest " + path.string());
  return m;
}

}  // namespace ccres::runner
