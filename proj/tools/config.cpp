// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include "ccres/errors.hpp"
#include "config_util.hpp"
#include "runner.hpp"

namespace ccres::runner {

namespace pt = boost::property_tree;

namespace {

const char* kCommon = R"(
[experiment]
kind =
name =
seed = 1
output_dir =
)";

const char* kQuad = R"(
[quadrature]
rel_tol = 1e-12
max_subdivisions = 20000
)";

const char* kModel = R"(
[model]
n = 1
alpha0 = 1
scaling = spectral
max_mode = 128
)";

const char* kMetric = R"(
[metric]
id = hyperbolic
i = 1
j = 1
amplitude = 0.05
a = 1
r_max = 40
)";

const char* kCv = R"(
[cv]
lambdas = 4, 8, 16, 32
s = 0.625
delta = 0.5
delta0 = 0.25
lambda0 = 1
re_offsets = 0, 1
coupled_modes = 4
r_density = 40
y_points = 16
)";

const char* kPotential = R"(
[potential]
kind = square_well
depth = 50
lo = 0
hi = 10
amplitude = 0
center = 0
width = 1
separation = 0
)";

// Defaults per kind; together with kCommon they are also the schema
// (keys absent here are rejected).
const std::map<std::string, std::pair<std::string, std::string>>& kind_table() {
  static const std::map<std::string, std::pair<std::string, std::string>> t = {
      {"bessel-bounds",
       {"Bessel fidelity sample and pointwise envelope suprema",
        std::string(kQuad) + R"(
[orders]
first = 1
last = 64
[times]
lo = -10
hi = 3
step = 0.05
[wronskian]
samples = 50
re_max = 0.25
im_max = 10
z_lo = 1e-3
z_hi = 10
tolerance = 1e-5
)"}},
      {"appendix",
       {"appendix inequality under both exponent readings",
        std::string(kQuad) + R"(
[orders]
first = 1
last = 64
[times]
lo = -5
hi = 2
step = 0.25
)"}},
      {"model-norms",
       {"weighted resolvent norm law on the model",
        std::string(kQuad) + kModel + R"(
[grid]
lo = -14
hi = 2
nodes = 1200
order = 8
[norms]
p = 0, 1, 2
q = 0
re_offsets = 1e-6, -0.2
radii = 2, 4, 8, 16, 32, 64
J = 0
)"}},
      {"cv-assumptions", {"metric assumption checks (monotonicity constant, potential bounds)", std::string(kMetric) + kCv}},
      {"cv-energy",
       {"weighted energy inequality on a modulated bump", std::string(kMetric) + kCv + R"(
[test_function]
center = 6
width = 3
amplitude = 1
modulated = true
)"}},
      {"cv-highenergy",
       {"high-energy weighted resolvent exponents", std::string(kMetric) + kCv + R"(
[highenergy]
p = 0, 1
exponent_tolerance = 0.2
)"}},
      {"scan",
       {"resonance scan, zero search, region fit and complex-scaling cross-check",
        std::string(kModel) + kPotential + R"(
[scan]
re_lo = 0.26
re_hi = 0.5
im_lo = 1
im_hi = 30
re_points = 60
im_points = 1600
modes = 0
dip_factor = 1e4
cell_winding = true
expect = region
fit_residual = 0.2
cross_check = true
cross_check_tolerance = 1e-4
cs_nodes = 32
cs_tail = 12
)"}},
      {"wave-decay",
       {"local energy decay of the wave equation with window exponent fits",
        std::string(kModel) + R"(
[potential]
kind = zero
depth = 0
lo = 0
hi = 0
amplitude = 0
center = 0
width = 1
separation = 0
[wave]
r_min = -70
r_max = 70
h = 0.01
time_scaling = alpha
dt = 0
cfl = 0.9
t_min = 5
t_max = 100
sample_step = 0.25
floor = 1e-14
exponent_limit = -3
expect = decay
[data]
modes = 0
center = 0
width = 0.5
amplitude = 1
wavenumber = 0
)"}},
  };
  return t;
}

pt::ptree parse_ini(const std::string& text) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError("config: " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (auto& [section, keys] : tree)
    for (auto& [key, value] : keys) value.put_value(boost::trim_copy(value.get_value<std::string>()));
  return tree;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {"bessel-bounds", "appendix",      "model-norms", "cv-assumptions",
                                                 "cv-energy",     "cv-highenergy", "scan",        "wave-decay"};
  return kinds;
}

std::string describe_kind(const std::string& kind) {
  const auto it = kind_table().find(kind);
  return it == kind_table().end() ? std::string() : it->second.first;
}

std::string ExperimentConfig::kind() const { return tree.get<std::string>("experiment.kind", ""); }

std::string ExperimentConfig::name() const {
  const auto n = tree.get<std::string>("experiment.name", "");
  if (!n.empty()) return n;
  return boost::replace_all_copy(kind(), "-", "_");
}

std::uint64_t ExperimentConfig::seed() const { return tree.get<std::uint64_t>("experiment.seed", 1); }

std::filesystem::path ExperimentConfig::output_dir() const {
  std::filesystem::path dir = tree.get<std::string>("experiment.output_dir", "");
  if (dir.empty()) dir = std::filesystem::path("runs") / name();
  if (dir.is_absolute()) return dir;
  const char* root = std::getenv("CCRES_OUTPUT_ROOT");
  return (root && *root ? std::filesystem::path(root) : std::filesystem::current_path()) / dir;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) { return {parse_ini(text)}; }

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

ExperimentConfig ExperimentConfig::defaults(const std::string& kind) {
  const auto it = kind_table().find(kind);
  if (it == kind_table().end()) throw UsageError("unknown experiment kind '" + kind + "'");
  auto cfg = parse(std::string(kCommon) + it->second.second);
  cfg.tree.put("experiment.kind", kind);
  return cfg;
}

ExperimentConfig ExperimentConfig::resolved() const {
  auto out = defaults(kind());
  for (const auto& [section, keys] : tree)
    for (const auto& [key, value] : keys) out.tree.put(section + "." + key, value.data());
  out.tree.put("experiment.name", name());
  return out;
}

std::vector<std::string> validate_config(const ExperimentConfig& config) {
  std::vector<std::string> diags;
  const auto kind = config.kind();
  if (kind.empty()) return {"experiment.kind: required"};
  if (!kind_table().count(kind)) return {"experiment.kind: unknown kind '" + kind + "' (see list-experiments)"};

  const auto schema = ExperimentConfig::defaults(kind).tree;
  for (const auto& [section, keys] : config.tree) {
    const auto s = schema.get_child_optional(section);
    if (!s) {
      diags.push_back(section + ": unknown section for kind " + kind);
      continue;
    }
    for (const auto& [key, value] : keys)
      if (!s->get_child_optional(pt::ptree::path_type(key, '.'))) diags.push_back(section + "." + key + ": unknown key");
  }
  if (!diags.empty()) return diags;

  const auto full = config.resolved();
  const Reader r(full.tree, diags);
  const auto name = r.str("experiment.name");
  if (name.empty() || name.find_first_of("/\\ ") != std::string::npos)
    diags.push_back("experiment.name: must be non-empty without spaces or slashes");
  r.integer("experiment.seed", 0, INT64_MAX);

  const auto sections = ExperimentConfig::defaults(kind).tree;
  if (sections.get_child_optional("quadrature")) {
    r.positive("quadrature.rel_tol");
    r.integer("quadrature.max_subdivisions", 1, 100000000);
  }
  if (sections.get_child_optional("orders")) {
    const auto first = r.integer("orders.first", 1, 100000), last = r.integer("orders.last", 1, 100000);
    if (last < first) diags.push_back("orders.last: must be >= orders.first");
  }
  if (sections.get_child_optional("times")) {
    r.positive("times.step");
    if (r.number("times.hi") < r.number("times.lo")) diags.push_back("times.hi: must be >= times.lo");
  }
  if (sections.get_child_optional("wronskian")) {
    r.integer("wronskian.samples", 1, 100000);
    r.number("wronskian.re_max");
    r.positive("wronskian.im_max");
    r.positive("wronskian.tolerance");
    const double lo = r.positive("wronskian.z_lo"), hi = r.positive("wronskian.z_hi");
    if (hi < lo) diags.push_back("wronskian.z_hi: must be >= wronskian.z_lo");
  }
  if (sections.get_child_optional("model")) {
    r.integer("model.n", 1, 64);
    r.positive("model.alpha0");
    r.integer("model.max_mode", 0, 100000);
    r.choice("model.scaling", {"spectral", "proof"});
  }
  if (sections.get_child_optional("grid")) {
    if (r.number("grid.hi") <= r.number("grid.lo")) diags.push_back("grid.hi: must exceed grid.lo");
    r.integer("grid.nodes", 8, 10000000);
    r.integer("grid.order", 1, 64);
  }
  if (sections.get_child_optional("norms")) {
    for (long p : r.int_list("norms.p"))
      if (p < 0 || p > 2) diags.push_back("norms.p: entries must be 0, 1 or 2");
    for (long q : r.int_list("norms.q"))
      if (q < 0 || q > 1) diags.push_back("norms.q: entries must be 0 or 1");
    for (double x : r.list("norms.radii"))
      if (!(x >= 1.0)) diags.push_back("norms.radii: |xi - n/2| must be >= 1");
    for (double x : r.list("norms.re_offsets"))
      if (!(x > -0.25)) diags.push_back("norms.re_offsets: must exceed -1/4");
    r.integer("norms.J", 0, 1000000);
  }
  if (sections.get_child_optional("metric")) {
    r.choice("metric.id", {"hyperbolic", "polyhom", "cylinder"});
    if (r.number("metric.a") < 1.0) diags.push_back("metric.a: the end starts at a >= 1");
    if (r.number("metric.r_max") <= r.number("metric.a")) diags.push_back("metric.r_max: must exceed metric.a");
    r.integer("metric.i", 1, 64);
    r.integer("metric.j", 0, 64);
    r.number("metric.amplitude");
  }
  if (sections.get_child_optional("cv")) {
    const double s = r.number("cv.s"), d0 = r.number("cv.delta0");
    if (!(s > 0.5 && s <= 0.5 + d0)) diags.push_back("cv.s: must lie in (1/2, 1/2 + delta0] (CVScanSpec)");
    const double l0 = r.number("cv.lambda0");
    if (l0 < 1.0) diags.push_back("cv.lambda0: must be >= 1 (CVScanSpec)");
    for (double x : r.list("cv.lambdas"))
      if (!(x >= l0)) diags.push_back("cv.lambdas: every lambda must be >= lambda0 (CVScanSpec)");
    r.positive("cv.delta");
    r.list("cv.re_offsets");
    r.integer("cv.coupled_modes", 1, 256);
    r.integer("cv.r_density", 1, 100000);
    r.integer("cv.y_points", 1, 100000);
  }
  if (sections.get_child_optional("test_function")) {
    r.positive("test_function.width");
    r.number("test_function.center");
    r.number("test_function.amplitude");
    r.boolean("test_function.modulated");
  }
  if (sections.get_child_optional("highenergy")) {
    for (long p : r.int_list("highenergy.p"))
      if (p < 0 || p > 1) diags.push_back("highenergy.p: entries must be 0 or 1");
    r.positive("highenergy.exponent_tolerance");
  }
  if (sections.get_child_optional("potential")) {
    const auto k = r.choice("potential.kind", {"zero", "square_well", "gaussian", "double_bump"});
    if (k == "square_well" && !(r.number("potential.hi") > r.number("potential.lo")))
      diags.push_back("potential.hi: must exceed potential.lo");
    if ((k == "gaussian" || k == "double_bump")) r.positive("potential.width");
    for (const char* key : {"potential.depth", "potential.amplitude", "potential.center", "potential.separation"})
      r.number(key);
  }
  if (sections.get_child_optional("scan")) {
    const double n = static_cast<double>(r.integer("model.n", 1, 64));
    const double re_lo = r.number("scan.re_lo"), re_hi = r.number("scan.re_hi");
    const double im_lo = r.number("scan.im_lo"), im_hi = r.number("scan.im_hi");
    if (!(re_lo > n / 2 - 0.25)) diags.push_back("scan.re_lo: must exceed n/2 - 1/4");
    if (!(re_hi > re_lo)) diags.push_back("scan.re_hi: must exceed scan.re_lo");
    if (!(im_lo >= 1.0)) diags.push_back("scan.im_lo: must be >= 1");
    if (!(im_hi > im_lo)) diags.push_back("scan.im_hi: must exceed scan.im_lo");
    r.integer("scan.re_points", 2, 100000);
    r.integer("scan.im_points", 2, 100000);
    for (long m : r.int_list("scan.modes"))
      if (m < 0) diags.push_back("scan.modes: entries must be >= 0");
    r.positive("scan.dip_factor");
    r.boolean("scan.cell_winding");
    r.choice("scan.expect", {"region", "none"});
    r.positive("scan.fit_residual");
    r.boolean("scan.cross_check");
    r.positive("scan.cross_check_tolerance");
    r.integer("scan.cs_nodes", 4, 256);
    r.positive("scan.cs_tail");
  }
  if (sections.get_child_optional("wave")) {
    const double lo = r.number("wave.r_min"), hi = r.number("wave.r_max");
    if (!(hi > lo)) diags.push_back("wave.r_max: must exceed wave.r_min");
    r.positive("wave.h");
    r.choice("wave.time_scaling", {"alpha", "unscaled"});
    if (r.number("wave.dt") < 0) diags.push_back("wave.dt: must be >= 0 (0 = automatic)");
    r.positive("wave.cfl");
    const double t0 = r.positive("wave.t_min"), t1 = r.positive("wave.t_max");
    if (!(t1 > t0)) diags.push_back("wave.t_max: must exceed wave.t_min");
    r.positive("wave.sample_step");
    r.positive("wave.floor");
    r.number("wave.exponent_limit");
    r.choice("wave.expect", {"decay", "violation"});
    for (long m : r.int_list("data.modes"))
      if (m < 0) diags.push_back("data.modes: entries must be >= 0");
    const double c = r.number("data.center"), w = r.positive("data.width");
    if (std::isfinite(c) && std::isfinite(w) && (c - 6 * w <= lo || c + 6 * w >= hi))
      diags.push_back("data.width: support center -/+ 6 width must lie inside (wave.r_min, wave.r_max)");
    r.number("data.amplitude");
    r.number("data.wavenumber");
  }
  return diags;
}

}  // namespace ccres::runner
