// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/model.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <map>
#include <mutex>
#include <tuple>
#include <sstream>

#include "ccres/besselz.hpp"
#include "ccres/errors.hpp"
#include "model_detail.hpp"

namespace ccres::model {

using cd = std::complex<double>;

CrossSectionSpectrum::CrossSectionSpectrum(std::vector<SpectrumEntry> e, std::string source,
                                           std::optional<int> dim)
    : entries_(std::move(e)), source_(std::move(source)), dimension_(dim) {
  if (entries_.empty()) throw DomainError("cross-section spectrum is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& en = entries_[i];
    if (!(en.mu >= 0.0) || !std::isfinite(en.mu)) throw DomainError("spectrum entries must be finite and >= 0");
    if (en.multiplicity < 1) throw DomainError("spectrum multiplicities must be >= 1");
    if (i > 0 && !(en.mu > entries_[i - 1].mu)) throw DomainError("spectrum must be strictly ascending");
  }
}

CrossSectionSpectrum CrossSectionSpectrum::circle(double length, int max_mode) {
  if (!(length > 0.0) || max_mode < 0) throw DomainError("circle spectrum needs length > 0, max_mode >= 0");
  std::vector<SpectrumEntry> e{{0.0, 1}};
  for (int m = 1; m <= max_mode; ++m) e.push_back({2.0 * M_PI * m / length, 2});
  std::ostringstream os;
  os << "circle(L=" << length << ",modes=" << max_mode << ")";
  return CrossSectionSpectrum(std::move(e), os.str(), 1);
}

CrossSectionSpectrum CrossSectionSpectrum::flat_torus(int dim, double length, double mu_max) {
  if (dim < 1 || !(length > 0.0) || !(mu_max >= 0.0)) throw DomainError("invalid flat torus descriptor");
  const double unit = 2.0 * M_PI / length;
  const long m_max = static_cast<long>(std::floor(mu_max / unit));
  std::map<long, int> counts;  // |m|^2 -> multiplicity
  std::vector<long> m(dim, -m_max);
  while (true) {
    long norm2 = 0;
    for (long c : m) norm2 += c * c;
    if (unit * std::sqrt(static_cast<double>(norm2)) <= mu_max * (1.0 + 1e-12)) ++counts[norm2];
    int d = 0;
    while (d < dim && m[d] == m_max) m[d++] = -m_max;
    if (d == dim) break;
    ++m[d];
  }
  std::vector<SpectrumEntry> e;
  for (auto [n2, mult] : counts) e.push_back({unit * std::sqrt(static_cast<double>(n2)), mult});
  std::ostringstream os;
  os << "flat_torus(dim=" << dim << ",L=" << length << ",mu_max=" << mu_max << ")";
  return CrossSectionSpectrum(std::move(e), os.str(), dim);
}

CrossSectionSpectrum CrossSectionSpectrum::round_sphere(int dim, int max_degree) {
  if (dim < 1 || max_degree < 0) throw DomainError("invalid sphere descriptor");
  auto binom = [](long a, long b) -> long {
    if (b < 0 || a < b) return 0;
    long r = 1;
    for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::vector<SpectrumEntry> e;
  for (int l = 0; l <= max_degree; ++l) {
    const long mult = binom(l + dim, dim) - binom(l + dim - 2, dim);
    e.push_back({std::sqrt(static_cast<double>(l) * (l + dim - 1)), static_cast<int>(mult)});
  }
  std::ostringstream os;
  os << "round_sphere(dim=" << dim << ",l_max=" << max_degree << ")";
  return CrossSectionSpectrum(std::move(e), os.str(), dim);
}

CrossSectionSpectrum CrossSectionSpectrum::from_list(std::vector<SpectrumEntry> entries) {
  return CrossSectionSpectrum(std::move(entries), "explicit", std::nullopt);
}

void ModelManifold::validate() const {
  if (n < 1) throw DomainError("boundary dimension n must be >= 1");
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) throw DomainError("alpha0 must be positive");
  if (spectrum.dimension() && *spectrum.dimension() != n)
    throw DomainError("cross-section dimension does not match n");
}

SpectralPoint::SpectralPoint(cd xi, int n) : xi_(xi), k_(xi - 0.5 * n), Xi_(xi * (static_cast<double>(n) - xi)), n_(n) {
  if (n < 1) throw DomainError("boundary dimension n must be >= 1");
  if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag())) throw DomainError("xi must be finite");
}

SpectralPoint SpectralPoint::from_xi(cd xi, int n) { return SpectralPoint(xi, n); }
SpectralPoint SpectralPoint::from_k(cd k, int n) { return SpectralPoint(k + 0.5 * n, n); }

cd mode_order(const ModelManifold& model, const SpectralPoint& sp) {
  if (model.scaling == ScalingMode::ProofOperator || model.alpha0 == 1.0) return sp.k();
  const double a = model.alpha0;
  const double n = model.n;
  const cd k = sp.k();
  if (k == cd(0.0)) return std::sqrt(cd(n * n / 4.0 * (1.0 - a * a)));
  // kappa^2 = n^2/4 - a^2 Xi = a^2 k^2 + (1 - a^2) n^2 / 4.
  return a * k * std::sqrt(1.0 + (1.0 - a * a) * n * n / (4.0 * a * a * k * k));
}

RadialGrid RadialGrid::composite_gauss(double lo, double hi, int nodes, int order) {
  if (!(hi > lo) || nodes < 1 || order < 1) throw DomainError("invalid radial grid request");
  const int panels = (nodes + order - 1) / order;
  const auto [x, w] = gauss_legendre(order);
  RadialGrid g;
  g.lower = lo;
  g.upper = hi;
  g.order = order;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    for (int i = 0; i < order; ++i) {
      g.nodes.push_back(a + 0.5 * h * (x[i] + 1.0));
      g.weights.push_back(0.5 * h * w[i]);
    }
  }
  return g;
}

RadialGrid RadialGrid::standard() { return composite_gauss(-14.0, 2.0, 1200, 8); }

RadialGrid RadialGrid::refined() const {
  if (order < 1) throw DomainError("only composite grids can be refined");
  return composite_gauss(lower, upper, 2 * static_cast<int>(nodes.size()), order);
}

void RadialGrid::validate() const {
  if (nodes.empty() || nodes.size() != weights.size()) throw DomainError("radial grid nodes/weights mismatch");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(weights[i] > 0.0)) throw DomainError("radial grid weights must be positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw DomainError("radial grid nodes must increase strictly");
  }
}

void RadialGrid::validate_for_weight() const {
  validate();
  if (lo() > -10.0 || hi() < 1.0)
    throw DomainError("radial grid must cover [-10, 1], the support of the weight");
}

CutoffWeight::CutoffWeight(int degree) : degree_(degree) {
  if (degree != 3 && degree != 5 && degree != 7) throw DomainError("cutoff degree must be 3, 5 or 7");
}

double CutoffWeight::chi(double r, int derivative) const {
  if (r <= -1.0) return derivative == 0 ? 1.0 : 0.0;
  if (r >= 1.0) return 0.0;
  const double s = 0.5 * (r + 1.0);
  // Smoothstep S(s) and its s-derivatives; chi = 1 - S, d/dr = (1/2) d/ds.
  double S[3];
  switch (degree_) {
    case 3:
      S[0] = s * s * (3.0 - 2.0 * s);
      S[1] = 6.0 * s * (1.0 - s);
      S[2] = 6.0 - 12.0 * s;
      break;
    case 5:
      S[0] = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
      S[1] = 30.0 * s * s * (1.0 - s) * (1.0 - s);
      S[2] = 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
      break;
    default:
      S[0] = s * s * s * s * (35.0 - 84.0 * s + 70.0 * s * s - 20.0 * s * s * s);
      S[1] = 140.0 * s * s * s * std::pow(1.0 - s, 3);
      S[2] = 420.0 * s * s * (1.0 - s) * (1.0 - s) * (1.0 - 2.0 * s);
      break;
  }
  switch (derivative) {
    case 0: return 1.0 - S[0];
    case 1: return -0.5 * S[1];
    case 2: return -0.25 * S[2];
    default: throw DomainError("chi derivatives above 2 are not provided");
  }
}

double CutoffWeight::rho(double r, int derivative) const {
  const double e = std::exp(0.5 * r);
  switch (derivative) {
    case 0: return e * chi(r);
    case 1: return e * (0.5 * chi(r) + chi(r, 1));
    case 2: return e * (0.25 * chi(r) + chi(r, 1) + chi(r, 2));
    default: throw DomainError("rho derivatives above 2 are not provided");
  }
}

double CutoffWeight::envelope_constant(int derivative) const {
  double best = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double r = -1.0 + 2.0 * i / 4000.0;
    best = std::max(best, std::abs(rho(r, derivative)) * std::exp(-0.5 * r));
  }
  return std::max(best, derivative == 0 ? 1.0 : (derivative == 1 ? 0.5 : 0.25));
}

Reduction reduce_to_Q(const ModelManifold& model, std::size_t j) {
  if (j >= model.spectrum.size())
    throw IndexError("mode index " + std::to_string(j) + " outside spectrum of size " +
                     std::to_string(model.spectrum.size()));
  const double mu = model.spectrum.entries()[j].mu;
  if (mu == 0.0) return {0.0, true};
  return {std::log(mu), false};
}

namespace detail {

void require_continuation_region(cd kappa) {
  if (!(kappa.real() > -0.25))
    throw DomainError("kernel requires Re k > -1/4 (got Re k = " + std::to_string(kappa.real()) + ")");
}

ModeSamples sample_mode(double mu, cd kappa, const std::vector<double>& r, const QuadratureSpec& quad) {
  require_continuation_region(kappa);
  const std::size_t n = r.size();
  ModeSamples m;
  m.u.resize(n);
  m.du.resize(n);
  m.v.resize(n);
  m.dv.resize(n);
  m.s.assign(n, 0.0);
  m.potential.assign(n, 0.0);
  if (mu == 0.0) {
    if (kappa == cd(0.0)) throw PoleError("zero mode has a pole at k = 0");
    for (std::size_t i = 0; i < n; ++i) {
      m.u[i] = std::exp(kappa * r[i]);
      m.du[i] = kappa * m.u[i];
      m.v[i] = std::exp(-kappa * r[i]) / (2.0 * kappa);
      m.dv[i] = -kappa * m.v[i];
    }
    return m;
  }
  const cld k(kappa.real(), kappa.imag());
  for (std::size_t i = 0; i < n; ++i) {
    const long double z = mu * std::exp(static_cast<long double>(r[i]));
    const auto bi = besselz::modified_I(k, z, quad);
    const auto bk = besselz::modified_K(k, z, quad);
    // Both carry e^{+-z}; d/dr = z d/dz.
    m.u[i] = cd(double(bi.value.real()), double(bi.value.imag()));
    m.du[i] = cd(double((z * bi.derivative).real()), double((z * bi.derivative).imag()));
    m.v[i] = cd(double(bk.value.real()), double(bk.value.imag()));
    m.dv[i] = cd(double((z * bk.derivative).real()), double((z * bk.derivative).imag()));
    m.s[i] = static_cast<double>(z);
    m.potential[i] = static_cast<double>(z * z);
  }
  return m;
}

namespace {

struct SampleKey {
  double mu, kre, kim, lower, upper, tol, abs_tol;
  std::size_t size;
  int order, subdivisions;
  auto tie() const { return std::tie(mu, kre, kim, lower, upper, tol, abs_tol, size, order, subdivisions); }
  bool operator<(const SampleKey& o) const { return tie() < o.tie(); }
};

class SampleCache {
 public:
  std::shared_ptr<const ModeSamples> get(const SampleKey& key, const std::function<ModeSamples()>& make) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) {
        order_.splice(order_.begin(), order_, it->second.second);
        return it->second.first;
      }
    }
    auto value = std::make_shared<const ModeSamples>(make());
    std::lock_guard lock(mutex_);
    if (map_.count(key)) return map_[key].first;
    order_.push_front(key);
    map_.emplace(key, std::make_pair(value, order_.begin()));
    bytes_ += footprint(*value);
    while (bytes_ > kBudget && order_.size() > 1) {
      const auto victim = map_.find(order_.back());
      bytes_ -= footprint(*victim->second.first);
      map_.erase(victim);
      order_.pop_back();
    }
    return value;
  }

 private:
  static constexpr std::size_t kBudget = std::size_t{256} << 20;
  static std::size_t footprint(const ModeSamples& m) { return m.s.size() * (4 * sizeof(cd) + 2 * sizeof(double)); }
  std::mutex mutex_;
  std::list<SampleKey> order_;
  std::map<SampleKey, std::pair<std::shared_ptr<const ModeSamples>, std::list<SampleKey>::iterator>> map_;
  std::size_t bytes_ = 0;
};

}  // namespace

std::shared_ptr<const ModeSamples> cached_samples(double mu, cd kappa, const RadialGrid& grid,
                                                  const QuadratureSpec& quad) {
  auto make = [&] { return sample_mode(mu, kappa, grid.nodes, quad); };
  if (grid.order < 1) return std::make_shared<const ModeSamples>(make());
  static SampleCache cache;
  const SampleKey key{mu,         kappa.real(), kappa.imag(), grid.lower,      grid.upper, quad.rel_tol,
                      quad.abs_tol, grid.size(), grid.order,   quad.max_subdivisions};
  return cache.get(key, make);
}

}  // namespace detail

cd green_kernel_Q(const SpectralPoint& sp, double r, double t, const QuadratureSpec& quad) {
  const cd kappa = sp.k();
  detail::require_continuation_region(kappa);
  const cld k(kappa.real(), kappa.imag());
  const long double zmin = std::exp(static_cast<long double>(std::min(r, t)));
  const long double zmax = std::exp(static_cast<long double>(std::max(r, t)));
  const auto bi = besselz::modified_I(k, zmin, quad);
  const auto bk = besselz::modified_K(k, zmax, quad);
  const cld g = bi.value * bk.value * std::exp(zmin - zmax);
  return {static_cast<double>(g.real()), static_cast<double>(g.imag())};
}

KernelMatrix mode_kernel(const ModelManifold& model, std::size_t j, const SpectralPoint& sp,
                         const RadialGrid& grid, const QuadratureSpec& quad) {
  model.validate();
  grid.validate();
  reduce_to_Q(model, j);
  const double mu = model.spectrum.entries()[j].mu;
  const auto m = detail::sample_mode(mu, mode_order(model, sp), grid.nodes, quad);
  const CutoffWeight weight;
  const std::size_t n = grid.size();
  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = weight.rho(grid.nodes[i]);
  KernelMatrix km{grid, cmat(n, n), true};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t a = std::min(i, c), b = std::max(i, c);
      km.values(i, c) = rho[i] * rho[c] * m.u[a] * m.v[b] * std::exp(m.s[a] - m.s[b]);
    }
  return km;
}

OperatorNorm operator_norm(const KernelMatrix& kernel) {
  const auto n = static_cast<Eigen::Index>(kernel.grid.size());
  if (kernel.values.rows() != n || kernel.values.cols() != n)
    throw DataError("kernel matrix does not match its grid");
  if (!kernel.values.allFinite()) throw DataError("kernel matrix has non-finite entries");
  Eigen::VectorXd sw(n);
  for (Eigen::Index i = 0; i < n; ++i) sw[i] = std::sqrt(kernel.grid.weights[i]);
  cmat a = sw.asDiagonal() * kernel.values * sw.asDiagonal();
  OperatorNorm out;
  out.hilbert_schmidt = a.norm();
  if (out.hilbert_schmidt == 0.0) return out;
  const auto est = largest_singular_value(as_action(std::move(a)), 1e-12);
  out.norm = est.value;
  out.converged = est.converged;
  return out;
}

namespace detail {

SemiSeparable assemble(const ModeSamples& m, const std::vector<double>& weights, const RowOperator& row) {
  const auto n = static_cast<Eigen::Index>(weights.size());
  SemiSeparable op;
  op.lower_left.resize(n);
  op.lower_right.resize(n);
  op.upper_left.resize(n);
  op.upper_right.resize(n);
  op.diag.resize(n);
  op.scale.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sw = std::sqrt(weights[i]);
    const cd a = row.a[i];
    const double b = row.b[i];
    op.lower_left[i] = sw * (a * m.v[i] + b * m.dv[i]);
    op.lower_right[i] = m.u[i] * row.column[i] * sw;
    op.upper_left[i] = sw * (a * m.u[i] + b * m.du[i]);
    op.upper_right[i] = m.v[i] * row.column[i] * sw;
    // The r-derivative jumps across the diagonal; use the mean.
    op.diag[i] = weights[i] * row.column[i] *
                     (a * m.u[i] * m.v[i] + b * 0.5 * (m.du[i] * m.v[i] + m.u[i] * m.dv[i])) +
                 row.diag_extra[i];
    op.scale[i] = m.s[i];
  }
  return op;
}

RowOperator weighted_row(const ModeSamples& m, const std::vector<double>& r, cd kappa, int p,
                         const std::function<double(double, int)>& w) {
  if (p < 0 || p > 2) throw DomainError("derivative order p must be 0, 1 or 2");
  const std::size_t n = r.size();
  RowOperator row;
  row.a.resize(n);
  row.b.assign(n, 0.0);
  row.column.resize(n);
  row.diag_extra.assign(n, 0.0);
  const cd k2 = kappa * kappa;
  for (std::size_t i = 0; i < n; ++i) {
    const double w0 = w(r[i], 0);
    row.column[i] = w0;
    // d^p/dr^p (w G); for p = 2, G_rr = (V + kappa^2) G - delta.
    switch (p) {
      case 0:
        row.a[i] = w0;
        break;
      case 1:
        row.a[i] = w(r[i], 1);
        row.b[i] = w0;
        break;
      default:
        row.a[i] = w(r[i], 2) + w0 * (m.potential[i] + k2);
        row.b[i] = 2.0 * w(r[i], 1);
        row.diag_extra[i] = -w0 * w0;
        break;
    }
  }
  return row;
}

}  // namespace detail

SemiSeparable mode_operator(const ModelManifold& model, std::size_t j, cd kappa, const RadialGrid& grid,
                            const QuadratureSpec& quad, int p, const CutoffWeight& weight) {
  if (p < 0 || p > 2) throw DomainError("derivative order p must be 0, 1 or 2");
  reduce_to_Q(model, j);
  const double mu = model.spectrum.entries()[j].mu;
  const auto sampled = detail::cached_samples(mu, kappa, grid, quad);
  const auto& m = *sampled;
  const auto row = detail::weighted_row(m, grid.nodes, kappa, p,
                                        [&](double r, int d) { return weight.rho(r, d); });
  return detail::assemble(m, grid.weights, row);
}

}  // namespace ccres::model
