// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "ccres/besselz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ccres/errors.hpp"
#include "ccres/special.hpp"

namespace ccres::besselz {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;
constexpr long double kLn2 = 0.693147180559945309417232121458176568L;
constexpr long double kEps = std::numeric_limits<long double>::epsilon();
const cld kI(0.0L, 1.0L);

std::string describe(cld k, long double z) {
  std::ostringstream os;
  os.precision(10);
  os << "k = " << k.real() << (k.imag() < 0 ? " - " : " + ") << std::abs(k.imag()) << "i, z = " << z;
  return os.str();
}

void require_valid(const QuadratureSpec& quad) {
  if (!quad.valid()) throw DomainError("invalid quadrature specification");
}

void require_converged(const char* what, const QuadResult<cld2>& r, cld k, long double z) {
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + " did not converge for " + describe(k, z),
                           static_cast<double>(r.previous_estimate),
                           static_cast<double>(magnitude(r.value)));
  }
}

// ln(1/tol) plus a safety margin.
long double tail_target(const QuadratureSpec& quad) {
  return std::log(1.0L / static_cast<long double>(quad.rel_tol)) + 5.0L;
}

int panels_for_phase(long double phase) {
  const long double n = std::ceil(phase / kPi);
  return static_cast<int>(std::clamp<long double>(n, 1.0L, 4000.0L));
}

long double safe_rel(long double err, cld value) {
  const long double v = std::abs(value);
  if (v == 0.0L) return err == 0.0L ? 0.0L : std::numeric_limits<long double>::infinity();
  return err / v;
}

// If k is a negative integer, I_k = I_{-k}; return the non-negative order.
cld fold_integer_order(cld k) {
  if (k.imag() == 0.0L && k.real() < 0.0L && k.real() == std::round(k.real())) return -k;
  return k;
}

long double distance_to_integer(cld k) {
  return std::abs(k - cld(std::round(k.real()), 0.0L));
}

}  // namespace

bool ComplexOrder::finite() const { return std::isfinite(re) && std::isfinite(im); }

bool ComplexOrder::in_bound_region() const {
  return finite() && std::abs(re) <= 0.25 && std::abs(im) >= 1.0;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::SchlafliIntegral: return "schlafli_integral";
    case Method::PoissonIntegral: return "poisson_integral";
    case Method::DirectIntegral: return "direct_integral";
    case Method::RotatedContour: return "rotated_contour";
    case Method::AscendingSeries: return "ascending_series";
  }
  return "unknown";
}

ScaledBessel schlafli_I(cld k, long double z, const QuadratureSpec& quad) {
  require_valid(quad);
  if (!(z > 0.0L)) throw DomainError("schlafli_I requires z > 0: " + describe(k, z));
  const long double a = k.real(), mu = std::abs(k.imag());
  // (1/pi) int_0^pi e^{z (cos u - 1)} cos(k u) du, scaled by e^{-z}.
  auto f1 = [&](long double u) -> cld2 {
    const long double c = std::cos(u);
    const cld v = std::exp(z * (c - 1.0L)) * std::cos(k * u);
    return {v, v * c};
  };
  const int n1 = std::max(4, panels_for_phase(std::abs(k) * kPi));
  const auto r1 = integrate<cld2>(f1, 0.0L, kPi, quad, n1);
  require_converged("first I integral", r1, k, z);

  // -(sin(k pi)/pi) int_0^inf e^{-z cosh u - k u} du, scaled by e^{-z}.
  const cld s = std::sin(k * kPi) / kPi;
  cld2 second{};
  long double err2 = 0.0L, abs2 = 0.0L;
  if (s != cld(0.0L)) {
    const long double growth = std::max(0.0L, -a) + 1.0L;
    const long double target =
        tail_target(quad) + std::max(0.0L, std::log(std::abs(s))) + z;
    const long double U = cosh_truncation_point(static_cast<double>(z), static_cast<double>(growth),
                                                static_cast<double>(target));
    auto f2 = [&](long double u) -> cld2 {
      const long double ch = std::cosh(u);
      const cld v = std::exp(-z * (ch + 1.0L) - k * u);
      return {v, -v * ch};
    };
    const auto r2 = integrate<cld2>(f2, 0.0L, U, quad, panels_for_phase(mu * U) + 1);
    require_converged("second I integral", r2, k, z);
    second = r2.value;
    err2 = r2.error;
    abs2 = r2.abs_integral;
  }
  ScaledBessel out;
  out.value = r1.value[0] / kPi - s * second[0];
  out.derivative = r1.value[1] / kPi - s * second[1];
  const long double err = r1.error / kPi + std::abs(s) * err2 +
                          4.0L * kEps * (r1.abs_integral / kPi + std::abs(s) * abs2);
  out.rel_error = safe_rel(err, out.value);
  out.log_scale = z;
  out.method = Method::SchlafliIntegral;
  return out;
}

ScaledBessel poisson_I(cld k, long double z, const QuadratureSpec& quad) {
  require_valid(quad);
  if (!(z > 0.0L)) throw DomainError("poisson_I requires z > 0: " + describe(k, z));
  const long double decay = 2.0L * k.real() + 1.0L;
  if (!(decay > 0.05L)) throw DomainError("poisson_I requires Re k > -1/2: " + describe(k, z));
  const long double mu = std::abs(k.imag());
  const cld power = 2.0L * k + 1.0L;
  // sech^{2k+1}(w) e^{-z (1 + tanh w)}; the e^{-z} scaling is folded in.
  auto f = [&](long double w) -> cld2 {
    const long double aw = std::abs(w);
    const long double log_cosh = aw + std::log1p(std::exp(-2.0L * aw)) - kLn2;
    const long double th = std::tanh(w);
    const long double one_plus_tanh = 2.0L / (1.0L + std::exp(-2.0L * w));
    const cld v = std::exp(-power * log_cosh - z * one_plus_tanh);
    return {v, -v * th};
  };
  const long double W = tail_target(quad) / decay + kLn2 + 0.5L * std::log1p(z);
  const auto r = integrate<cld2>(f, -W, W, quad, panels_for_phase(4.0L * mu * W) + 4);
  require_converged("Poisson I integral", r, k, z);
  const cld pref = std::exp(k * std::log(0.5L * z) - 0.5L * std::log(kPi) - log_gamma(k + 0.5L));
  ScaledBessel out;
  out.value = pref * r.value[0];
  // I = C(z) J(z) with C ~ z^k: I' = (k/z) I + C J'.
  out.derivative = (k / z) * out.value + pref * r.value[1];
  out.rel_error = safe_rel(r.error + 4.0L * kEps * r.abs_integral, r.value[0]);
  out.log_scale = z;
  out.method = Method::PoissonIntegral;
  return out;
}

ScaledBessel direct_K(cld k, long double z, const QuadratureSpec& quad) {
  require_valid(quad);
  if (!(z > 0.0L)) throw DomainError("K_k(z) requires z > 0: " + describe(k, z));
  const long double growth = std::abs(k.real()) + std::abs(k.imag()) + 1.0L;
  const long double U = cosh_truncation_point(static_cast<double>(z), static_cast<double>(growth),
                                              static_cast<double>(tail_target(quad) + z));
  // cosh(k u) e^{-z (cosh u - 1)}, scaled by e^{z}.
  auto f = [&](long double u) -> cld2 {
    const long double ch = std::cosh(u);
    const cld v = std::cosh(k * u) * std::exp(-z * (ch - 1.0L));
    return {v, -v * ch};
  };
  const auto r = integrate<cld2>(f, 0.0L, U, quad, panels_for_phase(std::abs(k.imag()) * U) + 1);
  require_converged("direct K integral", r, k, z);
  ScaledBessel out;
  out.value = r.value[0];
  out.derivative = r.value[1];
  out.rel_error = safe_rel(r.error + 4.0L * kEps * r.abs_integral, r.value[0]);
  out.log_scale = -z;
  out.method = Method::DirectIntegral;
  return out;
}

ScaledBessel rotated_K(cld k, long double z, const QuadratureSpec& quad) {
  require_valid(quad);
  if (!(z > 0.0L)) throw DomainError("K_k(z) requires z > 0: " + describe(k, z));
  const long double mu = k.imag();
  const long double amu = std::abs(mu);
  // Shift the line of integration to pass near the saddle of
  // exp(-z cosh w - k w), where sinh w = -k/z.
  long double theta = 0.0L;
  if (amu > 0.0L) {
    const long double delta = std::min(0.5L, 2.0L / amu);
    const long double cap = kPi / 2.0L - delta;
    const long double t = amu < z ? std::asin(amu / z) : cap;
    theta = -std::copysign(std::min(t, cap), mu);
  }
  const long double c = z * std::cos(theta);
  const long double U = cosh_truncation_point(static_cast<double>(c),
                                              static_cast<double>(std::abs(k.real()) + 1.0L),
                                              static_cast<double>(tail_target(quad) + c));
  const cld shift(0.0L, theta);
  auto f = [&](long double u) -> cld2 {
    const cld w = cld(u, 0.0L) + shift;
    const cld ch = std::cosh(w);
    const cld v = 0.5L * std::exp(-z * (ch - 1.0L) - k * w);
    return {v, -v * ch};
  };
  const long double phase = amu * U + z * std::abs(std::sin(theta)) * std::sinh(U);
  const auto r = integrate<cld2>(f, -U, U, quad, panels_for_phase(2.0L * phase) + 2);
  require_converged("rotated K integral", r, k, z);
  ScaledBessel out;
  out.value = r.value[0];
  out.derivative = r.value[1];
  out.rel_error = safe_rel(r.error + 4.0L * kEps * r.abs_integral, r.value[0]);
  out.log_scale = -z;
  out.method = Method::RotatedContour;
  return out;
}

ScaledBessel series_I(cld k, long double z) {
  if (!(z > 0.0L)) throw DomainError("series_I requires z > 0: " + describe(k, z));
  k = fold_integer_order(k);
  const long double q = 0.25L * z * z;
  // Leading term (z/2)^k / Gamma(k+1), scaled by e^{-z}.
  cld t = std::exp(k * std::log(0.5L * z) - z) * reciprocal_gamma(k + 1.0L);
  cld sum{}, dsum{};
  long double abs_sum = 0.0L;
  const long double m_min = std::abs(k) + 2.0L;
  int m = 0;
  for (; m < 200000; ++m) {
    sum += t;
    dsum += t * (k + 2.0L * m) / z;
    abs_sum += std::abs(t);
    const cld ratio = q / ((m + 1.0L) * (k + (m + 1.0L)));
    const long double r = std::abs(ratio);
    t *= ratio;
    if (m >= m_min && r < 0.5L && std::abs(t) * 2.0L <= kEps * std::abs(sum)) break;
  }
  ScaledBessel out;
  out.value = sum;
  out.derivative = dsum;
  out.rel_error = kEps * (4.0L + std::sqrt(static_cast<long double>(m))) * safe_rel(abs_sum, sum);
  out.log_scale = z;
  out.method = Method::AscendingSeries;
  return out;
}

ScaledBessel series_K(cld k, long double z) {
  if (!(z > 0.0L)) throw DomainError("series_K requires z > 0: " + describe(k, z));
  ScaledBessel out;
  out.log_scale = -z;
  out.method = Method::AscendingSeries;
  if (distance_to_integer(k) < 1e-6L) {
    out.rel_error = std::numeric_limits<long double>::infinity();
    return out;
  }
  const long double q = 0.25L * z * z;
  const long double lh = std::log(0.5L * z);
  // K_k = (1/2)[Gamma(k)(z/2)^{-k} S(-k) + Gamma(-k)(z/2)^k S(k)],
  // S(nu) = sum_m (z^2/4)^m / (m! (1+nu)_m); scaled by e^{z}.
  cld a = 0.5L * std::exp(log_gamma(k) - k * lh + z);
  cld b = 0.5L * std::exp(log_gamma(-k) + k * lh + z);
  cld sum{}, dsum{};
  long double abs_sum = 0.0L;
  const long double m_min = std::abs(k) + 2.0L;
  int m = 0;
  for (; m < 200000; ++m) {
    sum += a + b;
    dsum += (a * (2.0L * m - k) + b * (2.0L * m + k)) / z;
    abs_sum += std::abs(a) + std::abs(b);
    const long double m1 = m + 1.0L;
    const cld ra = q / (m1 * (m1 - k));
    const cld rb = q / (m1 * (m1 + k));
    a *= ra;
    b *= rb;
    const long double tail = std::abs(a) + std::abs(b);
    if (m >= m_min && std::abs(ra) < 0.5L && std::abs(rb) < 0.5L && tail * 2.0L <= kEps * std::abs(sum))
      break;
  }
  out.value = sum;
  out.derivative = dsum;
  out.rel_error = kEps * (4.0L + std::sqrt(static_cast<long double>(m))) * safe_rel(abs_sum, sum);
  if (!std::isfinite(static_cast<double>(out.rel_error)))
    out.rel_error = std::numeric_limits<long double>::infinity();
  return out;
}

ScaledBessel integral_I(cld k, long double z, const QuadratureSpec& quad) {
  ScaledBessel best = schlafli_I(k, z, quad);
  if (best.rel_error > quad.rel_tol && k.real() > -0.475L) {
    ScaledBessel alt = poisson_I(k, z, quad);
    if (alt.rel_error < best.rel_error) best = alt;
  }
  return best;
}

ScaledBessel integral_K(cld k, long double z, const QuadratureSpec& quad) {
  const bool direct_first = std::abs(k.imag()) <= 4.0L;
  ScaledBessel best = direct_first ? direct_K(k, z, quad) : rotated_K(k, z, quad);
  if (best.rel_error > quad.rel_tol) {
    ScaledBessel alt = direct_first ? rotated_K(k, z, quad) : direct_K(k, z, quad);
    if (alt.rel_error < best.rel_error) best = alt;
  }
  return best;
}

ScaledBessel modified_I(cld k, long double z, const QuadratureSpec& quad) {
  if (!(z > 0.0L && z <= 2000.0L)) return integral_I(k, z, quad);
  ScaledBessel s = series_I(k, z);
  if (s.rel_error <= quad.rel_tol) return s;
  // The integral forms cancel down to roughly eps e^{pi |Im k| / 2}; when the
  // series already beats that there is nothing to gain from them.
  const long double integral_floor = kEps * std::exp(0.5L * kPi * std::abs(k.imag()));
  if (s.rel_error <= integral_floor) return s;
  ScaledBessel r = integral_I(k, z, quad);
  return r.rel_error <= s.rel_error ? r : s;
}

ScaledBessel modified_K(cld k, long double z, const QuadratureSpec& quad) {
  if (z > 0.0L && z <= std::max(8.0L, std::abs(k)) && distance_to_integer(k) > 1e-3L) {
    ScaledBessel s = series_K(k, z);
    if (s.rel_error <= quad.rel_tol) return s;
  }
  return integral_K(k, z, quad);
}

BesselEval eval_I(ComplexOrder k, double z, const QuadratureSpec& quad) {
  require_valid(quad);
  if (!k.finite() || !std::isfinite(z) || z < 0.0)
    throw DomainError("eval_I requires finite k and z >= 0: " + describe(k.wide(), z));
  const cld kk = k.wide();
  if (z == 0.0) {
    if (kk == cld(0.0L)) return {1.0, 0.0, Method::ClosedForm};
    if (k.re > 0.0) return {0.0, 0.0, Method::ClosedForm};
    throw DomainError("I_k(0) diverges for Re k <= 0, k != 0: " + describe(kk, 0.0L));
  }
  ScaledBessel r = integral_I(kk, z, quad);
  if (r.rel_error > quad.rel_tol && z <= 2000.0) {
    // Both integral forms lose accuracy to cancellation (large |Im k|).
    ScaledBessel s = series_I(kk, z);
    if (s.rel_error < r.rel_error) r = s;
  }
  const long double log_mag = std::log(std::abs(r.value)) + r.log_scale;
  if (log_mag > std::log(std::numeric_limits<double>::max()))
    throw RangeError("I_k(z) exceeds double range; use integral_I for the scaled value: " +
                     describe(kk, z));
  const cld v = r.unscaled_value();
  return {std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag())),
          static_cast<double>(r.rel_error * std::abs(v)), r.method};
}

BesselEval eval_K(ComplexOrder k, double z, const QuadratureSpec& quad) {
  require_valid(quad);
  if (!k.finite() || !std::isfinite(z))
    throw DomainError("eval_K requires finite k and z: " + describe(k.wide(), z));
  if (!(z > 0.0)) throw DomainError("eval_K requires z > 0: " + describe(k.wide(), z));
  const ScaledBessel r = integral_K(k.wide(), z, quad);
  const cld v = r.unscaled_value();
  return {std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag())),
          static_cast<double>(r.rel_error * std::abs(v)), r.method};
}

std::complex<double> series_oracle_I(ComplexOrder k, double z, int terms) {
  if (terms < 1) throw DomainError("series_oracle_I requires terms >= 1");
  if (!k.finite() || !std::isfinite(z) || z < 0.0)
    throw DomainError("series_oracle_I requires finite k and z >= 0");
  const cld kk = fold_integer_order(k.wide());
  cld t;
  if (z == 0.0) {
    if (kk == cld(0.0L)) t = 1.0L;
    else if (kk.real() > 0.0L) t = 0.0L;
    else throw DomainError("series diverges at z = 0 for Re k <= 0, k != 0");
  } else {
    t = std::exp(kk * std::log(0.5L * z)) * reciprocal_gamma(kk + 1.0L);
  }
  const long double q = 0.25L * z * z;
  cld sum{};
  for (int m = 0; m < terms; ++m) {
    sum += t;
    t *= q / ((m + 1.0L) * (kk + (m + 1.0L)));
  }
  // Remaining terms: once the term ratio r stays below 1 the tail is at
  // most |t| / (1 - r).
  const long double r = std::abs(q / ((terms + 1.0L) * (kk + (terms + 1.0L))));
  const bool monotone = terms + 1.0L > std::abs(kk);
  const long double tail = (t == cld(0.0L)) ? 0.0L
                           : (monotone && r < 1.0L) ? std::abs(t) / (1.0L - r)
                                                   : std::numeric_limits<long double>::infinity();
  if (!(tail <= 1e-15L * std::abs(sum))) {
    throw ConvergenceError("ascending series not converged after " + std::to_string(terms) + " terms",
                           static_cast<double>(std::abs(sum - t)), static_cast<double>(std::abs(sum)));
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

WronskianCheck wronskian_check(ComplexOrder k, double z, const QuadratureSpec& quad) {
  if (!(z > 0.0)) throw DomainError("wronskian_residual requires z > 0");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double h = 1e-3 * z;
  // Offsets -4h, -2h, -h, 0, h, 2h, 4h.
  constexpr int kOffsets[7] = {-4, -2, -1, 0, 1, 2, 4};
  std::complex<double> fi[7], fk[7];
  for (int j = 0; j < 7; ++j) {
    fi[j] = eval_I(k, z + kOffsets[j] * h, quad).value;
    fk[j] = eval_K(k, z + kOffsets[j] * h, quad).value;
  }
  auto d_h = [&](const std::complex<double>* f) {
    return (f[1] - 8.0 * f[2] + 8.0 * f[4] - f[5]) / (12.0 * h);
  };
  auto d_2h = [&](const std::complex<double>* f) {
    return (f[0] - 8.0 * f[1] + 8.0 * f[5] - f[6]) / (24.0 * h);
  };
  const std::complex<double> i0 = fi[3], k0 = fk[3];
  const std::complex<double> di = d_h(fi), dk = d_h(fk);
  const std::complex<double> w = i0 * dk - di * k0 + 1.0 / z;
  const std::complex<double> w_coarse = i0 * d_2h(fk) - d_2h(fi) * k0 + 1.0 / z;
  double fmax_i = 0.0, fmax_k = 0.0;
  for (int j = 1; j < 6; ++j) {
    fmax_i = std::max(fmax_i, std::abs(fi[j]));
    fmax_k = std::max(fmax_k, std::abs(fk[j]));
  }
  WronskianCheck out;
  out.residual = std::abs(w);
  out.evaluation_bound = quad.rel_tol * (std::abs(i0 * dk) + std::abs(di * k0));
  // Fourth-order truncation error at step h is (W_2h - W_h)/15.
  const double truncation = std::abs(w_coarse - w) / 15.0;
  const double rounding = 1.5 * eps * (fmax_i * std::abs(k0) + fmax_k * std::abs(i0)) / h;
  out.differencing_bound = truncation + rounding;
  return out;
}

double wronskian_residual(ComplexOrder k, double z, const QuadratureSpec& quad) {
  return wronskian_check(k, z, quad).residual;
}

}  // namespace ccres::besselz
