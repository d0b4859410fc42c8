#pragma once
// Moments, modality and divergences of the area-weighted von Mises family.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "circular.hpp"
#include "polynomial.hpp"
#include "quadrature.hpp"
#include "special_fn.hpp"
#include "torus.hpp"

namespace dirsamp {

// E[e^{i p theta}] in closed form, |p| <= 50.
inline std::complex<double> trig_moment(int p, const VonCosParams& v) {
  if (std::abs(p) > 50) throw std::invalid_argument("trig_moment: |p| must not exceed 50");
  if (p == 0) return {1.0, 0.0};
  const auto s = bessel_i_scaled_sequence(std::abs(p) + 1, v.kappa);
  auto r = [&](int k) { return s[std::abs(k)] / s[0]; };
  auto e = [&](int k) { return std::polar(1.0, k * v.mu); };
  const std::complex<double> num = v.nu * r(p - 1) * e(p - 1) + 2.0 * r(p) * e(p) + v.nu * r(p + 1) * e(p + 1);
  return num / (2.0 * (1.0 + v.nu * std::cos(v.mu) * r(1)));
}

struct CircularSummary {
  double rho1, mu1, variance;
};

namespace detail {
inline void require_symmetric(const VonCosParams& v, const char* who) {
  if (v.mu != 0.0) throw std::invalid_argument(std::string(who) + ": needs mu = 0");
}
}  // namespace detail

inline CircularSummary circular_summary(const VonCosParams& v) {
  detail::require_symmetric(v, "circular_summary");
  const auto s = bessel_i_scaled_sequence(2, v.kappa);
  const double rho = (v.nu * s[0] + 2 * s[1] + v.nu * s[2]) / (2 * (s[0] + v.nu * s[1]));
  return {rho, 0.0, 1.0 - rho};
}

struct ModeAntimode {
  double mode_height, antimode_height;
};

inline ModeAntimode mode_antimode_values(const VonCosParams& v) {
  detail::require_symmetric(v, "mode_antimode_values");
  const double lc = log_voncos_norm_const(v);
  return {std::exp(v.kappa - lc) * (1 + v.nu), std::exp(-v.kappa - lc) * (1 - v.nu)};
}

enum class Modality { Unimodal, Bimodal };
enum class CriticalKind { Mode, Antimode };

struct CriticalPoint {
  double angle;
  CriticalKind kind;
};

struct ModalityReport {
  Modality classification;
  double discriminant;
  bool degenerate;
  std::vector<CriticalPoint> critical_points;

  std::size_t count(CriticalKind k) const {
    return static_cast<std::size_t>(std::count_if(critical_points.begin(), critical_points.end(),
                                                  [k](const CriticalPoint& c) { return c.kind == k; }));
  }
};

// Sign-carrying part of the voncos density derivative.
inline double voncos_slope_sign(const VonCosParams& v, double t) {
  return -v.kappa * std::sin(t - v.mu) * (1 + v.nu * std::cos(t)) - v.nu * std::sin(t);
}

inline double voncos_derivative(const VonCosParams& v, double t) {
  return std::exp(v.kappa * std::cos(t - v.mu) - log_voncos_norm_const(v)) * voncos_slope_sign(v, t);
}

inline ModalityReport modality(const VonCosParams& v) {
  ModalityReport rep;
  const QuarticCoeffs c = voncos_quartic(v.mu, v.kappa, v.nu);
  rep.discriminant = discriminant(c);
  rep.degenerate = std::abs(rep.discriminant) < 1e-10;
  rep.classification = (!rep.degenerate && rep.discriminant > 0) ? Modality::Bimodal : Modality::Unimodal;

  auto cand = detail::voncos_stationary(v.mu, v.kappa, v.nu);
  for (double& t : cand) t = wrap_angle(t);
  std::sort(cand.begin(), cand.end());
  std::vector<double> uniq;
  for (double t : cand)
    if (uniq.empty() || t - uniq.back() > 1e-7) uniq.push_back(t);
  if (uniq.size() > 1 && uniq.front() + kTwoPi - uniq.back() < 1e-7) uniq.pop_back();

  const double eps = 1e-6;
  for (double t : uniq) {
    const double lo = voncos_slope_sign(v, t - eps), hi = voncos_slope_sign(v, t + eps);
    if (lo > 0 && hi < 0) rep.critical_points.push_back({t, CriticalKind::Mode});
    else if (lo < 0 && hi > 0) rep.critical_points.push_back({t, CriticalKind::Antimode});
  }
  return rep;
}

// KL(cardioid || voncos) = log(I0 + nu cos mu I1) - nu kappa cos mu / 2
inline double kl_from_cardioid(const VonCosParams& v) {
  const double cm = std::cos(v.mu);
  return log_bessel_i0(v.kappa) + std::log1p(v.nu * cm * ratio_a(v.kappa)) - v.nu * v.kappa * cm / 2.0;
}

// d/dkappa of the symmetric divergence in the large-kappa limit
inline double kl_kappa_slope_symmetric(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("kl_kappa_slope_symmetric: nu must lie in (0, 1)");
  return (2 + 3 * nu - nu * nu) / (1 + nu);
}

inline double entropy_quadrature(const CircularDensity& q, const QuadratureSpec& spec = {}) {
  return integrate(
      [&](double t) {
        const double f = density(q, t);
        return f < 1e-300 ? 0.0 : -f * log_density(q, t);
      },
      0.0, kTwoPi, spec);
}

// -E_q[log target]
inline double cross_entropy_quadrature(const CircularDensity& q, const CircularDensity& target,
                                       const QuadratureSpec& spec = {}) {
  return integrate(
      [&](double t) {
        const double f = density(q, t);
        return f < 1e-300 ? 0.0 : -f * log_density(target, t);
      },
      0.0, kTwoPi, spec);
}

inline double kl_quadrature(const CircularDensity& q, const CircularDensity& target, const QuadratureSpec& spec = {}) {
  bool undefined = false;
  const double v = integrate(
      [&](double t) {
        const double f = density(q, t);
        if (f < 1e-300) return 0.0;
        const double lt = log_density(target, t);
        if (!std::isfinite(lt)) { undefined = true; return 0.0; }
        return f * (log_density(q, t) - lt);
      },
      0.0, kTwoPi, spec);
  return undefined ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace dirsamp
