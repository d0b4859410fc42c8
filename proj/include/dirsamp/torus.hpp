#pragma once
// Curved-torus geometry and product densities on its surface.

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "circular.hpp"
#include "envelope.hpp"

namespace dirsamp {

class TorusGeometry {
 public:
  TorusGeometry(double R, double r) : R_(R), r_(r) {
    if (!(R > 0.0) || !(r > 0.0)) throw std::invalid_argument("TorusGeometry: radii must be positive");
    if (r > R) throw std::invalid_argument("TorusGeometry: r must not exceed R");
  }
  static TorusGeometry from_ratio(double R, double nu) {
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("TorusGeometry: nu must lie in (0, 1]");
    return TorusGeometry(R, nu * R);
  }
  double R() const { return R_; }
  double r() const { return r_; }
  double nu() const { return r_ / R_; }
  double area() const { return 4.0 * kPi * kPi * r_ * R_; }

 private:
  double R_, r_;
};

// r (R + r cos theta); independent of phi
inline double area_element(const TorusGeometry& g, double theta) {
  return g.r() * (g.R() + g.r() * std::cos(theta));
}

inline std::array<double, 3> embed(const TorusGeometry& g, double phi, double theta) {
  const double w = g.R() + g.r() * std::cos(theta);
  return {w * std::cos(phi), w * std::sin(phi), g.r() * std::sin(theta)};
}

// (sqrt(x^2 + y^2) - R)^2 + z^2 - r^2
inline double implicit_residual(const TorusGeometry& g, const std::array<double, 3>& p) {
  const double d = std::hypot(p[0], p[1]) - g.R();
  return d * d + p[2] * p[2] - g.r() * g.r();
}

struct VonCosParams {
  double mu, kappa, nu;

  VonCosParams(double mu_, double kappa_, double nu_) : mu(mu_), kappa(kappa_), nu(nu_) {
    if (!std::isfinite(mu)) throw std::invalid_argument("VonCosParams: mu must be finite");
    if (!(kappa > 0.0 && kappa <= kMaxKappa)) throw std::invalid_argument("VonCosParams: kappa must lie in (0, 700]");
    if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("VonCosParams: nu must lie in (0, 1)");
  }
  CircularDensity density() const { return make_voncos(mu, kappa, nu); }
};

// 2 pi (I0 + nu cos mu I1)
inline double voncos_norm_const(const VonCosParams& p) {
  return kTwoPi * (bessel_i(0, p.kappa) + p.nu * std::cos(p.mu) * bessel_i(1, p.kappa));
}

inline double log_voncos_norm_const(const VonCosParams& p) {
  return std::log(kTwoPi) + log_bessel_i0(p.kappa) + std::log1p(p.nu * std::cos(p.mu) * ratio_a(p.kappa));
}

inline double voncos_density(const VonCosParams& p, double theta) {
  return std::exp(p.kappa * std::cos(theta - p.mu) - log_voncos_norm_const(p)) * (1.0 + p.nu * std::cos(theta));
}

// h*(phi, theta) = h1(phi) base(theta) (1 + nu cos theta) / C
class ToroidalDensity {
 public:
  ToroidalDensity(CircularDensity horizontal, BaseDensity vertical_base, double nu)
      : horizontal_(std::move(horizontal)), vertical_(AreaWeighted(std::move(vertical_base), nu)) {}
  const CircularDensity& horizontal() const { return horizontal_; }
  const CircularDensity& vertical() const { return vertical_; }
  const BaseDensity& vertical_base() const { return std::get<AreaWeighted>(vertical_).base(); }
  double nu() const { return std::get<AreaWeighted>(vertical_).nu(); }
  double norm_const() const { return std::get<AreaWeighted>(vertical_).norm_const(); }
  double operator()(double phi, double theta) const { return density(horizontal_, phi) * density(vertical_, theta); }

 private:
  CircularDensity horizontal_;
  CircularDensity vertical_;
};

struct TorusPoint {
  double phi, theta, x, y, z;
};

struct TorusSample {
  std::vector<TorusPoint> points;
  SampleStats phi_stats, theta_stats;
};

// phi from stream 0, theta from stream 1 of the same seed.
inline TorusSample sample_torus(const ToroidalDensity& t, const TorusGeometry& g, std::size_t n, std::uint64_t seed,
                                std::size_t k = 250) {
  if (std::abs(t.nu() - g.nu()) > 1e-12)
    throw std::invalid_argument("sample_torus: density nu and geometry r/R disagree");
  TorusSample out;
  if (n == 0) return out;
  RngStream rphi(seed, 0), rtheta(seed, 1);
  const auto ephi = build_envelope_for(t.horizontal(), k);
  const auto etheta = build_envelope_for(t.vertical(), k);
  auto phi = sample_density(ephi, t.horizontal(), n, rphi);
  auto theta = sample_density(etheta, t.vertical(), n, rtheta);
  out.phi_stats = phi.stats;
  out.theta_stats = theta.stats;
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = embed(g, phi.samples[i], theta.samples[i]);
    out.points.push_back({phi.samples[i], theta.samples[i], p[0], p[1], p[2]});
  }
  return out;
}

inline void write_torus_csv(std::ostream& os, const std::vector<TorusPoint>& pts) {
  os << "phi,theta,x,y,z\n";
  char buf[160];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.phi, p.theta, p.x, p.y, p.z);
    os << buf;
  }
}

inline nlohmann::ordered_json torus_json(const std::vector<TorusPoint>& pts) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : pts)
    arr.push_back({{"phi", p.phi}, {"theta", p.theta}, {"x", p.x}, {"y", p.y}, {"z", p.z}});
  return arr;
}

}  // namespace dirsamp
