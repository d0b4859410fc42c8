#pragma once
// Real roots of polynomials up to degree four.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace dirsamp {

// d4 x^4 + d3 x^3 + d2 x^2 + d1 x + d0
struct QuarticCoeffs {
  double d4 = 0, d3 = 0, d2 = 0, d1 = 0, d0 = 0;

  double operator()(double x) const { return (((d4 * x + d3) * x + d2) * x + d1) * x + d0; }
  double derivative(double x) const { return ((4.0 * d4 * x + 3.0 * d3) * x + 2.0 * d2) * x + d1; }
  double norm() const {
    return std::sqrt(d4 * d4 + d3 * d3 + d2 * d2 + d1 * d1 + d0 * d0);
  }
};

inline double discriminant(const QuarticCoeffs& c) {
  const double a = c.d4, b = c.d3, cc = c.d2, d = c.d1, e = c.d0;
  const double e2 = e * e;
  return e2 * (-27 * b * b * b * b + 144 * a * b * b * cc - 128 * a * a * cc * cc - 192 * a * a * b * d) +
         e * (-4 * b * b * cc * cc * cc + 18 * b * b * b * cc * d + 16 * a * cc * cc * cc * cc -
              80 * a * b * cc * cc * d - 6 * a * b * b * d * d + 144 * a * a * cc * d * d) +
         b * b * cc * cc * d * d - 4 * b * b * b * d * d * d - 4 * a * cc * cc * cc * d * d +
         18 * a * b * cc * d * d * d - 27 * a * a * d * d * d * d + 256 * a * a * a * e2 * e;
}

namespace detail {

inline void push_quadratic(double a, double b, double c, std::vector<double>& out) {
  if (a == 0.0) {
    if (b != 0.0) out.push_back(-c / b);
    return;
  }
  double disc = b * b - 4 * a * c;
  const double scale = std::max({b * b, std::abs(4 * a * c), 1e-300});
  if (disc < 0.0) {
    if (disc > -1e-12 * scale) disc = 0.0; else return;
  }
  const double s = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(s, b));
  if (q == 0.0) { out.push_back(0.0); out.push_back(0.0); return; }
  out.push_back(q / a);
  out.push_back(c / q);
}

// real roots of x^3 + a x^2 + b x + c
inline std::vector<double> monic_cubic(double a, double b, double c) {
  const double q = (a * a - 3 * b) / 9.0;
  const double r = (2 * a * a * a - 9 * a * b + 27 * c) / 54.0;
  std::vector<double> out;
  if (r * r < q * q * q) {
    const double th = std::acos(std::clamp(r / std::sqrt(q * q * q), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(q);
    for (int k = 0; k < 3; ++k) out.push_back(m * std::cos((th + 2 * k * 3.14159265358979323846) / 3.0) - a / 3.0);
  } else {
    double aa = -std::cbrt(std::abs(r) + std::sqrt(r * r - q * q * q));
    if (r < 0) aa = -aa;
    const double bb = aa == 0.0 ? 0.0 : q / aa;
    out.push_back(aa + bb - a / 3.0);
  }
  return out;
}

inline std::vector<double> companion_real_roots(const QuarticCoeffs& c) {
  std::array<double, 5> co{c.d0, c.d1, c.d2, c.d3, c.d4};
  int deg = 4;
  while (deg > 0 && co[deg] == 0.0) --deg;
  std::vector<double> out;
  if (deg == 0) return out;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) m(i, deg - 1) = -co[i] / co[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  for (int i = 0; i < deg; ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z))) out.push_back(z.real());
  }
  return out;
}

inline double polish(const QuarticCoeffs& c, double x) {
  for (int it = 0; it < 4; ++it) {
    const double d = c.derivative(x);
    if (d == 0.0) break;
    const double nx = x - c(x) / d;
    if (!std::isfinite(nx) || std::abs(c(nx)) > std::abs(c(x))) break;
    x = nx;
  }
  return x;
}

}  // namespace detail

// Real roots, ascending, repeated roots listed with multiplicity.
// Ferrari's method; the companion matrix takes over when the
// discriminant is close to zero.
inline std::vector<double> solve_quartic(const QuarticCoeffs& c) {
  if (std::abs(c.d4) < 1e-300 && std::abs(c.d3) < 1e-300 && std::abs(c.d2) < 1e-300 && std::abs(c.d1) < 1e-300 &&
      std::abs(c.d0) < 1e-300)
    throw std::invalid_argument("solve_quartic: all coefficients vanish");
  const double nrm = c.norm();
  std::vector<double> roots;
  if (std::abs(c.d4) < 1e-12 * nrm) {
    QuarticCoeffs cubic{0.0, c.d3, c.d2, c.d1, c.d0};
    if (std::abs(c.d3) < 1e-12 * nrm) {
      detail::push_quadratic(c.d2, c.d1, c.d0, roots);
    } else {
      roots = detail::monic_cubic(c.d2 / c.d3, c.d1 / c.d3, c.d0 / c.d3);
    }
    for (double& r : roots) r = detail::polish(cubic, r);
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  const double n2 = nrm * nrm;
  if (std::abs(discriminant(c)) < 1e-10 * n2 * n2) {
    roots = detail::companion_real_roots(c);
  } else {
    const double a = c.d3 / c.d4, b = c.d2 / c.d4, cc = c.d1 / c.d4, d = c.d0 / c.d4;
    const double p = b - 3 * a * a / 8;
    const double q = cc - a * b / 2 + a * a * a / 8;
    const double r = d - a * cc / 4 + a * a * b / 16 - 3 * a * a * a * a / 256;
    std::vector<double> ys;
    if (std::abs(q) < 1e-14 * std::max({1.0, std::abs(p), std::abs(r)})) {
      std::vector<double> zs;
      detail::push_quadratic(1.0, p, r, zs);
      for (double z : zs) {
        if (z > 0) { ys.push_back(std::sqrt(z)); ys.push_back(-std::sqrt(z)); }
        else if (z > -1e-14) { ys.push_back(0.0); ys.push_back(0.0); }
      }
    } else {
      // resolvent 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0, largest root is positive
      const auto ms = detail::monic_cubic(p, (p * p / 4 - r), -q * q / 8);
      const double m = *std::max_element(ms.begin(), ms.end());
      const double s = std::sqrt(2 * m);
      detail::push_quadratic(1.0, -s, p / 2 + m + q / (2 * s), ys);
      detail::push_quadratic(1.0, s, p / 2 + m - q / (2 * s), ys);
    }
    for (double y : ys) roots.push_back(y - a / 4);
  }
  for (double& x : roots) x = detail::polish(c, x);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace dirsamp

namespace dirsamp {

// Stationary-point quartic of e^{kappa cos(theta - mu)} (1 + nu cos theta)
// in x = tan(theta / 2).
inline QuarticCoeffs voncos_quartic(double mu, double kappa, double nu) {
  const double b1 = std::cos(mu), b2 = std::sin(mu), b3 = nu / kappa;
  return {b2 * (1 - nu), 2 * b3 + 2 * b1 * (1 - nu), 2 * b2 * nu, 2 * b3 + 2 * b1 * (1 + nu), -b2 * (1 + nu)};
}

}  // namespace dirsamp
