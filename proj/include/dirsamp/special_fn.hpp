#pragma once
// Modified Bessel functions of the first kind, integer order.

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirsamp {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;
inline constexpr double kMaxKappa = 700.0;

namespace detail {

inline void check_kappa(double kappa, const char* who) {
  if (!(kappa >= 0.0) || kappa > kMaxKappa)
    throw std::domain_error(std::string(who) + ": kappa must lie in [0, 700]");
}

// sum_m (x/2)^(2m+p) / (m! (m+p)!), good for x <= 15
inline double bessel_i_series(int p, double x) {
  if (x == 0.0) return p == 0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  const double q = half * half;
  double term = std::exp(p * std::log(half) - std::lgamma(p + 1.0));
  double sum = term;
  for (int m = 1; m < 1000; ++m) {
    term *= q / (m * static_cast<double>(m + p));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// e^{-x} I_k(x) for k = 0..pmax by Miller backward recurrence,
// normalised with e^{-x}(I_0 + 2 sum I_k) = 1
inline std::vector<double> bessel_i_scaled_miller(int pmax, double x) {
  const int start = pmax + static_cast<int>(std::sqrt(80.0 * x)) + 40;
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-300;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = f[k + 1] + (2.0 * k / x) * f[k];
    if (f[k - 1] > 1e250) {
      for (int j = k - 1; j <= start; ++j) f[j] *= 1e-250;
    }
  }
  double total = f[0];
  for (int k = 1; k <= start; ++k) total += 2.0 * f[k];
  std::vector<double> out(static_cast<std::size_t>(pmax) + 1);
  for (int k = 0; k <= pmax; ++k) out[k] = f[k] / total;
  return out;
}

}  // namespace detail

// e^{-kappa} I_k(kappa) for k = 0..pmax.
inline std::vector<double> bessel_i_scaled_sequence(int pmax, double kappa) {
  detail::check_kappa(kappa, "bessel_i_scaled_sequence");
  if (pmax < 0) throw std::invalid_argument("bessel_i_scaled_sequence: negative order");
  if (kappa <= 15.0) {
    std::vector<double> out(static_cast<std::size_t>(pmax) + 1);
    const double s = std::exp(-kappa);
    for (int k = 0; k <= pmax; ++k) out[k] = detail::bessel_i_series(k, kappa) * s;
    return out;
  }
  return detail::bessel_i_scaled_miller(pmax, kappa);
}

// Negative orders map through I_{-p} = I_p.
inline double bessel_i_scaled(int p, double kappa) {
  p = std::abs(p);
  return bessel_i_scaled_sequence(p, kappa)[p];
}

inline double bessel_i(int p, double kappa) {
  p = std::abs(p);
  detail::check_kappa(kappa, "bessel_i");
  if (kappa <= 15.0) return detail::bessel_i_series(p, kappa);
  return bessel_i_scaled(p, kappa) * std::exp(kappa);
}

inline double log_bessel_i0(double kappa) {
  detail::check_kappa(kappa, "log_bessel_i0");
  if (kappa <= 15.0) return std::log(detail::bessel_i_series(0, kappa));
  return std::log(detail::bessel_i_scaled_miller(0, kappa)[0]) + kappa;
}

// A(kappa) = I_1 / I_0, kappa > 0
inline double ratio_a(double kappa) {
  detail::check_kappa(kappa, "ratio_a");
  if (kappa == 0.0) throw std::domain_error("ratio_a: kappa must be positive");
  if (kappa <= 15.0) return detail::bessel_i_series(1, kappa) / detail::bessel_i_series(0, kappa);
  const auto s = detail::bessel_i_scaled_miller(1, kappa);
  return s[1] / s[0];
}

// A'(kappa) = 1 - A/kappa - A^2
inline double ratio_a_prime(double kappa) {
  const double a = ratio_a(kappa);
  return 1.0 - a / kappa - a * a;
}

// Wrap into [0, 2pi).
inline double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace dirsamp
