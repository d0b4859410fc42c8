#pragma once
// Circular densities on [0, 2pi).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "polynomial.hpp"
#include "quadrature.hpp"
#include "special_fn.hpp"

namespace dirsamp {

namespace detail {

inline double fast_wrap(double theta) {
  return (theta >= 0.0 && theta < kTwoPi) ? theta : wrap_angle(theta);
}

inline void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline constexpr double kLog2Pi = 1.837877066409345483560659472811235280;

}  // namespace detail

struct Uniform {
  double log_density(double) const { return -detail::kLog2Pi; }
  double density(double) const { return 1.0 / kTwoPi; }
};

class VonMises {
 public:
  VonMises(double mu, double kappa) : mu_(wrap_angle(mu)), kappa_(kappa) {
    detail::require(std::isfinite(mu), "VonMises: mu must be finite");
    detail::require(kappa > 0.0 && kappa <= kMaxKappa, "VonMises: kappa must lie in (0, 700]");
    log_c_ = detail::kLog2Pi + log_bessel_i0(kappa);
  }
  double mu() const { return mu_; }
  double kappa() const { return kappa_; }
  double log_density(double t) const { return kappa_ * std::cos(t - mu_) - log_c_; }
  double density(double t) const { return std::exp(log_density(t)); }

 private:
  double mu_, kappa_, log_c_;
};

// Location fixed at 0.
class Cardioid {
 public:
  explicit Cardioid(double nu) : nu_(nu) {
    detail::require(nu > 0.0 && nu < 1.0, "Cardioid: nu must lie in (0, 1)");
  }
  double nu() const { return nu_; }
  double log_density(double t) const { return std::log1p(nu_ * std::cos(t)) - detail::kLog2Pi; }
  double density(double t) const { return (1.0 + nu_ * std::cos(t)) / kTwoPi; }

 private:
  double nu_;
};

class WrappedCauchy {
 public:
  WrappedCauchy(double mu, double rho) : mu_(wrap_angle(mu)), rho_(rho) {
    detail::require(std::isfinite(mu), "WrappedCauchy: mu must be finite");
    detail::require(rho >= 0.0 && rho < 1.0, "WrappedCauchy: rho must lie in [0, 1)");
  }
  double mu() const { return mu_; }
  double rho() const { return rho_; }
  double density(double t) const {
    return (1 - rho_ * rho_) / (kTwoPi * (1 + rho_ * rho_ - 2 * rho_ * std::cos(t - mu_)));
  }
  double log_density(double t) const {
    return std::log1p(-rho_ * rho_) - detail::kLog2Pi - std::log(1 + rho_ * rho_ - 2 * rho_ * std::cos(t - mu_));
  }

 private:
  double mu_, rho_;
};

class KatoJones {
 public:
  KatoJones(double mu, double nu1, double rho, double kappa)
      : mu_(wrap_angle(mu)), nu1_(wrap_angle(nu1)), rho_(rho), kappa_(kappa) {
    detail::require(std::isfinite(mu) && std::isfinite(nu1), "KatoJones: angles must be finite");
    detail::require(rho >= 0.0 && rho < 1.0, "KatoJones: rho must lie in [0, 1)");
    detail::require(kappa > 0.0 && kappa <= kMaxKappa, "KatoJones: kappa must lie in (0, 700]");
    const double r2 = rho * rho;
    gamma_ = mu_ + nu1_;
    xi_ = std::sqrt(r2 * r2 + 2 * r2 * std::cos(2 * nu1_) + 1);
    eta_ = mu_ + std::arg(std::complex<double>(r2 * std::cos(2 * nu1_) + 1, r2 * std::sin(2 * nu1_)));
    log_c_ = std::log1p(-r2) - detail::kLog2Pi - log_bessel_i0(kappa);
    shift_ = 2 * rho * std::cos(nu1_);
  }
  double mu() const { return mu_; }
  double nu1() const { return nu1_; }
  double rho() const { return rho_; }
  double kappa() const { return kappa_; }
  double gamma() const { return gamma_; }
  double xi() const { return xi_; }
  double eta() const { return eta_; }
  double log_density(double t) const {
    const double d = 1 + rho_ * rho_ - 2 * rho_ * std::cos(t - gamma_);
    return log_c_ - std::log(d) + kappa_ * (xi_ * std::cos(t - eta_) - shift_) / d;
  }
  double density(double t) const { return std::exp(log_density(t)); }

 private:
  double mu_, nu1_, rho_, kappa_;
  double gamma_, xi_, eta_, log_c_, shift_;
};

using BaseDensity = std::variant<Uniform, VonMises, Cardioid, WrappedCauchy, KatoJones>;

// 1 + nu E_base[cos theta]
inline double weighted_norm_const(const BaseDensity& base, double nu, const QuadratureSpec& q = {}) {
  detail::require(nu > 0.0 && nu < 1.0, "weighted_norm_const: nu must lie in (0, 1)");
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, VonMises>) {
          return 1.0 + nu * std::cos(b.mu()) * ratio_a(b.kappa());
        } else if constexpr (std::is_same_v<T, Cardioid>) {
          return 1.0 + nu * b.nu() / 2.0;
        } else {
          return 1.0 + nu * integrate([&](double t) { return std::cos(t) * b.density(t); }, 0.0, kTwoPi, q);
        }
      },
      base);
}

// base(theta) (1 + nu cos theta) / C
class AreaWeighted {
 public:
  AreaWeighted(BaseDensity base, double nu) : base_(std::move(base)), nu_(nu) {
    detail::require(nu > 0.0 && nu < 1.0, "AreaWeighted: nu must lie in (0, 1)");
    norm_ = weighted_norm_const(base_, nu_);
    log_norm_ = std::log(norm_);
  }
  const BaseDensity& base() const { return base_; }
  double nu() const { return nu_; }
  double norm_const() const { return norm_; }
  double log_density(double t) const {
    const double lb = std::visit([t](const auto& b) { return b.log_density(t); }, base_);
    return lb + std::log1p(nu_ * std::cos(t)) - log_norm_;
  }
  double density(double t) const {
    const double b = std::visit([t](const auto& x) { return x.density(t); }, base_);
    return b * (1.0 + nu_ * std::cos(t)) / norm_;
  }

 private:
  BaseDensity base_;
  double nu_, norm_, log_norm_;
};

using CircularDensity = std::variant<Uniform, VonMises, Cardioid, WrappedCauchy, KatoJones, AreaWeighted>;

inline CircularDensity make_voncos(double mu, double kappa, double nu) {
  return AreaWeighted(VonMises(mu, kappa), nu);
}

template <class... Ts>
double density(const std::variant<Ts...>& d, double theta) {
  const double t = detail::fast_wrap(theta);
  return std::visit([t](const auto& x) { return x.density(t); }, d);
}

template <class... Ts>
double log_density(const std::variant<Ts...>& d, double theta) {
  const double t = detail::fast_wrap(theta);
  return std::visit([t](const auto& x) { return x.log_density(t); }, d);
}

// Callable wrapper used by the sampler and tests.
struct DensityFn {
  const CircularDensity* d;
  double operator()(double theta) const { return density(*d, theta); }
};

// Cumulative Simpson over a fixed grid on [0, 2pi) whose panel count is
// doubled until the full-circle integral settles; summing nonnegative panels
// left to right keeps the result nondecreasing in theta.
inline double cdf_quadrature(const CircularDensity& d, double theta, const QuadratureSpec& q = {}) {
  detail::require(theta >= 0.0 && theta <= kTwoPi, "cdf_quadrature: theta must lie in [0, 2pi]");
  q.validate();
  if (theta == 0.0) return 0.0;
  auto f = [&](double t) { return density(d, t); };
  int n = q.panels;
  double prev = simpson(f, 0.0, kTwoPi, n);
  while (n < q.max_panels) {
    const double cur = simpson(f, 0.0, kTwoPi, 2 * n);
    n *= 2;
    if (std::abs(cur - prev) < q.abs_tol) break;
    prev = cur;
  }
  const int pairs = n / 2;
  const double w = kTwoPi / pairs;
  const int full = std::min(static_cast<int>(theta / w), pairs);
  double cum = 0.0;
  for (int j = 0; j < full; ++j) {
    const double a = j * w;
    cum += w / 6.0 * (f(a) + 4.0 * f(a + 0.5 * w) + f(a + w));
  }
  double v = cum;
  if (full < pairs) {
    const double a = full * w, len = theta - a;
    const double part = len / 6.0 * (f(a) + 4.0 * f(a + 0.5 * len) + f(theta));
    const double whole = w / 6.0 * (f(a) + 4.0 * f(a + 0.5 * w) + f(a + w));
    v = cum + std::clamp(part, 0.0, whole);
  }
  return std::clamp(v, 0.0, 1.0);
}

// Tabulated CDF, cubic Hermite between nodes with the density as slope.
class CdfTable {
 public:
  explicit CdfTable(const CircularDensity& d, int nodes = 1 << 14) : h_(kTwoPi / nodes) {
    detail::require(nodes >= 16, "CdfTable: too few nodes");
    f_.resize(nodes + 1);
    c_.resize(nodes + 1);
    for (int i = 0; i <= nodes; ++i) f_[i] = density(d, i * h_);
    // Simpson on each interval with its midpoint
    c_[0] = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double mid = density(d, (i + 0.5) * h_);
      c_[i + 1] = c_[i] + h_ / 6.0 * (f_[i] + 4 * mid + f_[i + 1]);
    }
    const double total = c_.back();
    for (double& c : c_) c /= total;
    for (double& f : f_) f /= total;
  }
  double operator()(double theta) const {
    if (theta <= 0.0) return 0.0;
    if (theta >= kTwoPi) return 1.0;
    const auto n = static_cast<std::ptrdiff_t>(f_.size()) - 1;
    const auto i = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(theta / h_), n - 1);
    const double s = (theta - i * h_) / h_;
    const double s2 = s * s, s3 = s2 * s;
    const double v = (2 * s3 - 3 * s2 + 1) * c_[i] + (s3 - 2 * s2 + s) * h_ * f_[i] +
                     (-2 * s3 + 3 * s2) * c_[i + 1] + (s3 - s2) * h_ * f_[i + 1];
    return std::clamp(v, 0.0, 1.0);
  }

 private:
  double h_;
  std::vector<double> f_, c_;
};

namespace detail {

inline std::vector<double> sorted_wrapped(std::vector<double> v) {
  for (double& t : v) t = wrap_angle(t);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) < 1e-13; }), v.end());
  return v;
}

inline std::vector<double> voncos_stationary(double mu, double kappa, double nu) {
  const QuarticCoeffs c = voncos_quartic(mu, kappa, nu);
  std::vector<double> out;
  for (double x : solve_quartic(c)) out.push_back(2.0 * std::atan(x));
  // x = tan(theta/2) cannot reach theta = pi; it is critical exactly when sin(mu) = 0
  if (std::abs(c.d4) < 1e-12 * c.norm()) out.push_back(kPi);
  return out;
}

}  // namespace detail

// Angles where the derivative vanishes; empty means unknown.
inline std::vector<double> stationary_points(const CircularDensity& d) {
  return std::visit(
      [](const auto& x) -> std::vector<double> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Uniform> || std::is_same_v<T, KatoJones>) {
          return {};
        } else if constexpr (std::is_same_v<T, VonMises> || std::is_same_v<T, WrappedCauchy>) {
          return detail::sorted_wrapped({x.mu(), x.mu() + kPi});
        } else if constexpr (std::is_same_v<T, Cardioid>) {
          return {0.0, kPi};
        } else {
          const double nu = x.nu();
          return std::visit(
              [nu](const auto& b) -> std::vector<double> {
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<B, Uniform> || std::is_same_v<B, Cardioid>) {
                  return {0.0, kPi};
                } else if constexpr (std::is_same_v<B, VonMises>) {
                  return detail::sorted_wrapped(detail::voncos_stationary(b.mu(), b.kappa(), nu));
                } else if constexpr (std::is_same_v<B, WrappedCauchy>) {
                  // P sin t + Q cos t + W = 0
                  const double r = b.rho(), sm = std::sin(b.mu()), cm = std::cos(b.mu());
                  if (r == 0.0) return {0.0, kPi};
                  const double p = -(nu * (1 + r * r) + 2 * r * cm), q = 2 * r * sm, w = 2 * r * nu * sm;
                  const double amp = std::hypot(p, q);
                  const double phase = std::atan2(p, q);
                  const double off = std::acos(std::clamp(-w / amp, -1.0, 1.0));
                  return detail::sorted_wrapped({phase + off, phase - off});
                } else {
                  return {};
                }
              },
              x.base());
        }
      },
      d);
}

// JSON round trip; tags are the lowercase variant names.
inline nlohmann::ordered_json to_json(const BaseDensity& d);

inline nlohmann::ordered_json to_json(const CircularDensity& d) {
  using nlohmann::ordered_json;
  return std::visit(
      [](const auto& x) -> ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Uniform>) return {{"dist", "uniform"}};
        else if constexpr (std::is_same_v<T, VonMises>) return {{"dist", "vonmises"}, {"mu", x.mu()}, {"kappa", x.kappa()}};
        else if constexpr (std::is_same_v<T, Cardioid>) return {{"dist", "cardioid"}, {"nu", x.nu()}};
        else if constexpr (std::is_same_v<T, WrappedCauchy>) return {{"dist", "wrappedcauchy"}, {"mu", x.mu()}, {"rho", x.rho()}};
        else if constexpr (std::is_same_v<T, KatoJones>)
          return {{"dist", "katojones"}, {"mu", x.mu()}, {"nu1", x.nu1()}, {"rho", x.rho()}, {"kappa", x.kappa()}};
        else return {{"dist", "areaweighted"}, {"base", to_json(x.base())}, {"nu", x.nu()}};
      },
      d);
}

inline nlohmann::ordered_json to_json(const BaseDensity& d) {
  return std::visit([](const auto& x) { return to_json(CircularDensity(x)); }, d);
}

namespace detail {

inline double num(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument(std::string("density spec: missing numeric field '") + key + "'");
  return j[key].get<double>();
}

inline BaseDensity base_from_json(const nlohmann::json& j) {
  const std::string tag = j.value("dist", "");
  if (tag == "uniform") return Uniform{};
  if (tag == "vonmises") return VonMises(num(j, "mu"), num(j, "kappa"));
  if (tag == "cardioid") return Cardioid(num(j, "nu"));
  if (tag == "wrappedcauchy") return WrappedCauchy(num(j, "mu"), num(j, "rho"));
  if (tag == "katojones") return KatoJones(num(j, "mu"), num(j, "nu1"), num(j, "rho"), num(j, "kappa"));
  throw std::invalid_argument("density spec: unknown or non-base dist '" + tag + "'");
}

}  // namespace detail

// Also accepts {"dist":"voncos","mu","kappa","nu"} as shorthand.
inline CircularDensity density_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("density spec must be a JSON object");
  const std::string tag = j.value("dist", "");
  if (tag == "areaweighted") {
    if (!j.contains("base")) throw std::invalid_argument("density spec: areaweighted needs 'base'");
    return AreaWeighted(detail::base_from_json(j["base"]), detail::num(j, "nu"));
  }
  if (tag == "voncos") return make_voncos(detail::num(j, "mu"), detail::num(j, "kappa"), detail::num(j, "nu"));
  return std::visit([](auto&& b) -> CircularDensity { return b; }, detail::base_from_json(j));
}

}  // namespace dirsamp
