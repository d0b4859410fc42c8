#pragma once
// Maximum likelihood for the area-weighted von Mises family and its
// symmetric and plain von Mises submodels; goodness-of-fit tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "circular.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "special_fn.hpp"

namespace dirsamp {

enum class Family { VonCos3, VonCosSym2, VonMises2 };

struct ModelSpec {
  Family family = Family::VonCos3;

  int dim() const { return family == Family::VonCos3 ? 3 : 2; }
  std::string name() const {
    switch (family) {
      case Family::VonCos3: return "voncos3";
      case Family::VonCosSym2: return "voncos2";
      case Family::VonMises2: return "vonmises";
    }
    return "";
  }
  static ModelSpec parse(const std::string& s) {
    if (s == "voncos3") return {Family::VonCos3};
    if (s == "voncos2") return {Family::VonCosSym2};
    if (s == "vonmises") return {Family::VonMises2};
    throw std::invalid_argument("unknown model '" + s + "' (expected voncos3, voncos2 or vonmises)");
  }
};

// nu is 0 for the von Mises submodel, mu is 0 for the symmetric one.
struct Params {
  double mu = 0.0, kappa = 1.0, nu = 0.0;
};

namespace detail {

inline const double kNaN = std::numeric_limits<double>::quiet_NaN();

inline void check_params(const ModelSpec& m, const Params& p) {
  if (!std::isfinite(p.mu)) throw std::invalid_argument("params: mu must be finite");
  if (!(p.kappa > 0.0 && p.kappa <= kMaxKappa)) throw std::invalid_argument("params: kappa must lie in (0, 700]");
  if (m.family == Family::VonMises2) {
    if (p.nu != 0.0) throw std::invalid_argument("params: von Mises model has nu = 0");
  } else if (!(p.nu >= 0.0 && p.nu < 1.0)) {
    throw std::invalid_argument("params: nu must lie in [0, 1)");
  }
  if (m.family == Family::VonCosSym2 && p.mu != 0.0) throw std::invalid_argument("params: symmetric model has mu = 0");
}

inline void check_data(std::span<const double> data) {
  if (data.empty()) throw std::invalid_argument("data must be nonempty");
}

// Index of (mu, kappa, nu) rows kept by each family.
inline std::vector<int> free_index(const ModelSpec& m) {
  switch (m.family) {
    case Family::VonCos3: return {0, 1, 2};
    case Family::VonCosSym2: return {1, 2};
    case Family::VonMises2: return {0, 1};
  }
  return {};
}

struct KappaTerms {
  double a, ap, app;  // A, A', A''
};

inline KappaTerms kappa_terms(double kappa) {
  const double a = ratio_a(kappa);
  const double ap = 1.0 - a / kappa - a * a;
  return {a, ap, -ap / kappa + a / (kappa * kappa) - 2.0 * a * ap};
}

}  // namespace detail

inline double log_likelihood(const ModelSpec& m, const Params& p, std::span<const double> data) {
  detail::check_params(m, p);
  detail::check_data(data);
  const double n = static_cast<double>(data.size());
  double s = 0.0;
  for (double t : data) {
    s += p.kappa * std::cos(t - p.mu);
    if (p.nu != 0.0) {
      const double w = 1.0 + p.nu * std::cos(t);
      if (w <= 0.0) return -std::numeric_limits<double>::infinity();
      s += std::log(w);
    }
  }
  const double g = 1.0 + p.nu * std::cos(p.mu) * ratio_a(p.kappa);
  return s - n * (std::log(kTwoPi) + log_bessel_i0(p.kappa) + std::log(g));
}

// Full (mu, kappa, nu) gradient; families read their own components.
inline Eigen::Vector3d score_full(const Params& p, std::span<const double> data) {
  const double n = static_cast<double>(data.size());
  const double cm = std::cos(p.mu), sm = std::sin(p.mu);
  const auto kt = detail::kappa_terms(p.kappa);
  const double g = 1.0 + p.nu * cm * kt.a;
  double ss = 0, sc = 0, sv = 0;
  for (double t : data) {
    ss += std::sin(t - p.mu);
    sc += std::cos(t - p.mu);
    const double c = std::cos(t);
    sv += c / (1.0 + p.nu * c);
  }
  return {p.kappa * ss + n * p.nu * sm * kt.a / g,
          sc - n * (kt.a + p.nu * cm * (1.0 - kt.a / p.kappa)) / g,
          sv - n * cm * kt.a / g};
}

// Negative Hessian in (mu, kappa, nu).
inline Eigen::Matrix3d observed_information_full(const Params& p, std::span<const double> data) {
  const double n = static_cast<double>(data.size());
  const double cm = std::cos(p.mu), sm = std::sin(p.mu), nu = p.nu;
  const auto kt = detail::kappa_terms(p.kappa);
  const double a = kt.a, ap = kt.ap, g = 1.0 + nu * cm * a, g2 = g * g;
  double sc = 0, ss = 0, sq = 0;
  for (double t : data) {
    sc += std::cos(t - p.mu);
    ss += std::sin(t - p.mu);
    const double c = std::cos(t), w = 1.0 + nu * c;
    sq += c * c / (w * w);
  }
  Eigen::Matrix3d j;
  j(0, 0) = p.kappa * sc - n * (nu * cm * a / g + nu * nu * sm * sm * a * a / g2);
  j(0, 1) = -ss - n * nu * sm * ap / g2;
  j(0, 2) = -n * sm * a / g2;
  j(1, 1) = n * (ap + nu * cm * kt.app / g - nu * nu * cm * cm * ap * ap / g2);
  j(1, 2) = n * cm * ap / g2;
  j(2, 2) = sq - n * cm * cm * a * a / g2;
  j(1, 0) = j(0, 1);
  j(2, 0) = j(0, 2);
  j(2, 1) = j(1, 2);
  return j;
}

inline Eigen::VectorXd score(const ModelSpec& m, const Params& p, std::span<const double> data) {
  detail::check_params(m, p);
  detail::check_data(data);
  const Eigen::Vector3d full = score_full(p, data);
  const auto idx = detail::free_index(m);
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out[static_cast<Eigen::Index>(i)] = full[idx[i]];
  return out;
}

inline Eigen::MatrixXd observed_information(const ModelSpec& m, const Params& p, std::span<const double> data) {
  detail::check_params(m, p);
  detail::check_data(data);
  const Eigen::Matrix3d full = observed_information_full(p, data);
  const auto idx = detail::free_index(m);
  const auto d = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k) out(i, k) = full(idx[i], idx[k]);
  return out;
}

inline CircularDensity fitted_density(const ModelSpec& m, const Params& p) {
  if (m.family == Family::VonMises2) return VonMises(p.mu, p.kappa);
  return make_voncos(p.mu, p.kappa, p.nu);
}

// Per-observation expected information: the data-dependent sums of the
// observed information replaced by quadrature expectations under the model.
inline Eigen::MatrixXd expected_information(const ModelSpec& m, const Params& p, const QuadratureSpec& q = {}) {
  detail::check_params(m, p);
  const CircularDensity h = p.nu > 0.0 ? make_voncos(p.mu, p.kappa, p.nu) : CircularDensity(VonMises(p.mu, p.kappa));
  auto expect = [&](auto&& fn) { return integrate([&](double t) { return fn(t) * density(h, t); }, 0.0, kTwoPi, q); };
  const double ec = expect([&](double t) { return std::cos(t - p.mu); });
  const double es = expect([&](double t) { return std::sin(t - p.mu); });
  const double eq = expect([&](double t) {
    const double c = std::cos(t), w = 1.0 + p.nu * c;
    return c * c / (w * w);
  });
  const double cm = std::cos(p.mu), sm = std::sin(p.mu), nu = p.nu;
  const auto kt = detail::kappa_terms(p.kappa);
  const double a = kt.a, ap = kt.ap, g = 1.0 + nu * cm * a, g2 = g * g;
  Eigen::Matrix3d j;
  j(0, 0) = p.kappa * ec - (nu * cm * a / g + nu * nu * sm * sm * a * a / g2);
  j(0, 1) = -es - nu * sm * ap / g2;
  j(0, 2) = -sm * a / g2;
  j(1, 1) = ap + nu * cm * kt.app / g - nu * nu * cm * cm * ap * ap / g2;
  j(1, 2) = cm * ap / g2;
  j(2, 2) = eq - cm * cm * a * a / g2;
  j(1, 0) = j(0, 1);
  j(2, 0) = j(0, 2);
  j(2, 1) = j(1, 2);
  const auto idx = detail::free_index(m);
  const auto d = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k) out(i, k) = j(idx[i], idx[k]);
  return out;
}

struct FitOptions {
  int restarts = 4;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int max_iter = 500;
};

struct FitResult {
  ModelSpec model;
  Params estimates;
  Params std_errors;  // NaN where the family does not estimate the component
  double loglik = -std::numeric_limits<double>::infinity();
  double aic = 0, bic = 0;
  bool converged = false;
  bool singular_information = false;
  int n_restarts_used = 0;
  double score_norm = std::numeric_limits<double>::infinity();
  std::size_t n = 0;
};

namespace detail {

inline double logit(double x) { return std::log(x / (1.0 - x)); }
inline double expit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// z-space: mu free, log kappa, logit nu
inline Params from_z(const ModelSpec& m, const Eigen::VectorXd& z) {
  Params p;
  switch (m.family) {
    case Family::VonCos3: p = {z[0], std::exp(z[1]), expit(z[2])}; break;
    case Family::VonCosSym2: p = {0.0, std::exp(z[0]), expit(z[1])}; break;
    case Family::VonMises2: p = {z[0], std::exp(z[1]), 0.0}; break;
  }
  return p;
}

inline Eigen::VectorXd to_z(const ModelSpec& m, const Params& p) {
  Eigen::VectorXd z(m.dim());
  switch (m.family) {
    case Family::VonCos3: z << p.mu, std::log(p.kappa), logit(p.nu); break;
    case Family::VonCosSym2: z << std::log(p.kappa), logit(p.nu); break;
    case Family::VonMises2: z << p.mu, std::log(p.kappa); break;
  }
  return z;
}

inline bool in_box(const Params& p) {
  return p.kappa > 0.0 && p.kappa <= kMaxKappa && p.nu >= 0.0 && p.nu < 1.0 && std::isfinite(p.mu);
}

struct Objective {
  const ModelSpec& m;
  std::span<const double> data;
  double n;

  // mean negative log-likelihood
  double value(const Eigen::VectorXd& z) const {
    const Params p = from_z(m, z);
    if (!in_box(p) || (m.family != Family::VonMises2 && !(p.nu > 0.0)))
      return std::numeric_limits<double>::infinity();
    return -log_likelihood(m, p, data) / n;
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& z) const {
    const Params p = from_z(m, z);
    const Eigen::Vector3d s = score_full(p, data);
    Eigen::VectorXd gz(m.dim());
    const double dk = p.kappa, dn = p.nu * (1.0 - p.nu);
    switch (m.family) {
      case Family::VonCos3: gz << s[0], s[1] * dk, s[2] * dn; break;
      case Family::VonCosSym2: gz << s[1] * dk, s[2] * dn; break;
      case Family::VonMises2: gz << s[0], s[1] * dk; break;
    }
    return -gz / n;
  }
};

// Returns false when the line search stalls before the gradient is small.
inline bool bfgs(const Objective& obj, Eigen::VectorXd& x, double gtol, int max_iter) {
  const auto d = x.size();
  double fx = obj.value(x);
  if (!std::isfinite(fx)) return false;
  Eigen::VectorXd g = obj.gradient(x);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(d, d);
  for (int it = 0; it < max_iter; ++it) {
    if (g.lpNorm<Eigen::Infinity>() < gtol) return true;
    Eigen::VectorXd dir = -hinv * g;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double t = 1.0, ft = 0.0;
    Eigen::VectorXd xt;
    for (;;) {
      xt = x + t * dir;
      ft = obj.value(xt);
      if (std::isfinite(ft) && ft <= fx + 1e-4 * t * slope) break;
      t *= 0.5;
      if (t < 1e-14) return false;
    }
    const Eigen::VectorXd gt = obj.gradient(xt);
    const Eigen::VectorXd s = xt - x, y = gt - g;
    const double sy = s.dot(y);
    if (sy > 1e-16) {
      if (it == 0) hinv *= sy / y.squaredNorm();
      const double r = 1.0 / sy;
      const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(d, d);
      hinv = (i - r * s * y.transpose()) * hinv * (i - r * y * s.transpose()) + r * s * s.transpose();
    }
    const bool tiny = std::abs(fx - ft) <= 1e-16 * (1.0 + std::abs(fx)) && s.norm() < 1e-12;
    x = xt;
    fx = ft;
    g = gt;
    if (tiny) return g.lpNorm<Eigen::Infinity>() < gtol * 1e3;
  }
  return g.lpNorm<Eigen::Infinity>() < gtol;
}

inline void nelder_mead(const Objective& obj, Eigen::VectorXd& x, int max_iter) {
  const auto d = x.size();
  std::vector<Eigen::VectorXd> v(static_cast<std::size_t>(d) + 1, x);
  std::vector<double> fv(v.size());
  for (Eigen::Index i = 0; i < d; ++i) v[static_cast<std::size_t>(i) + 1][i] += 0.25;
  for (std::size_t i = 0; i < v.size(); ++i) fv[i] = obj.value(v[i]);
  std::vector<std::size_t> ord(v.size());
  for (int it = 0; it < max_iter * 4; ++it) {
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = ord.front(), worst = ord.back(), second = ord[ord.size() - 2];
    if (std::abs(fv[worst] - fv[best]) < 1e-15 * (1 + std::abs(fv[best]))) break;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != worst) c += v[i];
    c /= static_cast<double>(d);
    const Eigen::VectorXd xr = c + (c - v[worst]);
    const double fr = obj.value(xr);
    if (fr < fv[best]) {
      const Eigen::VectorXd xe = c + 2.0 * (c - v[worst]);
      const double fe = obj.value(xe);
      if (fe < fr) { v[worst] = xe; fv[worst] = fe; } else { v[worst] = xr; fv[worst] = fr; }
    } else if (fr < fv[second]) {
      v[worst] = xr;
      fv[worst] = fr;
    } else {
      const Eigen::VectorXd xc = c + 0.5 * (v[worst] - c);
      const double fc = obj.value(xc);
      if (fc < fv[worst]) {
        v[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i < v.size(); ++i)
          if (i != best) { v[i] = v[best] + 0.5 * (v[i] - v[best]); fv[i] = obj.value(v[i]); }
      }
    }
  }
  const auto it = std::min_element(fv.begin(), fv.end());
  x = v[static_cast<std::size_t>(it - fv.begin())];
}

// Newton steps on the original parameters with step halving.
inline Params newton_polish(const ModelSpec& m, Params p, std::span<const double> data) {
  double ll = log_likelihood(m, p, data);
  for (int it = 0; it < 30; ++it) {
    const Eigen::VectorXd s = score(m, p, data);
    if (s.lpNorm<Eigen::Infinity>() < 1e-11 * static_cast<double>(data.size())) break;
    const Eigen::MatrixXd j = observed_information(m, p, data);
    Eigen::LLT<Eigen::MatrixXd> llt(j);
    if (llt.info() != Eigen::Success) break;
    const Eigen::VectorXd step = llt.solve(s);
    const auto idx = free_index(m);
    bool moved = false;
    for (double t = 1.0; t > 1e-6; t *= 0.5) {
      Params q = p;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const double dv = t * step[static_cast<Eigen::Index>(i)];
        if (idx[i] == 0) q.mu += dv; else if (idx[i] == 1) q.kappa += dv; else q.nu += dv;
      }
      if (!in_box(q) || (m.family != Family::VonMises2 && !(q.nu > 0.0))) continue;
      const double lq = log_likelihood(m, q, data);
      if (lq >= ll - 1e-12 * std::abs(ll)) {
        p = q;
        ll = lq;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return p;
}

}  // namespace detail

struct MomentStart {
  double mu, kappa;
};

// mu0 = arg sum e^{i theta}, kappa0 = A^{-1}(Rbar) by 20 bisection steps.
inline MomentStart moment_start(std::span<const double> data) {
  double c = 0, s = 0;
  for (double t : data) { c += std::cos(t); s += std::sin(t); }
  const double rbar = std::hypot(c, s) / static_cast<double>(data.size());
  double lo = 1e-6, hi = kMaxKappa;
  for (int i = 0; i < 20; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ratio_a(mid) < rbar ? lo : hi) = mid;
  }
  return {wrap_angle(std::atan2(s, c)), std::clamp(0.5 * (lo + hi), 1e-3, 500.0)};
}

inline FitResult fit_mle(const ModelSpec& m, std::span<const double> data, const FitOptions& opt = {}) {
  if (data.size() < 10) throw std::invalid_argument("insufficient data: need at least 10 observations");
  if (opt.restarts < 1) throw std::invalid_argument("fit_mle: restarts must be >= 1");
  const double n = static_cast<double>(data.size());
  const detail::Objective obj{m, data, n};
  const MomentStart ms = moment_start(data);
  RngStream jitter(opt.seed, 0x6a6974746572ULL);

  FitResult best;
  best.model = m;
  best.n = data.size();
  bool have_converged = false;
  for (int r = 0; r < opt.restarts; ++r) {
    Params start{ms.mu, ms.kappa, 0.5};
    if (r > 0) {
      start.mu = wrap_angle(ms.mu + (jitter.uniform() - 0.5) * kPi);
      start.kappa = std::clamp(ms.kappa * std::exp(2.0 * (jitter.uniform() - 0.5)), 1e-3, 500.0);
      start.nu = 0.1 + 0.8 * jitter.uniform();
    }
    if (m.family == Family::VonCosSym2) start.mu = 0.0;
    if (m.family == Family::VonMises2) start.nu = 0.0;
    Eigen::VectorXd z = detail::to_z(m, start);
    if (!detail::bfgs(obj, z, opt.tol, opt.max_iter)) detail::nelder_mead(obj, z, opt.max_iter);
    Params p = detail::from_z(m, z);
    if (!detail::in_box(p)) continue;
    p = detail::newton_polish(m, p, data);
    if (m.family != Family::VonCosSym2) p.mu = wrap_angle(p.mu);
    const double ll = log_likelihood(m, p, data);
    const double sn = score(m, p, data).lpNorm<Eigen::Infinity>();
    const bool conv = sn < 1e-5;
    if ((conv && !have_converged) || ((conv || !have_converged) && ll > best.loglik)) {
      best.estimates = p;
      best.loglik = ll;
      best.score_norm = sn;
      best.converged = conv;
      have_converged = have_converged || conv;
    }
    best.n_restarts_used = r + 1;
  }
  const int dim = m.dim();
  best.aic = 2.0 * dim - 2.0 * best.loglik;
  best.bic = dim * std::log(n) - 2.0 * best.loglik;
  best.std_errors = {detail::kNaN, detail::kNaN, detail::kNaN};
  if (std::isfinite(best.loglik)) {
    const Eigen::MatrixXd j = observed_information(m, best.estimates, data);
    Eigen::LLT<Eigen::MatrixXd> llt(j);
    if (llt.info() != Eigen::Success) {
      best.singular_information = true;
    } else {
      const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
      const auto idx = detail::free_index(m);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const double se = std::sqrt(cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
        if (idx[i] == 0) best.std_errors.mu = se; else if (idx[i] == 1) best.std_errors.kappa = se; else best.std_errors.nu = se;
      }
    }
  }
  return best;
}

struct GofResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  int bins = 0;  // after merging
};

// Pearson statistic over equal-width bins on [0, 2pi); bins whose expected
// count is below 1 are merged into their right neighbour.
inline GofResult chi_squared_gof(std::span<const double> data, const CircularDensity& fitted, int bins = 20,
                                 int dim = 0) {
  if (bins < 2) throw std::invalid_argument("chi_squared_gof: need at least two bins");
  if (data.size() < 5 * static_cast<std::size_t>(bins))
    throw std::invalid_argument("chi_squared_gof: need at least 5 observations per bin");
  const double n = static_cast<double>(data.size());
  const double w = kTwoPi / bins;
  std::vector<double> obs(static_cast<std::size_t>(bins), 0.0), expct(static_cast<std::size_t>(bins));
  for (double t : data) {
    const auto i = std::min(static_cast<std::size_t>(wrap_angle(t) / w), static_cast<std::size_t>(bins - 1));
    obs[i] += 1.0;
  }
  const QuadratureSpec q{64, 1e-12, 4096};
  for (int i = 0; i < bins; ++i)
    expct[static_cast<std::size_t>(i)] = n * integrate([&](double t) { return density(fitted, t); }, i * w, (i + 1) * w, q);
  std::vector<double> mo, me;
  double ao = 0, ae = 0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    ao += obs[i];
    ae += expct[i];
    if (ae >= 1.0) { mo.push_back(ao); me.push_back(ae); ao = ae = 0; }
  }
  if (ae > 0 || ao > 0) {
    if (me.empty()) { mo.push_back(ao); me.push_back(ae); }
    else { mo.back() += ao; me.back() += ae; }
  }
  GofResult r;
  r.bins = static_cast<int>(me.size());
  for (std::size_t i = 0; i < me.size(); ++i) r.statistic += (mo[i] - me[i]) * (mo[i] - me[i]) / me[i];
  r.dof = r.bins - 1 - dim;
  if (r.dof < 1) throw std::invalid_argument("chi_squared_gof: no degrees of freedom left after merging");
  r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
  return r;
}

struct KsResult {
  double statistic = 0;
  double p_value = 1;
};

// Asymptotic Kolmogorov tail with the Stephens small-sample correction.
inline double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    const double y = std::exp(-kPi * kPi / (8.0 * lambda * lambda));
    double s = 0.0;
    for (int j = 1; j < 20; ++j) s += std::pow(y, (2 * j - 1) * (2 * j - 1));
    return std::clamp(1.0 - std::sqrt(kTwoPi) / lambda * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int j = 1; j < 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    s += (j % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

template <class Cdf>
KsResult ks_test(std::span<const double> data, Cdf&& cdf) {
  if (data.size() < 20) throw std::invalid_argument("ks_test: need at least 20 observations");
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d)};
}

}  // namespace dirsamp
