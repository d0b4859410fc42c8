#pragma once
// Piecewise-constant envelope rejection sampling and the Best-Fisher
// von Mises sampler.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "circular.hpp"
#include "rng.hpp"

namespace dirsamp {

enum class ClampPolicy { Strict, ClampAndCount };
enum class EnvelopeMode { Auto, Strict, Midpoint };

struct EnvelopeViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Envelope {
 public:
  // `lower`, when given, holds a per-cell lower bound of the target used as a
  // squeeze: proposals with u * H_i below it are accepted without evaluating f.
  Envelope(double a, double b, std::vector<double> heights, ClampPolicy policy, std::vector<double> lower = {})
      : a_(a), b_(b), width_((b - a) / static_cast<double>(heights.size())), heights_(std::move(heights)),
        policy_(policy) {
    if (!(b > a)) throw std::invalid_argument("Envelope: support must satisfy a < b");
    if (heights_.size() < 2) throw std::invalid_argument("Envelope: need at least two cells");
    prefix_.resize(heights_.size());
    std::partial_sum(heights_.begin(), heights_.end(), prefix_.begin());
    total_ = prefix_.back();
    if (!(total_ > 0.0)) throw std::invalid_argument("Envelope: heights sum to zero");
    for (double& p : prefix_) p /= total_;
    prefix_.back() = 1.0;
    const std::size_t k = heights_.size();
    guide_.resize(k);
    for (std::size_t j = 0; j < k; ++j)
      guide_[j] = static_cast<std::size_t>(
          std::upper_bound(prefix_.begin(), prefix_.end(), static_cast<double>(j) / static_cast<double>(k)) -
          prefix_.begin());
    if (!lower.empty()) {
      if (lower.size() != k) throw std::invalid_argument("Envelope: lower bounds must match the cells");
      squeeze_.resize(k);
      // the small shave keeps rounding in f from ever flipping a decision
      for (std::size_t i = 0; i < k; ++i)
        squeeze_[i] = heights_[i] > 0.0 ? std::clamp(lower[i] / heights_[i], 0.0, 1.0) * (1.0 - 1e-9) : 0.0;
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t cells() const { return heights_.size(); }
  double width() const { return width_; }
  std::span<const double> heights() const { return heights_; }
  std::span<const double> prefix() const { return prefix_; }
  ClampPolicy policy() const { return policy_; }
  // B * sum H
  double mass() const { return width_ * total_; }
  // 1 / (B sum H): exact acceptance rate for a normalised target under Strict
  double expected_acceptance() const { return 1.0 / mass(); }

  // First cell whose normalised prefix sum exceeds u (same answer as
  // upper_bound), started from a guide table so the scan is O(1) on average.
  std::size_t select(double u) const {
    const std::size_t k = heights_.size();
    std::size_t i = guide_[std::min(static_cast<std::size_t>(u * static_cast<double>(k)), k - 1)];
    while (i > 0 && prefix_[i - 1] > u) --i;
    while (i < k && prefix_[i] <= u) ++i;
    return std::min(i, k - 1);
  }
  std::span<const double> squeeze() const { return squeeze_; }
  double cell_lower(std::size_t i) const { return a_ + static_cast<double>(i) * width_; }
  double cell_upper(std::size_t i) const { return i + 1 == cells() ? b_ : a_ + static_cast<double>(i + 1) * width_; }

 private:
  double a_, b_, width_, total_ = 0.0;
  std::vector<double> heights_, prefix_, squeeze_;
  std::vector<std::size_t> guide_;
  ClampPolicy policy_;
};

namespace detail {

template <class F>
double checked_eval(F& f, double x) {
  const double v = f(x);
  if (std::isnan(v) || v < 0.0) throw std::domain_error("build_envelope: density returned NaN or a negative value");
  return v;
}

}  // namespace detail

// Strict: H_i = max of f at both cell edges and at every hint inside the
// cell. Midpoint: H_i = f(cell centre), ratios above 1 are clamped and counted.
template <class F>
Envelope build_envelope(F&& f, double a, double b, std::size_t k, std::span<const double> hints, EnvelopeMode mode) {
  if (k < 2) throw std::invalid_argument("build_envelope: k must be >= 2");
  if (!(b > a)) throw std::invalid_argument("build_envelope: support must satisfy a < b");
  if (mode == EnvelopeMode::Auto) mode = hints.empty() ? EnvelopeMode::Midpoint : EnvelopeMode::Strict;
  const double w = (b - a) / static_cast<double>(k);
  auto edge = [&](std::size_t i) { return i == k ? b : a + static_cast<double>(i) * w; };
  std::vector<double> h(k);
  if (mode == EnvelopeMode::Midpoint) {
    for (std::size_t i = 0; i < k; ++i) {
      h[i] = detail::checked_eval(f, 0.5 * (edge(i) + edge(i + 1)));
      if (h[i] <= 0.0 && (detail::checked_eval(f, edge(i)) > 0.0 || detail::checked_eval(f, edge(i + 1)) > 0.0))
        throw std::domain_error("build_envelope: zero midpoint height on a cell where the density is positive");
    }
    return Envelope(a, b, std::move(h), ClampPolicy::ClampAndCount);
  }
  std::vector<double> fe(k + 1);
  for (std::size_t i = 0; i <= k; ++i) fe[i] = detail::checked_eval(f, edge(i));
  std::vector<double> lo(k);
  for (std::size_t i = 0; i < k; ++i) {
    h[i] = std::max(fe[i], fe[i + 1]);
    lo[i] = std::min(fe[i], fe[i + 1]);  // valid while f is monotone on the cell
  }
  for (double s : hints) {
    if (!(s >= a && s <= b)) throw std::invalid_argument("build_envelope: hint outside the support");
    const double fs = detail::checked_eval(f, s);
    auto i = std::min<std::size_t>(static_cast<std::size_t>((s - a) / w), k - 1);
    // a hint on or next to an edge may belong to either neighbour
    for (std::size_t j = (i > 0 ? i - 1 : 0); j <= std::min(i + 1, k - 1); ++j)
      if (s >= edge(j) && s <= edge(j + 1)) {
        h[j] = std::max(h[j], fs);
        lo[j] = 0.0;
      }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (h[i] <= 0.0 && (fe[i] > 0.0 || fe[i + 1] > 0.0))
      throw std::domain_error("build_envelope: zero height on a cell where the density is positive");
  return Envelope(a, b, std::move(h), ClampPolicy::Strict, std::move(lo));
}

template <class F>
Envelope build_envelope(F&& f, double a, double b, std::size_t k, std::span<const double> hints) {
  return build_envelope(std::forward<F>(f), a, b, k, hints, EnvelopeMode::Auto);
}

// Envelope over [0, 2pi) using the density's own stationary points.
inline Envelope build_envelope_for(const CircularDensity& d, std::size_t k, EnvelopeMode mode = EnvelopeMode::Auto) {
  const auto hints = stationary_points(d);
  if (mode == EnvelopeMode::Strict && hints.empty() && !std::holds_alternative<Uniform>(d))
    throw std::invalid_argument("build_envelope_for: strict mode needs stationary points for this density");
  if (mode == EnvelopeMode::Auto && std::holds_alternative<Uniform>(d)) mode = EnvelopeMode::Strict;
  return build_envelope(DensityFn{&d}, 0.0, kTwoPi, k, hints, mode);
}

struct SampleStats {
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
  std::uint64_t clamped = 0;
  std::chrono::nanoseconds elapsed{0};

  double acceptance_pct() const {
    return proposed == 0 ? 0.0 : 100.0 * static_cast<double>(accepted) / static_cast<double>(proposed);
  }
  void merge(const SampleStats& o) {
    proposed += o.proposed;
    accepted += o.accepted;
    clamped += o.clamped;
    elapsed += o.elapsed;
  }
};

struct SampleResult {
  std::vector<double> samples;
  SampleStats stats;
};

template <class F>
SampleResult sample(const Envelope& e, F&& f, std::size_t n, RngStream& rng) {
  SampleResult res;
  res.samples.reserve(n);
  const auto h = e.heights();
  const double w = e.width(), a = e.a(), b = e.b();
  const double below_b = std::nextafter(b, a);
  const bool strict = e.policy() == ClampPolicy::Strict;
  const auto sq = e.squeeze();
  SampleStats& st = res.stats;
  const auto t0 = std::chrono::steady_clock::now();
  while (res.samples.size() < n) {
    const std::size_t i = e.select(rng.uniform());
    double y = a + (static_cast<double>(i) + rng.uniform()) * w;
    if (y >= b) y = below_b;
    ++st.proposed;
    if (!sq.empty()) {
      const double u = rng.uniform();
      if (u < sq[i]) {
        res.samples.push_back(y);
        ++st.accepted;
        continue;
      }
      const double ratio = f(y) / h[i];
      if (ratio > 1.0 + 1e-12)
        throw EnvelopeViolation("sample: density exceeds the strict envelope at " + std::to_string(y));
      if (u < ratio) {
        res.samples.push_back(y);
        ++st.accepted;
      }
      continue;
    }
    const double ratio = f(y) / h[i];
    if (ratio > 1.0) {
      if (strict) {
        if (ratio > 1.0 + 1e-12)
          throw EnvelopeViolation("sample: density exceeds the strict envelope at " + std::to_string(y));
      } else {
        ++st.clamped;
      }
    }
    if (rng.uniform() < ratio) {
      res.samples.push_back(y);
      ++st.accepted;
    }
  }
  st.elapsed = std::chrono::steady_clock::now() - t0;
  return res;
}

// Samples a CircularDensity, dispatching on the variant once rather than per proposal.
inline SampleResult sample_density(const Envelope& e, const CircularDensity& d, std::size_t n, RngStream& rng) {
  return std::visit([&](const auto& x) { return sample(e, [&x](double t) { return x.density(t); }, n, rng); }, d);
}

// Best-Fisher wrapped-Cauchy rejection scheme.
inline SampleResult sample_vmbfr(double mu, double kappa, std::size_t n, RngStream& rng) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("sample_vmbfr: kappa must be positive");
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  SampleResult res;
  res.samples.reserve(n);
  SampleStats& st = res.stats;
  const auto t0 = std::chrono::steady_clock::now();
  while (res.samples.size() < n) {
    const double z = std::cos(kPi * rng.uniform());
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = rng.uniform();
    const double u3 = rng.uniform();
    ++st.proposed;
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double dev = std::acos(std::clamp(f, -1.0, 1.0));
      res.samples.push_back(wrap_angle(u3 > 0.5 ? mu + dev : mu - dev));
      ++st.accepted;
    }
  }
  st.elapsed = std::chrono::steady_clock::now() - t0;
  return res;
}

// Splits n over `streams` independent (seed, s) streams, s = 0..streams-1,
// stream s taking n / streams draws plus one if s < n % streams. Output is
// concatenated in stream order, so it depends on (seed, streams) only and not
// on the number of threads.
template <class Draw>
SampleResult sample_partitioned(Draw&& draw, std::size_t n, std::uint64_t seed, std::size_t streams,
                                std::size_t threads) {
  if (streams == 0) throw std::invalid_argument("sample_partitioned: streams must be positive");
  threads = std::clamp<std::size_t>(threads, 1, streams);
  std::vector<SampleResult> parts(streams);
  auto work = [&](std::size_t s) {
    RngStream rng(seed, s);
    const std::size_t m = n / streams + (s < n % streams ? 1 : 0);
    parts[s] = draw(m, rng);
  };
  if (threads == 1) {
    for (std::size_t s = 0; s < streams; ++s) work(s);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t s = t; s < streams; s += threads) work(s);
      });
    for (auto& th : pool) th.join();
  }
  SampleResult out;
  out.samples.reserve(n);
  for (auto& p : parts) {
    out.samples.insert(out.samples.end(), p.samples.begin(), p.samples.end());
    out.stats.merge(p.stats);
  }
  return out;
}

enum class BenchmarkMethod { Envelope, Vmbfr };

struct BenchmarkTarget {
  std::string label;
  CircularDensity density;
  std::size_t k = 250;
  std::size_t n = 50000;
  BenchmarkMethod method = BenchmarkMethod::Envelope;
  EnvelopeMode mode = EnvelopeMode::Auto;
};

struct BenchmarkRow {
  std::string label;
  double acceptance_pct = 0.0;
  std::uint64_t clamped = 0;
  std::chrono::nanoseconds elapsed{0};        // sampling loop only
  std::chrono::nanoseconds build_elapsed{0};  // envelope construction
  double expected_pct = std::numeric_limits<double>::quiet_NaN();
};

inline BenchmarkRow run_benchmark_target(const BenchmarkTarget& t, RngStream& rng) {
  BenchmarkRow row;
  row.label = t.label;
  if (t.method == BenchmarkMethod::Vmbfr) {
    const auto* vm = std::get_if<VonMises>(&t.density);
    if (!vm) throw std::invalid_argument("acceptance_benchmark: vMBFR needs a von Mises target");
    const auto r = sample_vmbfr(vm->mu(), vm->kappa(), t.n, rng);
    row.acceptance_pct = r.stats.acceptance_pct();
    row.elapsed = r.stats.elapsed;
    return row;
  }
  const auto b0 = std::chrono::steady_clock::now();
  const Envelope env = build_envelope_for(t.density, t.k, t.mode);
  row.build_elapsed = std::chrono::steady_clock::now() - b0;
  const auto r = sample_density(env, t.density, t.n, rng);
  row.acceptance_pct = r.stats.acceptance_pct();
  row.clamped = r.stats.clamped;
  row.elapsed = r.stats.elapsed;
  if (env.policy() == ClampPolicy::Strict) row.expected_pct = 100.0 * env.expected_acceptance();
  return row;
}

inline std::vector<BenchmarkRow> acceptance_benchmark(const std::vector<BenchmarkTarget>& targets, RngStream& rng) {
  std::vector<BenchmarkRow> rows;
  rows.reserve(targets.size());
  for (const auto& t : targets) rows.push_back(run_benchmark_target(t, rng));
  return rows;
}

}  // namespace dirsamp
