#pragma once

// Benchmark table definitions shared by the CLI and the acceptance binary.
// "ref" columns are published reference values, kept for side-by-side
// display; tolerances live in the acceptance suite.

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <dirsamp/dirsamp.hpp>

namespace dirsamp::tables {

struct Row {
  double param;
  CircularDensity density;
  double ref_proposed;
  std::optional<double> ref_vmbfr;  // von Mises tables only
};

struct Table {
  std::string name;
  std::string title;
  std::string param_name;
  std::vector<Row> rows;
};

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"vm1",   "vm2",    "runtime",      "voncos",
                                          "wc",    "kj-rho", "kj-kappa",     "torus-kj-rho",
                                          "torus-kj-kappa"};
  return n;
}

namespace detail {

inline Table von_mises(std::string name, std::string title, const std::vector<double>& kappa,
                       const std::vector<double>& prop, const std::vector<double>& bf) {
  Table t{std::move(name), std::move(title), "kappa", {}};
  for (std::size_t i = 0; i < kappa.size(); ++i) t.rows.push_back({kappa[i], VonMises(0.0, kappa[i]), prop[i], bf[i]});
  return t;
}

template <class Make>
Table generic(std::string name, std::string title, std::string param, const std::vector<double>& xs,
              const std::vector<double>& prop, Make make) {
  Table t{std::move(name), std::move(title), std::move(param), {}};
  for (std::size_t i = 0; i < xs.size(); ++i) t.rows.push_back({xs[i], make(xs[i]), prop[i], std::nullopt});
  return t;
}

}  // namespace detail

// Acceptance tables; "runtime" is handled separately.
inline Table acceptance_table(const std::string& name) {
  using detail::generic;
  const std::vector<double> k10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> r9{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  if (name == "vm1")
    return detail::von_mises(name, "von Mises mu=0, small kappa", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0},
                             {99.96, 99.92, 99.87, 99.85, 99.81, 99.77, 99.72, 99.71, 99.67, 99.65},
                             {99.76, 99.06, 97.90, 96.67, 95.04, 93.23, 91.88, 89.88, 88.12, 86.94});
  if (name == "vm2")
    return detail::von_mises(name, "von Mises mu=0, large kappa", {2, 3, 4, 5, 10, 20, 40, 60, 80, 100},
                             {99.48, 99.21, 99.02, 98.91, 98.462, 97.76, 96.96, 96.31, 96.76, 95.15},
                             {76.95, 72.37, 69.96, 69.46, 67.46, 66.64, 66.43, 65.96, 65.94, 65.69});
  if (name == "kj-kappa")
    return generic(name, "Kato-Jones mu=pi/3, nu1=pi/2, rho=0.5", "kappa", k10,
                   {98.742, 98.078, 97.502, 97.084, 96.756, 96.448, 96.298, 96.098, 95.604, 94.864},
                   [](double k) -> CircularDensity { return KatoJones(kPi / 3, kPi / 2, 0.5, k); });
  if (name == "kj-rho")
    return generic(name, "Kato-Jones mu=pi/3, nu1=pi/2, kappa=1", "rho", r9,
                   {99.496, 99.414, 99.250, 99.072, 98.710, 98.352, 97.598, 96.438, 92.424},
                   [](double r) -> CircularDensity { return KatoJones(kPi / 3, kPi / 2, r, 1.0); });
  if (name == "voncos")
    return generic(name, "voncos mu=pi/3, nu=0.5", "kappa", k10,
                   {99.456, 99.430, 99.498, 99.434, 99.438, 99.478, 99.440, 99.468, 98.428, 98.228},
                   [](double k) { return make_voncos(kPi / 3, k, 0.5); });
  if (name == "wc")
    return generic(name, "area-weighted wrapped Cauchy mu=0, nu=0.5", "rho", r9,
                   {99.710, 99.584, 99.520, 99.398, 99.290, 99.084, 98.772, 98.154, 96.090},
                   [](double r) -> CircularDensity { return AreaWeighted(WrappedCauchy(0.0, r), 0.5); });
  if (name == "torus-kj-kappa")
    return generic(name, "area-weighted Kato-Jones mu=pi/2, nu1=pi, rho=0.5, nu=0.5", "kappa", k10,
                   {99.058, 99.066, 99.110, 99.128, 99.098, 99.136, 99.130, 99.138, 99.144, 99.144},
                   [](double k) -> CircularDensity { return AreaWeighted(KatoJones(kPi / 2, kPi, 0.5, k), 0.5); });
  if (name == "torus-kj-rho")
    return generic(name, "area-weighted Kato-Jones mu=pi/2, nu1=pi, kappa=1, nu=0.5", "rho", r9,
                   {99.376, 99.274, 99.246, 98.834, 98.640, 98.290, 97.418, 96.216, 92.412},
                   [](double r) -> CircularDensity { return AreaWeighted(KatoJones(kPi / 2, kPi, r, 1.0), 0.5); });
  throw std::invalid_argument("unknown table '" + name + "'");
}

struct Result {
  double param;
  double proposed_pct, ref_proposed;
  std::uint64_t proposed_count, clamped;
  bool midpoint;
  std::optional<double> vmbfr_pct, ref_vmbfr;
};

// Row i draws from stream i (proposed) and stream 1000 + i (vMBFR).
inline std::vector<Result> run(const Table& t, std::size_t n, std::size_t k, std::uint64_t seed,
                               EnvelopeMode mode = EnvelopeMode::Auto) {
  std::vector<Result> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Row& row = t.rows[i];
    RngStream rng(seed, i);
    const Envelope env = build_envelope_for(row.density, k, mode);
    const auto r = sample_density(env, row.density, n, rng);
    Result res{row.param, r.stats.acceptance_pct(), row.ref_proposed, r.stats.proposed, r.stats.clamped,
               env.policy() == ClampPolicy::ClampAndCount, std::nullopt, row.ref_vmbfr};
    if (row.ref_vmbfr) {
      RngStream rb(seed, 1000 + i);
      const auto& vm = std::get<VonMises>(row.density);
      res.vmbfr_pct = sample_vmbfr(vm.mu(), vm.kappa(), n, rb).stats.acceptance_pct();
    }
    out.push_back(res);
  }
  return out;
}

// Average seconds for 10^6 draws at k = 250, as published.
struct RuntimeRef {
  double kappa, proposed_s, vmbfr_s;
};

inline const std::vector<RuntimeRef>& runtime_ref() {
  static const std::vector<RuntimeRef> v{{0.1, 3.46, 6.23}, {0.5, 3.53, 6.29}, {1, 3.51, 6.29},
                                           {5, 3.60, 6.27},   {10, 3.64, 6.28},  {20, 3.44, 6.25},
                                           {50, 3.71, 6.31},  {100, 3.96, 6.30}};
  return v;
}

struct RuntimeResult {
  double kappa;
  double proposed_median_s, vmbfr_median_s;
  double ratio;  // proposed / vmbfr
};

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Proposed timing includes the envelope build.
inline RuntimeResult runtime(double kappa, std::size_t n, int reps, std::size_t k, std::uint64_t seed) {
  std::vector<double> tp, tb;
  const CircularDensity d = VonMises(0.0, kappa);
  for (int r = 0; r < reps; ++r) {
    RngStream rp(seed, 2 * static_cast<std::uint64_t>(r)), rb(seed, 2 * static_cast<std::uint64_t>(r) + 1);
    const auto t0 = std::chrono::steady_clock::now();
    const Envelope env = build_envelope_for(d, k);
    const auto s = sample_density(env, d, n, rp);
    const auto t1 = std::chrono::steady_clock::now();
    const auto b = sample_vmbfr(0.0, kappa, n, rb);
    const auto t2 = std::chrono::steady_clock::now();
    if (s.samples.size() != n || b.samples.size() != n) throw std::logic_error("runtime: short sample");
    tp.push_back(std::chrono::duration<double>(t1 - t0).count());
    tb.push_back(std::chrono::duration<double>(t2 - t1).count());
  }
  const double p = median(tp), q = median(tb);
  return {kappa, p, q, p / q};
}

}  // namespace dirsamp::tables
