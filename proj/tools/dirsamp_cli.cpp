// dirsamp command line. Exit codes: 0 ok, 1 usage or parameter error, 2 fit
// did not converge.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <dirsamp/dirsamp.hpp>

#include "tables.hpp"

using namespace dirsamp;
using nlohmann::ordered_json;

namespace {

constexpr double kDeg = kPi / 180.0;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

// --spec may be inline JSON or @path.
nlohmann::json read_json_arg(const std::string& s) {
  std::string text = s;
  if (!s.empty() && s[0] == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw UsageError("cannot read '" + s.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

// "vonmises:0,3", "wrappedcauchy:0,0.5", "uniform", ... or a JSON object.
nlohmann::json parse_compact(const std::string& s) {
  if (!s.empty() && (s[0] == '{' || s[0] == '@')) return read_json_arg(s);
  const auto colon = s.find(':');
  const std::string tag = s.substr(0, colon);
  std::vector<double> v;
  if (colon != std::string::npos) {
    std::stringstream ss(s.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw UsageError("bad number '" + tok + "' in '" + s + "'");
      }
    }
  }
  static const std::map<std::string, std::vector<std::string>> fields{
      {"uniform", {}},
      {"vonmises", {"mu", "kappa"}},
      {"cardioid", {"nu"}},
      {"wrappedcauchy", {"mu", "rho"}},
      {"katojones", {"mu", "nu1", "rho", "kappa"}},
      {"voncos", {"mu", "kappa", "nu"}}};
  const auto it = fields.find(tag);
  if (it == fields.end()) throw UsageError("unknown distribution '" + tag + "'");
  if (v.size() != it->second.size())
    throw UsageError("'" + tag + "' takes " + std::to_string(it->second.size()) + " parameters");
  nlohmann::json j{{"dist", tag}};
  for (std::size_t i = 0; i < v.size(); ++i) j[it->second[i]] = v[i];
  return j;
}

ordered_json stats_json(const SampleStats& s) {
  return {{"acceptance_pct", s.acceptance_pct()},
          {"proposed", s.proposed},
          {"accepted", s.accepted},
          {"clamped", s.clamped},
          {"elapsed_ns", s.elapsed.count()}};
}

EnvelopeMode parse_mode(const std::string& m) {
  if (m == "strict") return EnvelopeMode::Strict;
  if (m == "midpoint") return EnvelopeMode::Midpoint;
  return EnvelopeMode::Auto;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string dist = "vonmises", spec, out, format = "csv", envelope = "auto", method = "envelope";
  double mu = 0, kappa = 1, nu = 0.5, rho = 0.5, nu1 = 0;
  std::size_t n = 1000, partitions = 250, streams = 1, threads = 1;
  std::uint64_t seed = 0;
  bool degrees = false;
};

int cmd_sample(const SampleArgs& a) {
  const double ang = a.degrees ? kDeg : 1.0;
  nlohmann::json j;
  if (!a.spec.empty()) {
    j = read_json_arg(a.spec);
  } else {
    j = {{"dist", a.dist}};
    auto set = [&](const char* key, double v, bool angle) {
      j[key] = angle ? v * ang : v;
    };
    if (a.dist == "vonmises") set("mu", a.mu, true), set("kappa", a.kappa, false);
    else if (a.dist == "cardioid") set("nu", a.nu, false);
    else if (a.dist == "wrappedcauchy") set("mu", a.mu, true), set("rho", a.rho, false);
    else if (a.dist == "katojones") set("mu", a.mu, true), set("nu1", a.nu1, true), set("rho", a.rho, false), set("kappa", a.kappa, false);
    else if (a.dist == "voncos") set("mu", a.mu, true), set("kappa", a.kappa, false), set("nu", a.nu, false);
    else if (a.dist != "uniform") throw UsageError("unknown distribution '" + a.dist + "'");
  }
  const CircularDensity d = density_from_json(j);
  SampleResult res;
  if (a.method == "vmbfr") {
    const auto* vm = std::get_if<VonMises>(&d);
    if (!vm) throw UsageError("--method vmbfr needs a von Mises target");
    const double mu = vm->mu(), kappa = vm->kappa();
    res = sample_partitioned([&](std::size_t m, RngStream& r) { return sample_vmbfr(mu, kappa, m, r); }, a.n, a.seed,
                             a.streams, a.threads);
  } else {
    if (a.partitions < 2) throw UsageError("--partitions must be at least 2");
    const Envelope env = build_envelope_for(d, a.partitions, parse_mode(a.envelope));
    res = sample_partitioned([&](std::size_t m, RngStream& r) { return sample_density(env, d, m, r); }, a.n, a.seed,
                             a.streams, a.threads);
  }
  const double scale = a.degrees ? 1.0 / kDeg : 1.0;
  Sink sink(a.out);
  auto& os = sink.os();
  if (a.format == "json") {
    ordered_json out{{"density", to_json(d)}, {"seed", a.seed}, {"n", a.n}, {"unit", a.degrees ? "degrees" : "radians"}};
    auto arr = ordered_json::array();
    for (double t : res.samples) arr.push_back(t * scale);
    out["samples"] = std::move(arr);
    os << out.dump() << "\n";
  } else {
    os << "theta\n";
    for (double t : res.samples) os << fmt17(t * scale) << "\n";
  }
  os.flush();
  std::cout << stats_json(res.stats).dump() << "\n";
  return 0;
}

// ------------------------------------------------------------- benchmark

struct BenchArgs {
  std::string table, format = "csv", out, envelope = "auto";
  std::size_t n = 50000, partitions = 250;
  int reps = 5;
  std::uint64_t seed = 0;
  bool jsonl = false;
};

int cmd_benchmark(const BenchArgs& a) {
  Sink sink(a.out);
  auto& os = sink.os();
  const bool json = a.jsonl || a.format == "json";
  if (a.table == "runtime") {
    auto rows = ordered_json::array();
    if (!json) os << "kappa,proposed_median_s,vmbfr_median_s,ratio,ref_proposed_s,ref_vmbfr_s,ref_ratio\n";
    for (const auto& p : tables::runtime_ref()) {
      const auto r = tables::runtime(p.kappa, a.n, a.reps, a.partitions, a.seed);
      ordered_json row{{"kappa", r.kappa},
                       {"proposed_median_s", r.proposed_median_s},
                       {"vmbfr_median_s", r.vmbfr_median_s},
                       {"ratio", r.ratio},
                       {"ref_proposed_s", p.proposed_s},
                       {"ref_vmbfr_s", p.vmbfr_s},
                       {"ref_ratio", p.proposed_s / p.vmbfr_s}};
      if (a.jsonl) os << row.dump() << "\n";
      else if (json) rows.push_back(row);
      else
        os << fmt17(r.kappa) << "," << fmt17(r.proposed_median_s) << "," << fmt17(r.vmbfr_median_s) << ","
           << fmt3(r.ratio) << "," << fmt3(p.proposed_s) << "," << fmt3(p.vmbfr_s) << "," << fmt3(p.proposed_s / p.vmbfr_s)
           << "\n";
    }
    if (json && !a.jsonl) os << ordered_json{{"table", "runtime"}, {"n", a.n}, {"reps", a.reps}, {"rows", rows}}.dump(2) << "\n";
    return 0;
  }
  const auto t = tables::acceptance_table(a.table);
  const auto res = tables::run(t, a.n, a.partitions, a.seed, parse_mode(a.envelope));
  const bool has_bf = !res.empty() && res.front().ref_vmbfr.has_value();
  auto rows = ordered_json::array();
  if (!json) {
    os << "# " << t.title << ", n=" << a.n << ", k=" << a.partitions << "\n";
    os << t.param_name << ",proposed_pct,ref,diff_pp,clamped_pct";
    if (has_bf) os << ",vmbfr_pct,ref_vmbfr,vmbfr_diff_pp";
    os << "\n";
  }
  for (const auto& r : res) {
    const double clamp_pct = r.proposed_count ? 100.0 * static_cast<double>(r.clamped) / r.proposed_count : 0.0;
    ordered_json row{{t.param_name, r.param},
                     {"proposed_pct", r.proposed_pct},
                     {"ref", r.ref_proposed},
                     {"diff_pp", r.proposed_pct - r.ref_proposed},
                     {"envelope", r.midpoint ? "midpoint" : "strict"},
                     {"clamped", r.clamped},
                     {"clamped_pct", clamp_pct}};
    if (has_bf) {
      row["vmbfr_pct"] = *r.vmbfr_pct;
      row["ref_vmbfr"] = *r.ref_vmbfr;
      row["vmbfr_diff_pp"] = *r.vmbfr_pct - *r.ref_vmbfr;
    }
    if (a.jsonl) os << row.dump() << "\n";
    else if (json) rows.push_back(row);
    else {
      os << fmt17(r.param) << "," << fmt3(r.proposed_pct) << "," << fmt3(r.ref_proposed) << ","
         << fmt3(r.proposed_pct - r.ref_proposed) << "," << fmt3(clamp_pct);
      if (has_bf) os << "," << fmt3(*r.vmbfr_pct) << "," << fmt3(*r.ref_vmbfr) << "," << fmt3(*r.vmbfr_pct - *r.ref_vmbfr);
      os << "\n";
    }
  }
  if (json && !a.jsonl)
    os << ordered_json{{"table", t.name}, {"title", t.title}, {"n", a.n}, {"k", a.partitions}, {"seed", a.seed}, {"rows", rows}}
              .dump(2)
       << "\n";
  return 0;
}

// ------------------------------------------------------------------- fit

struct FitArgs {
  std::string input, column = "0", model = "voncos3", out;
  bool degrees = false;
  int bins = 20, restarts = 4;
  std::uint64_t seed = 0;
};

ordered_json params_json(const ModelSpec& m, const Params& p) {
  ordered_json j;
  if (m.family != Family::VonCosSym2) j["mu"] = p.mu;
  j["kappa"] = p.kappa;
  if (m.family != Family::VonMises2) j["nu"] = p.nu;
  return j;
}

int cmd_fit(const FitArgs& a) {
  std::variant<std::string, std::size_t> col = a.column;
  if (!a.column.empty() && std::all_of(a.column.begin(), a.column.end(), ::isdigit))
    col = static_cast<std::size_t>(std::stoul(a.column));
  const auto series = load_angles_file(a.input, col, a.degrees ? AngleUnit::Degrees : AngleUnit::Radians);
  const ModelSpec m = ModelSpec::parse(a.model);
  FitOptions opt;
  opt.restarts = a.restarts;
  opt.seed = a.seed;
  const FitResult fr = fit_mle(m, series.values, opt);
  ordered_json out{{"model", m.name()},
                   {"n", fr.n},
                   {"skipped_rows", series.skipped},
                   {"estimates", params_json(m, fr.estimates)},
                   {"std_errors", params_json(m, fr.std_errors)},
                   {"loglik", fr.loglik},
                   {"aic", fr.aic},
                   {"bic", fr.bic},
                   {"converged", fr.converged},
                   {"score_norm", fr.score_norm},
                   {"singular_information", fr.singular_information},
                   {"restarts_used", fr.n_restarts_used}};
  try {
    const auto g = chi_squared_gof(series.values, fitted_density(m, fr.estimates), a.bins, m.dim());
    out["gof"] = {{"statistic", g.statistic}, {"dof", g.dof}, {"p_value", g.p_value}, {"bins", g.bins}};
  } catch (const std::invalid_argument& e) {
    out["gof"] = nullptr;
    out["gof_error"] = e.what();
  }
  Sink sink(a.out);
  sink.os() << out.dump(2) << "\n";
  if (!fr.converged) {
    std::cerr << "fit: optimiser did not converge (score norm " << fr.score_norm << ")\n";
    return 2;
  }
  return 0;
}

// --------------------------------------------------------------- analyze

struct AnalyzeArgs {
  double mu = 0, kappa = 1, nu = 0.5;
  int moments = 3;
  bool degrees = false;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& a) {
  if (a.moments < 0 || a.moments > 50) throw UsageError("--moments must lie in [0, 50]");
  const VonCosParams v(a.degrees ? a.mu * kDeg : a.mu, a.kappa, a.nu);
  auto moms = ordered_json::array();
  for (int p = 1; p <= a.moments; ++p) {
    const auto z = trig_moment(p, v);
    moms.push_back({{"p", p}, {"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}, {"arg", std::arg(z)}});
  }
  const auto rep = modality(v);
  auto crit = ordered_json::array();
  for (const auto& c : rep.critical_points)
    crit.push_back({{"angle", c.angle}, {"kind", c.kind == CriticalKind::Mode ? "mode" : "antimode"}});
  ordered_json out{{"params", {{"mu", v.mu}, {"kappa", v.kappa}, {"nu", v.nu}}},
                   {"moments", moms},
                   {"modality",
                    {{"classification", rep.classification == Modality::Bimodal ? "Bimodal" : "Unimodal"},
                     {"discriminant", rep.discriminant},
                     {"degenerate", rep.degenerate},
                     {"modes", rep.count(CriticalKind::Mode)},
                     {"critical_points", crit}}},
                   {"kl_cardioid", kl_from_cardioid(v)},
                   {"norm_const", voncos_norm_const(v)}};
  if (v.mu == 0.0) {
    const auto s = circular_summary(v);
    const auto ma = mode_antimode_values(v);
    out["summary"] = {{"rho1", s.rho1},
                      {"mu1", s.mu1},
                      {"circular_variance", s.variance},
                      {"mode_height", ma.mode_height},
                      {"antimode_height", ma.antimode_height}};
  } else {
    out["summary"] = nullptr;
  }
  Sink sink(a.out);
  sink.os() << out.dump(2) << "\n";
  return 0;
}

// ----------------------------------------------------------------- torus

struct TorusArgs {
  std::string h1 = "uniform", h2 = "uniform", out, format = "csv";
  double nu = 0.5, R = 1.0;
  std::size_t n = 1000, partitions = 250;
  std::uint64_t seed = 0;
};

int cmd_torus(const TorusArgs& a) {
  const CircularDensity h1 = density_from_json(parse_compact(a.h1));
  const auto j2 = parse_compact(a.h2);
  if (j2.value("dist", "") == "voncos" || j2.value("dist", "") == "areaweighted")
    throw UsageError("--h2 is the flat vertical base; the area weighting is applied from --nu");
  const BaseDensity base = detail::base_from_json(j2);
  if (!(a.nu > 0.0 && a.nu < 1.0)) throw UsageError("--nu must lie in (0, 1)");
  const TorusGeometry g = TorusGeometry::from_ratio(a.R, a.nu);
  const ToroidalDensity t(h1, base, g.nu());
  const auto s = sample_torus(t, g, a.n, a.seed, a.partitions);
  Sink sink(a.out);
  if (a.format == "json")
    sink.os() << ordered_json{{"R", g.R()}, {"r", g.r()}, {"nu", g.nu()}, {"h1", to_json(t.horizontal())},
                              {"h2", to_json(t.vertical())}, {"points", torus_json(s.points)}}
                     .dump()
              << "\n";
  else
    write_torus_csv(sink.os(), s.points);
  sink.os().flush();
  if (sink.to_file())
    std::cout << ordered_json{{"phi", stats_json(s.phi_stats)}, {"theta", stats_json(s.theta_stats)}}.dump() << "\n";
  return 0;
}

// ----------------------------------------------------------------- fetch

struct FetchArgs {
  double lat = 22.57, lon = 88.36;
  std::string start = "1982-01-01", end = "2023-12-31", cache_dir = ".", base_url = "https://power.larc.nasa.gov", out;
  unsigned month = 8;
  bool all_months = false, offline = false, no_cache = false;
};

int cmd_fetch(const FetchArgs& a) {
  PowerRequest r;
  r.lat = a.lat;
  r.lon = a.lon;
  r.start = parse_date(a.start);
  r.end = parse_date(a.end);
  if (!a.all_months) {
    if (a.month < 1 || a.month > 12) throw UsageError("--month must lie in 1..12");
    r.month = a.month;
  }
  PowerOptions o;
  o.base_url = a.base_url;
  o.cache_dir = a.cache_dir;
  o.offline = a.offline;
  o.use_cache = !a.no_cache;
  const auto s = fetch_power_wd10m(r, o);
  if (!a.out.empty()) save_angles_file(s, a.out);
  std::cout << ordered_json{{"count", s.count()},
                            {"dropped", s.skipped},
                            {"source", s.source},
                            {"cache", power_cache_path(r, o).string()},
                            {"out", a.out}}
                   .dump()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envelope rejection sampling, analysis and fitting for circular and toroidal densities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dirsamp 0.1.0");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw angles from a circular density; stats JSON goes to stdout last");
  sample->add_option("--dist", sa.dist, "uniform|vonmises|cardioid|wrappedcauchy|katojones|voncos")
      ->check(CLI::IsMember({"uniform", "vonmises", "cardioid", "wrappedcauchy", "katojones", "voncos"}));
  sample->add_option("--spec", sa.spec, "density as JSON (or @file), overrides --dist and its parameters");
  sample->add_option("--mu", sa.mu, "location (radians unless --degrees)");
  sample->add_option("--kappa", sa.kappa, "concentration");
  sample->add_option("--nu", sa.nu, "area weight / cardioid parameter in (0,1)");
  sample->add_option("--rho", sa.rho, "wrapped Cauchy / Kato-Jones rho in [0,1)");
  sample->add_option("--nu1", sa.nu1, "Kato-Jones second location (radians unless --degrees)");
  sample->add_option("--n", sa.n, "number of draws");
  sample->add_option("--partitions,-k", sa.partitions, "envelope cells k");
  sample->add_option("--streams", sa.streams, "independent RNG streams; output is stream 0 draws, then stream 1, ...")
      ->check(CLI::PositiveNumber);
  sample->add_option("--threads", sa.threads, "worker threads (does not change the output)")->check(CLI::PositiveNumber);
  sample->add_option("--seed", sa.seed, "64-bit seed");
  sample->add_option("--out,-o", sa.out, "output path (default stdout)");
  sample->add_option("--format", sa.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--envelope", sa.envelope, "auto|strict|midpoint")->check(CLI::IsMember({"auto", "strict", "midpoint"}));
  sample->add_option("--method", sa.method, "envelope|vmbfr")->check(CLI::IsMember({"envelope", "vmbfr"}));
  sample->add_flag("--degrees", sa.degrees, "angle parameters and output in degrees");

  BenchArgs ba;
  auto* bench = app.add_subcommand("benchmark", "Acceptance and runtime tables next to published values");
  bench->add_option("--table", ba.table, "table name")->required()->check(CLI::IsMember(tables::names()));
  bench->add_option("--n", ba.n, "draws per row (runtime: per repetition)");
  bench->add_option("--partitions,-k", ba.partitions, "envelope cells k");
  bench->add_option("--reps", ba.reps, "runtime repetitions (median reported)")->check(CLI::PositiveNumber);
  bench->add_option("--seed", ba.seed, "64-bit seed");
  bench->add_option("--envelope", ba.envelope, "auto|strict|midpoint")->check(CLI::IsMember({"auto", "strict", "midpoint"}));
  bench->add_option("--format", ba.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_flag("--jsonl", ba.jsonl, "one JSON object per row");
  bench->add_option("--out,-o", ba.out, "output path (default stdout)");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Maximum likelihood fit with chi-squared goodness of fit");
  fit->add_option("--input,-i", fa.input, "angle file")->required();
  fit->add_option("--column", fa.column, "column name or 0-based index");
  fit->add_flag("--degrees", fa.degrees, "input angles are in degrees");
  fit->add_option("--model", fa.model, "voncos3|voncos2|vonmises")->check(CLI::IsMember({"voncos3", "voncos2", "vonmises"}));
  fit->add_option("--bins", fa.bins, "chi-squared bins")->check(CLI::Range(2, 1000));
  fit->add_option("--restarts", fa.restarts, "random restarts")->check(CLI::NonNegativeNumber);
  fit->add_option("--seed", fa.seed, "64-bit seed for restarts");
  fit->add_option("--out,-o", fa.out, "output path (default stdout)");

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Moments, modality and KL divergence of the voncos density");
  analyze->add_option("--mu", aa.mu, "location (radians unless --degrees)");
  analyze->add_option("--kappa", aa.kappa, "concentration");
  analyze->add_option("--nu", aa.nu, "radius ratio in (0,1)");
  analyze->add_option("--moments", aa.moments, "highest moment order");
  analyze->add_flag("--degrees", aa.degrees, "--mu is in degrees");
  analyze->add_option("--out,-o", aa.out, "output path (default stdout)");

  TorusArgs ta;
  auto* torus = app.add_subcommand("torus", "Sample points on the curved torus; CSV phi,theta,x,y,z");
  torus->add_option("--h1", ta.h1, "horizontal density, e.g. vonmises:0,3 or JSON");
  torus->add_option("--h2", ta.h2, "flat vertical base, e.g. vonmises:0.785,0.5 or JSON");
  torus->add_option("--nu", ta.nu, "r/R in (0,1)");
  torus->add_option("--R", ta.R, "major radius")->check(CLI::PositiveNumber);
  torus->add_option("--n", ta.n, "number of points");
  torus->add_option("--partitions,-k", ta.partitions, "envelope cells k");
  torus->add_option("--seed", ta.seed, "64-bit seed");
  torus->add_option("--format", ta.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  torus->add_option("--out,-o", ta.out, "output path (default stdout)");

  FetchArgs xa;
  auto* fetch = app.add_subcommand("fetch", "Download daily 10 m wind direction from NASA POWER (cached)");
  fetch->add_option("--lat", xa.lat, "latitude");
  fetch->add_option("--lon", xa.lon, "longitude");
  fetch->add_option("--start", xa.start, "YYYY-MM-DD");
  fetch->add_option("--end", xa.end, "YYYY-MM-DD");
  fetch->add_option("--month", xa.month, "keep only this month (1-12)");
  fetch->add_flag("--all-months", xa.all_months, "keep every month");
  fetch->add_option("--cache-dir", xa.cache_dir, "cache directory");
  fetch->add_option("--base-url", xa.base_url, "API base URL");
  fetch->add_flag("--offline", xa.offline, "never touch the network");
  fetch->add_flag("--no-cache", xa.no_cache, "ignore an existing cache file");
  fetch->add_option("--out,-o", xa.out, "also write the angles (radians) to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*sample) return cmd_sample(sa);
    if (*bench) return cmd_benchmark(ba);
    if (*fit) return cmd_fit(fa);
    if (*analyze) return cmd_analyze(aa);
    if (*torus) return cmd_torus(ta);
    if (*fetch) return cmd_fetch(xa);
  } catch (const std::exception& e) {
    std::cerr << "dirsamp: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
