#pragma once
// Angle files on disk and the NASA POWER daily point API (WD10M).

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <httplib.h>
// <resolv.h> (via httplib) defines _res, which clashes with Eigen internals.
#ifdef _res
#undef _res
#endif
#include <nlohmann/json.hpp>

#include "special_fn.hpp"

namespace dirsamp {

enum class AngleUnit { Degrees, Radians };

struct AngleSeries {
  std::vector<double> values;  // radians in [0, 2pi)
  AngleUnit unit_source = AngleUnit::Radians;
  std::string source;
  std::size_t skipped = 0;  // unparseable or missing rows

  std::size_t count() const { return values.size(); }
};

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double to_radians(double v, AngleUnit u) {
  return wrap_angle(u == AngleUnit::Degrees ? v * (kPi / 180.0) : v);
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool any = false;
  const bool comma = line.find(',') != std::string::npos;
  for (char ch : line) {
    const bool sep = comma ? ch == ',' : (ch == ' ' || ch == '\t');
    if (sep) {
      if (comma || any) out.push_back(cur);
      cur.clear();
      any = false;
    } else if (ch != '\r') {
      cur += ch;
      any = true;
    }
  }
  if (comma || any) out.push_back(cur);
  for (auto& f : out) {
    const auto b = f.find_first_not_of(" \t\"");
    const auto e = f.find_last_not_of(" \t\"");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return out;
}

inline std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace detail

// column: a header name or a zero-based index. A first row whose selected
// field does not parse as a number is treated as a header.
inline AngleSeries load_angles_file(const std::filesystem::path& path, const std::variant<std::string, std::size_t>& column,
                                    AngleUnit unit) {
  std::ifstream in(path);
  if (!in) throw IngestError("file not found: " + path.string());
  AngleSeries out;
  out.unit_source = unit;
  out.source = path.string();
  std::string line;
  std::optional<std::size_t> col;
  if (const auto* idx = std::get_if<std::size_t>(&column)) col = *idx;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = detail::split_fields(line);
    if (first) {
      first = false;
      if (const auto* name = std::get_if<std::string>(&column)) {
        for (std::size_t i = 0; i < fields.size(); ++i)
          if (fields[i] == *name) col = i;
        if (!col) throw IngestError("column not found: " + *name);
        continue;
      }
      if (*col >= fields.size() || !detail::parse_double(fields[*col])) {
        if (*col >= fields.size()) throw IngestError("column not found: index " + std::to_string(*col));
        continue;  // header row
      }
    }
    const auto v = *col < fields.size() ? detail::parse_double(fields[*col]) : std::nullopt;
    if (!v) {
      ++out.skipped;
      continue;
    }
    out.values.push_back(to_radians(*v, unit));
  }
  if (out.values.empty()) throw IngestError("no valid rows in " + path.string());
  return out;
}

// One radian value per row, 17 significant digits so a reload is exact.
inline void save_angles_file(const AngleSeries& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write " + path.string());
  out << "theta\n";
  char buf[40];
  for (double v : s.values) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out << buf;
  }
}

struct PowerRequest {
  double lat = 0.0, lon = 0.0;
  std::chrono::year_month_day start{}, end{};
  std::optional<unsigned> month;  // 1..12
};

struct PowerOptions {
  std::string base_url = "https://power.larc.nasa.gov";
  std::string endpoint = "/api/temporal/daily/point";
  std::filesystem::path cache_dir = ".";
  bool offline = false;
  bool use_cache = true;
};

inline std::chrono::year_month_day parse_date(const std::string& s) {
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3)
    throw std::invalid_argument("date must be YYYY-MM-DD: " + s);
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) throw std::invalid_argument("invalid calendar date: " + s);
  return ymd;
}

inline std::string compact_date(const std::chrono::year_month_day& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d%02u%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

inline std::filesystem::path power_cache_path(const PowerRequest& r, const PowerOptions& o) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "power_WD10M_%.4f_%.4f_%s_%s%s.csv", r.lat, r.lon, compact_date(r.start).c_str(),
                compact_date(r.end).c_str(), r.month ? ("_m" + std::to_string(*r.month)).c_str() : "");
  return o.cache_dir / buf;
}

// Values from a POWER daily JSON document: properties.parameter.WD10M is a
// map from YYYYMMDD to degrees; the fill value (-999) is dropped.
inline AngleSeries parse_power_json(const std::string& body, std::optional<unsigned> month) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const std::exception& e) {
    throw IngestError(std::string("POWER response is not JSON: ") + e.what() + "; body: " + body.substr(0, 200));
  }
  const auto ptr = nlohmann::json::json_pointer("/properties/parameter/WD10M");
  if (!j.contains(ptr) || !j[ptr].is_object())
    throw IngestError("POWER response lacks properties.parameter.WD10M; body: " + body.substr(0, 200));
  double fill = -999.0;
  const auto fptr = nlohmann::json::json_pointer("/header/fill_value");
  if (j.contains(fptr) && j[fptr].is_number()) fill = j[fptr].get<double>();
  AngleSeries out;
  out.unit_source = AngleUnit::Degrees;
  out.source = "NASA POWER WD10M";
  for (const auto& [key, val] : j[ptr].items()) {
    if (key.size() != 8) throw IngestError("POWER response: unexpected date key '" + key + "'");
    if (month && std::stoul(key.substr(4, 2)) != *month) continue;
    if (!val.is_number() || val.get<double>() == fill || val.get<double>() == -999.0) {
      ++out.skipped;
      continue;
    }
    out.values.push_back(to_radians(val.get<double>(), AngleUnit::Degrees));
  }
  return out;
}

inline AngleSeries fetch_power_wd10m(const PowerRequest& r, const PowerOptions& o = {}) {
  if (!r.start.ok() || !r.end.ok()) throw std::invalid_argument("fetch_power_wd10m: invalid date");
  if (std::chrono::sys_days(r.end) < std::chrono::sys_days(r.start))
    throw std::invalid_argument("fetch_power_wd10m: end date precedes start date");
  if (r.month && (*r.month < 1 || *r.month > 12)) throw std::invalid_argument("fetch_power_wd10m: month must be 1..12");
  const auto cache = power_cache_path(r, o);
  if (o.use_cache && std::filesystem::exists(cache)) {
    auto s = load_angles_file(cache, std::string("theta"), AngleUnit::Radians);
    s.unit_source = AngleUnit::Degrees;
    s.source = "NASA POWER WD10M (cache " + cache.string() + ")";
    return s;
  }
  if (o.offline)
    throw IngestError("offline mode: no cached POWER data at " + cache.string() +
                      "; load a local file with load_angles_file instead");

  httplib::Client cli(o.base_url);
  cli.set_connection_timeout(20);
  cli.set_read_timeout(120);
  cli.set_follow_location(true);
  char lat[32], lon[32];
  std::snprintf(lat, sizeof lat, "%.4f", r.lat);
  std::snprintf(lon, sizeof lon, "%.4f", r.lon);
  const httplib::Params q{{"parameters", "WD10M"}, {"community", "AG"}, {"latitude", lat}, {"longitude", lon},
                          {"start", compact_date(r.start)}, {"end", compact_date(r.end)}, {"format", "JSON"}};
  auto res = cli.Get(o.endpoint, q, httplib::Headers{});
  if (!res) throw IngestError("POWER request failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw IngestError("POWER returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  auto s = parse_power_json(res->body, r.month);
  if (o.use_cache) {
    std::filesystem::create_directories(o.cache_dir);
    save_angles_file(s, cache);
    nlohmann::ordered_json meta{{"source", "NASA POWER daily point"}, {"parameter", "WD10M"},
                                {"latitude", r.lat}, {"longitude", r.lon},
                                {"start", compact_date(r.start)}, {"end", compact_date(r.end)},
                                {"month", r.month ? nlohmann::ordered_json(*r.month) : nlohmann::ordered_json()},
                                {"count", s.count()}, {"dropped_fill_values", s.skipped}, {"unit", "radians"}};
    std::ofstream(cache.string() + ".json") << meta.dump(2) << "\n";
  }
  return s;
}

}  // namespace dirsamp
