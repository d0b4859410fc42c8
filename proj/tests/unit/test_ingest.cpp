#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include <dirsamp/ingest.hpp>

using namespace dirsamp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dirsamp_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static std::atomic<int>& counter() {
    static std::atomic<int> c{0};
    return c;
  }
  fs::path write(const std::string& name, const std::string& body) const {
    std::ofstream(path / name) << body;
    return path / name;
  }
};

std::string power_body() {
  // two Augusts and a July day, one fill value
  return R"({"header":{"fill_value":-999.0},"properties":{"parameter":{"WD10M":{
    "20200731":10.0,"20200801":180.0,"20200802":-999.0,"20200803":450.0,"20210801":90.0}}}})";
}

class PowerServer {
 public:
  PowerServer() {
    svr_.Get("/api/temporal/daily/point", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      last_query = req.params;
      if (req.get_param_value("latitude") == "0.0000") {
        res.status = 500;
        res.set_content("boom", "text/plain");
        return;
      }
      if (req.get_param_value("latitude") == "1.0000") {
        res.set_content(R"({"properties":{}})", "application/json");
        return;
      }
      res.set_content(power_body(), "application/json");
    });
    port_ = svr_.bind_to_any_port("127.0.0.1");
    th_ = std::thread([this] { svr_.listen_after_bind(); });
    svr_.wait_until_ready();
  }
  ~PowerServer() {
    svr_.stop();
    th_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::atomic<int> hits{0};
  httplib::Params last_query;

 private:
  httplib::Server svr_;
  int port_ = 0;
  std::thread th_;
};

}  // namespace

TEST(LoadAngles, DegreesAndWrap) {
  TempDir d;
  auto s = load_angles_file(d.write("a.txt", "180\n"), std::size_t{0}, AngleUnit::Degrees);
  ASSERT_EQ(s.count(), 1u);
  EXPECT_NEAR(s.values[0], kPi, 1e-15);
  s = load_angles_file(d.write("b.txt", "450\n"), std::size_t{0}, AngleUnit::Degrees);
  EXPECT_NEAR(s.values[0], kPi / 2, 1e-15);
  s = load_angles_file(d.write("c.txt", "-1\n"), std::size_t{0}, AngleUnit::Radians);
  EXPECT_NEAR(s.values[0], kTwoPi - 1, 1e-15);
}

TEST(LoadAngles, HeaderColumnsAndSkips) {
  TempDir d;
  const auto p = d.write("w.csv", "date,wd,ws\n2020-08-01,90,3.1\n2020-08-02,,2.0\n2020-08-03,abc,1\n2020-08-04,270,0.5\n");
  const auto s = load_angles_file(p, std::string("wd"), AngleUnit::Degrees);
  ASSERT_EQ(s.count(), 2u);
  EXPECT_EQ(s.skipped, 2u);
  EXPECT_NEAR(s.values[1], 1.5 * kPi, 1e-15);
  const auto byidx = load_angles_file(p, std::size_t{1}, AngleUnit::Degrees);
  EXPECT_EQ(byidx.values, s.values);
  const auto ws = load_angles_file(d.write("ws.txt", "  1.0   2.0\n 3.0\t4.0\n"), std::size_t{1}, AngleUnit::Radians);
  EXPECT_EQ(ws.values, (std::vector<double>{2.0, 4.0}));
}

TEST(LoadAngles, Errors) {
  TempDir d;
  EXPECT_THROW(load_angles_file(d.path / "missing.txt", std::size_t{0}, AngleUnit::Degrees), IngestError);
  EXPECT_THROW(load_angles_file(d.write("h.csv", "a,b\n1,2\n"), std::string("c"), AngleUnit::Degrees), IngestError);
  EXPECT_THROW(load_angles_file(d.write("e.csv", "a\nx\n\n"), std::size_t{0}, AngleUnit::Degrees), IngestError);
  EXPECT_THROW(load_angles_file(d.write("i.csv", "1,2\n"), std::size_t{5}, AngleUnit::Degrees), IngestError);
}

TEST(LoadAngles, RoundTripIsBitExact) {
  TempDir d;
  AngleSeries s;
  for (int i = 0; i < 1000; ++i) s.values.push_back(wrap_angle(std::sin(i * 12.9898) * 43758.5453));
  s.values.push_back(0.0);
  s.values.push_back(std::nextafter(kTwoPi, 0.0));
  save_angles_file(s, d.path / "rt.csv");
  const auto back = load_angles_file(d.path / "rt.csv", std::string("theta"), AngleUnit::Radians);
  ASSERT_EQ(back.values.size(), s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) EXPECT_EQ(back.values[i], s.values[i]);
  for (double v : back.values) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, kTwoPi);
  }
}

TEST(Power, ParseAndMonthFilter) {
  auto all = parse_power_json(power_body(), std::nullopt);
  EXPECT_EQ(all.count(), 4u);
  EXPECT_EQ(all.skipped, 1u);
  auto aug = parse_power_json(power_body(), 8u);
  ASSERT_EQ(aug.count(), 3u);
  EXPECT_NEAR(aug.values[0], kPi, 1e-15);
  EXPECT_NEAR(aug.values[1], kPi / 2, 1e-15);
  EXPECT_THROW(parse_power_json("not json", std::nullopt), IngestError);
  EXPECT_THROW(parse_power_json(R"({"properties":{}})", std::nullopt), IngestError);
}

TEST(Power, DateValidation) {
  EXPECT_THROW(parse_date("2020-02-30"), std::invalid_argument);
  EXPECT_THROW(parse_date("20200201"), std::invalid_argument);
  PowerRequest r{22.57, 88.36, parse_date("2023-12-31"), parse_date("1982-01-01"), 8u};
  EXPECT_THROW(fetch_power_wd10m(r, {}), std::invalid_argument);
}

TEST(Power, OfflineWithoutCache) {
  TempDir d;
  PowerOptions o;
  o.cache_dir = d.path;
  o.offline = true;
  try {
    fetch_power_wd10m({22.57, 88.36, parse_date("1982-01-01"), parse_date("2023-12-31"), 8u}, o);
    FAIL() << "expected an error";
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("load_angles_file"), std::string::npos);
  }
}

TEST(Power, FetchFromLocalServerAndCache) {
  PowerServer srv;
  TempDir d;
  PowerOptions o;
  o.base_url = srv.url();
  o.cache_dir = d.path;
  const PowerRequest r{22.57, 88.36, parse_date("2020-07-31"), parse_date("2021-08-01"), 8u};
  const auto s = fetch_power_wd10m(r, o);
  EXPECT_EQ(s.count(), 3u);
  EXPECT_EQ(srv.hits.load(), 1);
  EXPECT_EQ(srv.last_query.find("parameters")->second, "WD10M");
  EXPECT_EQ(srv.last_query.find("community")->second, "AG");
  EXPECT_EQ(srv.last_query.find("start")->second, "20200731");
  EXPECT_EQ(srv.last_query.find("end")->second, "20210801");
  EXPECT_EQ(srv.last_query.find("format")->second, "JSON");
  const auto cache = power_cache_path(r, o);
  ASSERT_TRUE(fs::exists(cache));
  ASSERT_TRUE(fs::exists(cache.string() + ".json"));
  const auto meta = nlohmann::json::parse(std::ifstream(cache.string() + ".json"));
  EXPECT_EQ(meta["count"], 3);
  EXPECT_EQ(meta["dropped_fill_values"], 1);
  // second call is served from the cache, even offline
  o.offline = true;
  const auto again = fetch_power_wd10m(r, o);
  EXPECT_EQ(again.values, s.values);
  EXPECT_EQ(srv.hits.load(), 1);
}

TEST(Power, HttpAndSchemaErrors) {
  PowerServer srv;
  TempDir d;
  PowerOptions o;
  o.base_url = srv.url();
  o.cache_dir = d.path;
  try {
    fetch_power_wd10m({0.0, 0.0, parse_date("2020-01-01"), parse_date("2020-01-02"), std::nullopt}, o);
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("500"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
  EXPECT_THROW(fetch_power_wd10m({1.0, 0.0, parse_date("2020-01-01"), parse_date("2020-01-02"), std::nullopt}, o),
               IngestError);
  PowerOptions dead = o;
  dead.base_url = "http://127.0.0.1:1";
  EXPECT_THROW(fetch_power_wd10m({2.0, 0.0, parse_date("2020-01-01"), parse_date("2020-01-02"), std::nullopt}, dead),
               IngestError);
}
