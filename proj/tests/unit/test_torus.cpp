#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <dirsamp/inference.hpp>
#include <dirsamp/torus.hpp>

#include "../oracles.hpp"

using namespace dirsamp;

TEST(Torus, AreaElement) {
  EXPECT_EQ(area_element(TorusGeometry(1, 1), kPi), 0.0);
  EXPECT_EQ(area_element(TorusGeometry(2, 1), 0.0), 3.0);
  const TorusGeometry g(2.5, 0.7);
  const double inner = oracle::periodic_trapezoid([&](double t) { return area_element(g, t); });
  EXPECT_NEAR(kTwoPi * inner, 4 * kPi * kPi * g.r() * g.R(), 1e-9);
  EXPECT_NEAR(g.area(), 4 * kPi * kPi * g.r() * g.R(), 1e-12);
}

TEST(Torus, Embed) {
  const TorusGeometry g(2, 1);
  auto p = embed(g, 0, 0);
  EXPECT_NEAR(p[0], 3, 1e-15);
  EXPECT_NEAR(p[1], 0, 1e-15);
  EXPECT_NEAR(p[2], 0, 1e-15);
  p = embed(g, kPi / 2, kPi / 2);
  EXPECT_NEAR(p[0], 0, 1e-15);
  EXPECT_NEAR(p[1], 2, 1e-15);
  EXPECT_NEAR(p[2], 1, 1e-15);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) EXPECT_LT(std::abs(implicit_residual(g, embed(g, i * 0.2, j * 0.2))), 1e-12);
}

TEST(Torus, JacobianIdentity) {
  const TorusGeometry g(2, 0.8);
  const double h = 1e-6;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const double phi = i * kTwoPi / 16 + 0.1, th = j * kTwoPi / 16 + 0.05;
      std::array<double, 3> dp, dt;
      const auto pp = embed(g, phi + h, th), pm = embed(g, phi - h, th);
      const auto tp = embed(g, phi, th + h), tm = embed(g, phi, th - h);
      for (int c = 0; c < 3; ++c) {
        dp[c] = (pp[c] - pm[c]) / (2 * h);
        dt[c] = (tp[c] - tm[c]) / (2 * h);
      }
      auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      };
      const double det = dot(dp, dp) * dot(dt, dt) - dot(dp, dt) * dot(dp, dt);
      const double a = area_element(g, th);
      EXPECT_NEAR(a * a, det, 1e-6 * a * a);
    }
}

TEST(Torus, GeometryValidation) {
  EXPECT_THROW(TorusGeometry(1, 2), std::invalid_argument);
  EXPECT_THROW(TorusGeometry(0, 0), std::invalid_argument);
  EXPECT_NO_THROW(TorusGeometry::from_ratio(1, 1.0));
  EXPECT_THROW(TorusGeometry::from_ratio(1, 1.5), std::invalid_argument);
  EXPECT_THROW(ToroidalDensity(Uniform{}, Uniform{}, 1.0), std::invalid_argument);
}

TEST(VonCos, NormConst) {
  EXPECT_NEAR(voncos_norm_const(VonCosParams(0, 1e-12, 0.5)), kTwoPi, 1e-10);
  EXPECT_NEAR(voncos_norm_const(VonCosParams(kPi / 2, 3, 0.7)), kTwoPi * oracle::bessel_i(0, 3), 1e-9);
  for (double mu : {0.0, kPi / 3, 2.0, kPi})
    for (double k : {0.1, 1.0, 10.0})
      for (double nu : {0.1, 0.5, 0.9}) {
        const VonCosParams p(mu, k, nu);
        const double quad = oracle::periodic_trapezoid(
            [&](double t) { return std::exp(k * std::cos(t - mu)) * (1 + nu * std::cos(t)); });
        EXPECT_NEAR(voncos_norm_const(p), quad, 1e-10 * quad);
        // 2pi - mu is itself rounded, so equality holds to a few ulps rather than bitwise
        EXPECT_DOUBLE_EQ(voncos_norm_const(p), voncos_norm_const(VonCosParams(kTwoPi - mu, k, nu)));
      }
}

TEST(VonCos, Density) {
  EXPECT_NEAR(voncos_density(VonCosParams(0, 1e-12, 0.5), 0.0), 1.5 / kTwoPi, 1e-10);
  for (double t : {0.0, 1.0, 4.0})
    EXPECT_NEAR(voncos_density(VonCosParams(1.0, 2.0, 1e-12), t), density(CircularDensity(VonMises(1, 2)), t), 1e-9);
  const VonCosParams p(kPi / 3, 1, 0.5);
  EXPECT_NEAR(oracle::periodic_trapezoid([&](double t) { return voncos_density(p, t); }), 1.0, 1e-9);
  EXPECT_NEAR(voncos_density(p, 0.7), density(p.density(), 0.7), 1e-14);
}

TEST(ToroidalDensity, DoubleIntegralIsOne) {
  const std::vector<ToroidalDensity> ts{
      {VonMises(0, 3), VonMises(kPi / 4, 0.5), 0.95},
      {WrappedCauchy(1, 0.5), WrappedCauchy(2, 0.7), 0.5},
      {KatoJones(kPi / 3, kPi / 2, 0.5, 1), KatoJones(kPi / 3, kPi / 2, 0.9, 2), 0.8}};
  for (const auto& t : ts) {
    const double z = oracle::periodic_trapezoid(
        [&](double phi) { return oracle::periodic_trapezoid([&](double th) { return t(phi, th); }, 1024); }, 1024);
    EXPECT_NEAR(z, 1.0, 1e-7);
  }
}

TEST(SampleTorus, UniformProductGivesCardioidMarginal) {
  const ToroidalDensity t(Uniform{}, Uniform{}, 0.5);
  const auto g = TorusGeometry::from_ratio(1.0, 0.5);
  const auto s = sample_torus(t, g, 10000, 31);
  ASSERT_EQ(s.points.size(), 10000u);
  std::vector<double> th;
  for (const auto& p : s.points) {
    th.push_back(p.theta);
    EXPECT_LT(std::abs(implicit_residual(g, {p.x, p.y, p.z})), 1e-9);
  }
  EXPECT_GT(ks_test(th, CdfTable(Cardioid(0.5))).p_value, 0.01);
}

TEST(SampleTorus, VonMisesProductMarginals) {
  const ToroidalDensity t(VonMises(0, 3), VonMises(kPi / 4, 0.5), 0.95);
  const auto g = TorusGeometry::from_ratio(1.0, 0.95);
  const auto s = sample_torus(t, g, 10000, 4);
  std::vector<double> ph, th;
  for (const auto& p : s.points) {
    ph.push_back(p.phi);
    th.push_back(p.theta);
  }
  EXPECT_GT(ks_test(ph, CdfTable(VonMises(0, 3))).p_value, 0.01);
  EXPECT_GT(ks_test(th, CdfTable(t.vertical())).p_value, 0.01);
}

TEST(SampleTorus, StreamsAndEdgeCases) {
  const ToroidalDensity t(VonMises(0, 3), VonMises(1, 2), 0.5);
  const auto g = TorusGeometry::from_ratio(2.0, 0.5);
  EXPECT_TRUE(sample_torus(t, g, 0, 1).points.empty());
  EXPECT_THROW(sample_torus(t, TorusGeometry::from_ratio(2.0, 0.6), 10, 1), std::invalid_argument);
  const auto s = sample_torus(t, g, 500, 9);
  RngStream r0(9, 0);
  const auto phi = sample_density(build_envelope_for(t.horizontal(), 250), t.horizontal(), 500, r0);
  for (std::size_t i = 0; i < 500; ++i) EXPECT_EQ(s.points[i].phi, phi.samples[i]);
}

TEST(SampleTorus, CsvHeaderAndRows) {
  const ToroidalDensity t(Uniform{}, Uniform{}, 0.5);
  std::ostringstream os;
  write_torus_csv(os, sample_torus(t, TorusGeometry::from_ratio(1, 0.5), 3, 0).points);
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("phi,theta,x,y,z\n", 0), 0u);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
  std::ostringstream empty;
  write_torus_csv(empty, {});
  EXPECT_EQ(empty.str(), "phi,theta,x,y,z\n");
}
