#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <dirsamp/analysis.hpp>
#include <dirsamp/rng.hpp>

#include "../oracles.hpp"

using namespace dirsamp;

namespace {

std::vector<VonCosParams> grid27() {
  std::vector<VonCosParams> g;
  for (double mu : {0.0, kPi / 3, 2.5})
    for (double k : {0.2, 1.5, 8.0})
      for (double nu : {0.1, 0.5, 0.9}) g.emplace_back(mu, k, nu);
  return g;
}

std::complex<double> moment_by_quadrature(int p, const VonCosParams& v) {
  const auto d = v.density();
  const double re = oracle::periodic_trapezoid([&](double t) { return std::cos(p * t) * density(d, t); });
  const double im = oracle::periodic_trapezoid([&](double t) { return std::sin(p * t) * density(d, t); });
  return {re, im};
}

int grid_mode_count(const VonCosParams& v, int n = 100000) {
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = voncos_density(v, i * kTwoPi / n);
  int modes = 0;
  for (int i = 0; i < n; ++i) {
    const double l = f[(i + n - 1) % n], r = f[(i + 1) % n];
    if (f[i] > l && f[i] >= r) ++modes;
  }
  return modes;
}

}  // namespace

TEST(Quartic, ConstructedFactorization) {
  const auto r = solve_quartic({1, 0, -5, 0, 4});
  ASSERT_EQ(r.size(), 4u);
  const double want[] = {-2, -1, 1, 2};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r[i], want[i], 1e-12);
}

TEST(Quartic, SymmetricLocationHasSingleRoot) {
  for (double k : {0.1, 1.0, 9.0})
    for (double nu : {0.2, 0.8}) {
      const auto c = voncos_quartic(0.0, k, nu);
      EXPECT_EQ(c.d4, 0.0);
      EXPECT_EQ(c.d2, 0.0);
      const auto r = solve_quartic(c);
      ASSERT_EQ(r.size(), 1u);
      EXPECT_NEAR(r[0], 0.0, 1e-15);
    }
}

TEST(Quartic, RepeatedRoots) {
  // (x - 1)^2 (x + 3)^2
  const auto r = solve_quartic({1, 4, -2, -12, 9});
  ASSERT_EQ(r.size(), 4u);
  EXPECT_NEAR(r[0], -3, 1e-7);
  EXPECT_NEAR(r[1], -3, 1e-7);
  EXPECT_NEAR(r[2], 1, 1e-7);
  EXPECT_NEAR(r[3], 1, 1e-7);
}

TEST(Quartic, AllZeroIsAnError) { EXPECT_THROW(solve_quartic({0, 0, 0, 0, 0}), std::invalid_argument); }

TEST(Quartic, MatchesCompanionOracleOnRandomGrid) {
  RngStream rng(11, 0);
  for (int i = 0; i < 300; ++i) {
    const double mu = kTwoPi * rng.uniform(), k = 0.05 + 10 * rng.uniform(), nu = 0.01 + 0.98 * rng.uniform();
    const auto c = voncos_quartic(mu, k, nu);
    const auto got = solve_quartic(c);
    const auto want = oracle::quartic_roots(c.d4, c.d3, c.d2, c.d1, c.d0);
    ASSERT_EQ(got.size(), want.size()) << mu << " " << k << " " << nu;
    for (std::size_t j = 0; j < got.size(); ++j) {
      EXPECT_NEAR(got[j], want[j], 1e-7 * std::max(1.0, std::abs(want[j])));
      EXPECT_LT(std::abs(c(got[j])), 1e-8 * std::max(1.0, std::pow(std::abs(got[j]), 4)));
    }
  }
}

TEST(Quartic, DiscriminantFromRoots) {
  // a^6 prod_{i<j} (r_i - r_j)^2 for 2 (x-1)(x+2)(x-3)(x+0.5)
  const double r[] = {1, -2, 3, -0.5};
  double prod = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) prod *= (r[i] - r[j]) * (r[i] - r[j]);
  // expand 2 (x-1)(x+2)(x-3)(x+0.5)
  const QuarticCoeffs c{2, -3, -12, 7, 6};
  for (double x : r) EXPECT_NEAR(c(x), 0.0, 1e-12);
  EXPECT_NEAR(discriminant(c), 64 * prod, 1e-9 * 64 * prod);
}

TEST(TrigMoment, OrderZeroIsOne) {
  for (const auto& v : grid27()) EXPECT_EQ(trig_moment(0, v), std::complex<double>(1.0, 0.0));
}

TEST(TrigMoment, CardioidLimit) {
  const auto m = trig_moment(1, VonCosParams(0.7, 1e-9, 0.4));
  EXPECT_NEAR(m.real(), 0.2, 1e-8);
  EXPECT_NEAR(m.imag(), 0.0, 1e-8);
}

TEST(TrigMoment, VonMisesLimit) {
  const double mu = 1.2, k = 3.0;
  for (int p = 1; p <= 4; ++p) {
    const auto m = trig_moment(p, VonCosParams(mu, k, 1e-12));
    const auto want = std::polar(oracle::bessel_i(p, k) / oracle::bessel_i(0, k), p * mu);
    EXPECT_NEAR(m.real(), want.real(), 1e-10);
    EXPECT_NEAR(m.imag(), want.imag(), 1e-10);
  }
}

TEST(TrigMoment, MatchesQuadrature) {
  for (const auto& v : grid27())
    for (int p = -3; p <= 3; ++p) {
      const auto got = trig_moment(p, v), want = moment_by_quadrature(p, v);
      EXPECT_NEAR(got.real(), want.real(), 1e-8);
      EXPECT_NEAR(got.imag(), want.imag(), 1e-8);
      EXPECT_LE(std::abs(got), 1.0 + 1e-15);
    }
}

TEST(TrigMoment, SymmetryCriterion) {
  for (int p = 1; p <= 5; ++p) EXPECT_EQ(trig_moment(p, VonCosParams(0.0, 2.0, 0.6)).imag(), 0.0);
  for (double mu : {kPi / 6, kPi / 3}) {
    double mx = 0;
    for (int p = 1; p <= 5; ++p) mx = std::max(mx, std::abs(trig_moment(p, VonCosParams(mu, 1.0, 0.5)).imag()));
    EXPECT_GT(mx, 1e-4);
  }
}

TEST(TrigMoment, OrderLimit) {
  EXPECT_NO_THROW(trig_moment(50, VonCosParams(0, 1, 0.5)));
  EXPECT_THROW(trig_moment(51, VonCosParams(0, 1, 0.5)), std::invalid_argument);
}

TEST(Summary, Limits) {
  EXPECT_NEAR(circular_summary(VonCosParams(0, 1e-9, 0.3)).variance, 1 - 0.3 / 2, 1e-8);
  // the cardioid's mean resultant length is nu/2, so v = 1 - nu/2
  EXPECT_NEAR(circular_summary(VonCosParams(0, 2.0, 1e-12)).variance, 1 - ratio_a(2.0), 1e-10);
  EXPECT_LT(circular_summary(VonCosParams(0, 500, 0.5)).variance, 0.01);
  EXPECT_THROW(circular_summary(VonCosParams(0.1, 1, 0.5)), std::invalid_argument);
  const auto s = circular_summary(VonCosParams(0, 1.5, 0.5));
  EXPECT_NEAR(s.rho1, std::abs(trig_moment(1, VonCosParams(0, 1.5, 0.5))), 1e-14);
  EXPECT_GT(s.variance, 0);
  EXPECT_LT(s.variance, 1);
}

TEST(Modality, SymmetricLocationIsUnimodal) {
  for (double k : {0.1, 1.0, 5.0, 50.0})
    for (double nu : {0.1, 0.5, 0.99}) {
      const auto r = modality(VonCosParams(0, k, nu));
      EXPECT_EQ(r.classification, Modality::Unimodal);
      EXPECT_LT(r.discriminant, 0.0);
      EXPECT_EQ(r.count(CriticalKind::Mode), 1u);
      EXPECT_EQ(r.count(CriticalKind::Antimode), 1u);
    }
}

TEST(Modality, OppositeLocationBoundaries) {
  const double nu = 0.9;
  EXPECT_NEAR(nu / (1 + nu), 0.4736842, 1e-7);
  EXPECT_NEAR(nu / (1 - nu), 9.0, 1e-12);
  struct Probe {
    double kappa;
    Modality want;
  };
  for (const auto& pr : {Probe{0.3, Modality::Unimodal}, Probe{0.47, Modality::Unimodal}, Probe{0.48, Modality::Bimodal},
                         Probe{3.3157895, Modality::Bimodal}, Probe{6.1578947, Modality::Bimodal},
                         Probe{8.99, Modality::Bimodal}, Probe{9.01, Modality::Unimodal}, Probe{10, Modality::Unimodal}}) {
    const auto r = modality(VonCosParams(kPi, pr.kappa, nu));
    EXPECT_EQ(r.classification, pr.want) << pr.kappa;
    const std::size_t m = pr.want == Modality::Bimodal ? 2 : 1;
    EXPECT_EQ(r.count(CriticalKind::Mode), m) << pr.kappa;
    EXPECT_EQ(r.count(CriticalKind::Antimode), m) << pr.kappa;
  }
  EXPECT_TRUE(modality(VonCosParams(kPi, 9.0, nu)).degenerate);
  EXPECT_EQ(modality(VonCosParams(kPi, 9.0, nu)).classification, Modality::Unimodal);
}

TEST(Modality, AgreesWithGridCount) {
  RngStream rng(2024, 7);
  int bimodal = 0;
  for (int i = 0; i < 200; ++i) {
    // odd draws put mu near pi, where the bimodal region lives
    const double mu = i % 2 ? kPi + (rng.uniform() - 0.5) : kTwoPi * rng.uniform();
    const VonCosParams v(mu, 0.05 + 10 * rng.uniform(), 0.01 + 0.98 * rng.uniform());
    const auto r = modality(v);
    const int grid = grid_mode_count(v);
    EXPECT_LE(grid, 2);
    EXPECT_EQ(r.classification == Modality::Bimodal ? 2 : 1, grid) << v.mu << " " << v.kappa << " " << v.nu;
    EXPECT_EQ(static_cast<int>(r.count(CriticalKind::Mode)), grid);
    EXPECT_EQ(r.count(CriticalKind::Mode), r.count(CriticalKind::Antimode));
    for (const auto& c : r.critical_points) EXPECT_LT(std::abs(voncos_derivative(v, c.angle)), 1e-8);
    bimodal += grid == 2;
  }
  EXPECT_GT(bimodal, 10);  // the sample must actually exercise both classes
}

TEST(KlCardioid, Limits) {
  EXPECT_NEAR(kl_from_cardioid(VonCosParams(0, 1e-6, 0.5)), 0.0, 1e-10);
  const double k = 2.0, nu = 0.3;
  EXPECT_NEAR(kl_from_cardioid(VonCosParams(0, k, nu)),
              std::log(oracle::bessel_i(0, k) + nu * oracle::bessel_i(1, k)) - nu * k / 2, 1e-12);
}

TEST(KlCardioid, MatchesQuadrature) {
  for (const auto& v : grid27()) {
    const CircularDensity fc = Cardioid(v.nu), h = v.density();
    const double quad = oracle::periodic_trapezoid(
        [&](double t) { return density(fc, t) * (log_density(fc, t) - log_density(h, t)); });
    EXPECT_NEAR(kl_from_cardioid(v), quad, 1e-8);
  }
  const VonCosParams v(kPi / 3, 2, 0.5);
  EXPECT_NEAR(kl_from_cardioid(v), kl_quadrature(Cardioid(0.5), v.density()), 1e-8);
}

TEST(KlCardioid, NonNegativeOnSymmetricGrid) {
  for (double k = 0.01; k < 700; k *= 1.7)
    for (double nu : {0.01, 0.3, 0.6, 0.99}) EXPECT_GE(kl_from_cardioid(VonCosParams(0, k, nu)), 0.0);
}

TEST(KlCardioid, SymmetricSlope) {
  EXPECT_NEAR(kl_kappa_slope_symmetric(1e-12), 2.0, 1e-10);
  EXPECT_NEAR(kl_kappa_slope_symmetric(1 - 1e-12), 2.0, 1e-10);
  EXPECT_NEAR(kl_kappa_slope_symmetric(0.5), 3.25 / 1.5, 1e-15);
  for (double nu = 0.01; nu < 1; nu += 0.01) EXPECT_GT(kl_kappa_slope_symmetric(nu), 0);
  EXPECT_THROW(kl_kappa_slope_symmetric(0.0), std::domain_error);
  EXPECT_THROW(kl_kappa_slope_symmetric(1.0), std::domain_error);
}

TEST(Entropy, Uniform) { EXPECT_NEAR(entropy_quadrature(Uniform{}), std::log(kTwoPi), 1e-12); }

TEST(Entropy, SelfDivergenceIsZero) {
  for (const CircularDensity& q : {CircularDensity(VonMises(1, 3)), make_voncos(2, 1, 0.5), CircularDensity(Cardioid(0.7))})
    EXPECT_LT(std::abs(kl_quadrature(q, q)), 1e-9);
}

TEST(Entropy, Identity) {
  const CircularDensity q = VonMises(0, 1), h = make_voncos(0, 1, 0.5);
  EXPECT_NEAR(entropy_quadrature(q), cross_entropy_quadrature(q, h) - kl_quadrature(q, h), 1e-7);
  EXPECT_GE(kl_quadrature(q, h), 0.0);
}

TEST(ModeAntimode, Values) {
  const auto c = mode_antimode_values(VonCosParams(0, 1e-12, 0.5));
  EXPECT_NEAR(c.mode_height, 1.5 / kTwoPi, 1e-10);
  EXPECT_NEAR(c.antimode_height, 0.5 / kTwoPi, 1e-10);
  const double k = 2.0;
  const auto v = mode_antimode_values(VonCosParams(0, k, 1e-12));
  EXPECT_NEAR(v.mode_height, std::exp(k) / (kTwoPi * oracle::bessel_i(0, k)), 1e-10);
  EXPECT_NEAR(v.antimode_height, std::exp(-k) / (kTwoPi * oracle::bessel_i(0, k)), 1e-10);
  const VonCosParams p(0, 1, 0.5);
  const auto h = mode_antimode_values(p);
  double mx = 0, mn = 1e9;
  for (int i = 0; i < 100000; ++i) {
    const double f = voncos_density(p, i * kTwoPi / 100000);
    mx = std::max(mx, f);
    mn = std::min(mn, f);
  }
  EXPECT_NEAR(h.mode_height, mx, 1e-9);
  EXPECT_NEAR(h.antimode_height, mn, 1e-9);
  EXPECT_THROW(mode_antimode_values(VonCosParams(1, 1, 0.5)), std::invalid_argument);
}
