// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hetmeta/simulator.hpp"

using namespace hetmeta;

namespace {

constexpr double kPi = 3.14159265358979323846;

NetworkModel single_ppp(double alpha, double lambda, double power) {
  NetworkModel m;
  m.alpha = alpha;
  m.tiers.push_back(TierSpec::make_ppp(lambda, power));
  return m;
}

NetworkModel fig_model() {
  NetworkModel m;
  m.alpha = 4.0;
  m.tiers.push_back(TierSpec::make_ppp(1.0, 1.0));
  m.tiers.push_back(TierSpec::make_pcp(2.5, 4.0, 0.04, 100.0));
  m.user.kind = UserType::type2;
  m.user.coupled_tier = 1;
  m.user.user_spread = 0.05;
  return m;
}

// A coupled user whose own cluster is the only component in the network.
NetworkModel own_only_model(double mbar, double sigma, double user_spread) {
  NetworkModel m;
  m.alpha = 4.0;
  m.tiers.push_back(TierSpec::make_pcp(0.0, mbar, sigma, 1.0));
  m.user.kind = UserType::type2;
  m.user.coupled_tier = 0;
  m.user.user_spread = user_spread;
  return m;
}

// Two-sided Kolmogorov-Smirnov statistic against the uniform law on [0, 1].
double ks_statistic(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max({d, u[i] - static_cast<double>(i) / n,
                  static_cast<double>(i + 1) / n - u[i]});
  }
  return d;
}

// 1% critical value of the two-sided KS statistic, asymptotic form.
double ks_crit(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

}  // namespace

TEST_CASE("two stations give the closed-form success product") {
  const NetworkModel m = single_ppp(4.0, 1.0, 1.0);
  sim::Realization rz;
  rz.points.push_back({1.0, 0.0, 0});
  rz.points.push_back({2.0, 0.0, 0});

  // Marks are 1 and 16 exactly, so the product is exact in floating point.
  auto p1 = sim::conditional_success_probability(rz, m, 1.0);
  REQUIRE(p1.has_value());
  CHECK(*p1 == 16.0 / 17.0);

  auto p2 = sim::conditional_success_probability(rz, m, 2.0);
  REQUIRE(p2.has_value());
  CHECK(*p2 == 8.0 / 9.0);
}

TEST_CASE("marks divide by the tier transmit power") {
  NetworkModel m = single_ppp(4.0, 1.0, 1.0);
  m.tiers.push_back(TierSpec::make_ppp(1.0, 100.0));
  sim::Realization rz;
  rz.points.push_back({1.0, 0.0, 0});  // mark 1
  rz.points.push_back({2.0, 0.0, 1});  // mark 16/100, serves
  auto p = sim::conditional_success_probability(rz, m, 1.0);
  REQUIRE(p.has_value());
  CHECK(*p == 1.0 / (1.0 + (16.0 / 100.0)));
}

TEST_CASE("own-cluster points use the coupled tier's power") {
  NetworkModel m;
  m.alpha = 4.0;
  m.tiers.push_back(TierSpec::make_ppp(1.0, 1.0));
  m.tiers.push_back(TierSpec::make_pcp(2.5, 4.0, 0.04, 100.0));
  m.user.kind = UserType::type2;
  m.user.coupled_tier = 1;
  sim::Realization rz;
  rz.points.push_back({1.0, 0.0, sim::kOwnClusterTier});  // mark 1/100, serves
  rz.points.push_back({2.0, 0.0, 0});                     // mark 16
  auto p = sim::conditional_success_probability(rz, m, 1.0);
  REQUIRE(p.has_value());
  CHECK(*p == 1.0 / (1.0 + (1.0 / 100.0) / 16.0));
}

TEST_CASE("tied marks still give a well-defined product") {
  const NetworkModel m = single_ppp(4.0, 1.0, 1.0);
  sim::Realization rz;
  rz.points.push_back({1.0, 0.0, 0});
  rz.points.push_back({-1.0, 0.0, 0});
  auto p = sim::conditional_success_probability(rz, m, 1.0);
  REQUIRE(p.has_value());
  CHECK(*p == 0.5);
}

TEST_CASE("empty geometry and bad thresholds are rejected") {
  const NetworkModel m = single_ppp(4.0, 1.0, 1.0);
  sim::Realization empty;
  CHECK_FALSE(sim::conditional_success_probability(empty, m, 1.0).has_value());

  sim::Realization rz;
  rz.points.push_back({1.0, 0.0, 0});
  CHECK_THROWS_AS(
      (void)sim::conditional_success_probability(rz, m, 0.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)sim::conditional_success_probability(rz, m, -1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)sim::conditional_success_probability(rz, m, std::nan("")),
      std::invalid_argument);
}

TEST_CASE("substreams are reproducible and decorrelated") {
  auto a = sim::substream(7, 3);
  auto b = sim::substream(7, 3);
  for (int i = 0; i < 64; ++i) CHECK(a() == b());

  // Neighbouring indices and seeds must not replay the same stream.
  auto base = sim::substream(7, 3);
  auto next_index = sim::substream(7, 4);
  auto next_seed = sim::substream(8, 3);
  auto swapped = sim::substream(3, 7);
  bool differs_index = false, differs_seed = false, differs_swap = false;
  for (int i = 0; i < 64; ++i) {
    const auto v = base();
    differs_index |= v != next_index();
    differs_seed |= v != next_seed();
    differs_swap |= v != swapped();
  }
  CHECK(differs_index);
  CHECK(differs_seed);
  CHECK(differs_swap);
}

TEST_CASE("realization sampling rejects a degenerate window") {
  const NetworkModel m = single_ppp(4.0, 1.0, 1.0);
  auto rng = sim::substream(1, 0);
  CHECK_THROWS_AS((void)sim::sample_realization(m, 0.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)sim::sample_realization(m, -1.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)sim::sample_realization(m, std::nan(""), rng),
                  std::invalid_argument);
}

TEST_CASE("Poisson points fill the window uniformly") {
  const NetworkModel m = single_ppp(4.0, 4.0, 1.0);
  const double R = 4.0;
  auto rng = sim::substream(11, 0);
  std::vector<double> radial, angular;
  std::size_t total = 0;
  const int n_rz = 10;
  for (int k = 0; k < n_rz; ++k) {
    const sim::Realization rz = sim::sample_realization(m, R, rng);
    CHECK_FALSE(rz.has_own_center);
    total += rz.points.size();
    for (const sim::SimPoint& p : rz.points) {
      CHECK(p.tier == 0);
      const double d2 = p.x * p.x + p.y * p.y;
      REQUIRE(d2 <= R * R);
      // Under a homogeneous Poisson field, d^2 / R^2 and the angle are
      // independent uniforms.
      radial.push_back(d2 / (R * R));
      angular.push_back(0.5 + std::atan2(p.y, p.x) / (2.0 * kPi));
    }
  }
  const double mean_count = n_rz * m.tiers[0].ppp_intensity * kPi * R * R;
  CHECK(std::abs(static_cast<double>(total) - mean_count) <=
        4.0 * std::sqrt(mean_count));
  CHECK(ks_statistic(radial) < ks_crit(radial.size()));
  CHECK(ks_statistic(angular) < ks_crit(angular.size()));
}

TEST_CASE("cluster offspring scatter matches the Gaussian law") {
  const double cx = 0.3, cy = -0.2, sigma = 0.05, mbar = 5.0;
  auto rng = sim::substream(13, 0);
  std::vector<double> u;
  std::size_t total = 0;
  const int n_calls = 400;
  for (int k = 0; k < n_calls; ++k) {
    const auto pts = sim::sample_cluster_offspring(cx, cy, sigma, mbar, rng);
    total += pts.size();
    for (const auto& p : pts) {
      const double dx = p[0] - cx, dy = p[1] - cy;
      // Squared Gaussian displacement over 2 sigma^2 is standard exponential.
      u.push_back(-std::expm1(-(dx * dx + dy * dy) / (2.0 * sigma * sigma)));
    }
  }
  const double mean_count = n_calls * mbar;
  CHECK(std::abs(static_cast<double>(total) - mean_count) <=
        4.0 * std::sqrt(mean_count));
  CHECK(ks_statistic(u) < ks_crit(u.size()));

  auto rng2 = sim::substream(13, 1);
  CHECK(sim::sample_cluster_offspring(0.0, 0.0, 0.1, 0.0, rng2).empty());
}

TEST_CASE("coupled user centre follows the Rayleigh law") {
  const double sigma_u = 0.13;
  const NetworkModel m = own_only_model(3.0, 0.05, sigma_u);
  REQUIRE(is_valid(m));
  auto rng = sim::substream(17, 0);
  std::vector<double> u;
  bool saw_own_point = false;
  for (int k = 0; k < 2000; ++k) {
    const sim::Realization rz = sim::sample_realization(m, 1.0, rng);
    REQUIRE(rz.has_own_center);
    const double r2 = rz.own_center_x * rz.own_center_x +
                      rz.own_center_y * rz.own_center_y;
    u.push_back(-std::expm1(-r2 / (2.0 * sigma_u * sigma_u)));
    for (const sim::SimPoint& p : rz.points) {
      CHECK(p.tier == sim::kOwnClusterTier);
      CHECK(p.x * p.x + p.y * p.y <= 1.0);  // clipped to the window
      saw_own_point = true;
    }
  }
  CHECK(saw_own_point);
  CHECK(ks_statistic(u) < ks_crit(u.size()));
}

TEST_CASE("empty realizations are discarded and counted") {
  // Parent intensity so low that the window is essentially always empty.
  NetworkModel m;
  m.alpha = 4.0;
  m.tiers.push_back(TierSpec::make_pcp(1e-9, 1.0, 0.01, 1.0));
  REQUIRE(is_valid(m));

  sim::SimConfig cfg;
  cfg.n_realizations = 300;
  cfg.seed = 5;
  cfg.window_radius = 1.0;
  const sim::EmpiricalMeta em = sim::run_monte_carlo(m, cfg);
  CHECK(em.n_requested == 300);
  CHECK(em.n_discarded == 300);
  CHECK(em.window_radius == 1.0);
  CHECK(em.seed == 5);
  REQUIRE(em.ps.size() == 1);
  CHECK(em.ps[0].empty());
  CHECK(em.m1[0] == 0.0);
  CHECK(em.se_m1[0] == 0.0);
  for (double c : em.ccdf[0]) CHECK(c == 0.0);
}

TEST_CASE("moments match the Poisson closed form") {
  // Single Poisson tier, alpha = 4, beta = 1: M1 and M2 have closed forms
  // that are independent of the intensity.  The window is wide enough that
  // the missing interference tail shifts the mean by well under one
  // standard error.
  const NetworkModel m = single_ppp(4.0, 4.0, 1.0);
  sim::SimConfig cfg;
  cfg.n_realizations = 4000;
  cfg.seed = 101;
  cfg.window_radius = 8.0;
  cfg.beta_grid = {1.0};
  cfg.theta_grid = {0.5};
  const sim::EmpiricalMeta em = sim::run_monte_carlo(m, cfg);
  REQUIRE(em.n_discarded == 0);
  CHECK(em.se_m1[0] > 0.002);
  CHECK(em.se_m1[0] < 0.008);
  CHECK(std::abs(em.m1[0] - 0.5600991535) <= 4.0 * em.se_m1[0]);
  CHECK(std::abs(em.m2[0] - 0.4118451195) <= 4.0 * em.se_m2[0]);
}

TEST_CASE("doubling the window does not move the mean") {
  const NetworkModel m = single_ppp(4.0, 1.0, 1.0);
  sim::SimConfig cfg;
  cfg.n_realizations = 3000;
  cfg.seed = 23;
  cfg.beta_grid = {1.0};
  cfg.theta_grid = {0.5};
  cfg.window_radius = 8.0;
  const sim::EmpiricalMeta a = sim::run_monte_carlo(m, cfg);
  cfg.window_radius = 16.0;
  const sim::EmpiricalMeta b = sim::run_monte_carlo(m, cfg);
  const double se = std::hypot(a.se_m1[0], b.se_m1[0]);
  CHECK(std::abs(a.m1[0] - b.m1[0]) <= 3.0 * se);
}

TEST_CASE("summary statistics are consistent with the retained samples") {
  const NetworkModel m = single_ppp(4.0, 4.0, 1.0);
  sim::SimConfig cfg;
  cfg.n_realizations = 200;
  cfg.seed = 31;
  cfg.window_radius = 2.0;
  cfg.beta_grid = {0.5, 1.0, 2.0};
  cfg.theta_grid = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
  const sim::EmpiricalMeta em = sim::run_monte_carlo(m, cfg);

  CHECK(em.beta_grid == cfg.beta_grid);
  CHECK(em.theta_grid == cfg.theta_grid);
  REQUIRE(em.ps.size() == 3);
  const std::size_t n_kept = em.n_requested - em.n_discarded;
  for (std::size_t k = 0; k < em.ps.size(); ++k) {
    const auto& v = em.ps[k];
    REQUIRE(v.size() == n_kept);
    double s1 = 0.0, s2 = 0.0;
    for (double x : v) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
      s1 += x;
      s2 += x * x;
    }
    const double nk = static_cast<double>(n_kept);
    CHECK(em.m1[k] == doctest::Approx(s1 / nk).epsilon(1e-12));
    CHECK(em.m2[k] == doctest::Approx(s2 / nk).epsilon(1e-12));
    CHECK(em.m2[k] >= em.m1[k] * em.m1[k] - 1e-12);

    // Standard errors recomputed with the two-pass variance formula.
    double q1 = 0.0, q2 = 0.0;
    for (double x : v) {
      q1 += (x - em.m1[k]) * (x - em.m1[k]);
      q2 += (x * x - em.m2[k]) * (x * x - em.m2[k]);
    }
    CHECK(em.se_m1[k] ==
          doctest::Approx(std::sqrt(q1 / (nk - 1.0) / nk)).epsilon(1e-6));
    CHECK(em.se_m2[k] ==
          doctest::Approx(std::sqrt(q2 / (nk - 1.0) / nk)).epsilon(1e-6));

    // The empirical meta CCDF counts strictly-above samples.
    double prev = 1.0;
    for (std::size_t j = 0; j < em.theta_grid.size(); ++j) {
      std::size_t above = 0;
      for (double x : v) above += x > em.theta_grid[j];
      CHECK(em.ccdf[k][j] == static_cast<double>(above) / nk);
      CHECK(em.ccdf[k][j] <= prev);
      prev = em.ccdf[k][j];
    }
    CHECK(em.ccdf[k].back() == 0.0);  // nothing exceeds theta = 1
  }

  // A lower threshold can only make success more likely.
  for (std::size_t i = 0; i < n_kept; ++i) {
    CHECK(em.ps[0][i] >= em.ps[1][i]);
    CHECK(em.ps[1][i] >= em.ps[2][i]);
  }
}

TEST_CASE("thread count does not change the result") {
  const NetworkModel m = fig_model();
  sim::SimConfig cfg;
  cfg.n_realizations = 300;
  cfg.seed = 41;
  cfg.window_radius = 2.0;
  cfg.beta_grid = {0.5, 2.0};
  cfg.theta_grid = {0.25, 0.5, 0.75};
  cfg.n_threads = 1;
  const sim::EmpiricalMeta a = sim::run_monte_carlo(m, cfg);
  cfg.n_threads = 4;
  const sim::EmpiricalMeta b = sim::run_monte_carlo(m, cfg);

  CHECK(a.n_discarded == b.n_discarded);
  REQUIRE(a.ps.size() == b.ps.size());
  for (std::size_t k = 0; k < a.ps.size(); ++k) {
    REQUIRE(a.ps[k].size() == b.ps[k].size());
    for (std::size_t i = 0; i < a.ps[k].size(); ++i) {
      CHECK(a.ps[k][i] == b.ps[k][i]);
    }
    CHECK(a.m1[k] == b.m1[k]);
    CHECK(a.m2[k] == b.m2[k]);
    CHECK(a.se_m1[k] == b.se_m1[k]);
    CHECK(a.se_m2[k] == b.se_m2[k]);
    for (std::size_t j = 0; j < a.ccdf[k].size(); ++j) {
      CHECK(a.ccdf[k][j] == b.ccdf[k][j]);
    }
  }
}

TEST_CASE("default grids and radii") {
  const auto grid = sim::default_theta_grid();
  REQUIRE(grid.size() == 99);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid[i] == 0.01 * (static_cast<int>(i) + 1));
  }

  // Reference model: the intensity floor dominates the spread floor.
  const double dw = sim::default_window_radius(fig_model());
  CHECK(dw == doctest::Approx(5.0 / std::sqrt(kPi)).epsilon(1e-14));

  // Spread floor dominates when nothing else is active: 10 * user spread.
  const NetworkModel wide = own_only_model(4.0, 0.1, 2.0);
  CHECK(sim::default_window_radius(wide) == 20.0);

  NetworkModel idle;
  idle.alpha = 4.0;
  idle.tiers.push_back(TierSpec::make_ppp(0.0, 1.0));
  CHECK_THROWS_AS((void)sim::default_window_radius(idle),
                  std::invalid_argument);

  CHECK(sim::guard_radius(TierSpec::make_pcp(2.5, 4.0, 0.04, 100.0)) ==
        6.0 * 0.04);
  CHECK(sim::guard_radius(TierSpec::make_ppp(1.0, 1.0)) == 0.0);

  // run_monte_carlo resolves a nonpositive window to the default.
  sim::SimConfig cfg;
  cfg.n_realizations = 10;
  cfg.seed = 3;
  const NetworkModel m = single_ppp(4.0, 4.0, 1.0);
  CHECK(sim::run_monte_carlo(m, cfg).window_radius ==
        sim::default_window_radius(m));
}

TEST_CASE("simulation config validation") {
  const NetworkModel m = single_ppp(4.0, 4.0, 1.0);
  sim::SimConfig cfg;
  cfg.window_radius = 1.0;

  cfg.n_realizations = 0;
  CHECK_THROWS_AS((void)sim::run_monte_carlo(m, cfg), std::invalid_argument);

  cfg.n_realizations = 10;
  cfg.beta_grid = {};
  CHECK_THROWS_AS((void)sim::run_monte_carlo(m, cfg), std::invalid_argument);

  cfg.beta_grid = {-1.0};
  CHECK_THROWS_AS((void)sim::run_monte_carlo(m, cfg), std::invalid_argument);

  cfg.beta_grid = {1.0};
  NetworkModel bad = m;
  bad.alpha = 2.0;
  CHECK_THROWS_AS((void)sim::run_monte_carlo(bad, cfg), std::invalid_argument);
}
