// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_SIMULATOR_HPP
#define HETMETA_SIMULATOR_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hetmeta/network_model.hpp"

// Monte Carlo oracle for the moment engine.  Fading is never sampled: the
// per-realization success probability is computed in closed form over the
// sampled geometry, which is unbiased for the meta distribution and has far
// lower variance than SIR indicator sampling.
namespace hetmeta::sim {

// Tier label of points from the coupled user's own cluster.
inline constexpr int kOwnClusterTier = -1;

struct SimConfig {
  std::size_t n_realizations = 10000;
  std::uint64_t seed = 1;
  double window_radius = 0.0;      // km; <= 0 selects default_window_radius
  std::vector<double> beta_grid = {1.0};
  std::vector<double> theta_grid;  // empty selects default_theta_grid()
  int n_threads = 0;               // 0: resolve from environment/hardware
};

struct SimPoint {
  double x = 0.0;
  double y = 0.0;
  int tier = 0;  // index into NetworkModel::tiers, or kOwnClusterTier
};

struct Realization {
  std::vector<SimPoint> points;
  bool has_own_center = false;
  double own_center_x = 0.0;
  double own_center_y = 0.0;
};

struct EmpiricalMeta {
  std::vector<double> beta_grid;
  std::vector<double> theta_grid;
  // Success probability samples per beta, in realization-index order with
  // discarded (empty) realizations removed.
  std::vector<std::vector<double>> ps;
  std::vector<double> m1, m2, se_m1, se_m2;
  std::vector<std::vector<double>> ccdf;  // [beta][theta]
  std::size_t n_requested = 0;
  std::size_t n_discarded = 0;
  double window_radius = 0.0;
  std::uint64_t seed = 0;
};

std::vector<double> default_theta_grid();  // 0.01, 0.02, ..., 0.99

// max over tiers of (10 sigma_i, 5 / sqrt(pi min_i lambda_eff,i)) with
// lambda_eff = lambda for Poisson tiers and lambda_p * mbar for cluster
// tiers; keeps the serving point essentially always inside the window and
// bounds the missing interference tail.
double default_window_radius(const NetworkModel& model);

// Parents within guard_radius outside the window still scatter offspring
// into it; 6 sigma keeps the missed mass below ~1e-8.
double guard_radius(const TierSpec& tier);

// Deterministic per-realization generator: mixing (seed, index) through
// splitmix64 decorrelates streams and makes results independent of the
// thread schedule.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

// Offspring positions of one cluster: Poisson(mean_size) count, isotropic
// Gaussian displacement sigma around the centre.  No window clipping.
std::vector<std::array<double, 2>> sample_cluster_offspring(
    double cx, double cy, double sigma, double mean_size,
    std::mt19937_64& rng);

Realization sample_realization(const NetworkModel& model,
                               double window_radius, std::mt19937_64& rng);

// Product form over interferers given the geometry; the strongest candidate
// (smallest mark d^alpha/P, first index on ties) serves.  Empty realization
// yields nullopt.
std::optional<double> conditional_success_probability(
    const Realization& realization, const NetworkModel& model, double beta);

EmpiricalMeta run_monte_carlo(const NetworkModel& model,
                              const SimConfig& cfg);

}  // namespace hetmeta::sim

#endif  // HETMETA_SIMULATOR_HPP
