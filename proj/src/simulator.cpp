// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#include "hetmeta/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hetmeta/threading.hpp"

namespace hetmeta::sim {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void require_valid(const NetworkModel& m) {
  auto v = validate(m);
  if (!v.empty()) {
    throw std::invalid_argument("invalid model: " + v.front().field + ": " +
                                v.front().message);
  }
}

std::size_t poisson_count(double mean, std::mt19937_64& rng) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<long> d(mean);
  const long n = d(rng);
  return n > 0 ? static_cast<std::size_t>(n) : 0;
}

void append_uniform_disk(std::vector<SimPoint>& out, std::size_t n,
                         double radius, int tier, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(uni(rng));
    const double phi = 2.0 * kPi * uni(rng);
    out.push_back({r * std::cos(phi), r * std::sin(phi), tier});
  }
}

// Marks d^alpha / P for every point; P resolved per tier label.
void compute_marks(const Realization& rz, const NetworkModel& m,
                   std::vector<double>& marks) {
  const double half_alpha = 0.5 * m.alpha;
  marks.clear();
  marks.reserve(rz.points.size());
  for (const SimPoint& p : rz.points) {
    const double power = p.tier == kOwnClusterTier
                             ? m.coupled_tier().power
                             : m.tiers[static_cast<std::size_t>(p.tier)].power;
    const double d2 = p.x * p.x + p.y * p.y;
    marks.push_back(std::pow(d2, half_alpha) / power);
  }
}

double success_product(const std::vector<double>& marks, double beta) {
  std::size_t imin = 0;
  for (std::size_t i = 1; i < marks.size(); ++i) {
    if (marks[i] < marks[imin]) imin = i;  // first index wins ties
  }
  const double mstar = marks[imin];
  double prod = 1.0;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (i == imin) continue;
    prod /= 1.0 + beta * mstar / marks[i];
  }
  return prod;
}

}  // namespace

std::vector<double> default_theta_grid() {
  std::vector<double> g(99);
  for (int i = 0; i < 99; ++i) g[static_cast<std::size_t>(i)] = 0.01 * (i + 1);
  return g;
}

double guard_radius(const TierSpec& tier) {
  return tier.kind == TierKind::pcp ? 6.0 * tier.cluster_spread : 0.0;
}

double default_window_radius(const NetworkModel& model) {
  double sig = 0.0;
  double lam_min = std::numeric_limits<double>::infinity();
  for (const TierSpec& t : model.tiers) {
    if (t.kind == TierKind::ppp) {
      if (t.ppp_intensity > 0.0) lam_min = std::min(lam_min, t.ppp_intensity);
    } else {
      sig = std::max(sig, t.cluster_spread);
      const double eff = t.parent_intensity * t.mean_cluster_size;
      if (eff > 0.0) lam_min = std::min(lam_min, eff);
    }
  }
  if (model.has_coupled_user()) {
    sig = std::max(sig, model.user_spread());
  }
  double r = 10.0 * sig;
  if (std::isfinite(lam_min)) {
    r = std::max(r, 5.0 / std::sqrt(kPi * lam_min));
  }
  if (!(r > 0.0)) {
    throw std::invalid_argument(
        "default_window_radius: model has no positive-intensity component");
  }
  return r;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (0xA3EC647659359ACDull * (index + 1));
  std::uint64_t mixed = splitmix64(state);
  mixed ^= splitmix64(state) << 1;  // second round for avalanche
  return std::mt19937_64(mixed);
}

std::vector<std::array<double, 2>> sample_cluster_offspring(
    double cx, double cy, double sigma, double mean_size,
    std::mt19937_64& rng) {
  std::vector<std::array<double, 2>> out;
  const std::size_t n = poisson_count(mean_size, rng);
  out.reserve(n);
  std::normal_distribution<double> gauss(0.0, sigma);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = gauss(rng);
    const double dy = gauss(rng);
    out.push_back({cx + dx, cy + dy});
  }
  return out;
}

Realization sample_realization(const NetworkModel& model,
                               double window_radius, std::mt19937_64& rng) {
  if (!(std::isfinite(window_radius) && window_radius > 0.0)) {
    throw std::invalid_argument(
        "sample_realization: window_radius must be finite and > 0");
  }
  const double r2max = window_radius * window_radius;
  Realization out;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t i = 0; i < model.tiers.size(); ++i) {
    const TierSpec& t = model.tiers[i];
    const int tier = static_cast<int>(i);
    if (t.kind == TierKind::ppp) {
      if (t.ppp_intensity <= 0.0) continue;
      const double area = kPi * r2max;
      append_uniform_disk(out.points, poisson_count(t.ppp_intensity * area, rng),
                          window_radius, tier, rng);
    } else {
      if (t.parent_intensity <= 0.0 || t.mean_cluster_size <= 0.0) continue;
      const double rp = window_radius + guard_radius(t);
      const double area = kPi * rp * rp;
      const std::size_t n_parents =
          poisson_count(t.parent_intensity * area, rng);
      for (std::size_t k = 0; k < n_parents; ++k) {
        const double pr = rp * std::sqrt(uni(rng));
        const double phi = 2.0 * kPi * uni(rng);
        const double cx = pr * std::cos(phi);
        const double cy = pr * std::sin(phi);
        for (const auto& off : sample_cluster_offspring(
                 cx, cy, t.cluster_spread, t.mean_cluster_size, rng)) {
          if (off[0] * off[0] + off[1] * off[1] <= r2max) {
            out.points.push_back({off[0], off[1], tier});
          }
        }
      }
    }
  }
  if (model.has_coupled_user()) {
    const TierSpec& q = model.coupled_tier();
    std::normal_distribution<double> centre(0.0, model.user_spread());
    out.has_own_center = true;
    out.own_center_x = centre(rng);
    out.own_center_y = centre(rng);
    for (const auto& off : sample_cluster_offspring(
             out.own_center_x, out.own_center_y, q.cluster_spread,
             q.mean_cluster_size, rng)) {
      if (off[0] * off[0] + off[1] * off[1] <= r2max) {
        out.points.push_back({off[0], off[1], kOwnClusterTier});
      }
    }
  }
  return out;
}

std::optional<double> conditional_success_probability(
    const Realization& realization, const NetworkModel& model, double beta) {
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw std::invalid_argument(
        "conditional_success_probability: beta must be finite and > 0");
  }
  if (realization.points.empty()) return std::nullopt;
  std::vector<double> marks;
  compute_marks(realization, model, marks);
  return success_product(marks, beta);
}

EmpiricalMeta run_monte_carlo(const NetworkModel& model,
                              const SimConfig& cfg) {
  require_valid(model);
  if (cfg.n_realizations == 0) {
    throw std::invalid_argument("run_monte_carlo: n_realizations must be > 0");
  }
  if (cfg.beta_grid.empty()) {
    throw std::invalid_argument("run_monte_carlo: beta_grid is empty");
  }
  for (double b : cfg.beta_grid) {
    if (!(std::isfinite(b) && b > 0.0)) {
      throw std::invalid_argument("run_monte_carlo: beta values must be > 0");
    }
  }

  EmpiricalMeta out;
  out.beta_grid = cfg.beta_grid;
  out.theta_grid =
      cfg.theta_grid.empty() ? default_theta_grid() : cfg.theta_grid;
  out.n_requested = cfg.n_realizations;
  out.seed = cfg.seed;
  out.window_radius = cfg.window_radius > 0.0
                          ? cfg.window_radius
                          : default_window_radius(model);

  const std::size_t n = cfg.n_realizations;
  const std::size_t nb = cfg.beta_grid.size();
  std::vector<double> slots(n * nb);
  std::vector<unsigned char> kept(n, 0);

  const int workers = resolve_thread_count(cfg.n_threads);
  parallel_for_index(n, workers, [&](std::size_t i) {
    auto rng = substream(cfg.seed, i);
    const Realization rz = sample_realization(model, out.window_radius, rng);
    if (rz.points.empty()) return;
    kept[i] = 1;
    std::vector<double> marks;
    compute_marks(rz, model, marks);
    for (std::size_t k = 0; k < nb; ++k) {
      slots[i * nb + k] = success_product(marks, cfg.beta_grid[k]);
    }
  });

  std::size_t n_kept = 0;
  for (unsigned char k : kept) n_kept += k;
  out.n_discarded = n - n_kept;
  out.ps.assign(nb, {});
  for (std::size_t k = 0; k < nb; ++k) out.ps[k].reserve(n_kept);
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) continue;
    for (std::size_t k = 0; k < nb; ++k) {
      out.ps[k].push_back(slots[i * nb + k]);
    }
  }

  out.m1.assign(nb, 0.0);
  out.m2.assign(nb, 0.0);
  out.se_m1.assign(nb, 0.0);
  out.se_m2.assign(nb, 0.0);
  out.ccdf.assign(nb, std::vector<double>(out.theta_grid.size(), 0.0));
  for (std::size_t k = 0; k < nb; ++k) {
    const auto& v = out.ps[k];
    if (v.empty()) continue;
    const double nk = static_cast<double>(v.size());
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (double x : v) {
      const double x2 = x * x;
      s1 += x;
      s2 += x2;
      s4 += x2 * x2;
    }
    out.m1[k] = s1 / nk;
    out.m2[k] = s2 / nk;
    if (v.size() > 1) {
      const double var1 =
          std::max(0.0, (s2 - nk * out.m1[k] * out.m1[k]) / (nk - 1.0));
      const double var2 =
          std::max(0.0, (s4 - nk * out.m2[k] * out.m2[k]) / (nk - 1.0));
      out.se_m1[k] = std::sqrt(var1 / nk);
      out.se_m2[k] = std::sqrt(var2 / nk);
    }
    std::vector<double> sorted(v);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < out.theta_grid.size(); ++j) {
      const auto it =
          std::upper_bound(sorted.begin(), sorted.end(), out.theta_grid[j]);
      out.ccdf[k][j] = static_cast<double>(sorted.end() - it) / nk;
    }
  }
  return out;
}

}  // namespace hetmeta::sim
