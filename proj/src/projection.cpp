// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#include "hetmeta/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "hetmeta/special_functions.hpp"

namespace hetmeta::projection {
namespace {

void require_radius(double v, const char* name) {
  if (!(std::isfinite(v) && v >= 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be finite and >= 0");
  }
}

const std::vector<double>& parents_for(const ParentConfig& cfg,
                                       std::size_t tier) {
  static const std::vector<double> kNone;
  if (tier < cfg.parent_distances.size()) return cfg.parent_distances[tier];
  return kNone;
}

}  // namespace

double rician_pdf(double x, double z, double sigma) {
  require_radius(x, "rician_pdf: x");
  require_radius(z, "rician_pdf: z");
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw std::invalid_argument("rician_pdf: sigma must be finite and > 0");
  }
  if (x == 0.0) return 0.0;
  const double s2 = sigma * sigma;
  // x/s2 * exp(-(x^2+z^2)/(2 s2)) * I0(xz/s2)
  //   = x/s2 * exp(-(x-z)^2/(2 s2)) * [e^{-xz/s2} I0(xz/s2)]
  const double dx = x - z;
  return x / s2 * std::exp(-0.5 * dx * dx / s2) *
         sf::bessel_i0_scaled(x * z / s2);
}

double rician_cdf(double x, double z, double sigma) {
  require_radius(x, "rician_cdf: x");
  require_radius(z, "rician_cdf: z");
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw std::invalid_argument("rician_cdf: sigma must be finite and > 0");
  }
  return 1.0 - sf::marcum_q1(z / sigma, x / sigma);
}

double projected_measure(double x, const NetworkModel& model,
                         const ParentConfig& parents) {
  require_radius(x, "projected_measure: x");
  if (x == 0.0) return 0.0;
  constexpr double kPi = 3.14159265358979323846;
  const double alpha = model.alpha;
  double total = 0.0;
  for (std::size_t i = 0; i < model.tiers.size(); ++i) {
    const TierSpec& t = model.tiers[i];
    if (t.kind == TierKind::ppp) {
      if (t.ppp_intensity > 0.0) {
        total += kPi * t.ppp_intensity * std::pow(x * t.power, 2.0 / alpha);
      }
    } else {
      const double y = std::pow(x * t.power, 1.0 / alpha);
      for (double z : parents_for(parents, i)) {
        total += t.mean_cluster_size * rician_cdf(y, z, t.cluster_spread);
      }
    }
  }
  if (model.has_coupled_user() && parents.palm_center_distance) {
    const TierSpec& q = model.coupled_tier();
    const double y = std::pow(x * q.power, 1.0 / alpha);
    total += q.mean_cluster_size *
             rician_cdf(y, *parents.palm_center_distance, q.cluster_spread);
  }
  return total;
}

double projected_intensity(double x, const NetworkModel& model,
                           const ParentConfig& parents) {
  require_radius(x, "projected_intensity: x");
  if (x == 0.0) return 0.0;
  constexpr double kPi = 3.14159265358979323846;
  const double alpha = model.alpha;
  double total = 0.0;
  for (std::size_t i = 0; i < model.tiers.size(); ++i) {
    const TierSpec& t = model.tiers[i];
    if (t.kind == TierKind::ppp) {
      if (t.ppp_intensity > 0.0) {
        total += kPi * t.ppp_intensity * (2.0 / alpha) *
                 std::pow(t.power, 2.0 / alpha) * std::pow(x, 2.0 / alpha - 1.0);
      }
    } else {
      // d/dx F_d((x P)^{1/alpha} | z) = P^{1/alpha}/alpha * x^{1/alpha - 1}
      //                                 * f_d((x P)^{1/alpha} | z)
      const double y = std::pow(x * t.power, 1.0 / alpha);
      const double jac = std::pow(t.power, 1.0 / alpha) / alpha *
                         std::pow(x, 1.0 / alpha - 1.0);
      for (double z : parents_for(parents, i)) {
        total += t.mean_cluster_size * jac *
                 rician_pdf(y, z, t.cluster_spread);
      }
    }
  }
  if (model.has_coupled_user() && parents.palm_center_distance) {
    const TierSpec& q = model.coupled_tier();
    const double y = std::pow(x * q.power, 1.0 / alpha);
    const double jac = std::pow(q.power, 1.0 / alpha) / alpha *
                       std::pow(x, 1.0 / alpha - 1.0);
    total += q.mean_cluster_size * jac *
             rician_pdf(y, *parents.palm_center_distance, q.cluster_spread);
  }
  return total;
}

double serving_distance_pdf(double x, const NetworkModel& model,
                            const ParentConfig& parents) {
  const double lam = projected_intensity(x, model, parents);
  if (lam == 0.0) return 0.0;
  return lam * std::exp(-projected_measure(x, model, parents));
}

}  // namespace hetmeta::projection
