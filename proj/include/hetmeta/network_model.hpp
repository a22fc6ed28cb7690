// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_NETWORK_MODEL_HPP
#define HETMETA_NETWORK_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

// Model description for a K-tier downlink network.  Tiers are either
// homogeneous Poisson fields or Poisson cluster fields (Poisson parents,
// Poisson-distributed cluster sizes, isotropic Gaussian offspring spread).
// Lengths are kilometres, intensities points per km^2, powers linear.
namespace hetmeta {

enum class TierKind { ppp, pcp };

struct TierSpec {
  TierKind kind = TierKind::ppp;
  double power = 1.0;  // transmit power, linear scale

  // Poisson tier
  double ppp_intensity = 0.0;  // lambda

  // Cluster tier
  double parent_intensity = 0.0;   // lambda_p
  double mean_cluster_size = 0.0;  // mean offspring count per parent
  double cluster_spread = 0.0;     // Gaussian scatter sigma, km

  static TierSpec make_ppp(double intensity, double power) {
    TierSpec t;
    t.kind = TierKind::ppp;
    t.ppp_intensity = intensity;
    t.power = power;
    return t;
  }
  static TierSpec make_pcp(double parent_intensity, double mean_cluster_size,
                           double cluster_spread, double power) {
    TierSpec t;
    t.kind = TierKind::pcp;
    t.parent_intensity = parent_intensity;
    t.mean_cluster_size = mean_cluster_size;
    t.cluster_spread = cluster_spread;
    t.power = power;
    return t;
  }
};

enum class UserType {
  type1,  // user placed independently of every tier
  type2,  // user drawn from a cluster of one cluster tier
};

struct UserPlacement {
  UserType kind = UserType::type1;
  int coupled_tier = -1;  // index into NetworkModel::tiers (type2 only)
  // Scatter of the user around its own cluster centre; defaults to the
  // coupled tier's cluster_spread when unset.
  std::optional<double> user_spread;
};

struct NetworkModel {
  std::vector<TierSpec> tiers;
  double alpha = 4.0;  // path loss exponent, > 2
  UserPlacement user;

  bool has_coupled_user() const { return user.kind == UserType::type2; }
  const TierSpec& coupled_tier() const {
    return tiers.at(static_cast<std::size_t>(user.coupled_tier));
  }
  double user_spread() const {
    return user.user_spread ? *user.user_spread
                            : coupled_tier().cluster_spread;
  }
};

struct Violation {
  std::string field;
  std::string message;
};

// Collects every constraint violation instead of stopping at the first:
// alpha > 2, at least one tier, nonnegative intensities and powers, positive
// spread/size on cluster tiers, a coupled user references a cluster tier,
// and at least one tier has positive effective intensity.
std::vector<Violation> validate(const NetworkModel& model);

inline bool is_valid(const NetworkModel& model) {
  return validate(model).empty();
}

// Rescales every length by k (densities by 1/k^2, spreads by k).  The SIR
// distribution is invariant under this map for any path loss exponent.
// Throws std::invalid_argument for k <= 0 or non-finite.
NetworkModel scale_model(const NetworkModel& model, double k);

}  // namespace hetmeta

#endif  // HETMETA_NETWORK_MODEL_HPP
