// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#include "hetmeta/network_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hetmeta {
namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

std::string tier_field(std::size_t i, const char* name) {
  return "tiers[" + std::to_string(i) + "]." + name;
}

}  // namespace

std::vector<Violation> validate(const NetworkModel& model) {
  std::vector<Violation> out;
  if (!(std::isfinite(model.alpha) && model.alpha > 2.0)) {
    out.push_back({"alpha", "path loss exponent must be finite and > 2"});
  }
  if (model.tiers.empty()) {
    out.push_back({"tiers", "at least one tier is required"});
  }

  bool any_active = false;
  for (std::size_t i = 0; i < model.tiers.size(); ++i) {
    const TierSpec& t = model.tiers[i];
    if (!(std::isfinite(t.power) && t.power > 0.0)) {
      out.push_back({tier_field(i, "power"), "must be finite and > 0"});
    }
    if (t.kind == TierKind::ppp) {
      if (!finite_nonneg(t.ppp_intensity)) {
        out.push_back({tier_field(i, "ppp_intensity"),
                       "must be finite and >= 0"});
      } else if (t.ppp_intensity > 0.0) {
        any_active = true;
      }
    } else {
      if (!finite_nonneg(t.parent_intensity)) {
        out.push_back({tier_field(i, "parent_intensity"),
                       "must be finite and >= 0"});
      }
      if (!(std::isfinite(t.mean_cluster_size) && t.mean_cluster_size > 0.0)) {
        out.push_back({tier_field(i, "mean_cluster_size"),
                       "must be finite and > 0"});
      }
      if (!(std::isfinite(t.cluster_spread) && t.cluster_spread > 0.0)) {
        out.push_back({tier_field(i, "cluster_spread"),
                       "must be finite and > 0"});
      }
      if (finite_nonneg(t.parent_intensity) && t.parent_intensity > 0.0 &&
          t.mean_cluster_size > 0.0) {
        any_active = true;
      }
    }
  }

  if (model.user.kind == UserType::type2) {
    const int q = model.user.coupled_tier;
    if (q < 0 || static_cast<std::size_t>(q) >= model.tiers.size()) {
      out.push_back({"user.coupled_tier", "index out of range"});
    } else if (model.tiers[static_cast<std::size_t>(q)].kind !=
               TierKind::pcp) {
      out.push_back({"user.coupled_tier",
                     "a coupled user must reference a cluster tier"});
    } else {
      // The user's own cluster guarantees candidate servers even when all
      // parent intensities vanish.
      any_active = true;
    }
    if (model.user.user_spread &&
        !(std::isfinite(*model.user.user_spread) &&
          *model.user.user_spread > 0.0)) {
      out.push_back({"user.user_spread", "must be finite and > 0 when set"});
    }
  } else if (model.user.coupled_tier >= 0) {
    out.push_back({"user.coupled_tier",
                   "only meaningful for a coupled (type2) user"});
  }

  if (!model.tiers.empty() && !any_active) {
    out.push_back({"tiers",
                   "no tier has positive effective intensity; the typical "
                   "user would see an empty network"});
  }
  return out;
}

NetworkModel scale_model(const NetworkModel& model, double k) {
  if (!(std::isfinite(k) && k > 0.0)) {
    throw std::invalid_argument("scale_model: k must be finite and > 0");
  }
  NetworkModel out = model;
  const double k2 = k * k;
  for (TierSpec& t : out.tiers) {
    if (t.kind == TierKind::ppp) {
      t.ppp_intensity /= k2;
    } else {
      t.parent_intensity /= k2;
      t.cluster_spread *= k;
    }
  }
  if (out.user.user_spread) {
    *out.user.user_spread *= k;
  }
  return out;
}

}  // namespace hetmeta
