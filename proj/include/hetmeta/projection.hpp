// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_PROJECTION_HPP
#define HETMETA_PROJECTION_HPP

#include <optional>
#include <vector>

#include "hetmeta/network_model.hpp"

// Projection of the 2-D network onto the real line of propagation marks
// x = d^alpha / P.  Under this map every tier becomes an inhomogeneous
// Poisson process on (0, inf); the strongest candidate server is the point
// with the smallest mark.  Routines here condition on fixed parent
// locations, which is what the simulator diagnostics and the serving
// distance density need.
namespace hetmeta::projection {

// Density/distribution of the distance from the origin to a point scattered
// with isotropic Gaussian sigma around a centre at distance z:
//   pdf(x) = x/sigma^2 * exp(-(x^2+z^2)/(2 sigma^2)) * I0(x z / sigma^2),
// evaluated in scaled form so large x*z/sigma^2 cannot overflow.
// z = 0 reduces to the Rayleigh density.
double rician_pdf(double x, double z, double sigma);

// cdf(x) = 1 - Q1(z/sigma, x/sigma) with Q1 the first-order Marcum function.
double rician_cdf(double x, double z, double sigma);

// Fixed environment for the conditional projection: one distance list per
// tier (unused for Poisson tiers) and, for a coupled user, the distance of
// the user's own cluster centre.
struct ParentConfig {
  std::vector<std::vector<double>> parent_distances;
  std::optional<double> palm_center_distance;
};

// Mean number of marks in (0, x]:
//   Poisson tiers  : pi * lambda_i * (x P_i)^{2/alpha}
//   cluster tiers  : mbar_i * sum_z F_d((x P_i)^{1/alpha} | z)
//   own cluster    : mbar_q * F_d((x P_q)^{1/alpha} | z0)
double projected_measure(double x, const NetworkModel& model,
                         const ParentConfig& parents);

// d/dx of projected_measure.
double projected_intensity(double x, const NetworkModel& model,
                           const ParentConfig& parents);

// Density of the smallest mark: intensity(x) * exp(-measure(x)).
double serving_distance_pdf(double x, const NetworkModel& model,
                            const ParentConfig& parents);

}  // namespace hetmeta::projection

#endif  // HETMETA_PROJECTION_HPP
