// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_ANALYTIC_ENGINE_HPP
#define HETMETA_ANALYTIC_ENGINE_HPP

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hetmeta/network_model.hpp"

// Exact moments M_b(beta) = E[P_s(beta)^b] of the conditional link success
// probability, and the two reconstructions of its distribution (beta-moment
// matching and Gil-Pelaez inversion of imaginary-order moments).
namespace hetmeta::engine {

using Complex = std::complex<double>;

struct QuadratureConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  int max_depth = 14;
  // Gaussian kernels are truncated this many spreads from their centre.
  double z_cutoff_sigmas = 8.0;
  // The radial integral is truncated where the serving mark has accumulated
  // this much probability mass.
  double r_cutoff_mass = 1.0 - 1e-8;
  double gil_pelaez_t_max = 200.0;
  int gil_pelaez_nodes = 2000;  // minimum node budget for the inversion
};

// Component id of the coupled user's own cluster in pgfl()/spfl().
inline constexpr int kOwnCluster = -1;

struct MomentResult {
  Complex value{};
  double est_error = 0.0;
};

struct BetaApproxParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

enum class CurveMethod { beta_approx, gil_pelaez, empirical };
const char* method_name(CurveMethod m);

struct MetaCurve {
  double beta = 1.0;
  CurveMethod method = CurveMethod::beta_approx;
  std::vector<double> theta;  // ascending, in (0, 1)
  std::vector<double> value;  // reliability ccdf at each theta
  double est_error = 0.0;     // max pointwise estimate over the grid
  std::optional<BetaApproxParams> beta_params;
};

// Interference discount of a single interferer with mark x against a server
// with mark r <= x: 1 - (1 + beta r / x)^{-b}.
Complex u_factor(double r, double x, double beta, Complex b);

// Joint Poisson-tier factor exp(-pi C(b) sum_j lambda_j P_j^{2/alpha}
// r^{2/alpha}) combining serving exclusion and interference discount; C is
// the Gauss hypergeometric factor of the homogeneous tier.
Complex q_factor(double r, const NetworkModel& model, double beta, Complex b);

// Per-cluster factor: expected interference discount over one cluster at
// centre distance z, joint with "no cluster member has mark below r".
Complex g_factor(double r, double z, const TierSpec& tier, double alpha,
                 double beta, Complex b, const QuadratureConfig& cfg = {});

// Projected intensity factor of a cluster candidate at mark r from a cluster
// centred at distance z (no interference content).
double rho_factor(double r, double z, const TierSpec& tier, double alpha);

// Probability generating functional of one cluster component evaluated on
// the interference discount: `component` is a cluster tier index or
// kOwnCluster.  For a type1 user the own-cluster component is trivial (1).
Complex pgfl(double r, int component, const NetworkModel& model, double beta,
             Complex b, const QuadratureConfig& cfg = {});

// First-order (serving) factor of the same component; trivially 0 for the
// own cluster of a type1 user.
Complex spfl(double r, int component, const NetworkModel& model, double beta,
             Complex b, const QuadratureConfig& cfg = {});

// P(no candidate mark below r): the b = 0 shell of the machinery.
double serving_survival(double r, const NetworkModel& model,
                        const QuadratureConfig& cfg = {});

// Smallest r at which the serving mark has accumulated `mass` probability.
// Throws AccuracyError when the network has positive void probability and
// the requested mass is unreachable.
double serving_mass_radius(const NetworkModel& model, double mass,
                           const QuadratureConfig& cfg = {});

// Moment of order b (complex order enables the inversion path).
MomentResult moment(double beta, Complex b, const NetworkModel& model,
                    const QuadratureConfig& cfg = {});

// Matches (M_1, M_2) to a beta distribution.  Throws DegenerateMomentsError
// when the pair is inconsistent with a nondegenerate beta law.
BetaApproxParams beta_approx(double beta, const NetworkModel& model,
                             const QuadratureConfig& cfg = {});

MetaCurve meta_ccdf_beta(double beta, const std::vector<double>& theta_grid,
                         const NetworkModel& model,
                         const QuadratureConfig& cfg = {});

MetaCurve meta_ccdf_gil_pelaez(double beta,
                               const std::vector<double>& theta_grid,
                               const NetworkModel& model,
                               const QuadratureConfig& cfg = {});

// Inversion core shared by meta_ccdf_gil_pelaez and synthetic-moment tests:
// 0.5 + (1/pi) int_0^T Im(e^{-jt ln theta} M(jt)) / t dt with the last half
// of the range averaged to damp the truncation oscillation.
MetaCurve gil_pelaez_from_moments(
    const std::function<Complex(double)>& moment_of_it, double beta_label,
    const std::vector<double>& theta_grid, const QuadratureConfig& cfg = {});

}  // namespace hetmeta::engine

#endif  // HETMETA_ANALYTIC_ENGINE_HPP
