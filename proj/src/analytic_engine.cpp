// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#include "hetmeta/analytic_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "hetmeta/errors.hpp"
#include "hetmeta/projection.hpp"
#include "hetmeta/quadrature.hpp"
#include "hetmeta/special_functions.hpp"

namespace hetmeta::engine {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_zero(Complex b) { return b.real() == 0.0 && b.imag() == 0.0; }

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be finite and > 0");
  }
}

void require_order(Complex b) {
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag()) ||
      b.real() < 0.0) {
    throw std::invalid_argument("order b must be finite with Re(b) >= 0");
  }
}

void require_model(const NetworkModel& m) {
  auto v = validate(m);
  if (!v.empty()) {
    throw std::invalid_argument("invalid model: " + v.front().field + ": " +
                                v.front().message);
  }
}

double k1_sum(const NetworkModel& m) {
  double k1 = 0.0;
  for (const TierSpec& t : m.tiers) {
    if (t.kind == TierKind::ppp && t.ppp_intensity > 0.0) {
      k1 += t.ppp_intensity * std::pow(t.power, 2.0 / m.alpha);
    }
  }
  return k1;
}

// One cluster component of the interference field: a cluster tier's parent
// field, or the coupled user's own cluster (parent_intensity = 0, weighted
// by the user-offset law instead).
struct CompRef {
  const TierSpec* tier;
  double parent_intensity;
  bool own;
  double user_spread;  // own only
};

std::vector<CompRef> active_components(const NetworkModel& m) {
  std::vector<CompRef> out;
  for (const TierSpec& t : m.tiers) {
    if (t.kind == TierKind::pcp && t.parent_intensity > 0.0 &&
        t.mean_cluster_size > 0.0) {
      out.push_back({&t, t.parent_intensity, false, 0.0});
    }
  }
  if (m.has_coupled_user()) {
    out.push_back({&m.coupled_tier(), 0.0, true, m.user_spread()});
  }
  return out;
}

quad::Tolerance outer_tol(const QuadratureConfig& c) {
  return {c.rel_tol, c.abs_tol, c.max_depth};
}
quad::Tolerance z_tol(const QuadratureConfig& c) {
  return {0.1 * c.rel_tol, 0.1 * c.abs_tol, std::min(c.max_depth, 12)};
}
quad::Tolerance y_tol(const QuadratureConfig& c) {
  return {0.01 * c.rel_tol, 0.01 * c.abs_tol, std::min(c.max_depth, 10)};
}

// Builds a sorted, clamped, deduplicated edge list for an integration
// window.  Returns the number of edges written.
int make_edges(std::span<double> out, std::initializer_list<double> candidates,
               double lo, double hi) {
  int n = 0;
  out[n++] = lo;
  for (double c : candidates) {
    if (c > lo && c < hi) out[n++] = c;
  }
  out[n++] = hi;
  std::sort(out.begin(), out.begin() + n);
  return n;
}

// Expected per-cluster factor at server mark r for a cluster centred at
// distance z.  yr = (r P)^{1/alpha} is the server's equivalent distance in
// this tier.  In the distance variable the interferer discount is
// u(y) = 1 - (1 + beta (yr/y)^alpha)^{-b}, independent of the tier power.
Complex g_core(double yr, double z, const TierSpec& tier, double alpha,
               double beta, Complex b, double cut,
               const quad::Tolerance& tol) {
  const double sigma = tier.cluster_spread;
  const double fd = projection::rician_cdf(yr, z, sigma);
  if (is_zero(b)) return std::exp(Complex(-tier.mean_cluster_size * fd, 0.0));
  Complex inner = 0.0;
  const double lo = std::max(yr, z - cut);
  const double hi = z + cut;
  if (hi > lo) {
    std::array<double, 4> edges;
    const int n = make_edges(edges, {z}, lo, hi);
    auto f = [&](double y) -> Complex {
      const Complex u =
          1.0 - std::exp(-b * std::log1p(beta * std::pow(yr / y, alpha)));
      return u * projection::rician_pdf(y, z, sigma);
    };
    inner = quad::integrate(f, std::span<const double>(edges.data(),
                                                       static_cast<std::size_t>(n)),
                            tol)
                .value;
  }
  return std::exp(-tier.mean_cluster_size * (inner + fd));
}

// PGFL of a parent component: exp(-2 pi lambda_p int_0^inf z (1-g(r,z)) dz).
// The integrand decays like z^{1-alpha}; beyond z0 the substitution
// z = z0 w^{-1/(alpha-2)} makes it asymptotically constant in w.
Complex pg_parent_core(double r, const CompRef& c, double alpha, double beta,
                       Complex b, const QuadratureConfig& cfg) {
  const TierSpec& t = *c.tier;
  const double yr = std::pow(r * t.power, 1.0 / alpha);
  const double cut = cfg.z_cutoff_sigmas * t.cluster_spread;
  const double z0 = yr + 2.0 * cut;
  const auto tol = z_tol(cfg);
  const auto toly = y_tol(cfg);
  const double two_pi_lam = 2.0 * kPi * c.parent_intensity;

  auto near_f = [&](double z) -> Complex {
    return two_pi_lam * z *
           (1.0 - g_core(yr, z, t, alpha, beta, b, cut, toly));
  };
  std::array<double, 5> edges;
  const int n = make_edges(edges, {yr - cut, yr, yr + cut}, 0.0, z0);
  Complex expo =
      quad::integrate(near_f,
                      std::span<const double>(edges.data(),
                                              static_cast<std::size_t>(n)),
                      tol)
          .value;

  if (!is_zero(b)) {
    const double q = 1.0 / (alpha - 2.0);
    auto tail_f = [&](double w) -> Complex {
      const double z = z0 * std::pow(w, -q);
      const double jac = z0 * q * std::pow(w, -q - 1.0);
      return two_pi_lam * z * jac *
             (1.0 - g_core(yr, z, t, alpha, beta, b, cut, toly));
    };
    expo += quad::integrate(tail_f, {0.0, 0.25, 1.0}, tol).value;
  }
  return std::exp(-expo);
}

// Serving-weighted companion of pg_parent_core, without the component's own
// PGFL factor and without the radial jacobian (1/alpha) r^{1/alpha-1}:
//   w = mbar P^{1/alpha} int 2 pi lambda_p z f_d(yr|z) g(r,z) dz.
Complex w_parent_core(double r, const CompRef& c, double alpha, double beta,
                      Complex b, const QuadratureConfig& cfg) {
  const TierSpec& t = *c.tier;
  const double yr = std::pow(r * t.power, 1.0 / alpha);
  const double sigma = t.cluster_spread;
  const double cut = cfg.z_cutoff_sigmas * sigma;
  const double lo = std::max(0.0, yr - cut);
  const double hi = yr + cut;
  const auto toly = y_tol(cfg);
  auto f = [&](double z) -> Complex {
    return 2.0 * kPi * c.parent_intensity * z *
           projection::rician_pdf(yr, z, sigma) *
           g_core(yr, z, t, alpha, beta, b, cut, toly);
  };
  std::array<double, 3> edges;
  const int n = make_edges(edges, {yr}, lo, hi);
  auto res = quad::integrate(
      f, std::span<const double>(edges.data(), static_cast<std::size_t>(n)),
      z_tol(cfg));
  return t.mean_cluster_size * std::pow(t.power, 1.0 / alpha) * res.value;
}

// PGFL of the coupled user's own cluster: the centre offset is a single
// random distance with Rayleigh(user_spread) law, not a Poisson field.
Complex pg_own_core(double r, const CompRef& c, double alpha, double beta,
                    Complex b, const QuadratureConfig& cfg) {
  const TierSpec& t = *c.tier;
  const double yr = std::pow(r * t.power, 1.0 / alpha);
  const double su = c.user_spread;
  const double cut_u = cfg.z_cutoff_sigmas * su;
  const double cut = cfg.z_cutoff_sigmas * t.cluster_spread;
  const auto toly = y_tol(cfg);
  auto f = [&](double z) -> Complex {
    return g_core(yr, z, t, alpha, beta, b, cut, toly) *
           projection::rician_pdf(z, 0.0, su);
  };
  std::array<double, 6> edges;
  const int n =
      make_edges(edges, {su, yr - cut, yr, yr + cut}, 0.0, cut_u);
  return quad::integrate(
             f,
             std::span<const double>(edges.data(), static_cast<std::size_t>(n)),
             z_tol(cfg))
      .value;
}

// Serving-weighted factor of the own cluster, again without the radial
// jacobian: mbar P^{1/alpha} int f_d(yr|z) g(r,z) f_offset(z) dz.
Complex w_own_core(double r, const CompRef& c, double alpha, double beta,
                   Complex b, const QuadratureConfig& cfg) {
  const TierSpec& t = *c.tier;
  const double yr = std::pow(r * t.power, 1.0 / alpha);
  const double sigma = t.cluster_spread;
  const double su = c.user_spread;
  const double cut = cfg.z_cutoff_sigmas * sigma;
  const double lo = std::max(0.0, yr - cut);
  const double hi = std::min(yr + cut, cfg.z_cutoff_sigmas * su);
  if (hi <= lo) return 0.0;
  const auto toly = y_tol(cfg);
  auto f = [&](double z) -> Complex {
    return projection::rician_pdf(yr, z, sigma) *
           g_core(yr, z, t, alpha, beta, b, cut, toly) *
           projection::rician_pdf(z, 0.0, su);
  };
  std::array<double, 4> edges;
  const int n = make_edges(edges, {yr, su}, lo, hi);
  auto res = quad::integrate(
      f, std::span<const double>(edges.data(), static_cast<std::size_t>(n)),
      z_tol(cfg));
  return t.mean_cluster_size * std::pow(t.power, 1.0 / alpha) * res.value;
}

// Shared state for one (model, beta) pair: component list, truncation radius
// and median split of the serving-mark law.
struct Evaluator {
  const NetworkModel& m;
  QuadratureConfig cfg;
  double beta;
  double alpha;
  double k1;
  std::vector<CompRef> comps;
  // Radial truncation and median split, resolved on first moment use so that
  // survival-only callers never pay for (or fail on) the mass cutoff.
  mutable double r_max = 0.0;
  mutable double r_med = 0.0;
  mutable bool radii_ready = false;

  Evaluator(const NetworkModel& model, double beta_lin,
            const QuadratureConfig& config)
      : m(model), cfg(config), beta(beta_lin), alpha(model.alpha),
        k1(k1_sum(model)), comps(active_components(model)) {
    require_model(model);
    require_positive(beta_lin, "beta");
  }

  double survival(double r) const {
    Complex s = std::exp(Complex(-kPi * k1 * std::pow(r, 2.0 / alpha), 0.0));
    for (const CompRef& c : comps) {
      s *= c.own ? pg_own_core(r, c, alpha, beta, Complex{}, cfg)
                 : pg_parent_core(r, c, alpha, beta, Complex{}, cfg);
    }
    return s.real();
  }

  double mass_radius(double mass) const {
    const double target = 1.0 - mass;
    double r_hi = 1.0;
    int grow = 0;
    while (survival(r_hi) > target) {
      r_hi *= 16.0;
      if (++grow > 100) {
        throw AccuracyError(
            "serving_mass_radius: requested mass is unreachable (the "
            "network has positive void probability)");
      }
    }
    double r_lo = 0.0;
    for (int i = 0; i < 200 && (r_hi - r_lo) > 1e-9 * r_hi; ++i) {
      const double mid = 0.5 * (r_lo + r_hi);
      (survival(mid) > target ? r_lo : r_hi) = mid;
    }
    return r_hi;
  }

  // Combined radial integrand in the substituted variable s = r^{1/alpha}.
  // The homogeneous-tier term carries jacobian 2s, the cluster serving terms
  // absorb (1/alpha) r^{1/alpha-1} dr = ds exactly.
  MomentResult moment_of(Complex b) const {
    require_order(b);
    if (!radii_ready) {
      r_max = mass_radius(cfg.r_cutoff_mass);
      r_med = mass_radius(0.5);
      radii_ready = true;
    }
    const Complex cfac =
        sf::gauss_2f1_neg(b, -2.0 / alpha, 1.0 - 2.0 / alpha, -beta);
    const double s_max = std::pow(r_max, 1.0 / alpha);
    const double s_med = std::pow(r_med, 1.0 / alpha);
    const double pk1 = kPi * k1;

    auto integrand = [&](double s) -> Complex {
      const double r = std::pow(s, alpha);
      Complex p_all = 1.0;
      Complex p_wo_own = 1.0;
      Complex w_parents = 0.0;
      Complex w_own = 0.0;
      for (const CompRef& c : comps) {
        if (c.own) {
          p_all *= pg_own_core(r, c, alpha, beta, b, cfg);
          w_own = w_own_core(r, c, alpha, beta, b, cfg);
        } else {
          const Complex pg = pg_parent_core(r, c, alpha, beta, b, cfg);
          p_all *= pg;
          p_wo_own *= pg;
          w_parents += w_parent_core(r, c, alpha, beta, b, cfg);
        }
      }
      const Complex q = std::exp(-pk1 * cfac * (s * s));
      return q * (p_all * (2.0 * pk1 * s + w_parents) + p_wo_own * w_own);
    };

    auto res =
        quad::integrate(integrand, {0.0, s_med, s_max}, outer_tol(cfg));
    if (!res.converged) {
      throw AccuracyError("moment: radial quadrature did not converge");
    }
    MomentResult out;
    out.value = res.value;
    out.est_error = res.abs_error + (1.0 - cfg.r_cutoff_mass) +
                    0.2 * cfg.rel_tol * std::abs(res.value) *
                        static_cast<double>(comps.size() + 1);
    return out;
  }
};

void require_theta_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("theta grid is empty");
  double prev = 0.0;
  for (double th : grid) {
    if (!(th > 0.0 && th <= 1.0)) {
      throw std::invalid_argument("theta grid values must lie in (0, 1]");
    }
    if (th <= prev) {
      throw std::invalid_argument("theta grid must be strictly ascending");
    }
    prev = th;
  }
}

const CompRef* find_component(const std::vector<CompRef>& comps,
                              const NetworkModel& m, int component) {
  if (component == kOwnCluster) {
    for (const CompRef& c : comps) {
      if (c.own) return &c;
    }
    return nullptr;  // type1 user: trivial component
  }
  if (component < 0 ||
      static_cast<std::size_t>(component) >= m.tiers.size()) {
    throw std::invalid_argument("pgfl/spfl: component index out of range");
  }
  const TierSpec& t = m.tiers[static_cast<std::size_t>(component)];
  if (t.kind != TierKind::pcp) {
    throw std::invalid_argument("pgfl/spfl: component must be a cluster tier");
  }
  for (const CompRef& c : comps) {
    if (!c.own && c.tier == &t) return &c;
  }
  return nullptr;  // inactive cluster tier: trivial component
}

}  // namespace

const char* method_name(CurveMethod m) {
  switch (m) {
    case CurveMethod::beta_approx:
      return "beta";
    case CurveMethod::gil_pelaez:
      return "gil-pelaez";
    case CurveMethod::empirical:
      return "empirical";
  }
  return "unknown";
}

Complex u_factor(double r, double x, double beta, Complex b) {
  require_positive(r, "u_factor: r");
  require_positive(x, "u_factor: x");
  require_positive(beta, "u_factor: beta");
  require_order(b);
  if (is_zero(b)) return 0.0;
  return 1.0 - std::exp(-b * std::log1p(beta * r / x));
}

Complex q_factor(double r, const NetworkModel& model, double beta,
                 Complex b) {
  require_positive(r, "q_factor: r");
  require_positive(beta, "q_factor: beta");
  require_order(b);
  require_model(model);
  const double alpha = model.alpha;
  const Complex cfac =
      sf::gauss_2f1_neg(b, -2.0 / alpha, 1.0 - 2.0 / alpha, -beta);
  return std::exp(-kPi * k1_sum(model) * cfac * std::pow(r, 2.0 / alpha));
}

Complex g_factor(double r, double z, const TierSpec& tier, double alpha,
                 double beta, Complex b, const QuadratureConfig& cfg) {
  require_positive(r, "g_factor: r");
  if (!(std::isfinite(z) && z >= 0.0)) {
    throw std::invalid_argument("g_factor: z must be finite and >= 0");
  }
  require_positive(beta, "g_factor: beta");
  require_order(b);
  if (tier.kind != TierKind::pcp) {
    throw std::invalid_argument("g_factor: tier must be a cluster tier");
  }
  const double yr = std::pow(r * tier.power, 1.0 / alpha);
  return g_core(yr, z, tier, alpha, beta, b,
                cfg.z_cutoff_sigmas * tier.cluster_spread, y_tol(cfg));
}

double rho_factor(double r, double z, const TierSpec& tier, double alpha) {
  require_positive(r, "rho_factor: r");
  if (!(std::isfinite(z) && z >= 0.0)) {
    throw std::invalid_argument("rho_factor: z must be finite and >= 0");
  }
  if (tier.kind != TierKind::pcp) {
    throw std::invalid_argument("rho_factor: tier must be a cluster tier");
  }
  const double yr = std::pow(r * tier.power, 1.0 / alpha);
  return tier.mean_cluster_size * std::pow(tier.power, 1.0 / alpha) /
         alpha * std::pow(r, 1.0 / alpha - 1.0) *
         projection::rician_pdf(yr, z, tier.cluster_spread);
}

Complex pgfl(double r, int component, const NetworkModel& model, double beta,
             Complex b, const QuadratureConfig& cfg) {
  require_positive(r, "pgfl: r");
  require_positive(beta, "pgfl: beta");
  require_order(b);
  require_model(model);
  const auto comps = active_components(model);
  const CompRef* c = find_component(comps, model, component);
  if (c == nullptr) return 1.0;
  return c->own ? pg_own_core(r, *c, model.alpha, beta, b, cfg)
                : pg_parent_core(r, *c, model.alpha, beta, b, cfg);
}

Complex spfl(double r, int component, const NetworkModel& model, double beta,
             Complex b, const QuadratureConfig& cfg) {
  require_positive(r, "spfl: r");
  require_positive(beta, "spfl: beta");
  require_order(b);
  require_model(model);
  const auto comps = active_components(model);
  const CompRef* c = find_component(comps, model, component);
  if (c == nullptr) return 0.0;
  const double alpha = model.alpha;
  const double jac = std::pow(r, 1.0 / alpha - 1.0) / alpha;
  if (c->own) {
    return jac * w_own_core(r, *c, alpha, beta, b, cfg);
  }
  return jac * w_parent_core(r, *c, alpha, beta, b, cfg) *
         pg_parent_core(r, *c, alpha, beta, b, cfg);
}

double serving_survival(double r, const NetworkModel& model,
                        const QuadratureConfig& cfg) {
  if (!(std::isfinite(r) && r >= 0.0)) {
    throw std::invalid_argument("serving_survival: r must be finite, >= 0");
  }
  require_model(model);
  if (r == 0.0) return 1.0;
  Evaluator ev_probe(model, 1.0, cfg);  // beta unused at b = 0
  return ev_probe.survival(r);
}

double serving_mass_radius(const NetworkModel& model, double mass,
                           const QuadratureConfig& cfg) {
  if (!(mass > 0.0 && mass < 1.0)) {
    throw std::invalid_argument("serving_mass_radius: mass must be in (0,1)");
  }
  require_model(model);
  Evaluator ev(model, 1.0, cfg);
  return ev.mass_radius(mass);
}

MomentResult moment(double beta, Complex b, const NetworkModel& model,
                    const QuadratureConfig& cfg) {
  Evaluator ev(model, beta, cfg);
  return ev.moment_of(b);
}

// Moments closer together than the quadrature error admit no usable match;
// the error-aware floor makes the degenerate verdict deterministic instead
// of leaving it to the sign of integration noise.
static BetaApproxParams match_beta_params(const MomentResult& r1,
                                          const MomentResult& r2,
                                          const char* who) {
  const double m1 = r1.value.real();
  const double m2 = r2.value.real();
  const double var = m2 - m1 * m1;
  const double noise = std::max(1e-10, 4.0 * (r1.est_error + r2.est_error));
  if (!(m1 > 0.0 && m1 < 1.0) || var <= noise || m1 - m2 <= noise) {
    throw DegenerateMomentsError(
        std::string(who) + ": moment pair (" + std::to_string(m1) + ", " +
            std::to_string(m2) + ") admits no nondegenerate beta match",
        m1, m2);
  }
  BetaApproxParams p;
  p.m1 = m1;
  p.m2 = m2;
  p.theta1 = m1 * (m1 - m2) / var;
  p.theta2 = p.theta1 * (1.0 - m1) / m1;
  return p;
}

BetaApproxParams beta_approx(double beta, const NetworkModel& model,
                             const QuadratureConfig& cfg) {
  Evaluator ev(model, beta, cfg);
  const auto r1 = ev.moment_of(Complex(1.0, 0.0));
  const auto r2 = ev.moment_of(Complex(2.0, 0.0));
  return match_beta_params(r1, r2, "beta_approx");
}

MetaCurve meta_ccdf_beta(double beta, const std::vector<double>& theta_grid,
                         const NetworkModel& model,
                         const QuadratureConfig& cfg) {
  require_theta_grid(theta_grid);
  Evaluator ev(model, beta, cfg);
  const auto r1 = ev.moment_of(Complex(1.0, 0.0));
  const auto r2 = ev.moment_of(Complex(2.0, 0.0));
  const BetaApproxParams p = match_beta_params(r1, r2, "meta_ccdf_beta");

  MetaCurve curve;
  curve.beta = beta;
  curve.method = CurveMethod::beta_approx;
  curve.theta = theta_grid;
  curve.value.reserve(theta_grid.size());
  for (double th : theta_grid) {
    curve.value.push_back(
        1.0 - sf::regularized_incomplete_beta(th, p.theta1, p.theta2));
  }
  curve.est_error = 4.0 * (r1.est_error + r2.est_error);
  curve.beta_params = p;
  return curve;
}

MetaCurve gil_pelaez_from_moments(
    const std::function<Complex(double)>& moment_of_it, double beta_label,
    const std::vector<double>& theta_grid, const QuadratureConfig& cfg) {
  require_theta_grid(theta_grid);
  const double t_max = cfg.gil_pelaez_t_max;
  if (!(std::isfinite(t_max) && t_max >= 10.0)) {
    throw std::invalid_argument("gil_pelaez_t_max must be >= 10");
  }

  double max_ln = 0.1;
  for (double th : theta_grid) max_ln = std::max(max_ln, -std::log(th));

  // Panel layout: geometric panels resolve [0, t_br]; two uniform blocks
  // cover [t_br, T/2] and [T/2, T] with at most ~4 rad of theta-phase per
  // panel.  The half-range split supports exact tail averaging below.
  const double t_br = std::min(1.0, 0.25 * t_max);
  constexpr int kGeo = 12;
  std::vector<double> edges;
  edges.push_back(0.0);
  for (int k = kGeo - 1; k >= 0; --k) {
    edges.push_back(t_br * std::ldexp(1.0, -k));
  }
  const double width_cap = 4.0 / max_ln;
  const int budget =
      std::max(16, cfg.gil_pelaez_nodes / 15 - kGeo);
  auto block = [&](double a, double bnd, int min_panels) {
    const int n = std::max(
        {min_panels, static_cast<int>(std::ceil((bnd - a) / width_cap))});
    for (int i = 1; i <= n; ++i) {
      edges.push_back(a + (bnd - a) * i / n);
    }
  };
  const double t_half = 0.5 * t_max;
  block(t_br, t_half, budget / 2);
  const std::size_t half_end = edges.size() - 1;
  block(t_half, t_max, budget / 2);
  const std::size_t n_panels = edges.size() - 1;

  // Cache the moment at every Kronrod node once.
  struct Panel {
    double half;
    std::array<double, 15> t;
    std::array<Complex, 15> mom;
  };
  std::vector<Panel> panels(n_panels);
  for (std::size_t p = 0; p < n_panels; ++p) {
    const double a = edges[p];
    const double b = edges[p + 1];
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    panels[p].half = h;
    for (int i = 0; i < 7; ++i) {
      panels[p].t[static_cast<std::size_t>(i)] = c - h * quad::detail::kXgk[i];
      panels[p].t[static_cast<std::size_t>(14 - i)] =
          c + h * quad::detail::kXgk[i];
    }
    panels[p].t[7] = c;
    for (int i = 0; i < 15; ++i) {
      panels[p].mom[static_cast<std::size_t>(i)] =
          moment_of_it(panels[p].t[static_cast<std::size_t>(i)]);
    }
  }
  double tail_amp = 0.0;
  for (const Complex& v : panels.back().mom) tail_amp += std::abs(v);
  tail_amp /= 15.0;

  MetaCurve curve;
  curve.beta = beta_label;
  curve.method = CurveMethod::gil_pelaez;
  curve.theta = theta_grid;
  curve.value.resize(theta_grid.size());
  double worst_est = 0.0;

  for (std::size_t k = 0; k < theta_grid.size(); ++k) {
    if (theta_grid[k] >= 1.0) {
      // P(P_s > 1) = 0 for a probability: exact, no inversion needed.
      curve.value[k] = 0.0;
      continue;
    }
    const double ln_th = std::log(theta_grid[k]);
    double g_full = 0.0;   // int_0^T Im(e^{-it ln θ} M)/t dt
    double g_half = 0.0;   // same up to T/2
    double s_tau = 0.0;    // int_{T/2}^T Im(e^{-it ln θ} M) dt
    for (std::size_t p = 0; p < n_panels; ++p) {
      const Panel& pn = panels[p];
      double acc = 0.0;
      double acc_tau = 0.0;
      for (int i = 0; i < 15; ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        const double t = pn.t[ii];
        const Complex rot = std::polar(1.0, -t * ln_th) * pn.mom[ii];
        const double w = quad::detail::kWgk[i < 8 ? i : 14 - i];
        acc += w * rot.imag() / t;
        acc_tau += w * rot.imag();
      }
      const double contrib = acc * pn.half;
      g_full += contrib;
      if (p < half_end) g_half += contrib;
      if (p >= half_end) s_tau += acc_tau * pn.half;
    }
    // Average the running integral over [T/2, T] (by parts, exactly) to
    // damp the truncation oscillation of the slowly decaying integrand.
    const double averaged =
        2.0 * g_full - g_half - (2.0 / t_max) * s_tau;
    curve.value[k] = std::clamp(0.5 + averaged / kPi, 0.0, 1.0);

    const double dl = std::max(std::abs(ln_th), 1e-2);
    worst_est = std::max(
        worst_est,
        tail_amp / (kPi * t_max * dl) * std::min(1.0, 4.0 / (dl * t_max)));
  }
  // Enforce monotonicity (inversion noise can leave tiny wiggles).
  for (std::size_t k = 1; k < curve.value.size(); ++k) {
    curve.value[k] = std::min(curve.value[k], curve.value[k - 1]);
  }
  curve.est_error = worst_est;
  return curve;
}

MetaCurve meta_ccdf_gil_pelaez(double beta,
                               const std::vector<double>& theta_grid,
                               const NetworkModel& model,
                               const QuadratureConfig& cfg) {
  require_theta_grid(theta_grid);
  Evaluator ev(model, beta, cfg);
  auto mfn = [&](double t) -> Complex {
    return ev.moment_of(Complex(0.0, t)).value;
  };
  MetaCurve curve = gil_pelaez_from_moments(mfn, beta, theta_grid, cfg);
  curve.est_error += 2.0 * cfg.rel_tol;
  return curve;
}

}  // namespace hetmeta::engine
