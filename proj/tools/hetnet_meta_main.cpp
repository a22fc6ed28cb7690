// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end: scenario ingestion, analytic moments and meta
// distribution curves, Monte Carlo simulation, and analytic-vs-simulation
// comparison.  All thresholds are dB on the command line and linear inside.
// Exit codes: 0 ok, 2 bad configuration, 3 accuracy failure, 4 degenerate
// moment pair, 5 comparison failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hetmeta/analytic_engine.hpp"
#include "hetmeta/errors.hpp"
#include "hetmeta/network_model.hpp"
#include "hetmeta/scenario_io.hpp"
#include "hetmeta/simulator.hpp"

namespace {

using hetmeta::NetworkModel;
using hetmeta::engine::Complex;
namespace engine = hetmeta::engine;
namespace io = hetmeta::io;
namespace sim = hetmeta::sim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAccuracy = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitCompareFail = 5;

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = nullptr;

  explicit OutputTarget(const std::string& path) {
    if (path.empty()) {
      stream = &std::cout;
      return;
    }
    file.open(path, std::ios::binary);
    if (!file)
      throw io::ScenarioError("cannot open output file '" + path + "'");
    stream = &file;
  }
  std::ostream& os() { return *stream; }
};

struct CommonArgs {
  std::string config;
  std::string beta_db_list = "0";
  std::string out;
  bool dump_config = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "Scenario file path")->required();
  cmd->add_option("--beta-db", args.beta_db_list,
                  "Comma separated SIR thresholds in dB");
  cmd->add_option("--out", args.out, "Output CSV path (default: stdout)");
  cmd->add_flag("--dump-config", args.dump_config,
                "Print the normalized scenario and exit");
}

// Shared preamble: parse scenario, honour --dump-config, convert thresholds.
struct Prepared {
  io::Scenario scenario;
  std::vector<double> beta_db;
  std::vector<double> beta_linear;
};

std::optional<Prepared> prepare(const CommonArgs& args) {
  Prepared p;
  p.scenario = io::load_scenario_file(args.config);
  if (args.dump_config) {
    OutputTarget out(args.out);
    out.os() << io::dump_scenario(p.scenario);
    return std::nullopt;
  }
  p.beta_db = io::parse_double_list(args.beta_db_list);
  for (const double bdb : p.beta_db)
    p.beta_linear.push_back(io::db_to_linear(bdb));
  return p;
}

int run_moments(const Prepared& p, const std::string& orders_list,
                const std::string& out_path) {
  const auto orders = io::parse_double_list(orders_list);
  for (const double b : orders)
    if (!(b >= 0.0))
      throw io::ScenarioError("moment orders must be >= 0, got " +
                              io::format_g6(b));
  std::vector<io::MomentRow> rows;
  for (std::size_t i = 0; i < p.beta_db.size(); ++i) {
    for (const double b : orders) {
      const auto m = engine::moment(p.beta_linear[i], Complex(b, 0.0),
                                    p.scenario.model, p.scenario.quad);
      rows.push_back({p.beta_db[i], b, m.value.real(), m.est_error});
    }
  }
  OutputTarget out(out_path);
  io::write_moment_csv(out.os(), std::move(rows));
  return kExitOk;
}

int run_meta(const Prepared& p, const std::string& theta_spec,
             const std::string& method, bool uniform_self_test,
             const std::string& out_path) {
  const auto theta = io::parse_theta_grid(theta_spec);
  std::vector<io::CurveRow> rows;
  std::vector<std::string> comments;
  for (std::size_t i = 0; i < p.beta_db.size(); ++i) {
    engine::MetaCurve curve;
    if (uniform_self_test) {
      // Injected uniform kernel (theta1 = theta2 = 1): the reconstruction
      // must return exactly 1 - theta.
      curve.beta = p.beta_linear[i];
      curve.method = engine::CurveMethod::beta_approx;
      curve.theta = theta;
      for (const double t : theta) curve.value.push_back(1.0 - t);
      curve.est_error = 0.0;
      comments.push_back("uniform_self_test beta_db=" +
                         io::format_g6(p.beta_db[i]) +
                         " theta1=1 theta2=1");
    } else if (method == "beta") {
      curve = engine::meta_ccdf_beta(p.beta_linear[i], theta,
                                     p.scenario.model, p.scenario.quad);
      if (curve.beta_params) {
        const auto& bp = *curve.beta_params;
        comments.push_back(
            "beta_params beta_db=" + io::format_g6(p.beta_db[i]) +
            " theta1=" + io::format_g6(bp.theta1) +
            " theta2=" + io::format_g6(bp.theta2) +
            " m1=" + io::format_g6(bp.m1) + " m2=" + io::format_g6(bp.m2));
      }
    } else {
      curve = engine::meta_ccdf_gil_pelaez(p.beta_linear[i], theta,
                                           p.scenario.model, p.scenario.quad);
    }
    for (std::size_t j = 0; j < theta.size(); ++j)
      rows.push_back({p.beta_db[i], theta[j], curve.value[j],
                      engine::method_name(curve.method), curve.est_error});
  }
  OutputTarget out(out_path);
  io::write_curve_csv(out.os(), std::move(rows), comments);
  return kExitOk;
}

sim::SimConfig make_sim_config(const Prepared& p, std::size_t realizations,
                               std::uint64_t seed, double window_km,
                               const std::string& theta_spec) {
  sim::SimConfig cfg;
  cfg.n_realizations =
      realizations > 0 ? realizations : p.scenario.sim.realizations;
  cfg.seed = seed;
  cfg.window_radius = window_km > 0.0 ? window_km : p.scenario.sim.window_km;
  cfg.beta_grid = p.beta_linear;
  cfg.theta_grid = io::parse_theta_grid(theta_spec);
  return cfg;
}

void report_sim_diagnostics(const sim::EmpiricalMeta& em) {
  std::cerr << "seed: " << em.seed << "\n";
  std::cerr << "window_km: " << io::format_g6(em.window_radius) << "\n";
  if (em.n_discarded > 0)
    std::cerr << "warning: " << em.n_discarded << " of " << em.n_requested
              << " realizations were empty and were discarded\n";
}

int run_simulate(const Prepared& p, std::size_t realizations,
                 std::uint64_t seed, double window_km,
                 const std::string& theta_spec, const std::string& out_path,
                 const std::string& moments_out_path) {
  const auto cfg = make_sim_config(p, realizations, seed, window_km,
                                   theta_spec);
  const auto em = sim::run_monte_carlo(p.scenario.model, cfg);
  report_sim_diagnostics(em);

  std::vector<std::string> comments;
  comments.push_back("seed=" + std::to_string(em.seed));
  comments.push_back("window_km=" + io::format_g6(em.window_radius));
  comments.push_back("realizations=" + std::to_string(em.n_requested));
  comments.push_back("discarded=" + std::to_string(em.n_discarded));
  std::vector<io::CurveRow> rows;
  std::vector<io::MomentRow> moment_rows;
  for (std::size_t k = 0; k < p.beta_db.size(); ++k) {
    const double n = static_cast<double>(em.ps[k].size());
    comments.push_back("empirical_moments beta_db=" +
                       io::format_g6(p.beta_db[k]) +
                       " m1=" + io::format_g6(em.m1[k]) +
                       " se_m1=" + io::format_g6(em.se_m1[k]) +
                       " m2=" + io::format_g6(em.m2[k]) +
                       " se_m2=" + io::format_g6(em.se_m2[k]));
    for (std::size_t j = 0; j < em.theta_grid.size(); ++j) {
      const double v = em.ccdf[k][j];
      const double se = n > 0.0 ? std::sqrt(v * (1.0 - v) / n) : 0.0;
      rows.push_back({p.beta_db[k], em.theta_grid[j], v, "empirical", se});
    }
    moment_rows.push_back({p.beta_db[k], 1.0, em.m1[k], em.se_m1[k]});
    moment_rows.push_back({p.beta_db[k], 2.0, em.m2[k], em.se_m2[k]});
  }

  OutputTarget out(out_path);
  io::write_curve_csv(out.os(), std::move(rows), comments);
  if (!moments_out_path.empty()) {
    OutputTarget mout(moments_out_path);
    io::write_moment_csv(mout.os(), std::move(moment_rows));
  } else if (out_path.empty()) {
    std::cout << "\n";
    io::write_moment_csv(std::cout, std::move(moment_rows));
  } else {
    io::write_moment_csv(std::cout, std::move(moment_rows));
  }
  return kExitOk;
}

int run_compare(const Prepared& p, std::size_t realizations,
                std::uint64_t seed, double window_km, double sim_alpha,
                const std::string& out_path) {
  auto cfg = make_sim_config(p, realizations, seed, window_km, "99");
  cfg.theta_grid = {0.5};  // curve output unused; moments drive the verdict

  NetworkModel sim_model = p.scenario.model;
  if (sim_alpha > 0.0) sim_model.alpha = sim_alpha;
  const auto violations = validate(sim_model);
  if (!violations.empty())
    throw io::ScenarioError("simulation alpha override rejected: " +
                            violations.front().message);
  const auto em = sim::run_monte_carlo(sim_model, cfg);
  report_sim_diagnostics(em);

  OutputTarget out(out_path);
  out.os() << "beta_db,order,analytic,empirical,std_err,abs_diff,n_se,"
              "verdict\n";
  std::vector<std::string> failures;
  for (std::size_t k = 0; k < p.beta_db.size(); ++k) {
    const double ana[2] = {
        engine::moment(p.beta_linear[k], Complex(1.0, 0.0), p.scenario.model,
                       p.scenario.quad)
            .value.real(),
        engine::moment(p.beta_linear[k], Complex(2.0, 0.0), p.scenario.model,
                       p.scenario.quad)
            .value.real()};
    const double emp[2] = {em.m1[k], em.m2[k]};
    const double se[2] = {em.se_m1[k], em.se_m2[k]};
    for (int o = 0; o < 2; ++o) {
      const double diff = std::abs(ana[o] - emp[o]);
      const double n_se = se[o] > 0.0
                              ? diff / se[o]
                              : (diff == 0.0 ? 0.0
                                             : std::numeric_limits<
                                                   double>::infinity());
      const bool pass = diff <= 3.0 * se[o];
      if (!pass)
        failures.push_back("beta_db=" + io::format_g6(p.beta_db[k]) +
                           " order=" + std::to_string(o + 1));
      out.os() << io::format_g6(p.beta_db[k]) << ',' << (o + 1) << ','
               << io::format_g6(ana[o]) << ',' << io::format_g6(emp[o]) << ','
               << io::format_g6(se[o]) << ',' << io::format_g6(diff) << ','
               << io::format_g6(n_se) << ',' << (pass ? "PASS" : "FAIL")
               << "\n";
    }
  }
  if (!failures.empty()) {
    std::cerr << "comparison failed at:";
    for (const auto& f : failures) std::cerr << " [" << f << "]";
    std::cerr << "\n";
    return kExitCompareFail;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Meta distribution of the downlink SIR in heterogeneous cellular "
      "networks: analytic moments, distribution reconstruction, and Monte "
      "Carlo simulation"};
  app.require_subcommand(1);

  CommonArgs moments_args;
  std::string orders_list = "1,2";
  auto* cmd_moments = app.add_subcommand(
      "moments", "Moments M_b(beta) of the conditional success probability");
  add_common(cmd_moments, moments_args);
  cmd_moments->add_option("--orders", orders_list,
                          "Comma separated moment orders (b >= 0)");

  CommonArgs meta_args;
  std::string theta_spec_meta = "99";
  std::string method = "beta";
  bool uniform_self_test = false;
  auto* cmd_meta = app.add_subcommand(
      "meta", "Meta distribution curve: reliability ccdf over theta");
  add_common(cmd_meta, meta_args);
  cmd_meta->add_option("--theta-grid", theta_spec_meta,
                       "Grid size N (uniform i/(N+1)) or explicit list");
  cmd_meta->add_option("--method", method, "Reconstruction method")
      ->check(CLI::IsMember({"beta", "gil-pelaez"}));
  cmd_meta->add_flag("--uniform-self-test", uniform_self_test,
                     "Bypass the engine with an injected uniform kernel "
                     "(theta1 = theta2 = 1); emits 1 - theta");

  CommonArgs sim_args;
  std::string theta_spec_sim = "99";
  std::size_t realizations = 0;
  std::uint64_t seed = 1;
  double window_km = 0.0;
  std::string moments_out;
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "Monte Carlo estimate of the meta distribution");
  add_common(cmd_simulate, sim_args);
  cmd_simulate->add_option("--theta-grid", theta_spec_sim,
                           "Grid size N or explicit list");
  cmd_simulate->add_option("--realizations", realizations,
                           "Override scenario realization count");
  cmd_simulate->add_option("--seed", seed, "Random stream seed");
  cmd_simulate->add_option("--window-km", window_km,
                           "Override simulation window radius");
  cmd_simulate->add_option("--moments-out", moments_out,
                           "Empirical moment table path (default: stdout)");

  CommonArgs compare_args;
  std::size_t cmp_realizations = 0;
  std::uint64_t cmp_seed = 1;
  double cmp_window_km = 0.0;
  double sim_alpha_override = 0.0;
  auto* cmd_compare = app.add_subcommand(
      "compare",
      "Analytic vs Monte Carlo moments, PASS/FAIL at 3 standard errors");
  add_common(cmd_compare, compare_args);
  cmd_compare->add_option("--realizations", cmp_realizations,
                          "Override scenario realization count");
  cmd_compare->add_option("--seed", cmp_seed, "Random stream seed");
  cmd_compare->add_option("--window-km", cmp_window_km,
                          "Override simulation window radius");
  cmd_compare->add_option("--sim-alpha-override", sim_alpha_override,
                          "Simulate with a different path loss exponent "
                          "(negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*cmd_moments) {
      const auto p = prepare(moments_args);
      if (!p) return kExitOk;
      return run_moments(*p, orders_list, moments_args.out);
    }
    if (*cmd_meta) {
      const auto p = prepare(meta_args);
      if (!p) return kExitOk;
      return run_meta(*p, theta_spec_meta, method, uniform_self_test,
                      meta_args.out);
    }
    if (*cmd_simulate) {
      const auto p = prepare(sim_args);
      if (!p) return kExitOk;
      return run_simulate(*p, realizations, seed, window_km, theta_spec_sim,
                          sim_args.out, moments_out);
    }
    if (*cmd_compare) {
      const auto p = prepare(compare_args);
      if (!p) return kExitOk;
      return run_compare(*p, cmp_realizations, cmp_seed, cmp_window_km,
                         sim_alpha_override, compare_args.out);
    }
  } catch (const hetmeta::DegenerateMomentsError& e) {
    std::cerr << "error: " << e.what() << " (m1=" << e.m1()
              << ", m2=" << e.m2() << ")\n";
    return kExitDegenerate;
  } catch (const hetmeta::AccuracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAccuracy;
  } catch (const io::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
