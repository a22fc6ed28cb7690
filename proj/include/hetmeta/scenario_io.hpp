// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_SCENARIO_IO_HPP
#define HETMETA_SCENARIO_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetmeta/analytic_engine.hpp"
#include "hetmeta/network_model.hpp"

// Scenario file ingestion and CSV emission for the command line tool.
//
// Scenario format: INI-like sections.  `[network]` (alpha, user_type,
// coupled_tier, user_spread), one `[tier]` section per tier in order
// (kind = ppp|pcp plus kind-specific keys), optional `[quadrature]` and
// `[simulation]` overrides.  `#` and `;` start comments.  Unknown sections
// or keys are errors, as are duplicate keys within a section.
namespace hetmeta::io {

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct SimSettings {
  std::size_t realizations = 10000;
  std::uint64_t seed = 1;
  double window_km = 0.0;  // <= 0: simulator default
};

struct Scenario {
  NetworkModel model;
  engine::QuadratureConfig quad;
  SimSettings sim;
};

// Throw ScenarioError with line/field diagnostics; the resulting model has
// passed validate().
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);

// Normalized scenario text; re-parsing reproduces the identical model
// (doubles are printed with round-trip precision).
std::string dump_scenario(const Scenario& s);

// Fixed-width significant formatting used by every CSV column.
std::string format_g6(double v);

double db_to_linear(double beta_db);

// "0.2,0.5,0.9" -> values; throws ScenarioError on anything unparseable.
std::vector<double> parse_double_list(const std::string& text);
// Either an integer count N (uniform grid i/(N+1)) or an explicit list;
// values must lie in (0, 1], returned sorted and duplicate-free.
std::vector<double> parse_theta_grid(const std::string& text);

struct CurveRow {
  double beta_db = 0.0;
  double theta = 0.0;
  double value = 0.0;
  std::string method;
  double est_error = 0.0;
};

struct MomentRow {
  double beta_db = 0.0;
  double order = 0.0;
  double value = 0.0;
  double est_error = 0.0;
};

// Header `beta_db,theta,value,method,est_error`, optional `#` comment lines
// (sidecar parameters), then rows sorted by (beta_db, theta).
void write_curve_csv(std::ostream& os, std::vector<CurveRow> rows,
                     const std::vector<std::string>& comments = {});

// Header `beta_db,order,value,est_error`, rows sorted by (beta_db, order).
void write_moment_csv(std::ostream& os, std::vector<MomentRow> rows);

}  // namespace hetmeta::io

#endif  // HETMETA_SCENARIO_IO_HPP
