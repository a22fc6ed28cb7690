// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>
#include <string>

#include "doctest.h"
#include "hetmeta/network_model.hpp"
#include "hetmeta/scenario_io.hpp"

using namespace hetmeta;
namespace io = hetmeta::io;

namespace {

const char* kReference = R"(# reference two tier scenario
[network]
alpha = 4
user_type = type2
coupled_tier = 2

[tier]
kind = ppp
power = 1
intensity = 1

[tier]
kind = pcp
power = 100          ; inline comment
parent_intensity = 2.5
mean_cluster_size = 4
cluster_spread = 0.04

[simulation]
realizations = 500
seed = 42
window_km = 8
)";

std::string err_of(const std::string& text) {
  try {
    (void)io::parse_scenario_text(text);
  } catch (const io::ScenarioError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("reference scenario parses to the expected model") {
  const io::Scenario s = io::parse_scenario_text(kReference);
  REQUIRE(s.model.tiers.size() == 2);
  CHECK(s.model.alpha == 4.0);
  CHECK(s.model.user.kind == UserType::type2);
  CHECK(s.model.user.coupled_tier == 1);  // 1-based in the file
  CHECK(s.model.tiers[0].kind == TierKind::ppp);
  CHECK(s.model.tiers[0].ppp_intensity == 1.0);
  CHECK(s.model.tiers[1].kind == TierKind::pcp);
  CHECK(s.model.tiers[1].power == 100.0);
  CHECK(s.model.tiers[1].parent_intensity == 2.5);
  CHECK(s.model.tiers[1].mean_cluster_size == 4.0);
  CHECK(s.model.tiers[1].cluster_spread == 0.04);
  CHECK(s.sim.realizations == 500);
  CHECK(s.sim.seed == 42);
  CHECK(s.sim.window_km == 8.0);
  CHECK(validate(s.model).empty());
}

TEST_CASE("dump and re-parse is the identity") {
  const io::Scenario s = io::parse_scenario_text(kReference);
  const std::string d1 = io::dump_scenario(s);
  const io::Scenario s2 = io::parse_scenario_text(d1);
  CHECK(io::dump_scenario(s2) == d1);
  // Round-trip precision on non-representable decimals.
  io::Scenario odd = s;
  odd.model.tiers[1].cluster_spread = 0.060000000000000005;
  odd.quad.rel_tol = 1.2345678901234567e-7;
  const io::Scenario rt = io::parse_scenario_text(io::dump_scenario(odd));
  CHECK(rt.model.tiers[1].cluster_spread == odd.model.tiers[1].cluster_spread);
  CHECK(rt.quad.rel_tol == odd.quad.rel_tol);
}

TEST_CASE("parse errors carry line numbers and context") {
  CHECK(err_of("[network]\nalpha = 4\nbogus_key = 1\n[tier]\nkind = ppp\n"
               "intensity = 1\n")
            .find("line 3: unknown key 'bogus_key'") != std::string::npos);
  CHECK(err_of("[network]\nalpha = 4\n[mystery]\n")
            .find("line 3: unknown section [mystery]") != std::string::npos);
  CHECK(err_of("[network]\nalpha = 4\nalpha = 5\n")
            .find("line 3: duplicate key 'alpha'") != std::string::npos);
  CHECK(err_of("[network]\nalpha = fast\n")
            .find("line 2") != std::string::npos);
  CHECK(err_of("alpha = 4\n").find("outside of any section") !=
        std::string::npos);
  CHECK(err_of("[network\nalpha = 4\n").find("malformed section header") !=
        std::string::npos);
  CHECK(err_of("[network]\nalpha\n").find("expected 'key = value'") !=
        std::string::npos);
  CHECK(err_of("[tier]\nkind = ppp\nintensity = 1\n")
            .find("missing [network]") != std::string::npos);
}

TEST_CASE("semantic errors: wrong keys for the tier kind and user type") {
  CHECK(err_of("[network]\nalpha = 4\n[tier]\nkind = ppp\nintensity = 1\n"
               "cluster_spread = 0.04\n")
            .find("unknown key 'cluster_spread'") != std::string::npos);
  CHECK(err_of("[network]\nalpha = 4\n[tier]\nkind = pcp\nintensity = 1\n")
            .find("unknown key 'intensity'") != std::string::npos);
  CHECK(err_of("[network]\nalpha = 4\n[tier]\nintensity = 1\n")
            .find("needs a 'kind' key") != std::string::npos);
  CHECK(err_of("[network]\nalpha = 4\ncoupled_tier = 2\n[tier]\nkind = ppp\n"
               "intensity = 1\n")
            .find("coupled_tier requires user_type = type2") !=
        std::string::npos);
  CHECK(err_of("[network]\nalpha = 4\nuser_type = type2\n[tier]\n"
               "kind = ppp\nintensity = 1\n")
            .find("needs coupled_tier") != std::string::npos);
}

TEST_CASE("post-parse validation failures name the field") {
  const std::string bad_alpha =
      "[network]\nalpha = 2\n[tier]\nkind = ppp\nintensity = 1\n";
  CHECK(err_of(bad_alpha).find("invalid scenario") != std::string::npos);
  CHECK(err_of(bad_alpha).find("alpha") != std::string::npos);
  // coupled_tier referencing a Poisson tier is caught by validate().
  const std::string bad_ref =
      "[network]\nalpha = 4\nuser_type = type2\ncoupled_tier = 1\n"
      "[tier]\nkind = ppp\nintensity = 1\n";
  CHECK(err_of(bad_ref).find("user.coupled_tier") != std::string::npos);
}

TEST_CASE("decibel conversion at the boundary") {
  CHECK(io::db_to_linear(0.0) == 1.0);
  CHECK(io::db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(io::db_to_linear(-10.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(io::db_to_linear(3.0) == doctest::Approx(1.9952623149688795));
}

TEST_CASE("value lists and theta grids") {
  CHECK(io::parse_double_list("1, 2.5,-3e-1") ==
        std::vector<double>{1.0, 2.5, -0.3});
  CHECK_THROWS_AS((void)io::parse_double_list("1,,2"), io::ScenarioError);
  CHECK_THROWS_AS((void)io::parse_double_list("1,two"), io::ScenarioError);

  const auto g3 = io::parse_theta_grid("3");
  REQUIRE(g3.size() == 3);
  CHECK(g3[0] == doctest::Approx(0.25));
  CHECK(g3[1] == doctest::Approx(0.5));
  CHECK(g3[2] == doctest::Approx(0.75));
  const auto g99 = io::parse_theta_grid("99");
  REQUIRE(g99.size() == 99);
  CHECK(g99.front() == doctest::Approx(0.01));
  CHECK(g99.back() == doctest::Approx(0.99));

  CHECK(io::parse_theta_grid("0.9, 0.1, 1") ==
        std::vector<double>{0.1, 0.9, 1.0});  // sorted, 1 allowed
  CHECK_THROWS_AS((void)io::parse_theta_grid("0"), io::ScenarioError);
  CHECK_THROWS_AS((void)io::parse_theta_grid("0.5,0.5"), io::ScenarioError);
  CHECK_THROWS_AS((void)io::parse_theta_grid("0.5,1.2"), io::ScenarioError);
  CHECK_THROWS_AS((void)io::parse_theta_grid("-0.25,0.5"), io::ScenarioError);
}

TEST_CASE("curve csv golden format") {
  std::vector<io::CurveRow> rows = {
      {10.0, 0.5, 0.25, "beta", 1e-6},
      {0.0, 0.9, 0.123456789, "beta", 2e-6},
      {0.0, 0.1, 0.98765, "beta", 2e-6},
  };
  std::ostringstream os;
  io::write_curve_csv(os, rows, {"note one"});
  CHECK(os.str() ==
        "# note one\n"
        "beta_db,theta,value,method,est_error\n"
        "0,0.1,0.98765,beta,2e-06\n"
        "0,0.9,0.123457,beta,2e-06\n"
        "10,0.5,0.25,beta,1e-06\n");
}

TEST_CASE("moment csv golden format") {
  std::vector<io::MomentRow> rows = {
      {0.0, 2.0, 0.4118451195, 4.1e-7},
      {0.0, 1.0, 0.5600991535, 1.6e-7},
  };
  std::ostringstream os;
  io::write_moment_csv(os, rows);
  CHECK(os.str() ==
        "beta_db,order,value,est_error\n"
        "0,1,0.560099,1.6e-07\n"
        "0,2,0.411845,4.1e-07\n");
}

TEST_CASE("six significant digit formatting") {
  CHECK(io::format_g6(0.5600991535) == "0.560099");
  CHECK(io::format_g6(1.0) == "1");
  CHECK(io::format_g6(2815.7166284662545) == "2815.72");
  CHECK(io::format_g6(1e-7) == "1e-07");
  CHECK(io::format_g6(-0.25) == "-0.25");
}
