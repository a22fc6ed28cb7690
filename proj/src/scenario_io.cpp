// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#include "hetmeta/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hetmeta::io {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ScenarioError("line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, const std::string& key, int line) {
  const std::string t = trim(v);
  double out = 0.0;
  const auto* end = t.data() + t.size();
  const auto res = std::from_chars(t.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end || t.empty())
    fail(line, "value '" + v + "' for key '" + key + "' is not a number");
  return out;
}

long long to_int(const std::string& v, const std::string& key, int line) {
  const std::string t = trim(v);
  long long out = 0;
  const auto* end = t.data() + t.size();
  const auto res = std::from_chars(t.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end || t.empty())
    fail(line, "value '" + v + "' for key '" + key + "' is not an integer");
  return out;
}

std::uint64_t to_u64(const std::string& v, const std::string& key, int line) {
  const std::string t = trim(v);
  std::uint64_t out = 0;
  const auto* end = t.data() + t.size();
  const auto res = std::from_chars(t.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end || t.empty())
    fail(line, "value '" + v + "' for key '" + key +
                   "' is not an unsigned integer");
  return out;
}

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<KeyValue> entries;

  const KeyValue* find(const std::string& key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }
};

void check_keys(const Section& s, std::initializer_list<const char*> keys) {
  for (const auto& kv : s.entries) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) {
      return kv.key == k;
    });
    if (!known) fail(kv.line, "unknown key '" + kv.key + "' in [" + s.name + "]");
  }
}

std::vector<Section> tokenize(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(line_no, "malformed section header '" + line + "'");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) fail(line_no, "empty section name");
      sections.push_back(Section{name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(line_no, "expected 'key = value', got '" + line + "'");
    if (sections.empty())
      fail(line_no, "key outside of any section");
    KeyValue kv{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
    if (kv.key.empty()) fail(line_no, "empty key");
    if (kv.value.empty()) fail(line_no, "empty value for key '" + kv.key + "'");
    for (const auto& prev : sections.back().entries)
      if (prev.key == kv.key)
        fail(line_no, "duplicate key '" + kv.key + "' in [" +
                          sections.back().name + "] (first at line " +
                          std::to_string(prev.line) + ")");
    sections.back().entries.push_back(std::move(kv));
  }
  return sections;
}

void apply_network(const Section& s, NetworkModel& model) {
  check_keys(s, {"alpha", "user_type", "coupled_tier", "user_spread"});
  if (const auto* kv = s.find("alpha"))
    model.alpha = to_double(kv->value, kv->key, kv->line);
  if (const auto* kv = s.find("user_type")) {
    if (kv->value == "type1")
      model.user.kind = UserType::type1;
    else if (kv->value == "type2")
      model.user.kind = UserType::type2;
    else
      fail(kv->line, "user_type must be 'type1' or 'type2', got '" +
                         kv->value + "'");
  }
  const auto* coupled = s.find("coupled_tier");
  const auto* spread = s.find("user_spread");
  if (model.user.kind == UserType::type1) {
    if (coupled)
      fail(coupled->line, "coupled_tier requires user_type = type2");
    if (spread) fail(spread->line, "user_spread requires user_type = type2");
  } else {
    if (!coupled)
      fail(s.line, "[network] with user_type = type2 needs coupled_tier");
    const long long idx = to_int(coupled->value, coupled->key, coupled->line);
    if (idx < 1)
      fail(coupled->line, "coupled_tier is a 1-based tier number, got " +
                              coupled->value);
    model.user.coupled_tier = static_cast<int>(idx - 1);
    if (spread)
      model.user.user_spread = to_double(spread->value, spread->key,
                                         spread->line);
  }
}

TierSpec apply_tier(const Section& s) {
  const auto* kind = s.find("kind");
  if (!kind) fail(s.line, "[tier] needs a 'kind' key (ppp or pcp)");
  TierSpec tier;
  if (kind->value == "ppp") {
    check_keys(s, {"kind", "power", "intensity"});
    tier.kind = TierKind::ppp;
    const auto* lam = s.find("intensity");
    if (!lam) fail(s.line, "ppp tier needs 'intensity'");
    tier.ppp_intensity = to_double(lam->value, lam->key, lam->line);
  } else if (kind->value == "pcp") {
    check_keys(s, {"kind", "power", "parent_intensity", "mean_cluster_size",
                   "cluster_spread"});
    tier.kind = TierKind::pcp;
    const auto* lp = s.find("parent_intensity");
    const auto* mbar = s.find("mean_cluster_size");
    const auto* sig = s.find("cluster_spread");
    if (!lp || !mbar || !sig)
      fail(s.line,
           "pcp tier needs parent_intensity, mean_cluster_size, and "
           "cluster_spread");
    tier.parent_intensity = to_double(lp->value, lp->key, lp->line);
    tier.mean_cluster_size = to_double(mbar->value, mbar->key, mbar->line);
    tier.cluster_spread = to_double(sig->value, sig->key, sig->line);
  } else {
    fail(kind->line, "kind must be 'ppp' or 'pcp', got '" + kind->value + "'");
  }
  if (const auto* kv = s.find("power"))
    tier.power = to_double(kv->value, kv->key, kv->line);
  return tier;
}

void apply_quadrature(const Section& s, engine::QuadratureConfig& q) {
  check_keys(s, {"rel_tol", "abs_tol", "max_depth", "z_cutoff_sigmas",
                 "r_cutoff_mass", "gil_pelaez_t_max", "gil_pelaez_nodes"});
  if (const auto* kv = s.find("rel_tol"))
    q.rel_tol = to_double(kv->value, kv->key, kv->line);
  if (const auto* kv = s.find("abs_tol"))
    q.abs_tol = to_double(kv->value, kv->key, kv->line);
  if (const auto* kv = s.find("max_depth"))
    q.max_depth = static_cast<int>(to_int(kv->value, kv->key, kv->line));
  if (const auto* kv = s.find("z_cutoff_sigmas"))
    q.z_cutoff_sigmas = to_double(kv->value, kv->key, kv->line);
  if (const auto* kv = s.find("r_cutoff_mass"))
    q.r_cutoff_mass = to_double(kv->value, kv->key, kv->line);
  if (const auto* kv = s.find("gil_pelaez_t_max"))
    q.gil_pelaez_t_max = to_double(kv->value, kv->key, kv->line);
  if (const auto* kv = s.find("gil_pelaez_nodes"))
    q.gil_pelaez_nodes =
        static_cast<int>(to_int(kv->value, kv->key, kv->line));
}

void apply_simulation(const Section& s, SimSettings& sim) {
  check_keys(s, {"realizations", "seed", "window_km"});
  if (const auto* kv = s.find("realizations")) {
    const long long n = to_int(kv->value, kv->key, kv->line);
    if (n < 1) fail(kv->line, "realizations must be positive");
    sim.realizations = static_cast<std::size_t>(n);
  }
  if (const auto* kv = s.find("seed"))
    sim.seed = to_u64(kv->value, kv->key, kv->line);
  if (const auto* kv = s.find("window_km"))
    sim.window_km = to_double(kv->value, kv->key, kv->line);
}

std::string round_trip(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  Scenario out;
  const auto sections = tokenize(text);
  const Section* network = nullptr;
  for (const auto& s : sections) {
    if (s.name == "network") {
      if (network)
        fail(s.line, "duplicate [network] section (first at line " +
                         std::to_string(network->line) + ")");
      network = &s;
    } else if (s.name == "tier") {
      out.model.tiers.push_back(apply_tier(s));
    } else if (s.name == "quadrature" || s.name == "simulation") {
      // handled below after uniqueness check
    } else {
      fail(s.line, "unknown section [" + s.name + "]");
    }
  }
  const Section* quad = nullptr;
  const Section* sim = nullptr;
  for (const auto& s : sections) {
    if (s.name == "quadrature") {
      if (quad) fail(s.line, "duplicate [quadrature] section");
      quad = &s;
    } else if (s.name == "simulation") {
      if (sim) fail(s.line, "duplicate [simulation] section");
      sim = &s;
    }
  }
  if (!network) throw ScenarioError("missing [network] section");
  apply_network(*network, out.model);
  if (quad) apply_quadrature(*quad, out.quad);
  if (sim) apply_simulation(*sim, out.sim);

  const auto violations = validate(out.model);
  if (!violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += "\n  " + v.field + ": " + v.message;
    throw ScenarioError(msg);
  }
  return out;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string dump_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "[network]\n";
  os << "alpha = " << round_trip(s.model.alpha) << "\n";
  os << "user_type = "
     << (s.model.user.kind == UserType::type2 ? "type2" : "type1") << "\n";
  if (s.model.user.kind == UserType::type2) {
    os << "coupled_tier = " << (s.model.user.coupled_tier + 1) << "\n";
    if (s.model.user.user_spread)
      os << "user_spread = " << round_trip(*s.model.user.user_spread) << "\n";
  }
  for (const auto& t : s.model.tiers) {
    os << "\n[tier]\n";
    if (t.kind == TierKind::ppp) {
      os << "kind = ppp\n";
      os << "power = " << round_trip(t.power) << "\n";
      os << "intensity = " << round_trip(t.ppp_intensity) << "\n";
    } else {
      os << "kind = pcp\n";
      os << "power = " << round_trip(t.power) << "\n";
      os << "parent_intensity = " << round_trip(t.parent_intensity) << "\n";
      os << "mean_cluster_size = " << round_trip(t.mean_cluster_size) << "\n";
      os << "cluster_spread = " << round_trip(t.cluster_spread) << "\n";
    }
  }
  os << "\n[quadrature]\n";
  os << "rel_tol = " << round_trip(s.quad.rel_tol) << "\n";
  os << "abs_tol = " << round_trip(s.quad.abs_tol) << "\n";
  os << "max_depth = " << s.quad.max_depth << "\n";
  os << "z_cutoff_sigmas = " << round_trip(s.quad.z_cutoff_sigmas) << "\n";
  os << "r_cutoff_mass = " << round_trip(s.quad.r_cutoff_mass) << "\n";
  os << "gil_pelaez_t_max = " << round_trip(s.quad.gil_pelaez_t_max) << "\n";
  os << "gil_pelaez_nodes = " << s.quad.gil_pelaez_nodes << "\n";
  os << "\n[simulation]\n";
  os << "realizations = " << s.sim.realizations << "\n";
  os << "seed = " << s.sim.seed << "\n";
  os << "window_km = " << round_trip(s.sim.window_km) << "\n";
  return os.str();
}

std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double db_to_linear(double beta_db) { return std::pow(10.0, beta_db / 10.0); }

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty())
      throw ScenarioError("empty element in list '" + text + "'");
    double v = 0.0;
    const auto* end = t.data() + t.size();
    const auto res = std::from_chars(t.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
      throw ScenarioError("'" + t + "' in list '" + text +
                          "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ScenarioError("empty list");
  return out;
}

std::vector<double> parse_theta_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.find_first_of(".,eE") == std::string::npos) {
    long long n = 0;
    const auto* end = t.data() + t.size();
    const auto res = std::from_chars(t.data(), end, n);
    if (res.ec == std::errc{} && res.ptr == end) {
      if (n < 1) throw ScenarioError("theta grid size must be >= 1");
      std::vector<double> grid(static_cast<std::size_t>(n));
      for (long long i = 1; i <= n; ++i)
        grid[static_cast<std::size_t>(i - 1)] =
            static_cast<double>(i) / static_cast<double>(n + 1);
      return grid;
    }
  }
  auto grid = parse_double_list(t);
  std::sort(grid.begin(), grid.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 1.0))
      throw ScenarioError("theta values must lie in (0, 1]");
    if (i > 0 && grid[i] == grid[i - 1])
      throw ScenarioError("duplicate theta value " + format_g6(grid[i]));
  }
  return grid;
}

void write_curve_csv(std::ostream& os, std::vector<CurveRow> rows,
                     const std::vector<std::string>& comments) {
  std::sort(rows.begin(), rows.end(), [](const CurveRow& a, const CurveRow& b) {
    if (a.beta_db != b.beta_db) return a.beta_db < b.beta_db;
    return a.theta < b.theta;
  });
  for (const auto& c : comments) os << "# " << c << "\n";
  os << "beta_db,theta,value,method,est_error\n";
  for (const auto& r : rows)
    os << format_g6(r.beta_db) << ',' << format_g6(r.theta) << ','
       << format_g6(r.value) << ',' << r.method << ','
       << format_g6(r.est_error) << "\n";
}

void write_moment_csv(std::ostream& os, std::vector<MomentRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const MomentRow& a, const MomentRow& b) {
              if (a.beta_db != b.beta_db) return a.beta_db < b.beta_db;
              return a.order < b.order;
            });
  os << "beta_db,order,value,est_error\n";
  for (const auto& r : rows)
    os << format_g6(r.beta_db) << ',' << format_g6(r.order) << ','
       << format_g6(r.value) << ',' << format_g6(r.est_error) << "\n";
}

}  // namespace hetmeta::io
