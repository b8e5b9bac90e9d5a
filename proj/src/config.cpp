// Copyright 2026 The secrelay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "secrelay/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>

namespace secrelay {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  std::string t = s.substr(b, e - b + 1);
  if (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') && t.back() == t.front()) t = t.substr(1, t.size() - 2);
  return t;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* end = t.data() + t.size();
  const auto [p, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || p != end || t.empty() || !std::isfinite(v))
    throw ConfigError(key + ": expected a finite number, got '" + text + "'");
  return v;
}

long long to_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const char* end = t.data() + t.size();
  const auto [p, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || p != end || t.empty()) throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

int to_count(const std::string& key, const std::string& text, int lo) {
  const long long v = to_int(key, text);
  if (v < lo || v > 1000000) throw ConfigError(key + ": out of range");
  return static_cast<int>(v);
}

double to_positive(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Splits "<number> <unit>" with optional space; unit may be empty.
std::pair<std::string, std::string> number_and_unit(const std::string& text) {
  const std::string t = trim(text);
  std::size_t i = t.size();
  while (i > 0 && std::isalpha(static_cast<unsigned char>(t[i - 1]))) --i;
  return {trim(t.substr(0, i)), t.substr(i)};
}

struct Field {
  std::string key;
  std::function<void(Config&, const std::string&)> set;
  std::function<std::string(const Config&)> get;
};

// Endpoint coordinates are set per axis; "none" on both axes drops the
// constraint.
struct EndpointDraft {
  std::optional<std::string> x, y;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    auto num = [&f](const std::string& key, double Scenario::*m) {
      f.push_back({key, [key, m](Config& c, const std::string& v) { c.scenario.*m = to_double(key, v); },
                   [m](const Config& c) { return fmt(c.scenario.*m); }});
    };
    auto vec = [&f](const std::string& key, Vec2 Scenario::*m, double Vec2::*axis) {
      f.push_back({key, [key, m, axis](Config& c, const std::string& v) { c.scenario.*m.*axis = to_double(key, v); },
                   [m, axis](const Config& c) { return fmt(c.scenario.*m.*axis); }});
    };
    vec("alice_x_m", &Scenario::alice, &Vec2::x);
    vec("alice_y_m", &Scenario::alice, &Vec2::y);
    vec("bob_x_m", &Scenario::bob, &Vec2::x);
    vec("bob_y_m", &Scenario::bob, &Vec2::y);
    vec("eve_x_m", &Scenario::eve, &Vec2::x);
    vec("eve_y_m", &Scenario::eve, &Vec2::y);
    num("altitude_m", &Scenario::altitude);
    f.push_back({"n_slots", [](Config& c, const std::string& v) { c.scenario.n_slots = to_count("n_slots", v, 2); },
                 [](const Config& c) { return std::to_string(c.scenario.n_slots); }});
    num("slot_len_s", &Scenario::slot_len);
    num("v_max_mps", &Scenario::v_max);
    f.push_back({"ref_snr", [](Config& c, const std::string& v) { c.scenario.ref_snr = parse_ref_snr(v); },
                 [](const Config& c) { return fmt(c.scenario.ref_snr); }});
    f.push_back({"p_bar_s", [](Config& c, const std::string& v) { c.scenario.p_bar_s = parse_power(v); },
                 [](const Config& c) { return fmt(c.scenario.p_bar_s) + " W"; }});
    f.push_back({"p_bar_r", [](Config& c, const std::string& v) { c.scenario.p_bar_r = parse_power(v); },
                 [](const Config& c) { return fmt(c.scenario.p_bar_r) + " W"; }});
    auto endpoint = [&f](const std::string& key, std::optional<Vec2> Scenario::*m, double Vec2::*axis) {
      f.push_back({key, nullptr, [m, axis](const Config& c) {
                     const auto& p = c.scenario.*m;
                     return p ? fmt((*p).*axis) : std::string("none");
                   }});
    };
    endpoint("start_x_m", &Scenario::start, &Vec2::x);
    endpoint("start_y_m", &Scenario::start, &Vec2::y);
    endpoint("end_x_m", &Scenario::end, &Vec2::x);
    endpoint("end_y_m", &Scenario::end, &Vec2::y);

    f.push_back({"ao_rel_tol", [](Config& c, const std::string& v) { c.run.ao.rel_tol = to_positive("ao_rel_tol", v); },
                 [](const Config& c) { return fmt(c.run.ao.rel_tol); }});
    f.push_back({"ao_max_iter", [](Config& c, const std::string& v) { c.run.ao.max_iter = to_count("ao_max_iter", v, 1); },
                 [](const Config& c) { return std::to_string(c.run.ao.max_iter); }});
    f.push_back({"scp_rel_tol",
                 [](Config& c, const std::string& v) { c.run.scp.rel_tol = c.run.ao.scp.rel_tol = to_positive("scp_rel_tol", v); },
                 [](const Config& c) { return fmt(c.run.scp.rel_tol); }});
    f.push_back({"scp_max_iter",
                 [](Config& c, const std::string& v) {
                   c.run.scp.max_iter = c.run.ao.scp.max_iter = to_count("scp_max_iter", v, 1);
                 },
                 [](const Config& c) { return std::to_string(c.run.scp.max_iter); }});
    f.push_back({"scp_solver_tol",
                 [](Config& c, const std::string& v) {
                   c.run.scp.solver.tol = c.run.ao.scp.solver.tol = to_positive("scp_solver_tol", v);
                 },
                 [](const Config& c) { return fmt(c.run.scp.solver.tol); }});
    f.push_back({"dc_rel_tol",
                 [](Config& c, const std::string& v) { c.run.dc.rel_tol = c.run.ao.dc.rel_tol = to_positive("dc_rel_tol", v); },
                 [](const Config& c) { return fmt(c.run.dc.rel_tol); }});
    f.push_back({"dc_max_iter",
                 [](Config& c, const std::string& v) { c.run.dc.max_iter = c.run.ao.dc.max_iter = to_count("dc_max_iter", v, 1); },
                 [](const Config& c) { return std::to_string(c.run.dc.max_iter); }});
    f.push_back({"dc_kkt_tol",
                 [](Config& c, const std::string& v) { c.run.dc.kkt_tol = c.run.ao.dc.kkt_tol = to_positive("dc_kkt_tol", v); },
                 [](const Config& c) { return fmt(c.run.dc.kkt_tol); }});
    f.push_back({"dc_solver_tol",
                 [](Config& c, const std::string& v) {
                   c.run.dc.solver.tol = c.run.ao.dc.solver.tol = to_positive("dc_solver_tol", v);
                 },
                 [](const Config& c) { return fmt(c.run.dc.solver.tol); }});
    f.push_back({"static_nx", [](Config& c, const std::string& v) { c.run.grid.nx = to_count("static_nx", v, 1); },
                 [](const Config& c) { return std::to_string(c.run.grid.nx); }});
    f.push_back({"static_ny", [](Config& c, const std::string& v) { c.run.grid.ny = to_count("static_ny", v, 1); },
                 [](const Config& c) { return std::to_string(c.run.grid.ny); }});
    f.push_back({"static_refine_passes",
                 [](Config& c, const std::string& v) { c.run.grid.refine_passes = to_count("static_refine_passes", v, 0); },
                 [](const Config& c) { return std::to_string(c.run.grid.refine_passes); }});
    f.push_back({"static_bounds_m",
                 [](Config& c, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "auto") {
                     c.run.grid_from_scenario = true;
                     return;
                   }
                   double b[4];
                   std::size_t pos = 0;
                   for (int i = 0; i < 4; ++i) {
                     const std::size_t comma = i < 3 ? t.find(',', pos) : t.size();
                     if (comma == std::string::npos) throw ConfigError("static_bounds_m: expected auto or x_lo,x_hi,y_lo,y_hi");
                     b[i] = to_double("static_bounds_m", t.substr(pos, comma - pos));
                     pos = comma + 1;
                   }
                   if (b[0] > b[1] || b[2] > b[3]) throw ConfigError("static_bounds_m: empty box");
                   c.run.grid_from_scenario = false;
                   c.run.grid.x_lo = b[0];
                   c.run.grid.x_hi = b[1];
                   c.run.grid.y_lo = b[2];
                   c.run.grid.y_hi = b[3];
                 },
                 [](const Config& c) {
                   if (c.run.grid_from_scenario) return std::string("auto");
                   return fmt(c.run.grid.x_lo) + "," + fmt(c.run.grid.x_hi) + "," + fmt(c.run.grid.y_lo) + "," +
                          fmt(c.run.grid.y_hi);
                 }});
    f.push_back({"ferry_relay_levels",
                 [](Config& c, const std::string& v) { c.run.ferry.relay_levels = to_count("ferry_relay_levels", v, 1); },
                 [](const Config& c) { return std::to_string(c.run.ferry.relay_levels); }});
    f.push_back({"multistart", [](Config& c, const std::string& v) { c.run.multistart = to_bool("multistart", v); },
                 [](const Config& c) { return std::string(c.run.multistart ? "true" : "false"); }});
    f.push_back({"snapshots", [](Config& c, const std::string& v) { c.run.snapshots = to_bool("snapshots", v); },
                 [](const Config& c) { return std::string(c.run.snapshots ? "true" : "false"); }});
    f.push_back({"seed",
                 [](Config& c, const std::string& v) {
                   const long long s = to_int("seed", v);
                   if (s < 0) throw ConfigError("seed: must be nonnegative");
                   c.run.seed = static_cast<std::uint64_t>(s);
                 },
                 [](const Config& c) { return std::to_string(c.run.seed); }});
    f.push_back({"output_dir", [](Config& c, const std::string& v) { c.run.output_dir = trim(v); },
                 [](const Config& c) { return c.run.output_dir; }});
    f.push_back({"input", [](Config& c, const std::string& v) { c.run.input = trim(v); },
                 [](const Config& c) { return c.run.input; }});
    return f;
  }();
  return table;
}

}  // namespace

double parse_power(const std::string& text) {
  const auto [num, unit] = number_and_unit(text);
  if (unit.empty()) throw ConfigError("power '" + trim(text) + "' needs a unit (W or dBm)");
  const double v = to_double("power", num);
  if (unit == "W") {
    if (v < 0.0) throw ConfigError("power must be nonnegative");
    return v;
  }
  if (unit == "dBm") return std::pow(10.0, (v - 30.0) / 10.0);
  throw ConfigError("unknown power unit '" + unit + "'");
}

double parse_ref_snr(const std::string& text) {
  const auto [num, unit] = number_and_unit(text);
  const double v = to_double("ref_snr", num);
  if (unit.empty()) {
    if (!(v > 0.0)) throw ConfigError("ref_snr must be positive");
    return v;
  }
  if (unit == "dB") return std::pow(10.0, v / 10.0);
  throw ConfigError("unknown ref_snr unit '" + unit + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const Field& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

Config parse_config(const std::map<std::string, std::string>& entries) {
  std::set<std::string> known(config_keys().begin(), config_keys().end());
  for (const auto& [k, v] : entries)
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");

  Config c;
  EndpointDraft start, end;
  for (const Field& f : fields()) {
    const auto it = entries.find(f.key);
    if (it == entries.end()) continue;
    if (f.set) {
      f.set(c, it->second);
    } else {
      EndpointDraft& d = f.key.rfind("start", 0) == 0 ? start : end;
      (f.key.find("_x_") != std::string::npos ? d.x : d.y) = trim(it->second);
    }
  }
  auto finish = [](const EndpointDraft& d, const std::string& name) -> std::optional<Vec2> {
    if (!d.x && !d.y) return std::nullopt;
    if (!d.x || !d.y) throw ConfigError(name + ": both _x_m and _y_m are required");
    if (*d.x == "none" && *d.y == "none") return std::nullopt;
    return Vec2{to_double(name + "_x_m", *d.x), to_double(name + "_y_m", *d.y)};
  };
  c.scenario.start = finish(start, "start");
  c.scenario.end = finish(end, "end");
  try {
    c.scenario.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.run.grid_from_scenario) {
    const StaticGrid g = default_static_grid(c.scenario);
    c.run.grid.x_lo = g.x_lo;
    c.run.grid.x_hi = g.x_hi;
    c.run.grid.y_lo = g.y_lo;
    c.run.grid.y_hi = g.y_hi;
  }
  return c;
}

Config load_config(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  std::map<std::string, std::string> entries;
  for (const auto& [k, node] : tree) {
    if (!node.empty()) throw ConfigError("sections are not supported ('" + k + "')");
    entries[k] = node.data();
  }
  return parse_config(entries);
}

std::vector<std::pair<std::string, std::string>> resolve_config(const Config& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Field& f : fields()) out.emplace_back(f.key, f.get(cfg));
  return out;
}

}  // namespace secrelay
