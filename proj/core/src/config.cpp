#include "vmdg/config.hpp"

#include "vmdg/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

namespace vmdg {

const char* scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::scheme1: return "1";
    case SchemeId::scheme2: return "2";
    case SchemeId::scheme3: return "3";
    case SchemeId::scheme4: return "4";
    case SchemeId::scheme5: return "5";
    case SchemeId::scheme3f: return "3F";
    case SchemeId::scheme4f: return "4F";
    case SchemeId::scheme5f: return "5F";
  }
  return "?";
}

bool scheme_is_explicit_in_f(SchemeId id) {
  return id == SchemeId::scheme1 || id == SchemeId::scheme2;
}

bool scheme_is_composition(SchemeId id) {
  return id == SchemeId::scheme3f || id == SchemeId::scheme4f || id == SchemeId::scheme5f;
}

WeibelParams preset_params(PresetId preset) {
  WeibelParams p;
  if (preset == PresetId::weibel_run1) {
    p.delta = 0.5;
    p.v01 = 0.3;
    p.v02 = 0.3;
  } else {
    p.delta = 1.0 / 6.0;
    p.v01 = 0.5;
    p.v02 = 0.1;
  }
  return p;
}

const char* preset_name(PresetId preset) {
  return preset == PresetId::weibel_run1 ? "weibel_run1" : "weibel_run2";
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_real(int line, const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    fail(line, "malformed value for '" + key + "': " + value);
  }
  if (pos != value.size()) fail(line, "malformed value for '" + key + "': " + value);
  return v;
}

int parse_int(int line, const std::string& key, const std::string& value) {
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    fail(line, "malformed value for '" + key + "': " + value);
  }
  if (pos != value.size()) fail(line, "malformed value for '" + key + "': " + value);
  return v;
}

std::vector<double> parse_real_list(int line, const std::string& key, const std::string& value) {
  std::vector<double> out;
  if (trim(value).empty()) return out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(line, key, trim(item)));
  return out;
}

} // namespace

RunManifest parse_config(const std::string& text, bool accuracy_defaults) {
  RunManifest m;
  std::map<std::string, std::pair<std::string, int>> kv; // key -> (value, line)

  std::stringstream stream(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value', got: " + trim(raw));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "missing key");
    static const char* known[] = {"preset",  "scheme",      "k",
                                  "nx",      "nv",          "nv1",
                                  "nv2",     "v1c",         "v2c",
                                  "dt",      "cfl",         "t_final",
                                  "vlasov_flux", "maxwell_flux", "eps_tol",
                                  "out_dir", "cadence",     "snapshot_times",
                                  "slice_locations"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known))
      fail(lineno, "unknown key '" + key + "'");
    if (kv.count(key)) fail(lineno, "duplicate key '" + key + "'");
    kv[key] = {value, lineno};
  }

  auto take = [&](const char* key) -> std::optional<std::pair<std::string, int>> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto v = it->second;
    kv.erase(it);
    return v;
  };
  auto require = [&](const char* key) {
    auto v = take(key);
    if (!v) throw ConfigError(std::string("config: missing required key '") + key + "'");
    return *v;
  };

  // preset
  {
    auto [value, line] = require("preset");
    if (value == "weibel_run1") m.preset = PresetId::weibel_run1;
    else if (value == "weibel_run2") m.preset = PresetId::weibel_run2;
    else fail(line, "unknown preset '" + value + "'");
  }
  // scheme
  {
    auto [value, line] = require("scheme");
    std::string v = value;
    std::transform(v.begin(), v.end(), v.begin(), ::toupper);
    if (v == "1") m.scheme.id = SchemeId::scheme1;
    else if (v == "2") m.scheme.id = SchemeId::scheme2;
    else if (v == "3") m.scheme.id = SchemeId::scheme3;
    else if (v == "4") m.scheme.id = SchemeId::scheme4;
    else if (v == "5") m.scheme.id = SchemeId::scheme5;
    else if (v == "3F") m.scheme.id = SchemeId::scheme3f;
    else if (v == "4F") m.scheme.id = SchemeId::scheme4f;
    else if (v == "5F") m.scheme.id = SchemeId::scheme5f;
    else fail(line, "unknown scheme '" + value + "'");
  }
  {
    auto [value, line] = require("k");
    m.k = parse_int(line, "k", value);
    if (m.k < 1) fail(line, "k must be >= 1");
  }
  {
    auto [value, line] = require("nx");
    m.nx = parse_int(line, "nx", value);
    if (m.nx < 1) fail(line, "nx must be >= 1");
  }
  // nv sets both directions unless overridden
  if (auto nv = take("nv")) {
    int n = parse_int(nv->second, "nv", nv->first);
    if (n < 1) fail(nv->second, "nv must be >= 1");
    m.nv1 = m.nv2 = n;
  } else {
    m.nv1 = m.nv2 = 0;
  }
  if (auto nv1 = take("nv1")) {
    m.nv1 = parse_int(nv1->second, "nv1", nv1->first);
    if (m.nv1 < 1) fail(nv1->second, "nv1 must be >= 1");
  }
  if (auto nv2 = take("nv2")) {
    m.nv2 = parse_int(nv2->second, "nv2", nv2->first);
    if (m.nv2 < 1) fail(nv2->second, "nv2 must be >= 1");
  }
  if (m.nv1 == 0 || m.nv2 == 0)
    throw ConfigError("config: velocity cell counts required (nv, or nv1 and nv2)");

  double default_box = accuracy_defaults ? 1.2 : 1.5;
  m.v1c = default_box;
  m.v2c = default_box;
  if (auto v = take("v1c")) {
    m.v1c = parse_real(v->second, "v1c", v->first);
    if (m.v1c <= 0.0) fail(v->second, "v1c must be > 0");
  }
  if (auto v = take("v2c")) {
    m.v2c = parse_real(v->second, "v2c", v->first);
    if (m.v2c <= 0.0) fail(v->second, "v2c must be > 0");
  }

  if (auto v = take("dt")) {
    double dt = parse_real(v->second, "dt", v->first);
    if (dt <= 0.0) fail(v->second, "dt must be > 0");
    m.scheme.dt = dt;
  }
  if (auto v = take("cfl")) {
    double cfl = parse_real(v->second, "cfl", v->first);
    if (cfl <= 0.0) fail(v->second, "cfl must be > 0");
    if (!scheme_is_explicit_in_f(m.scheme.id))
      fail(v->second, "cfl policy is only available for schemes 1 and 2");
    m.scheme.cfl = cfl;
  }
  if (m.scheme.dt && m.scheme.cfl)
    throw ConfigError("config: give either dt or cfl, not both");
  if (!scheme_is_explicit_in_f(m.scheme.id) && !m.scheme.dt)
    throw ConfigError("config: fixed dt required for implicit schemes");
  if (scheme_is_explicit_in_f(m.scheme.id) && !m.scheme.dt && !m.scheme.cfl) {
    if (m.k > 3)
      throw ConfigError("config: no default cfl for k > 3; give dt or cfl");
    m.scheme.cfl = (m.k == 1) ? 0.3 : (m.k == 2) ? 0.15 : 0.08;
  }

  if (auto v = take("t_final")) {
    m.t_final = parse_real(v->second, "t_final", v->first);
    if (m.t_final < 0.0) fail(v->second, "t_final must be >= 0");
  }
  if (auto v = take("cadence")) {
    m.cadence = parse_int(v->second, "cadence", v->first);
    if (m.cadence < 1) fail(v->second, "cadence must be >= 1");
  }
  if (auto v = take("eps_tol")) {
    double tol = parse_real(v->second, "eps_tol", v->first);
    if (tol <= 0.0) fail(v->second, "eps_tol must be > 0");
    m.scheme.eps_tol = tol;
  }
  if (auto v = take("vlasov_flux")) {
    if (v->first == "upwind") m.scheme.vlasov_flux = VlasovFlux::upwind;
    else if (v->first == "central") m.scheme.vlasov_flux = VlasovFlux::central;
    else if (v->first == "downwind")
      fail(v->second, "vlasov_flux=downwind is reserved for backward substeps and cannot be "
                      "selected directly");
    else fail(v->second, "unknown vlasov_flux '" + v->first + "'");
  }
  if (auto v = take("maxwell_flux")) {
    if (v->first == "central") m.scheme.maxwell_flux = MaxwellFlux::central;
    else if (v->first == "alt_ep_bm") m.scheme.maxwell_flux = MaxwellFlux::alternating_Eplus_Bminus;
    else if (v->first == "alt_em_bp") m.scheme.maxwell_flux = MaxwellFlux::alternating_Eminus_Bplus;
    else fail(v->second, "unknown maxwell_flux '" + v->first + "'");
  }
  if (auto v = take("out_dir")) {
    if (v->first.empty()) fail(v->second, "out_dir must not be empty");
    m.out_dir = v->first;
  }
  if (auto v = take("snapshot_times"))
    m.snapshot_times = parse_real_list(v->second, "snapshot_times", v->first);
  else
    m.snapshot_times = {55.0, 82.0, 125.0};
  if (auto v = take("slice_locations"))
    m.slice_locations = parse_real_list(v->second, "slice_locations", v->first);
  else
    m.slice_locations = {0.0625 * M_PI, 4.9375 * M_PI};

  return m;
}

} // namespace vmdg
