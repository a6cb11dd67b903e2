#include "dporo/config.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "dporo/errors.hpp"

namespace dporo {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view v, int line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("malformed number '" + std::string(v) + "'", line);
  return out;
}

int parse_int(std::string_view v, int line) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("malformed integer '" + std::string(v) + "'", line);
  return out;
}

bool parse_bool(std::string_view v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("expected true or false, got '" + std::string(v) + "'", line);
}

std::vector<std::string_view> split(std::string_view v, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const size_t pos = v.find(sep);
    if (pos == std::string_view::npos) {
      if (!trim(v).empty()) parts.push_back(trim(v));
      break;
    }
    if (!trim(v.substr(0, pos)).empty()) parts.push_back(trim(v.substr(0, pos)));
    v.remove_prefix(pos + 1);
  }
  return parts;
}

std::vector<int> parse_int_list(std::string_view v, int line) {
  std::vector<int> out;
  for (const auto part : split(v, ',')) out.push_back(parse_int(part, line));
  return out;
}

std::vector<ModeData::Amp> parse_modes(std::string_view v, int line) {
  std::vector<ModeData::Amp> out;
  for (const auto part : split(v, ',')) {
    const size_t colon = part.find(':');
    if (colon == std::string_view::npos)
      throw ConfigError("expected n:amplitude pair, got '" + std::string(part) + "'", line);
    ModeData::Amp amp;
    amp.n = parse_int(trim(part.substr(0, colon)), line);
    amp.value = parse_double(trim(part.substr(colon + 1)), line);
    out.push_back(amp);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

constexpr const char* kMaterialKeys[] = {
    "rho", "mu", "b", "d", "kappa1", "kappa2", "alpha", "beta", "gamma",
    "alpha1", "alpha2", "alpha3", "tau1", "tau2", "tau3", "tau4"};

double* material_field(MaterialParams& m, std::string_view key) {
  static const std::map<std::string_view, double MaterialParams::*> fields = {
      {"rho", &MaterialParams::rho},       {"mu", &MaterialParams::mu},
      {"b", &MaterialParams::b},           {"d", &MaterialParams::d},
      {"kappa1", &MaterialParams::kappa1}, {"kappa2", &MaterialParams::kappa2},
      {"alpha", &MaterialParams::alpha},   {"beta", &MaterialParams::beta},
      {"gamma", &MaterialParams::gamma},   {"alpha1", &MaterialParams::alpha1},
      {"alpha2", &MaterialParams::alpha2}, {"alpha3", &MaterialParams::alpha3},
      {"tau1", &MaterialParams::tau1},     {"tau2", &MaterialParams::tau2},
      {"tau3", &MaterialParams::tau3},     {"tau4", &MaterialParams::tau4},
      {"length", &MaterialParams::length}};
  const auto it = fields.find(key);
  return it == fields.end() ? nullptr : &(m.*(it->second));
}

} // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::set<std::string> seen;        // "section/key" duplicates
  std::set<std::string> seen_material;
  bool have_material = false;
  bool have_bc = false;

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "material" && section != "scan" && section != "simulate" &&
          section != "probe" && section != "fit")
        throw UnknownKeyError("unknown section [" + section + "]", line_no);
      if (section == "material") have_material = true;
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected key = value", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("key '" + key + "' appears before any section", line_no);
    if (!seen.insert(section + "/" + key).second)
      throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no);

    if (section == "material") {
      if (key == "bc") {
        if (value == "A2") cfg.bc = BoundaryKind::MixedA2;
        else if (value == "A3") cfg.bc = BoundaryKind::MixedA3;
        else throw ConfigError("bc must be A2 or A3, got '" + std::string(value) + "'", line_no);
        have_bc = true;
      } else if (double* field = material_field(cfg.material, key)) {
        *field = parse_double(value, line_no);
        seen_material.insert(key);
      } else {
        throw UnknownKeyError("unknown key '" + key + "' in [material]", line_no);
      }
    } else if (section == "scan") {
      if (key == "n_max") cfg.scan.n_max = parse_int(value, line_no);
      else throw UnknownKeyError("unknown key '" + key + "' in [scan]", line_no);
    } else if (section == "probe") {
      if (key == "n_list") cfg.probe.n_list = parse_int_list(value, line_no);
      else throw UnknownKeyError("unknown key '" + key + "' in [probe]", line_no);
    } else if (section == "fit") {
      if (key == "window") cfg.fit.window = parse_double(value, line_no);
      else throw UnknownKeyError("unknown key '" + key + "' in [fit]", line_no);
    } else {  // simulate
      if (key == "N") cfg.simulate.N = parse_int(value, line_no);
      else if (key == "dt") cfg.simulate.dt = parse_double(value, line_no);
      else if (key == "t_end") cfg.simulate.t_end = parse_double(value, line_no);
      else if (key == "full_state") cfg.simulate.full_state = parse_bool(value, line_no);
      else if (key == "integrator") {
        if (value == "exact") cfg.simulate.integrator = Integrator::Exact;
        else if (value == "rk4") cfg.simulate.integrator = Integrator::RK4;
        else throw ConfigError("integrator must be exact or rk4, got '" + std::string(value) + "'", line_no);
      }
      else if (key == "u0") cfg.simulate.initial.u0 = parse_modes(value, line_no);
      else if (key == "u1") cfg.simulate.initial.u1 = parse_modes(value, line_no);
      else if (key == "phi0") cfg.simulate.initial.phi0 = parse_modes(value, line_no);
      else if (key == "phi1") cfg.simulate.initial.phi1 = parse_modes(value, line_no);
      else if (key == "psi0") cfg.simulate.initial.psi0 = parse_modes(value, line_no);
      else if (key == "psi1") cfg.simulate.initial.psi1 = parse_modes(value, line_no);
      else if (key == "phi0_mean") cfg.simulate.initial.phi0_mean = parse_double(value, line_no);
      else if (key == "phi1_mean") cfg.simulate.initial.phi1_mean = parse_double(value, line_no);
      else if (key == "psi0_mean") cfg.simulate.initial.psi0_mean = parse_double(value, line_no);
      else if (key == "psi1_mean") cfg.simulate.initial.psi1_mean = parse_double(value, line_no);
      else throw UnknownKeyError("unknown key '" + key + "' in [simulate]", line_no);
    }
  }

  if (!have_material)
    throw MissingKeyError("config has no [material] section", line_no);
  for (const char* key : kMaterialKeys)
    if (!seen_material.contains(key))
      throw MissingKeyError(std::string("missing required key '") + key + "' in [material]", line_no);
  if (!have_bc)
    throw MissingKeyError("missing required key 'bc' in [material]", line_no);
  return cfg;
}

std::string emit_config(const RunConfig& c) {
  std::string out;
  const auto kv = [&out](std::string_view key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  const auto modes = [&](std::string_view key, const std::vector<ModeData::Amp>& amps) {
    if (amps.empty()) return;
    std::string value;
    for (size_t i = 0; i < amps.size(); ++i) {
      if (i) value += ", ";
      value += std::to_string(amps[i].n) + ":" + format_double(amps[i].value);
    }
    kv(key, value);
  };

  out += "[material]\n";
  MaterialParams m = c.material;
  for (const char* key : kMaterialKeys) kv(key, format_double(*material_field(m, key)));
  kv("length", format_double(m.length));
  kv("bc", to_string(c.bc));

  out += "\n[scan]\n";
  kv("n_max", std::to_string(c.scan.n_max));

  out += "\n[probe]\n";
  std::string list;
  for (size_t i = 0; i < c.probe.n_list.size(); ++i) {
    if (i) list += ",";
    list += std::to_string(c.probe.n_list[i]);
  }
  kv("n_list", list);

  out += "\n[simulate]\n";
  kv("N", std::to_string(c.simulate.N));
  kv("dt", format_double(c.simulate.dt));
  kv("t_end", format_double(c.simulate.t_end));
  kv("integrator", c.simulate.integrator == Integrator::Exact ? "exact" : "rk4");
  kv("full_state", c.simulate.full_state ? "true" : "false");
  modes("u0", c.simulate.initial.u0);
  modes("u1", c.simulate.initial.u1);
  modes("phi0", c.simulate.initial.phi0);
  modes("phi1", c.simulate.initial.phi1);
  modes("psi0", c.simulate.initial.psi0);
  modes("psi1", c.simulate.initial.psi1);
  kv("phi0_mean", format_double(c.simulate.initial.phi0_mean));
  kv("phi1_mean", format_double(c.simulate.initial.phi1_mean));
  kv("psi0_mean", format_double(c.simulate.initial.psi0_mean));
  kv("psi1_mean", format_double(c.simulate.initial.psi1_mean));

  out += "\n[fit]\n";
  kv("window", format_double(c.fit.window));
  return out;
}

} // namespace dporo
