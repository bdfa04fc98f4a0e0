#include "kimpa/config.h"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "kimpa/errors.h"

namespace kimpa {

namespace {

struct KeySpec {
  Dimension dim;
  bool span;
};

const std::map<std::string, KeySpec>& key_table() {
  using D = Dimension;
  static const std::map<std::string, KeySpec> table = {
      {"command", {D::Text, false}},       {"design", {D::Text, false}},
      {"environment", {D::Text, false}},   {"prototype", {D::Text, false}},
      {"search", {D::Text, false}},        {"input", {D::Text, false}},
      {"output", {D::Text, false}},        {"format", {D::Text, false}},
      {"threads", {D::Number, false}},
      // design
      {"circuit", {D::Text, false}},       {"z0", {D::Impedance, false}},
      {"z_quarter", {D::Impedance, false}}, {"z_half", {D::Impedance, false}},
      {"z_ki", {D::Impedance, false}},     {"c_shunt", {D::Capacitance, false}},
      {"z_nr", {D::Impedance, false}},     {"f_nr", {D::Frequency, false}},
      {"f0", {D::Frequency, false}},
      // material
      {"ki_model", {D::Text, false}},      {"l_k0", {D::Inductance, false}},
      {"l_geo", {D::Inductance, false}},   {"i_star2", {D::Current, false}},
      {"i_star4", {D::Current, false}},    {"i_star_star", {D::Current, false}},
      {"n_exp", {D::Number, false}},       {"i_c", {D::Current, false}},
      // environment
      {"env_z0", {D::Impedance, false}},   {"z1", {D::Impedance, false}},
      {"tau1", {D::Time, false}},          {"phi1", {D::Angle, false}},
      {"z2", {D::Impedance, false}},       {"tau2", {D::Time, false}},
      {"phi2", {D::Angle, false}},
      // pump and sweeps
      {"i_dc", {D::Current, false}},       {"i_p", {D::Current, false}},
      {"phase", {D::Angle, false}},        {"fp", {D::Frequency, false}},
      {"xi3", {D::Frequency, false}},      {"span", {D::Frequency, true}},
      {"fp_span", {D::Frequency, true}},   {"idc_span", {D::Current, true}},
      {"policy", {D::Text, false}},        {"xi3_cap", {D::Frequency, false}},
      {"stop_gain", {D::Decibel, false}},  {"window_half", {D::Frequency, false}},
      {"window_step", {D::Frequency, false}}, {"threshold", {D::Decibel, false}},
      {"ripple_max", {D::Decibel, false}},
      // search
      {"z14_span", {D::Impedance, true}},  {"z12_span", {D::Impedance, true}},
      {"znr_span", {D::Impedance, true}},  {"fp2_span", {D::Frequency, true}},
      // synthesis
      {"g0", {D::Number, false}},          {"g1", {D::Number, false}},
      {"g2", {D::Number, false}},          {"g3", {D::Number, false}},
      {"epsilon", {D::Number, false}},
      // fits and noise
      {"model", {D::Text, false}},         {"f_q", {D::Frequency, false}},
      {"p_ref", {D::PowerDbm, false}},     {"g_s", {D::Decibel, false}},
      {"g_sys_eff", {D::Decibel, false}},  {"n1", {D::Number, false}},
      {"rbw", {D::Frequency, false}},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(int line) {
  return line > 0 ? "line " + std::to_string(line) : "command line";
}

// Multiplier to SI for a unit of the given dimension; nullopt if illegal.
std::optional<double> unit_scale(const std::string& u, Dimension dim) {
  static const std::map<std::string, double> freq = {
      {"", 1.0}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}, {"THz", 1e12}};
  static const std::map<std::string, double> imp = {
      {"", 1.0}, {"ohm", 1.0}, {"ohms", 1.0}, {"Ohm", 1.0}, {"Ω", 1.0}, {"kohm", 1e3}};
  static const std::map<std::string, double> cap = {
      {"", 1.0}, {"F", 1.0}, {"uF", 1e-6}, {"nF", 1e-9}, {"pF", 1e-12}, {"fF", 1e-15}};
  static const std::map<std::string, double> ind = {
      {"", 1.0}, {"H", 1.0}, {"uH", 1e-6}, {"nH", 1e-9}, {"pH", 1e-12}};
  static const std::map<std::string, double> cur = {
      {"", 1.0}, {"A", 1.0}, {"mA", 1e-3}, {"uA", 1e-6}, {"µA", 1e-6}, {"nA", 1e-9}};
  static const std::map<std::string, double> time = {
      {"", 1.0}, {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}};
  static const std::map<std::string, double> angle = {
      {"", 1.0}, {"rad", 1.0}, {"deg", kPi / 180.0}, {"pi", kPi}};
  static const std::map<std::string, double> db = {{"", 1.0}, {"dB", 1.0}};
  static const std::map<std::string, double> none = {{"", 1.0}};
  const std::map<std::string, double>* t = &none;
  switch (dim) {
    case Dimension::Frequency: t = &freq; break;
    case Dimension::Impedance: t = &imp; break;
    case Dimension::Capacitance: t = &cap; break;
    case Dimension::Inductance: t = &ind; break;
    case Dimension::Current: t = &cur; break;
    case Dimension::Time: t = &time; break;
    case Dimension::Angle: t = &angle; break;
    case Dimension::Decibel: t = &db; break;
    case Dimension::PowerDbm:
    case Dimension::Number:
    case Dimension::Text: t = &none; break;
  }
  const auto it = t->find(u);
  if (it == t->end()) return std::nullopt;
  return it->second;
}

bool must_be_positive(Dimension dim) {
  switch (dim) {
    case Dimension::Frequency:
    case Dimension::Impedance:
    case Dimension::Capacitance:
      return true;
    default:
      return false;
  }
}

bool must_be_non_negative(Dimension dim) {
  return dim == Dimension::Inductance || dim == Dimension::Current || dim == Dimension::Time;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Synth: return "synth";
    case Command::Simulate: return "simulate";
    case Command::Map: return "map";
    case Command::Search: return "search";
    case Command::FitKi: return "fit-ki";
    case Command::FitQubit: return "fit-qubit";
    case Command::Noise: return "noise";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Synth, Command::Simulate, Command::Map, Command::Search,
                    Command::FitKi, Command::FitQubit, Command::Noise})
    if (name == to_string(c)) return c;
  fail(ErrorKind::Validation, "unknown command '" + name + "'");
}

double parse_quantity(const std::string& raw, Dimension dim) {
  const std::string s = trim(raw);
  if (dim == Dimension::PowerDbm) {
    // Powers: dBm (default), W, mW.
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) fail(ErrorKind::Parse, "expected a number in '" + s + "'");
    const std::string u = trim(std::string(end));
    if (u.empty() || u == "dBm") return dbm_to_watts(v);
    if (u == "W") return v;
    if (u == "mW") return 1e-3 * v;
    fail(ErrorKind::Parse, "unit '" + u + "' is not a power");
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || !std::isfinite(v))
    fail(ErrorKind::Parse, "expected a number in '" + s + "'");
  const std::string u = trim(std::string(end));
  const auto scale = unit_scale(u, dim);
  if (!scale) fail(ErrorKind::Parse, "unit '" + u + "' does not fit this key");
  return v * *scale;
}

double RunConfig::number(const std::string& key, double fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second.numbers.at(0);
}

std::vector<double> RunConfig::span(const std::string& key, std::vector<double> fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second.numbers;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second.text;
}

void set_value(RunConfig& cfg, const std::string& key, const std::string& raw, int line) {
  const auto& table = key_table();
  const auto spec = table.find(key);
  if (spec == table.end())
    fail(ErrorKind::Validation, where(line) + ": unknown key '" + key + "'");
  ConfigValue v;
  v.dim = spec->second.dim;
  v.line = line;
  try {
    if (v.dim == Dimension::Text) {
      v.text = trim(raw);
      if (v.text.size() >= 2 && v.text.front() == '"' && v.text.back() == '"')
        v.text = v.text.substr(1, v.text.size() - 2);
    } else if (spec->second.span) {
      std::stringstream ss(raw);
      std::string part;
      while (std::getline(ss, part, ':')) v.numbers.push_back(parse_quantity(part, v.dim));
      if (v.numbers.size() != 3) fail(ErrorKind::Parse, "span needs lo:hi:step");
    } else {
      v.numbers.push_back(parse_quantity(raw, v.dim));
    }
  } catch (const Error& e) {
    fail(e.kind(), where(line) + ", key '" + key + "': " + e.what());
  }

  auto invalid = [&](const std::string& why) {
    fail(ErrorKind::Validation, where(line) + ": key '" + key + "' " + why);
  };
  for (double x : v.numbers) {
    if (must_be_positive(v.dim) && !(x > 0.0)) invalid("must be positive");
    if (must_be_non_negative(v.dim) && x < 0.0) invalid("must be non-negative");
  }
  if (spec->second.span && (v.numbers[1] < v.numbers[0] || !(v.numbers[2] > 0.0)))
    invalid("span needs lo <= hi and a positive step");
  if (key == "threads" && (v.numbers[0] < 0.0 || v.numbers[0] != std::floor(v.numbers[0])))
    invalid("must be a non-negative integer");
  if ((key == "g0" || key == "g1" || key == "g2" || key == "g3") && !(v.numbers[0] > 0.0))
    invalid("must be positive");
  if (key == "epsilon" && !(v.numbers[0] > 0.0 && v.numbers[0] < 0.5))
    invalid("must lie in (0, 0.5)");

  // Keys with their own RunConfig fields.
  try {
    if (key == "command") cfg.command = parse_command(v.text);
    else if (key == "design") cfg.design_preset = v.text;
    else if (key == "environment") cfg.environment_preset = v.text;
    else if (key == "prototype") cfg.prototype = v.text;
    else if (key == "search") cfg.search_preset = v.text;
    else if (key == "input") cfg.input_path = v.text;
    else if (key == "output") cfg.output_path = v.text;
    else if (key == "threads") cfg.threads = static_cast<unsigned>(v.numbers[0]);
    else if (key == "format") {
      if (v.text == "csv") cfg.format = OutputFormat::Csv;
      else if (v.text == "structured" || v.text == "json") cfg.format = OutputFormat::Structured;
      else invalid("must be csv or structured");
    } else if (key == "circuit") {
      parse_circuit_kind(v.text);
    } else if (key == "ki_model" || key == "model") {
      parse_ki_model_kind(v.text);
    } else if (key == "policy" && v.text != "xi3" && v.text != "current") {
      invalid("must be xi3 or current");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Validation && std::string(e.what()).rfind(where(line), 0) == 0) throw;
    invalid(std::string("is invalid: ") + e.what());
  }
  cfg.values[key] = std::move(v);
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    if (trim(body).empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      const auto col = body.find_first_not_of(" \t") + 1;
      fail(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                 std::to_string(col) + ": expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    if (key.empty())
      fail(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                 std::to_string(eq + 1) + ": missing key before '='");
    for (std::size_t k = 0; k < key.size(); ++k)
      if (!(std::isalnum(static_cast<unsigned char>(key[k])) || key[k] == '_'))
        fail(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                   std::to_string(body.find(key) + k + 1) +
                                   ": invalid character in key");
    const std::string value = trim(body.substr(eq + 1));
    if (value.empty())
      fail(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                 std::to_string(eq + 2) + ": missing value for '" + key + "'");
    set_value(cfg, key, value, line);
  }
  // Presets must exist.
  const auto names = preset_names();
  auto known = [&](const std::string& n) {
    for (const auto& p : names)
      if (p == n) return true;
    return false;
  };
  for (const auto* p : {&cfg.design_preset, &cfg.environment_preset, &cfg.prototype,
                        &cfg.search_preset})
    if (*p != "ideal" && *p != "custom" && !known(*p))
      fail(ErrorKind::Validation, "unknown preset '" + *p + "'");
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"paper-device", "appendixB-worked", "paper-env", "appendixE-ranges",
          "getsinger-17dB"};
}

double bias_current(const RunConfig& cfg) {
  const double fallback = cfg.design_preset == "paper-device" ? 0.57e-3 : 0.0;
  return cfg.number("i_dc", fallback);
}

DesignSpec build_design(const RunConfig& cfg) {
  const std::string& p = cfg.design_preset;
  CircuitKind kind = parse_circuit_kind(cfg.text("circuit", "three-stage"));
  const double z0 = cfg.number("z0", 50.0);

  if (p == "paper-device") {
    KineticInductorModel ki;
    ki.kind = parse_ki_model_kind(cfg.text("ki_model", "quartic"));
    ki.l_k0 = cfg.number("l_k0", 0.80e-9);
    ki.l_geo = cfg.number("l_geo", 0.20e-9);
    ki.i_star2 = cfg.number("i_star2", 3.25e-3);
    ki.i_star4 = cfg.number("i_star4", 1.7e-3);
    ki.i_star_star = cfg.number("i_star_star", 1.65e-3);
    ki.n_exp = cfg.number("n_exp", 2.21);
    ki.i_c = cfg.number("i_c", 1.15e-3);
    return make_design(kind, cfg.number("z_quarter", 80.0), cfg.number("z_half", 30.0),
                       cfg.number("z_ki", 180.0), kTwoPi * cfg.number("f0", 8.62e9),
                       cfg.number("c_shunt", 330e-15), ki, z0);
  }
  if (p == "appendixB-worked" || p == "custom") {
    // Lumped resonator; the worked example takes its line impedances from
    // the synthesis result unless overridden.
    double zq = 0.0, zh = 0.0;
    const double z_nr = cfg.number("z_nr", 60.0);
    const double z_ki = cfg.number("z_ki", 180.0);
    if (p == "appendixB-worked") {
      const SynthesisResult s = synthesize_transformer(build_prototype(cfg), z_nr, z_ki, z0);
      zq = s.z_quarter;
      zh = s.z_half;
    }
    zq = cfg.number("z_quarter", zq);
    zh = cfg.number("z_half", zh);
    require(zq > 0.0 && zh > 0.0, "custom design needs z_quarter and z_half");
    const double f0 = cfg.number("f0", 8e9);
    return make_lumped_design(kind, zq, zh, z_ki, kTwoPi * f0, z_nr,
                              kTwoPi * cfg.number("f_nr", f0), z0);
  }
  fail(ErrorKind::Validation, "'" + p + "' is not a design preset");
}

EnvironmentModel build_environment(const RunConfig& cfg) {
  EnvironmentModel env;
  env.z0 = cfg.number("env_z0", cfg.number("z0", 50.0));
  if (cfg.environment_preset == "paper-env") {
    // Standing waves of the input line; the delays are quoted as tau/2pi.
    env.terms = {{14.2, 10.5e-9 / kTwoPi, -0.7 * kPi}, {1.9, 121e-9 / kTwoPi, 0.0}};
  } else if (cfg.environment_preset != "ideal" && cfg.environment_preset != "custom") {
    fail(ErrorKind::Validation, "'" + cfg.environment_preset + "' is not an environment preset");
  }
  for (int n = 1; n <= 2; ++n) {
    const std::string s = std::to_string(n);
    if (!cfg.has("z" + s)) continue;
    if (env.terms.size() < static_cast<std::size_t>(n)) env.terms.resize(n);
    env.terms[n - 1] = {cfg.number("z" + s, 0.0), cfg.number("tau" + s, 0.0),
                        cfg.number("phi" + s, 0.0)};
  }
  validate(env);
  return env;
}

PrototypeCoefficients build_prototype(const RunConfig& cfg) {
  if (cfg.prototype != "getsinger-17dB" && cfg.prototype != "custom")
    fail(ErrorKind::Validation, "'" + cfg.prototype + "' is not a prototype preset");
  PrototypeCoefficients p = getsinger_17db();
  p.g0 = cfg.number("g0", p.g0);
  p.g1 = cfg.number("g1", p.g1);
  p.g2 = cfg.number("g2", p.g2);
  p.g3 = cfg.number("g3", p.g3);
  p.epsilon = cfg.number("epsilon", p.epsilon);
  validate(p);
  return p;
}

SearchRanges build_search_ranges(const RunConfig& cfg) {
  if (cfg.search_preset != "appendixE-ranges" && cfg.search_preset != "custom")
    fail(ErrorKind::Validation, "'" + cfg.search_preset + "' is not a search preset");
  SearchRanges r = default_search_ranges(parse_circuit_kind(cfg.text("circuit", "three-stage")));
  auto range = [&](const char* key, Range fallback, double scale) {
    const auto v = cfg.span(key, {fallback.lo / scale, fallback.hi / scale, fallback.step / scale});
    return Range{v[0] * scale, v[1] * scale, v[2] * scale};
  };
  r.z_quarter = range("z14_span", r.z_quarter, 1.0);
  r.z_half = range("z12_span", r.z_half, 1.0);
  r.z_nr = range("znr_span", r.z_nr, 1.0);
  r.omega_p_half = range("fp2_span", r.omega_p_half, kTwoPi);
  r.z_ki = cfg.number("z_ki", r.z_ki);
  r.z0 = cfg.number("z0", r.z0);
  r.omega0 = kTwoPi * cfg.number("f0", r.omega0 / kTwoPi);
  r.window.half_width = kTwoPi * cfg.number("window_half", r.window.half_width / kTwoPi);
  r.window.step = kTwoPi * cfg.number("window_step", r.window.step / kTwoPi);
  r.policy.cap = kTwoPi * cfg.number("xi3_cap", r.policy.cap / kTwoPi);
  r.policy.stop_gain_db = cfg.number("stop_gain", r.policy.stop_gain_db);
  validate(r);
  return r;
}

PumpDrive build_drive(const RunConfig& cfg, const DesignSpec& d) {
  const bool paper = cfg.design_preset == "paper-device";
  const double i_dc = bias_current(cfg);
  const double omega_p = kTwoPi * cfg.number("fp", paper ? 16.80e9 : 2.0 * d.omega0 / kTwoPi);
  const double phase = cfg.number("phase", 0.0);
  if (cfg.has("i_p") && !cfg.has("xi3"))
    return drive_from_operating_point(d, {i_dc, cfg.number("i_p", 0.0), phase, omega_p});
  // The paper-device default sits at the widest two-peak profile of the
  // ideal-environment ramp.
  const double xi3 = cfg.number("xi3", paper ? 2.76e9 : 0.0);
  return drive_from_xi3(d, i_dc, kTwoPi * xi3, phase, omega_p);
}

}  // namespace kimpa
