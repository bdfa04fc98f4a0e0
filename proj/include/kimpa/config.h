#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kimpa/design.h"
#include "kimpa/design_search.h"
#include "kimpa/noise.h"
#include "kimpa/simulator.h"
#include "kimpa/synthesis.h"

namespace kimpa {

enum class Command { Synth, Simulate, Map, Search, FitKi, FitQubit, Noise };

const char* to_string(Command c);
Command parse_command(const std::string& name);

enum class OutputFormat { Csv, Structured };

// Physical dimension a key expects; decides which unit suffixes are legal.
enum class Dimension {
  Frequency,     // Hz
  Impedance,     // ohm
  Capacitance,   // F
  Inductance,    // H
  Current,       // A
  Time,          // s
  Angle,         // rad
  PowerDbm,      // stored in W
  Decibel,       // stored in dB
  Number,
  Text,
};

struct ConfigValue {
  Dimension dim = Dimension::Number;
  std::vector<double> numbers;  // SI; three entries for spans lo:hi:step
  std::string text;
  int line = 0;  // 0 for command-line overrides
};

// A validated, SI-normalized run description. Frequencies stay in Hz here and
// become rad/s in the build_* helpers.
struct RunConfig {
  Command command = Command::Simulate;
  std::string design_preset = "paper-device";
  std::string environment_preset = "ideal";
  std::string prototype = "getsinger-17dB";
  std::string search_preset = "appendixE-ranges";
  std::string input_path;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 0;
  std::map<std::string, ConfigValue> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  double number(const std::string& key, double fallback) const;
  std::vector<double> span(const std::string& key, std::vector<double> fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
};

// Parses "key = value [unit]" lines; '#' starts a comment. Unknown keys,
// malformed lines and bad units raise Parse or Validation errors that name the
// line, column and key.
RunConfig parse_config(const std::string& text);

// Applies one override such as ("i_dc", "0.57mA") after parsing.
void set_value(RunConfig& cfg, const std::string& key, const std::string& raw, int line = 0);

// Quantity with optional unit, e.g. "16.9GHz", "-0.7 pi", "56 ohm".
double parse_quantity(const std::string& raw, Dimension dim);

std::vector<std::string> preset_names();

DesignSpec build_design(const RunConfig& cfg);
EnvironmentModel build_environment(const RunConfig& cfg);
PrototypeCoefficients build_prototype(const RunConfig& cfg);
SearchRanges build_search_ranges(const RunConfig& cfg);

// Pump for `simulate`: an explicit xi3 wins over a physical pump current.
PumpDrive build_drive(const RunConfig& cfg, const DesignSpec& d);
double bias_current(const RunConfig& cfg);

}  // namespace kimpa
