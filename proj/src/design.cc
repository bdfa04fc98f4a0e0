#include "kimpa/design.h"

#include <cmath>
#include <sstream>

#include "kimpa/errors.h"

namespace kimpa {

const char* to_string(CircuitKind kind) {
  return kind == CircuitKind::ThreeStage ? "three-stage" : "conventional";
}

CircuitKind parse_circuit_kind(const std::string& name) {
  if (name == "three-stage" || name == "three_stage") return CircuitKind::ThreeStage;
  if (name == "conventional") return CircuitKind::Conventional;
  fail(ErrorKind::Validation, "unknown circuit kind '" + name + "'");
}

void validate(const EnvironmentModel& env) {
  require(env.z0 > 0.0, "environment z0 must be positive");
  require(env.terms.size() <= 2, "environment supports at most two ripple terms");
  for (const auto& t : env.terms)
    require(t.z_n >= 0.0 && t.tau >= 0.0, "ripple terms need z_n >= 0 and tau >= 0");
}

Complex environment_impedance(const EnvironmentModel& env, double omega) {
  require(omega >= 0.0, "frequency must be non-negative");
  Complex z = env.z0;
  for (const auto& t : env.terms) z += t.z_n * std::polar(1.0, omega * t.tau + t.phase);
  if (!(z.real() > 0.0)) {
    std::ostringstream os;
    os << "Re[Z_env] = " << z.real() << " ohm at omega = " << omega << " rad/s";
    fail(ErrorKind::UnphysicalEnvironment, os.str());
  }
  return z;
}

void validate(const DesignSpec& d) {
  require(d.z0 > 0.0, "z0 must be positive");
  require(d.c_shunt > 0.0, "shunt capacitance must be positive");
  require(d.omega0 > 0.0, "design frequency must be positive");
  validate(d.line_quarter);
  validate(d.line_half);
  if (d.kind == CircuitKind::ThreeStage) {
    require(d.line_ki_quarter.has_value(), "three-stage design needs the KI quarter-wave line");
    validate(*d.line_ki_quarter);
  } else {
    require(!d.line_ki_quarter.has_value(), "conventional design has no KI quarter-wave line");
  }
  validate(d.ki_model);
  require(d.ki_model.l_k0 + d.ki_model.l_geo > 0.0, "resonator inductance must be positive");
}

DesignSpec make_design(CircuitKind kind, double z_quarter, double z_half,
                       double z_ki, double omega0, double c_shunt,
                       const KineticInductorModel& ki, double z0) {
  DesignSpec d;
  d.kind = kind;
  d.z0 = z0;
  d.omega0 = omega0;
  d.line_quarter = {z_quarter, 0.25, omega0};
  d.line_half = {z_half, 0.5, omega0};
  if (kind == CircuitKind::ThreeStage) d.line_ki_quarter = LineSegment{z_ki, 0.25, omega0};
  d.c_shunt = c_shunt;
  d.ki_model = ki;
  validate(d);
  return d;
}

DesignSpec make_lumped_design(CircuitKind kind, double z_quarter, double z_half,
                              double z_ki, double omega0, double z_nr,
                              double omega_nr, double z0) {
  require(z_nr > 0.0 && omega_nr > 0.0, "resonator impedance and frequency must be positive");
  KineticInductorModel ki;
  ki.kind = KiModelKind::Parabolic;
  ki.l_k0 = z_nr / omega_nr;
  ki.l_geo = 0.0;
  return make_design(kind, z_quarter, z_half, z_ki, omega0, 1.0 / (omega_nr * z_nr), ki, z0);
}

std::vector<LineSegment> port_to_node_lines(const DesignSpec& d) {
  std::vector<LineSegment> lines{d.line_quarter, d.line_half};
  if (d.line_ki_quarter) lines.push_back(*d.line_ki_quarter);
  return lines;
}

double resonator_inductance(const DesignSpec& d, double i_dc) {
  return total_inductance(d.ki_model, i_dc);
}

double resonance_frequency(const DesignSpec& d, double i_dc) {
  return 1.0 / std::sqrt(resonator_inductance(d, i_dc) * d.c_shunt);
}

double resonator_impedance(const DesignSpec& d, double i_dc) {
  return std::sqrt(resonator_inductance(d, i_dc) / d.c_shunt);
}

}  // namespace kimpa
