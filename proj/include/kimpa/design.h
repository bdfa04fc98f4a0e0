#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kimpa/ki_material.h"
#include "kimpa/netcore.h"

namespace kimpa {

enum class CircuitKind { ThreeStage, Conventional };

const char* to_string(CircuitKind kind);
CircuitKind parse_circuit_kind(const std::string& name);

// One standing-wave term z_n exp(i(omega tau_n + phi_n)) of the source impedance.
struct EnvironmentTerm {
  double z_n = 0.0;    // ohm
  double tau = 0.0;    // s
  double phase = 0.0;  // rad
};

struct EnvironmentModel {
  double z0 = 50.0;
  std::vector<EnvironmentTerm> terms;

  bool ideal() const { return terms.empty(); }
};

void validate(const EnvironmentModel& env);

// Z_env(omega). Throws UnphysicalEnvironment when Re <= 0.
Complex environment_impedance(const EnvironmentModel& env, double omega);

// Port -> lambda/4 -> lambda/2 -> [KI lambda/4] -> nonlinear resonator.
struct DesignSpec {
  CircuitKind kind = CircuitKind::ThreeStage;
  double z0 = 50.0;
  LineSegment line_quarter;
  LineSegment line_half;
  std::optional<LineSegment> line_ki_quarter;
  double c_shunt = 0.0;  // F
  KineticInductorModel ki_model;
  double omega0 = 0.0;   // rad/s, fixes the line lengths
};

void validate(const DesignSpec& d);

// Builds the standard topology with lines cut at omega0.
DesignSpec make_design(CircuitKind kind, double z_quarter, double z_half,
                       double z_ki, double omega0, double c_shunt,
                       const KineticInductorModel& ki, double z0 = 50.0);

// Lumped resonator with Z_NR and resonance omega_nr, bias-independent.
DesignSpec make_lumped_design(CircuitKind kind, double z_quarter, double z_half,
                              double z_ki, double omega0, double z_nr,
                              double omega_nr, double z0 = 50.0);

// Lines in order from the port towards the resonator node.
std::vector<LineSegment> port_to_node_lines(const DesignSpec& d);

double resonator_inductance(const DesignSpec& d, double i_dc);
double resonance_frequency(const DesignSpec& d, double i_dc);
double resonator_impedance(const DesignSpec& d, double i_dc);

}  // namespace kimpa
