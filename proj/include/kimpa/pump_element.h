#pragma once

#include <array>
#include <vector>

#include "kimpa/design.h"

namespace kimpa {

struct ModulatedInductor {
  double l0 = 0.0;   // H
  Complex delta_l;   // H

  double alpha() const { return std::norm(delta_l) / (4.0 * l0 * l0); }
  double l0_prime() const { return l0 * (1.0 - alpha()); }
  double phase() const { return std::arg(delta_l); }
};

void validate(const ModulatedInductor& ind);

struct SignalIdlerPair {
  double omega_s = 0.0;
  double omega_i = 0.0;
  double omega_p = 0.0;

  static SignalIdlerPair from_pump(double omega_s, double omega_p) {
    return {omega_s, omega_p - omega_s, omega_p};
  }
};

void validate(const SignalIdlerPair& pair);

using Matrix2c = std::array<std::array<Complex, 2>, 2>;

// Basis (I_s, I_i*).
Matrix2c signal_idler_impedance_matrix(const ModulatedInductor& ind,
                                       const SignalIdlerPair& pair);

struct InverterPair {
  Complex j_s;  // S
  Complex j_i;  // S
};

InverterPair amplification_inverter(const ModulatedInductor& ind,
                                    const SignalIdlerPair& pair);

// Admittance at omega_i seen from the inductor node: shunt C in parallel with
// the line chain (node side first) ending in z_term.
Immittance idler_admittance(const std::vector<LineSegment>& node_to_port,
                            double c_shunt, const Immittance& z_term,
                            double omega_i);

Immittance idler_admittance(const DesignSpec& d, const EnvironmentModel& env,
                            double omega_i);

// Y_eff(omega_s) of the pumped inductor given the unconjugated Y_idler(omega_i).
Complex effective_admittance(const ModulatedInductor& ind,
                             const SignalIdlerPair& pair, Complex y_idler);

// Same quantity from alpha alone; the pump phase does not enter.
Complex effective_admittance(double l0, double alpha, double omega_s,
                             double omega_i, Complex y_idler);

double negative_resistance(Complex y_eff);

}  // namespace kimpa
