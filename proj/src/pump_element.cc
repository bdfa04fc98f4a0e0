#include "kimpa/pump_element.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kimpa/errors.h"

namespace kimpa {

void validate(const ModulatedInductor& ind) {
  require(ind.l0 > 0.0, "unmodulated inductance must be positive");
  require(ind.alpha() < 1.0, "modulation strength alpha must stay below 1");
}

void validate(const SignalIdlerPair& pair) {
  require(pair.omega_s > 0.0 && pair.omega_i > 0.0 && pair.omega_p > 0.0,
          "signal, idler and pump frequencies must be positive");
  require(std::abs(pair.omega_s + pair.omega_i - pair.omega_p) <=
              1e-12 * pair.omega_p,
          "three-wave mixing requires omega_p = omega_s + omega_i");
}

Matrix2c signal_idler_impedance_matrix(const ModulatedInductor& ind,
                                       const SignalIdlerPair& pair) {
  validate(ind);
  validate(pair);
  Matrix2c z;
  z[0][0] = kI * pair.omega_s * ind.l0;
  z[0][1] = kI * pair.omega_s * ind.delta_l / 2.0;
  z[1][0] = -kI * pair.omega_i * std::conj(ind.delta_l) / 2.0;
  z[1][1] = -kI * pair.omega_i * ind.l0;
  return z;
}

InverterPair amplification_inverter(const ModulatedInductor& ind,
                                    const SignalIdlerPair& pair) {
  validate(ind);
  validate(pair);
  const double a = ind.alpha();
  if (a == 0.0) fail(ErrorKind::DegenerateInverter, "alpha = 0: no amplification inverter");
  const Complex ph = std::polar(1.0, ind.phase());
  const double lp = ind.l0_prime();
  return {std::sqrt(a) * ph / (pair.omega_s * lp), std::sqrt(a) * ph / (pair.omega_i * lp)};
}

Immittance idler_admittance(const std::vector<LineSegment>& node_to_port,
                            double c_shunt, const Immittance& z_term,
                            double omega_i) {
  require(omega_i > 0.0, "idler frequency must be positive");
  require(c_shunt >= 0.0, "shunt capacitance must be non-negative");
  Immittance z = z_term;
  for (auto it = node_to_port.rbegin(); it != node_to_port.rend(); ++it)
    z = input_impedance(*it, z, omega_i);
  const Complex y_c = kI * omega_i * c_shunt;
  if (z.is_open()) return y_c;
  if (z.value == Complex{})
    fail(ErrorKind::SingularNetwork, "idler network shorts the resonator node");
  return 1.0 / z.value + y_c;
}

Immittance idler_admittance(const DesignSpec& d, const EnvironmentModel& env,
                            double omega_i) {
  auto lines = port_to_node_lines(d);
  std::reverse(lines.begin(), lines.end());
  return idler_admittance(lines, d.c_shunt,
                          environment_impedance(env, omega_i), omega_i);
}

Complex effective_admittance(double l0, double alpha, double omega_s,
                             double omega_i, Complex y_idler) {
  const double lp = l0 * (1.0 - alpha);
  const Complex den = kI * omega_i * lp * std::conj(y_idler) - 1.0;
  if (std::abs(den) <= 1e-15) {
    std::ostringstream os;
    os << "Y_eff pole at omega_s = " << omega_s << " rad/s (parametric oscillation)";
    fail(ErrorKind::PoleAtOperatingPoint, os.str());
  }
  return (1.0 + alpha / den) / (kI * omega_s * lp);
}

Complex effective_admittance(const ModulatedInductor& ind,
                             const SignalIdlerPair& pair, Complex y_idler) {
  validate(ind);
  validate(pair);
  return effective_admittance(ind.l0, ind.alpha(), pair.omega_s, pair.omega_i, y_idler);
}

double negative_resistance(Complex y_eff) {
  if (!(y_eff.real() < 0.0))
    fail(ErrorKind::NoGain, "Re[Y_eff] >= 0: no negative resistance");
  return -1.0 / y_eff.real();
}

}  // namespace kimpa
