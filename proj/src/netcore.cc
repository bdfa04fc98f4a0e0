#include "kimpa/netcore.h"

#include <cmath>
#include <string>

#include "kimpa/errors.h"

namespace kimpa {

namespace {

// Below this ratio a normalized denominator is treated as an exact zero. It
// catches cos(pi/2) ~ 6e-17 without swallowing genuinely large impedances.
constexpr double kOpenTolerance = 1e-13;

}  // namespace

void validate(const LineSegment& line) {
  require(line.z_c > 0.0 && std::isfinite(line.z_c),
          "line characteristic impedance must be positive");
  require(line.length_fraction > 0.0, "line length fraction must be positive");
  require(line.omega_ref > 0.0, "line reference frequency must be positive");
}

Immittance TwoPort::input_impedance(const Immittance& load) const {
  Complex num, den;
  if (load.is_open()) {
    num = a;
    den = c;
  } else {
    num = a * load.value + b;
    den = c * load.value + d;
  }
  if (den == Complex{}) return Immittance::open_circuit();
  return num / den;
}

TwoPort series_impedance(Complex z) { return {1.0, z, 0.0, 1.0}; }

TwoPort shunt_admittance(Complex y) { return {1.0, 0.0, y, 1.0}; }

TwoPort line_two_port(const LineSegment& line, double omega) {
  validate(line);
  require(omega > 0.0, "frequency must be positive");
  const double th = line.electrical_length(omega);
  const double cs = std::cos(th), sn = std::sin(th);
  return {cs, kI * line.z_c * sn, kI * sn / line.z_c, cs};
}

TwoPort cascade(const std::vector<TwoPort>& chain) {
  require(!chain.empty(), "cascade of an empty list");
  TwoPort m = chain.front();
  for (size_t k = 1; k < chain.size(); ++k) m = m * chain[k];
  return m;
}

Immittance input_impedance(const LineSegment& line, const Immittance& load,
                           double omega) {
  validate(line);
  require(omega > 0.0, "frequency must be positive");
  const double th = line.electrical_length(omega);
  const double cs = std::cos(th), sn = std::sin(th);
  // Work in units of z_c: zeta = Z_L / z_c.
  Complex num, den;
  if (load.is_open()) {
    num = cs;
    den = kI * sn;
  } else {
    const Complex zeta = load.value / line.z_c;
    num = zeta * cs + kI * sn;
    den = kI * sn * zeta + cs;
  }
  if (std::abs(den) <= kOpenTolerance * std::abs(num))
    return Immittance::open_circuit();
  return line.z_c * (num / den);
}

Complex reflection_coefficient(const Immittance& z_in, Complex z_ref) {
  if (z_in.is_open()) return 1.0;
  const Complex sum = z_in.value + z_ref;
  if (std::abs(sum) <= 1e-15 * (std::abs(z_in.value) + std::abs(z_ref)))
    fail(ErrorKind::SingularReflection,
         "z_in = -z_ref: reflection diverges (oscillation threshold)");
  return (z_in.value - std::conj(z_ref)) / sum;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::SingularReflection: return "singular-reflection";
    case ErrorKind::DegenerateInverter: return "degenerate-inverter";
    case ErrorKind::SingularNetwork: return "singular-network";
    case ErrorKind::PoleAtOperatingPoint: return "pole-at-operating-point";
    case ErrorKind::NoGain: return "no-gain";
    case ErrorKind::SuperconductivityBreakdown: return "superconductivity-breakdown";
    case ErrorKind::SynthesisInfeasible: return "synthesis-infeasible";
    case ErrorKind::UnphysicalEnvironment: return "unphysical-environment";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::FitFailure: return "fit-failure";
    case ErrorKind::InvalidGain: return "invalid-gain";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace kimpa
