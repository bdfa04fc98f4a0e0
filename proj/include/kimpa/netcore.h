#pragma once

#include <array>
#include <vector>

#include "kimpa/constants.h"

namespace kimpa {

// An impedance or admittance. `open` marks the infinite value an inverter
// produces from a short, so callers never see an overflowed double.
struct Immittance {
  Complex value{};
  bool open = false;

  Immittance() = default;
  Immittance(Complex v) : value(v) {}  // NOLINT: implicit on purpose
  Immittance(double v) : value(v) {}   // NOLINT

  static Immittance open_circuit() {
    Immittance z;
    z.open = true;
    return z;
  }
  bool is_open() const { return open; }
};

// Lossless, dispersionless line. length_fraction is in wavelengths at omega_ref.
struct LineSegment {
  double z_c = 50.0;
  double length_fraction = 0.25;
  double omega_ref = 0.0;

  double electrical_length(double omega) const {
    return omega / omega_ref * kTwoPi * length_fraction;
  }
};

struct TwoPort {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static TwoPort identity() { return {}; }
  Complex det() const { return a * d - b * c; }
  TwoPort operator*(const TwoPort& r) const {
    return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c,
            c * r.b + d * r.d};
  }
  // Impedance seen at port 1 with port 2 loaded.
  Immittance input_impedance(const Immittance& load) const;
};

TwoPort series_impedance(Complex z);
TwoPort shunt_admittance(Complex y);
TwoPort line_two_port(const LineSegment& line, double omega);

TwoPort cascade(const std::vector<TwoPort>& chain);

Immittance input_impedance(const LineSegment& line, const Immittance& load,
                           double omega);

// Power-wave reflection (z_in - z_ref*)/(z_in + z_ref). An open z_in reflects
// with unit magnitude.
Complex reflection_coefficient(const Immittance& z_in, Complex z_ref);

inline double gain_db(Complex s11) { return 20.0 * std::log10(std::abs(s11)); }

void validate(const LineSegment& line);

}  // namespace kimpa
