#pragma once

#include <string>
#include <vector>

#include "kimpa/constants.h"

namespace kimpa {

enum class KiModelKind { Parabolic, Quartic, Clem };

const char* to_string(KiModelKind kind);
KiModelKind parse_ki_model_kind(const std::string& name);

struct KineticInductorModel {
  KiModelKind kind = KiModelKind::Parabolic;
  double l_k0 = 0.0;        // H
  double l_geo = 0.0;       // H, series
  double i_star2 = 3.25e-3; // A
  double i_star4 = 1.7e-3;  // A, quartic only
  double i_star_star = 1.65e-3;  // A, clem only
  double n_exp = 2.21;
  double i_c = 1.15e-3;     // A
};

void validate(const KineticInductorModel& m);

struct PumpOperatingPoint {
  double i_dc = 0.0;     // A
  double i_p_mag = 0.0;  // A
  double phase = 0.0;    // rad
  double omega_p = 0.0;  // rad/s
};

void validate(const PumpOperatingPoint& op, const KineticInductorModel& m);

struct PumpCoefficients {
  Complex delta_l;    // H
  double alpha = 0.0;
  Complex xi3;        // rad/s
  double kerr = 0.0;  // rad/s
  double pump_shift = 0.0;  // rad/s
  double l_i = 0.0;   // H, kinetic part only
};

// Kinetic part only; add m.l_geo for the total.
double kinetic_inductance(const KineticInductorModel& m, double i_dc);
inline double total_inductance(const KineticInductorModel& m, double i_dc) {
  return kinetic_inductance(m, i_dc) + m.l_geo;
}

PumpCoefficients pump_coefficients(const KineticInductorModel& m,
                                   const PumpOperatingPoint& op, double omega0);

struct Xi3Ceiling {
  double max_xi3 = 0.0;  // rad/s
  double dimensionless = 0.0;
  double optimal_ip_fraction = 0.0;
};

Xi3Ceiling xi3_upper_bound(double i_c, double omega0);

double stepped_filter_qe(int n_sections, double z_h, double z_l, double z0,
                         double z_nr);

struct KiSample {
  double i_dc = 0.0;
  double dfrac = 0.0;  // (omega - omega_0)/omega_0
};

struct KiFitResult {
  KineticInductorModel model;
  double rms_residual = 0.0;
  int iterations = 0;
};

// Frequency-shift model: dfrac = -p/2 * (L_k(I)/L_k0 - 1) with participation
// p = l_k0/(l_k0 + l_geo) taken from `base` (p = 1 when l_k0 is zero). Fitted
// scales replace those in `base`; a vanishing nonlinearity maps to +inf.
KiFitResult fit_ki_curve(const std::vector<KiSample>& data, KiModelKind kind,
                         const KineticInductorModel& base = {});

}  // namespace kimpa
