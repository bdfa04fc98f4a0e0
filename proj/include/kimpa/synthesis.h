#pragma once

namespace kimpa {

struct PrototypeCoefficients {
  double g0 = 1.0;
  double g1 = 0.408;
  double g2 = 0.234;
  double g3 = 1.106;
  double epsilon = 0.0625;  // fractional bandwidth
};

// The two-pole 17-dB set shipped as "getsinger-17dB".
PrototypeCoefficients getsinger_17db();

void validate(const PrototypeCoefficients& p);

struct NrTransform {
  double z_nr_primed = 0.0;
  double r_nr_primed = 0.0;
};

// The KI quarter-wave inverter seen from the half-wave line side.
NrTransform transform_nr(double z_ki, double z_nr, double r_nr);

struct SynthesisResult {
  double z_ref = 0.0;
  double z_quarter = 0.0;
  double z_parallel = 0.0;
  double z_half = 0.0;
  double z_nr_primed = 0.0;
  double r_nr_primed = 0.0;
  double z0_primed = 0.0;       // Z_quarter^2 / z0
  double discarded_root = 0.0;  // the other root of the half-wave quadratic
};

SynthesisResult synthesize_transformer(const PrototypeCoefficients& proto,
                                       double z_nr, double z_ki, double z0);

// Residual of the half-wave quadratic at z (ohm^2).
double half_wave_quadratic(double z, double z_quarter, double z0,
                           double z_parallel);

// epsilon such that Z'_NR = (g1/epsilon) Z_ref with Z_ref = g0 R'_NR.
double predict_fractional_bandwidth(double g1, double z_nr_primed,
                                    double r_nr_primed, double g0 = 1.0);

}  // namespace kimpa
