#pragma once

#include <vector>

#include "kimpa/constants.h"

namespace kimpa {

// Power ratios are linear, noise numbers in quanta.
struct NoiseChainModel {
  double a_in = 1.0;
  double a_23 = 1.0;
  double n_t23 = 0.0;
  double g_s = 1.0;
  double g_sys = 1.0;
  double n_sys = 0.0;
  double n1 = 0.5;
};

void validate(const NoiseChainModel& c);

struct CascadeNoise {
  double n2 = 0.0, n3 = 0.0, n4 = 0.0;
};

CascadeNoise cascade_forward(const NoiseChainModel& c, double n_a);

// g_sys_eff = a_23 g_sys.
double added_noise(double n4, double n4_off, double g_s, double g_sys_eff, double n1 = 0.5);

double bose_occupation(double omega, double temperature);

double excess_noise(double q_e, double q_i, double g_s, double temperature, double omega);

double snr_gain(double p_n4, double p_n4_off, double g_s);

double system_noise_temperature(double n4_off, double omega, double g_sys_eff);

// Measured noise power in a resolution bandwidth converted to quanta.
double power_to_quanta(double watts, double omega, double bandwidth_hz);

struct QubitCalibration {
  double omega_q = 0.0;  // rad/s
  double gamma1e = 0.0;  // rad/s
  double gamma1i = 0.0;
  double gamma_phi = 0.0;

  double gamma1() const { return gamma1e + gamma1i; }
  double gamma2() const { return gamma_phi + gamma1() / 2.0; }
};

void validate(const QubitCalibration& cal);

Complex qubit_s21(const QubitCalibration& cal, double detuning, double omega_d);

double drive_strength(double gamma1e, double p_d, double omega_q);

struct QubitSample {
  double detuning = 0.0;  // rad/s
  double p_vna = 0.0;     // W at the instrument
  Complex s21;
};

struct QubitFitResult {
  double gamma1 = 0.0;     // rad/s
  double gamma_phi = 0.0;  // rad/s
  double omega_d_ref = 0.0;  // rad/s at p_ref
  double p_ref = 0.0;      // W
  double a_in = 0.0;       // p_d / p_vna
  double rms_residual = 0.0;
  int iterations = 0;
};

// Joint fit of S21 over detuning and power with Omega_d^2 = k p_vna and
// gamma1 = gamma1e. Rates are fitted as logarithms. p_ref defaults to the
// largest power in the data.
QubitFitResult fit_qubit_saturation(const std::vector<QubitSample>& data, double omega_q,
                                    double p_ref = 0.0);

}  // namespace kimpa
