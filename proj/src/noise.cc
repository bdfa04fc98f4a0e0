#include "kimpa/noise.h"

#include <cmath>
#include <set>

#include "kimpa/errors.h"
#include "kimpa/least_squares.h"

namespace kimpa {

void validate(const NoiseChainModel& c) {
  require(c.a_in > 0.0 && c.a_in <= 1.0, "a_in must lie in (0, 1]");
  require(c.a_23 >= 0.0 && c.a_23 <= 1.0, "a_23 must lie in [0, 1]");
  require(c.g_s > 0.0 && c.g_sys > 0.0, "gains must be positive");
  require(c.n1 >= 0.5, "n1 cannot fall below half a quantum");
  require(c.n_t23 >= 0.0 && c.n_sys >= 0.0, "noise numbers must be non-negative");
}

CascadeNoise cascade_forward(const NoiseChainModel& c, double n_a) {
  validate(c);
  CascadeNoise n;
  n.n2 = c.g_s * (c.n1 + n_a);
  n.n3 = c.a_23 * n.n2 + (1.0 - c.a_23) * c.n_t23;
  n.n4 = c.g_sys * (n.n3 + c.n_sys);
  return n;
}

double added_noise(double n4, double n4_off, double g_s, double g_sys_eff, double n1) {
  if (!(g_s > 1.0)) fail(ErrorKind::InvalidGain, "added noise needs PA gain above 1");
  require(g_sys_eff > 0.0, "system gain must be positive");
  return (n4 - n4_off) / (g_s * g_sys_eff) + n1 / g_s - n1;
}

double bose_occupation(double omega, double temperature) {
  require(omega > 0.0 && temperature >= 0.0, "need omega > 0 and T >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(kHbar * omega / (kBoltzmann * temperature));
}

double excess_noise(double q_e, double q_i, double g_s, double temperature, double omega) {
  require(q_i > 0.0, "internal quality factor must be positive");
  if (!(g_s > 1.0)) fail(ErrorKind::InvalidGain, "excess noise needs PA gain above 1");
  const double n_th = bose_occupation(omega, temperature);
  const double root = std::sqrt(g_s) + 1.0;
  return q_e / (2.0 * q_i) * root * root / (g_s - 1.0) * (2.0 * n_th + 1.0) + n_th;
}

double snr_gain(double p_n4, double p_n4_off, double g_s) {
  require(p_n4 > 0.0 && p_n4_off > 0.0, "noise powers must be positive");
  return g_s * p_n4_off / p_n4;
}

double system_noise_temperature(double n4_off, double omega, double g_sys_eff) {
  require(n4_off > 0.0 && omega > 0.0 && g_sys_eff > 0.0, "inputs must be positive");
  return n4_off * kHbar * omega / (kBoltzmann * g_sys_eff);
}

double power_to_quanta(double watts, double omega, double bandwidth_hz) {
  require(omega > 0.0 && bandwidth_hz > 0.0, "need omega > 0 and bandwidth > 0");
  return watts / (kHbar * omega * bandwidth_hz);
}

void validate(const QubitCalibration& cal) {
  require(cal.gamma1e > 0.0, "gamma1e must be positive");
  require(cal.gamma1i >= 0.0 && cal.gamma_phi >= 0.0, "rates must be non-negative");
}

Complex qubit_s21(const QubitCalibration& cal, double detuning, double omega_d) {
  validate(cal);
  const double g1 = cal.gamma1(), g2 = cal.gamma2();
  const double x = detuning / g2;
  return 1.0 - cal.gamma1e / (2.0 * g2) * Complex(1.0, x) /
                   (1.0 + x * x + omega_d * omega_d / (g1 * g2));
}

double drive_strength(double gamma1e, double p_d, double omega_q) {
  require(gamma1e > 0.0 && omega_q > 0.0 && p_d >= 0.0, "invalid drive-strength inputs");
  return std::sqrt(2.0 * gamma1e * p_d / (kHbar * omega_q));
}

QubitFitResult fit_qubit_saturation(const std::vector<QubitSample>& data, double omega_q,
                                    double p_ref) {
  std::set<double> powers, detunings;
  for (const auto& s : data) {
    powers.insert(s.p_vna);
    detunings.insert(s.detuning);
  }
  if (powers.size() < 2 || detunings.size() < 5)
    fail(ErrorKind::InsufficientData, "qubit fit needs at least 2 powers and 5 detunings");
  require(omega_q > 0.0, "qubit frequency must be positive");
  require(*powers.begin() > 0.0, "drive powers must be positive");
  if (p_ref <= 0.0) p_ref = *powers.rbegin();

  // Starting point from the data: dip depth and half width at the lowest power.
  const double p_min = *powers.begin();
  double depth = 0.0, d_span = 0.0;
  for (const auto& s : data) {
    d_span = std::max(d_span, std::abs(s.detuning));
    if (s.p_vna == p_min) depth = std::max(depth, 1.0 - s.s21.real());
  }
  if (!(depth > 1e-6))
    fail(ErrorKind::FitFailure, "no measurable dip: the data carry no qubit contrast");

  double width = 0.0;
  for (const auto& s : data)
    if (s.p_vna == p_min && 1.0 - s.s21.real() >= 0.5 * depth)
      width = std::max(width, std::abs(s.detuning));
  if (width <= 0.0) width = d_span / 10.0;

  // q = (ln gamma1, ln gamma_phi, ln k) with Omega_d^2 = k p / p_ref.
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  ResidualFn fn = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    const double g1 = std::exp(q(0)), gp = std::exp(q(1)), k = std::exp(q(2));
    const double g2 = gp + g1 / 2.0;
    r.resize(2 * n);
    if (jac) jac->resize(2 * n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& s = data[static_cast<std::size_t>(i)];
      const double w2 = k * s.p_vna / p_ref;
      const double x = s.detuning / g2;
      const double den = 1.0 + x * x + w2 / (g1 * g2);
      const Complex num(1.0, x);
      const double pre = g1 / (2.0 * g2);
      const Complex model = 1.0 - pre * num / den;
      r(2 * i) = model.real() - s.s21.real();
      r(2 * i + 1) = model.imag() - s.s21.imag();
      if (!jac) continue;
      // Partial derivatives with respect to g1, g2 (through x) and w2.
      const double dx_dg2 = -x / g2;
      const double dden_dg2 = 2.0 * x * dx_dg2 - w2 / (g1 * g2 * g2);
      const double dden_dg1 = -w2 / (g1 * g1 * g2);
      const double dden_dw2 = 1.0 / (g1 * g2);
      const Complex f = num / den;
      const Complex df_dg2 = Complex(0.0, dx_dg2) / den - f * dden_dg2 / den;
      const Complex df_dg1 = -f * dden_dg1 / den;
      const Complex df_dw2 = -f * dden_dw2 / den;
      const double dpre_dg1 = 1.0 / (2.0 * g2);
      const double dpre_dg2 = -g1 / (2.0 * g2 * g2);
      // g2 depends on g1 (factor 1/2) and gp (factor 1).
      const Complex dm_dg2 = -(dpre_dg2 * f + pre * df_dg2);
      const Complex dm_dg1 = -(dpre_dg1 * f + pre * df_dg1) + 0.5 * dm_dg2;
      const Complex dm_dgp = dm_dg2;
      const Complex dm_dw2 = -pre * df_dw2;
      const Complex c0 = dm_dg1 * g1, c1 = dm_dgp * gp, c2 = dm_dw2 * w2;
      (*jac)(2 * i, 0) = c0.real();
      (*jac)(2 * i + 1, 0) = c0.imag();
      (*jac)(2 * i, 1) = c1.real();
      (*jac)(2 * i + 1, 1) = c1.imag();
      (*jac)(2 * i, 2) = c2.real();
      (*jac)(2 * i + 1, 2) = c2.imag();
    }
  };

  // gamma1 ~ gamma2 when dephasing is weak; dephasing starts a decade down.
  const double g1_guess = std::max(width, 1e-12);
  Eigen::VectorXd q0(3);
  q0 << std::log(g1_guess), std::log(0.1 * g1_guess), std::log(g1_guess * g1_guess);
  LeastSquaresResult lm = levenberg_marquardt(fn, q0);
  if (!lm.converged || !lm.params.allFinite())
    fail(ErrorKind::FitFailure, "qubit saturation fit: " + lm.message + " after " +
                                    std::to_string(lm.iterations) + " iterations");

  QubitFitResult out;
  out.gamma1 = std::exp(lm.params(0));
  out.gamma_phi = std::exp(lm.params(1));
  out.p_ref = p_ref;
  out.omega_d_ref = std::sqrt(std::exp(lm.params(2)));
  // Invert Omega_d^2 = 2 gamma1e p_d / (hbar omega_q) with gamma1e ~ gamma1.
  const double p_d = out.omega_d_ref * out.omega_d_ref * kHbar * omega_q / (2.0 * out.gamma1);
  out.a_in = p_d / p_ref;
  out.rms_residual = std::sqrt(2.0 * lm.cost / double(2 * n));
  out.iterations = lm.iterations;
  return out;
}

}  // namespace kimpa
