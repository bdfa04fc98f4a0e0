#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kimpa/errors.h"
#include "kimpa/noise.h"

using namespace kimpa;

TEST_CASE("forward cascade") {
  NoiseChainModel c;
  c.g_sys = 1e7;
  c.n_sys = 10;
  CHECK(cascade_forward(c, 0.0).n4 == doctest::Approx(1e7 * 10.5).epsilon(1e-15));

  c.a_23 = 0.0;
  c.n_t23 = 3.0;
  c.g_s = 1e5;
  CHECK(cascade_forward(c, 0.7).n3 == 3.0);

  NoiseChainModel p;
  p.g_s = 1e5;
  p.a_23 = std::pow(10.0, -0.3);
  p.g_sys = 1e7;
  p.n1 = 0.5;
  p.n_t23 = 1.0;
  p.n_sys = 10.0;
  const CascadeNoise n = cascade_forward(p, 0.7);
  const double n2 = 1e5 * 1.2;
  const double n3 = 0.501187233627 * n2 + (1 - 0.501187233627) * 1.0;
  CHECK(n.n2 == doctest::Approx(n2).epsilon(1e-14));
  CHECK(n.n3 == doctest::Approx(n3).epsilon(1e-11));
  CHECK(n.n4 == doctest::Approx(1e7 * (n3 + 10)).epsilon(1e-11));
}

TEST_CASE("added noise inverts the cascade") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    NoiseChainModel c;
    c.g_s = std::pow(10.0, 0.1 + 5 * u(rng));
    c.a_23 = 0.05 + 0.95 * u(rng);
    c.n_t23 = 5 * u(rng);
    c.g_sys = std::pow(10.0, 4 + 4 * u(rng));
    c.n_sys = 50 * u(rng);
    c.n1 = 0.5 + u(rng);
    const double n_a = 0.01 + 3 * u(rng);
    const double n4 = cascade_forward(c, n_a).n4;
    // Pump off: the PA output carries only n1.
    const double n3_off = c.a_23 * c.n1 + (1 - c.a_23) * c.n_t23;
    const double n4_off = c.g_sys * (n3_off + c.n_sys);
    const double back = added_noise(n4, n4_off, c.g_s, c.a_23 * c.g_sys, c.n1);
    CHECK(back == doctest::Approx(n_a).epsilon(1e-9));
  }
  CHECK(added_noise(1e6, 1e6, 1e15, 1e7) == doctest::Approx(-0.5).epsilon(1e-12));
  try {
    added_noise(1e6, 1e5, 1.0, 1e7);
    FAIL("expected invalid gain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidGain);
  }
}

TEST_CASE("excess noise") {
  const double w = kTwoPi * 8.4e9;
  CHECK(excess_noise(1.0, 50.0, 1e12, 0.0, w) == doctest::Approx(0.01).epsilon(1e-5));
  CHECK(excess_noise(3.0, 50.0, 9.0, 0.0, w) == doctest::Approx(3.0 / 50).epsilon(1e-14));
  const double nth = bose_occupation(w, 0.025);
  CHECK(nth == doctest::Approx(1.0 / std::expm1(1.054571817e-34 * w / (1.380649e-23 * 0.025))).epsilon(1e-8));
  CHECK(nth < 2e-7);
  CHECK(nth > 5e-8);

  double last = INFINITY;
  for (double qi = 10; qi < 1e4; qi *= 1.3) {
    const double v = excess_noise(1.0, qi, 100, 0.05, w);
    CHECK(v < last);
    last = v;
  }
  last = -INFINITY;
  for (double t = 0.01; t < 1.0; t *= 1.2) {
    const double v = excess_noise(1.0, 100, 100, t, w);
    CHECK(v > last);
    last = v;
  }
  CHECK_THROWS_AS(excess_noise(1.0, 100, 0.5, 0.05, w), Error);
}

TEST_CASE("snr gain and system temperature") {
  CHECK(snr_gain(1e-9, 1e-9, 100) == 100);
  const double g = snr_gain(2 * 1e-9, 1e-9, 100);
  CHECK(g == doctest::Approx(50).epsilon(1e-15));
  CHECK(10 * std::log10(snr_gain(std::pow(10.0, 0.3), 1.0, 100)) == doctest::Approx(17.0).epsilon(1e-14));

  const double w = kTwoPi * 8.4e9;
  const double t = system_noise_temperature(1e6, w, std::pow(10.0, 7.6));
  CHECK(t == doctest::Approx(1e6 * 1.054571817e-34 * w / (1.380649e-23 * std::pow(10.0, 7.6))).epsilon(1e-9));
  CHECK(system_noise_temperature(1e6, w, 2 * std::pow(10.0, 7.6)) == doctest::Approx(t / 2).epsilon(1e-15));
  CHECK(power_to_quanta(kHbar * w * 10.0, w, 10.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("qubit transmission") {
  QubitCalibration cal{kTwoPi * 8.4e9, kTwoPi * 3.35e6, 0.0, 0.0};
  CHECK(std::abs(qubit_s21(cal, 0.0, 0.0)) < 1e-15);
  CHECK(std::abs(qubit_s21(cal, 0.0, 1e15) - 1.0) < 1e-9);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 5000; ++k) {
    QubitCalibration c{kTwoPi * 8e9, kTwoPi * 1e7 * u(rng) + 1.0, kTwoPi * 1e7 * u(rng),
                       kTwoPi * 1e7 * u(rng)};
    CHECK(std::abs(qubit_s21(c, kTwoPi * 4e7 * (u(rng) - 0.5), kTwoPi * 1e7 * u(rng))) <=
          1.0 + 1e-12);
  }

  CHECK(drive_strength(1e7, 0.0, 1e10) == 0.0);
  CHECK(drive_strength(1e7, 4e-18, 1e10) ==
        doctest::Approx(2 * drive_strength(1e7, 1e-18, 1e10)).epsilon(1e-14));
  const double pd = 1e-3 * std::pow(10.0, (-80.0 - 82.0) / 10);
  const double od = drive_strength(kTwoPi * 3.35e6, pd, kTwoPi * 8.4e9) / kTwoPi;
  CHECK(std::abs(od - 98.6e3) <= 0.15 * 98.6e3);
}

TEST_CASE("qubit saturation fit round trip") {
  const double wq = kTwoPi * 8.4e9;
  const double g1 = kTwoPi * 3.35e6, gp = kTwoPi * 2.0e6;
  const double p_ref = 1e-11;
  const double omega_ref = kTwoPi * 4e6;
  QubitCalibration cal{wq, g1, 0.0, gp};
  std::vector<QubitSample> data;
  for (double f : {0.01, 0.1, 0.3, 1.0})
    for (int k = -20; k <= 20; ++k) {
      const double det = kTwoPi * 1e6 * k;
      const double od = omega_ref * std::sqrt(f);
      data.push_back({det, f * p_ref, qubit_s21(cal, det, od)});
    }
  const QubitFitResult r = fit_qubit_saturation(data, wq, p_ref);
  CHECK(r.gamma1 == doctest::Approx(g1).epsilon(0.01));
  CHECK(r.gamma_phi == doctest::Approx(gp).epsilon(0.01));
  CHECK(r.omega_d_ref == doctest::Approx(omega_ref).epsilon(0.01));
  const double pd = omega_ref * omega_ref * kHbar * wq / (2 * g1);
  CHECK(r.a_in == doctest::Approx(pd / p_ref).epsilon(0.03));
  CHECK(r.rms_residual < 1e-8);

  for (auto& s : data) s.s21 = 1.0;
  try {
    fit_qubit_saturation(data, wq, p_ref);
    FAIL("expected fit failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FitFailure);
  }
  data.resize(10);
  CHECK_THROWS_AS(fit_qubit_saturation(data, wq, p_ref), Error);
}
