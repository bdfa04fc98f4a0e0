#include "kimpa/synthesis.h"

#include <cmath>

#include "kimpa/constants.h"
#include "kimpa/errors.h"

namespace kimpa {

PrototypeCoefficients getsinger_17db() { return {1.0, 0.408, 0.234, 1.106, 0.0625}; }

void validate(const PrototypeCoefficients& p) {
  require(p.g0 > 0.0 && p.g1 > 0.0 && p.g2 > 0.0 && p.g3 > 0.0,
          "prototype coefficients must be positive");
  require(p.epsilon > 0.0 && p.epsilon < 0.5, "fractional bandwidth must lie in (0, 0.5)");
}

NrTransform transform_nr(double z_ki, double z_nr, double r_nr) {
  require(z_ki > 0.0 && z_nr > 0.0 && r_nr > 0.0, "impedances must be positive");
  return {z_ki * z_ki / z_nr, z_ki * z_ki / r_nr};
}

namespace {

struct QuadraticCoefficients {
  double b, c;  // z^2 + b z + c
};

QuadraticCoefficients half_wave_coefficients(double z_quarter, double z0,
                                             double z_parallel) {
  const double z0p = z_quarter * z_quarter / z0;
  return {z_quarter / 2.0 - z_quarter * z0p / (2.0 * z0) +
              2.0 * z0p * z0p / (kPi * z_parallel),
          -z0p * z0p};
}

}  // namespace

double half_wave_quadratic(double z, double z_quarter, double z0,
                           double z_parallel) {
  const auto q = half_wave_coefficients(z_quarter, z0, z_parallel);
  return z * z + q.b * z + q.c;
}

SynthesisResult synthesize_transformer(const PrototypeCoefficients& proto,
                                       double z_nr, double z_ki, double z0) {
  validate(proto);
  require(z_nr > 0.0 && z_ki > 0.0 && z0 > 0.0, "impedances must be positive");
  SynthesisResult s;
  s.z_nr_primed = z_ki * z_ki / z_nr;
  s.z_ref = proto.epsilon * s.z_nr_primed / proto.g1;
  s.r_nr_primed = s.z_ref / proto.g0;
  s.z_quarter = std::sqrt(proto.g3 * s.z_ref * z0);
  s.z_parallel = proto.epsilon * s.z_ref / proto.g2;
  s.z0_primed = s.z_quarter * s.z_quarter / z0;

  const auto q = half_wave_coefficients(s.z_quarter, z0, s.z_parallel);
  const double disc = q.b * q.b - 4.0 * q.c;
  if (!(disc >= 0.0) || !std::isfinite(disc))
    fail(ErrorKind::SynthesisInfeasible, "half-wave quadratic has no real root");
  // Citardauq form: never subtract nearly equal numbers.
  const double t = -0.5 * (q.b + std::copysign(std::sqrt(disc), q.b));
  if (t == 0.0)
    fail(ErrorKind::SynthesisInfeasible, "half-wave quadratic is degenerate");
  const double r1 = t, r2 = q.c / t;
  s.z_half = std::max(r1, r2);
  s.discarded_root = std::min(r1, r2);
  if (!(s.z_half > 0.0) || s.discarded_root > 0.0)
    fail(ErrorKind::SynthesisInfeasible, "half-wave quadratic has no unique positive root");
  if (s.z_ref < 1e-6)
    fail(ErrorKind::SynthesisInfeasible, "reference impedance vanishes (bandwidth too small)");
  return s;
}

double predict_fractional_bandwidth(double g1, double z_nr_primed,
                                    double r_nr_primed, double g0) {
  require(g1 > 0.0 && g0 > 0.0 && z_nr_primed > 0.0 && r_nr_primed > 0.0,
          "inputs must be positive");
  return g1 * g0 * r_nr_primed / z_nr_primed;
}

}  // namespace kimpa
