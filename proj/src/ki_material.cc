#include "kimpa/ki_material.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "kimpa/errors.h"
#include "kimpa/least_squares.h"

namespace kimpa {

const char* to_string(KiModelKind kind) {
  switch (kind) {
    case KiModelKind::Parabolic: return "parabolic";
    case KiModelKind::Quartic: return "quartic";
    case KiModelKind::Clem: return "clem";
  }
  return "unknown";
}

KiModelKind parse_ki_model_kind(const std::string& name) {
  if (name == "parabolic") return KiModelKind::Parabolic;
  if (name == "quartic") return KiModelKind::Quartic;
  if (name == "clem") return KiModelKind::Clem;
  fail(ErrorKind::Validation, "unknown kinetic-inductance model '" + name + "'");
}

void validate(const KineticInductorModel& m) {
  require(m.l_k0 >= 0.0 && m.l_geo >= 0.0, "inductances must be non-negative");
  require(m.i_star2 > 0.0, "i_star2 must be positive");
  require(m.i_c > 0.0, "i_c must be positive");
  if (m.kind == KiModelKind::Quartic) require(m.i_star4 > 0.0, "i_star4 must be positive");
  if (m.kind == KiModelKind::Clem) {
    require(m.i_star_star > 0.0, "i_star_star must be positive");
    require(m.n_exp > 0.0, "Clem exponent must be positive");
  }
}

void validate(const PumpOperatingPoint& op, const KineticInductorModel& m) {
  require(op.i_dc >= 0.0, "dc bias must be non-negative");
  require(op.i_p_mag >= 0.0, "pump amplitude must be non-negative");
  if (op.i_dc + op.i_p_mag >= m.i_c) {
    std::ostringstream os;
    os << "i_dc + |I_p| = " << op.i_dc + op.i_p_mag << " A reaches i_c = " << m.i_c << " A";
    fail(ErrorKind::SuperconductivityBreakdown, os.str());
  }
}

double kinetic_inductance(const KineticInductorModel& m, double i_dc) {
  const double x2 = (i_dc / m.i_star2) * (i_dc / m.i_star2);
  switch (m.kind) {
    case KiModelKind::Parabolic:
      return m.l_k0 * (1.0 + x2);
    case KiModelKind::Quartic: {
      const double y = i_dc / m.i_star4;
      return m.l_k0 * (1.0 + x2 + y * y * y * y);
    }
    case KiModelKind::Clem: {
      const double x = std::abs(i_dc) / m.i_star_star;
      if (x >= 1.0)
        fail(ErrorKind::SuperconductivityBreakdown,
             "bias current reaches the Clem pairbreaking scale");
      return m.l_k0 / std::pow(1.0 - std::pow(x, m.n_exp), 1.0 / m.n_exp);
    }
  }
  return m.l_k0;
}

PumpCoefficients pump_coefficients(const KineticInductorModel& m,
                                   const PumpOperatingPoint& op, double omega0) {
  validate(m);
  validate(op, m);
  require(omega0 > 0.0, "resonance frequency must be positive");
  const double is2 = m.i_star2 * m.i_star2;
  const double idc2 = op.i_dc * op.i_dc;
  const double denom = is2 + idc2;
  const double ratio = op.i_dc * op.i_p_mag / denom;
  const double kerr_shape = (8.0 * idc2 - is2) / (denom * denom);

  PumpCoefficients pc;
  pc.l_i = kinetic_inductance(m, op.i_dc);
  // delta_l ~ I_dc I_p*, so it carries phase -phi_p.
  pc.delta_l = 1.5 * ratio * pc.l_i * std::polar(1.0, -op.phase);
  pc.alpha = 9.0 / 16.0 * ratio * ratio;
  pc.xi3 = -1.5 * ratio * omega0 * std::polar(1.0, -op.phase);
  pc.kerr = pc.l_i > 0.0 ? 0.75 * kerr_shape * kHbar * omega0 * omega0 / pc.l_i : 0.0;
  pc.pump_shift = 1.5 * kerr_shape * omega0 * op.i_p_mag * op.i_p_mag;
  return pc;
}

namespace {

double ceiling_shape(double x) {
  const double r = 1.0 - x;
  return 1.5 * r * x / (5.7 + r * r);
}

}  // namespace

Xi3Ceiling xi3_upper_bound(double i_c, double omega0) {
  require(i_c > 0.0, "critical current must be positive");
  // The shape depends on |I_p|/I_c only, so i_c drops out after validation.
  constexpr int kGrid = 4000;
  int best = 1;
  for (int k = 1; k < kGrid; ++k)
    if (ceiling_shape(double(k) / kGrid) > ceiling_shape(double(best) / kGrid)) best = k;
  // Golden-section refinement inside the bracketing cells.
  double lo = double(best - 1) / kGrid, hi = double(best + 1) / kGrid;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = ceiling_shape(x1), f2 = ceiling_shape(x2);
  while (hi - lo > 1e-13) {
    if (f1 < f2) {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo); f2 = ceiling_shape(x2);
    } else {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo); f1 = ceiling_shape(x1);
    }
  }
  Xi3Ceiling out;
  out.optimal_ip_fraction = 0.5 * (lo + hi);
  out.dimensionless = ceiling_shape(out.optimal_ip_fraction);
  out.max_xi3 = out.dimensionless * omega0;
  return out;
}

double stepped_filter_qe(int n_sections, double z_h, double z_l, double z0,
                         double z_nr) {
  require(n_sections >= 1, "stepped filter needs at least one section");
  require(z_h > 0.0 && z_l > 0.0 && z0 > 0.0 && z_nr > 0.0,
          "stepped filter impedances must be positive");
  return std::pow(z_h / z_l, 2.0 * n_sections) * kPi * z0 / (4.0 * z_nr);
}

KiFitResult fit_ki_curve(const std::vector<KiSample>& data, KiModelKind kind,
                         const KineticInductorModel& base) {
  if (data.size() < 4)
    fail(ErrorKind::InsufficientData, "kinetic-inductance fit needs at least 4 points");
  const double p = base.l_k0 > 0.0 ? base.l_k0 / (base.l_k0 + base.l_geo) : 1.0;
  const double half_p = 0.5 * p;
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  double i_max = 0.0;
  for (const auto& s : data) i_max = std::max(i_max, std::abs(s.i_dc));
  require(i_max > 0.0, "fit data needs a nonzero bias current");

  ResidualFn fn;
  Eigen::VectorXd p0;
  if (kind == KiModelKind::Clem) {
    // I** = i_max (1 + e^s) keeps every sample below the pole.
    const double n_exp = base.n_exp;
    fn = [&, n_exp](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
      const double es = std::exp(q(0));
      const double iss = i_max * (1.0 + es);
      r.resize(n);
      if (jac) jac->resize(n, 1);
      for (Eigen::Index k = 0; k < n; ++k) {
        const double x = std::abs(data[k].i_dc) / iss;
        const double u = 1.0 - std::pow(x, n_exp);
        const double f = std::pow(u, -1.0 / n_exp);
        r(k) = -half_p * (f - 1.0) - data[k].dfrac;
        if (jac) {
          const double dfdx = std::pow(u, -1.0 / n_exp - 1.0) * std::pow(x, n_exp - 1.0);
          (*jac)(k, 0) = -half_p * dfdx * (-x / iss) * i_max * es;
        }
      }
    };
    p0 = Eigen::VectorXd::Zero(1);
  } else {
    // Inverse powers of the scales enter linearly.
    const bool quartic = kind == KiModelKind::Quartic;
    fn = [&, quartic](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
      r.resize(n);
      if (jac) jac->resize(n, quartic ? 2 : 1);
      for (Eigen::Index k = 0; k < n; ++k) {
        const double i2 = data[k].i_dc * data[k].i_dc;
        double shape = q(0) * i2;
        if (quartic) shape += q(1) * i2 * i2;
        r(k) = -half_p * shape - data[k].dfrac;
        if (jac) {
          (*jac)(k, 0) = -half_p * i2;
          if (quartic) (*jac)(k, 1) = -half_p * i2 * i2;
        }
      }
    };
    p0 = Eigen::VectorXd::Zero(quartic ? 2 : 1);
    // Scale parameters so the solver sees order-one numbers.
    const double s2 = 1.0 / (i_max * i_max);
    auto raw = fn;
    fn = [raw, s2, quartic](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
      Eigen::VectorXd u = q;
      u(0) *= s2;
      if (quartic) u(1) *= s2 * s2;
      raw(u, r, jac);
      if (jac) {
        jac->col(0) *= s2;
        if (quartic) jac->col(1) *= s2 * s2;
      }
    };
    LeastSquaresResult lm = levenberg_marquardt(fn, p0);
    if (!lm.converged)
      fail(ErrorKind::FitFailure, "kinetic-inductance fit: " + lm.message + " after " +
                                      std::to_string(lm.iterations) + " iterations");
    KiFitResult out;
    out.model = base;
    out.model.kind = kind;
    const double inf = std::numeric_limits<double>::infinity();
    const double u2 = lm.params(0) * s2;
    out.model.i_star2 = u2 > 0.0 ? 1.0 / std::sqrt(u2) : inf;
    if (quartic) {
      const double u4 = lm.params(1) * s2 * s2;
      out.model.i_star4 = u4 > 0.0 ? std::pow(u4, -0.25) : inf;
    }
    out.rms_residual = std::sqrt(2.0 * lm.cost / double(n));
    out.iterations = lm.iterations;
    return out;
  }

  LeastSquaresResult lm = levenberg_marquardt(fn, p0);
  if (!lm.converged)
    fail(ErrorKind::FitFailure, "kinetic-inductance fit: " + lm.message + " after " +
                                    std::to_string(lm.iterations) + " iterations");
  KiFitResult out;
  out.model = base;
  out.model.kind = kind;
  out.model.i_star_star = i_max * (1.0 + std::exp(lm.params(0)));
  out.rms_residual = std::sqrt(2.0 * lm.cost / double(n));
  out.iterations = lm.iterations;
  return out;
}

}  // namespace kimpa
