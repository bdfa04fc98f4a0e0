#include "kimpa/simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "kimpa/errors.h"
#include "kimpa/parallel.h"

namespace kimpa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

PumpDrive drive_from_operating_point(const DesignSpec& d, const PumpOperatingPoint& op) {
  validate(d);
  PumpDrive drive;
  drive.l0 = resonator_inductance(d, op.i_dc);
  drive.omega_nr = 1.0 / std::sqrt(drive.l0 * d.c_shunt);
  drive.omega_p = op.omega_p;
  const PumpCoefficients pc = pump_coefficients(d.ki_model, op, drive.omega_nr);
  const ModulatedInductor ind{drive.l0, pc.delta_l};
  drive.alpha = ind.alpha();
  drive.phase = op.phase;
  return drive;
}

PumpDrive drive_from_xi3(const DesignSpec& d, double i_dc, double xi3_mag,
                         double phase, double omega_p) {
  validate(d);
  require(xi3_mag >= 0.0, "|xi3| must be non-negative");
  PumpDrive drive;
  drive.l0 = resonator_inductance(d, i_dc);
  drive.omega_nr = 1.0 / std::sqrt(drive.l0 * d.c_shunt);
  drive.alpha = xi3_mag * xi3_mag / (4.0 * drive.omega_nr * drive.omega_nr);
  require(drive.alpha < 1.0, "|xi3| too large: alpha must stay below 1");
  drive.phase = phase;
  drive.omega_p = omega_p;
  return drive;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  require(step > 0.0 && hi >= lo, "grid needs lo <= hi and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = lo + step * double(k);
  return g;
}

SweepKernel::SweepKernel(const DesignSpec& d, const EnvironmentModel& env,
                         double omega_p, std::vector<double> omega)
    : omega_p_(omega_p), omega_(std::move(omega)) {
  validate(d);
  validate(env);
  require(!omega_.empty(), "frequency grid is empty");
  for (std::size_t k = 1; k < omega_.size(); ++k)
    require(omega_[k] > omega_[k - 1], "frequency grid must be strictly increasing");
  require(omega_.front() > 0.0 && omega_.back() < omega_p,
          "every signal frequency must satisfy 0 < omega_s < omega_p");
  const auto lines = port_to_node_lines(d);
  points_.resize(omega_.size());
  for (std::size_t k = 0; k < omega_.size(); ++k) {
    const double ws = omega_[k];
    Point& pt = points_[k];
    pt.omega_i = omega_p - ws;
    TwoPort m;
    for (const auto& line : lines) m = m * line_two_port(line, ws);
    pt.chain = m;
    pt.y_idler = idler_admittance(d, env, pt.omega_i).value;
    pt.y_cap = kI * ws * d.c_shunt;
    pt.z_env = environment_impedance(env, ws);
    pt.idler_term = kI * pt.omega_i * std::conj(pt.y_idler);
    pt.num_q = m.a + m.b * pt.y_cap;
    pt.dd_q = (m.c + m.d * pt.y_cap) * pt.z_env;
    pt.dd_u = m.d * pt.z_env;
  }
}

// Reflection with every division folded into one final ratio. With
// den = i w_i L' Y_idler* - 1 and q = i w_s L' den, the node admittance is
// u/q where u = den + alpha + i w_s C q. Multiplying the chain's ABCD
// transform through by q leaves S11 = (A q + B u - Z(C q + D u)) / (... + ...).
Complex SweepKernel::reflection(const Point& pt, double omega_s, double l0,
                                double alpha, bool& oscillating) const {
  const double lp = l0 * (1.0 - alpha);
  const Complex den = kI * pt.omega_i * lp * std::conj(pt.y_idler) - 1.0;
  oscillating = std::abs(den) <= 1e-15;
  if (oscillating) return kInf;
  const Complex q = kI * omega_s * lp * den;
  const Complex u = den + alpha + pt.y_cap * q;
  const TwoPort& m = pt.chain;
  const Complex num = m.a * q + m.b * u;
  const Complex dd = (m.c * q + m.d * u) * pt.z_env;
  const Complex top = num - dd, bottom = num + dd;
  if (std::abs(bottom) <= 1e-15 * (std::abs(num) + std::abs(dd))) {
    oscillating = true;
    return kInf;
  }
  return top / bottom;
}

GainProfile SweepKernel::evaluate(double l0, double alpha) const {
  require(l0 > 0.0, "inductance must be positive");
  require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0, 1)");
  GainProfile p;
  p.omega = omega_;
  p.s11.resize(size());
  p.gain_db.resize(size());
  p.oscillation.assign(size(), 0);
  for (std::size_t k = 0; k < size(); ++k) {
    bool osc = false;
    p.s11[k] = reflection(points_[k], omega_[k], l0, alpha, osc);
    p.oscillation[k] = osc;
    p.gain_db[k] = osc ? kInf : gain_db(p.s11[k]);
  }
  return p;
}

double SweepKernel::evaluate_power(double l0, double alpha, std::vector<double>& pw,
                                   std::vector<char>& osc) const {
  pw.resize(size());
  osc.resize(size());
  const double lp = l0 * (1.0 - alpha);
  double peak = 0.0;
  // Same algebra as reflection() with the pump-independent products hoisted:
  // num = (A + B iwC) q + B (den + alpha), likewise for the Z_env side.
  for (std::size_t k = 0; k < size(); ++k) {
    const Point& pt = points_[k];
    const Complex den = lp * pt.idler_term - 1.0;
    const Complex q = Complex(0.0, omega_[k] * lp) * den;
    const Complex v = den + alpha;
    const Complex num = pt.num_q * q + pt.chain.b * v;
    const Complex dd = pt.dd_q * q + pt.dd_u * v;
    const double nb = std::norm(num + dd);
    const bool o = std::norm(den) <= 1e-30 ||
                   nb <= 1e-30 * (std::norm(num) + std::norm(dd));
    osc[k] = o;
    pw[k] = o ? kInf : std::norm(num - dd) / nb;
    peak = std::max(peak, pw[k]);
  }
  return peak;
}

GainProfile gain_spectrum(const DesignSpec& d, const PumpOperatingPoint& op,
                          const EnvironmentModel& env, const std::vector<double>& omega) {
  return gain_spectrum(d, drive_from_operating_point(d, op), env, omega);
}

GainProfile gain_spectrum(const DesignSpec& d, const PumpDrive& drive,
                          const EnvironmentModel& env, const std::vector<double>& omega) {
  SweepKernel kernel(d, env, drive.omega_p, omega);
  return kernel.evaluate(drive.l0, drive.alpha);
}

std::vector<std::size_t> find_peaks(const std::vector<double>& g,
                                    const std::vector<char>& osc,
                                    double prominence_db) {
  std::vector<std::size_t> out;
  const std::size_t n = g.size();
  auto blocked = [&](std::size_t k) { return !osc.empty() && osc[k]; };
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (blocked(k) || blocked(k - 1) || blocked(k + 1)) continue;
    if (!(g[k] > g[k - 1] && g[k] >= g[k + 1])) continue;
    // Lowest point on each side before meeting higher ground. Mirror-image
    // peaks agree only to rounding, so heights within kTie count as equal and
    // the left one of an equal pair bounds the right one.
    constexpr double kTie = 1e-9;
    double left_min = g[k];
    for (std::size_t j = k; j-- > 0;) {
      if (blocked(j) || g[j] >= g[k] - kTie) break;
      left_min = std::min(left_min, g[j]);
    }
    double right_min = g[k];
    for (std::size_t j = k + 1; j < n; ++j) {
      if (blocked(j) || g[j] > g[k] + kTie) break;
      right_min = std::min(right_min, g[j]);
    }
    if (g[k] - std::max(left_min, right_min) >= prominence_db) out.push_back(k);
  }
  return out;
}

BandwidthReport bandwidth_report(const GainProfile& profile, const BandwidthCriteria& crit) {
  return bandwidth_report(profile.omega, profile.gain_db, profile.oscillation, crit);
}

BandwidthReport bandwidth_report(const std::vector<double>& w,
                                 const std::vector<double>& g,
                                 const std::vector<char>& osc,
                                 const BandwidthCriteria& crit) {
  require(!w.empty() && w.size() == g.size(), "profile is empty or inconsistent");
  require(osc.empty() || osc.size() == g.size(), "oscillation flags do not match the grid");
  const std::size_t n = g.size();
  const double thr = crit.threshold_db;
  auto is_osc = [&](std::size_t k) { return !osc.empty() && osc[k]; };
  auto above = [&](std::size_t k) { return !is_osc(k) && g[k] >= thr; };

  BandwidthReport r;
  r.threshold_db = thr;
  for (std::size_t k = 0; k < n; ++k) {
    if (is_osc(k)) {
      r.oscillation_frequencies.push_back(w[k]);
      r.max_gain_db = kInf;
    } else {
      r.max_gain_db = std::max(r.max_gain_db, g[k]);
    }
  }

  // Crossing between k and k+1 where the gain passes the threshold.
  auto crossing = [&](std::size_t k) {
    const double t = (thr - g[k]) / (g[k + 1] - g[k]);
    return w[k] + t * (w[k + 1] - w[k]);
  };
  std::size_t best_i = 0, best_j = 0;
  bool have_span = false;
  for (std::size_t i = 0; i < n;) {
    if (!above(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && above(j + 1)) ++j;
    const double lo = (i > 0 && !is_osc(i - 1)) ? crossing(i - 1) : w[i];
    const double hi = (j + 1 < n && !is_osc(j + 1)) ? crossing(j) : w[j];
    if (!have_span || hi - lo > r.bandwidth) {
      have_span = true;
      r.bandwidth = hi - lo;
      r.span_lo = lo;
      r.span_hi = hi;
      best_i = i;
      best_j = j;
    }
    i = j + 1;
  }

  for (std::size_t k : find_peaks(g, osc, crit.prominence_db))
    if (!have_span || (k >= best_i && k <= best_j)) r.peak_frequencies.push_back(w[k]);
  r.peak_count = static_cast<int>(r.peak_frequencies.size());

  if (!have_span) {
    r.rejection = "no span reaches the threshold";
    return r;
  }
  const auto [mn, mx] = std::minmax_element(g.begin() + best_i, g.begin() + best_j + 1);
  r.ripple_db = *mx - *mn;
  if (r.ripple_db > crit.ripple_max_db) {
    r.rejection = "ripple above limit";
  } else if (crit.require_two_peaks && r.peak_count < 2) {
    r.rejection = "fewer than two peaks";
  } else {
    r.accepted = true;
  }
  return r;
}

PumpPolicy xi3_ramp_policy(double cap) {
  return {PumpPolicyKind::Xi3, kTwoPi * 1e6, 1.02, cap, 40.0};
}

PumpPolicy current_ramp_policy(double cap) {
  // 0.1 dB in power is 0.05 dB in amplitude.
  return {PumpPolicyKind::Current, 1e-6, std::pow(10.0, 0.1 / 20.0), cap, 40.0};
}

RampResult ramp_pump(const SweepKernel& kernel, const DesignSpec& d, double i_dc,
                     const PumpPolicy& policy, const BandwidthCriteria& crit) {
  require(policy.start > 0.0 && policy.factor > 1.0, "pump ramp needs start > 0 and factor > 1");
  const double l0 = resonator_inductance(d, i_dc);
  const double omega_nr = 1.0 / std::sqrt(l0 * d.c_shunt);
  std::vector<double> g;
  std::vector<char> osc;
  RampResult out;
  for (double amp = policy.start; amp <= policy.cap; amp *= policy.factor) {
    double alpha = 0.0;
    if (policy.kind == PumpPolicyKind::Xi3) {
      alpha = amp * amp / (4.0 * omega_nr * omega_nr);
    } else {
      if (i_dc + amp >= d.ki_model.i_c) break;
      const PumpCoefficients pc =
          pump_coefficients(d.ki_model, {i_dc, amp, 0.0, kernel.omega_p()}, omega_nr);
      alpha = ModulatedInductor{l0, pc.delta_l}.alpha();
    }
    if (alpha >= 1.0) break;
    const double peak = 10.0 * std::log10(kernel.evaluate_power(l0, alpha, g, osc));
    ++out.steps;
    out.max_gain_db = std::max(out.max_gain_db, peak);
    if (peak >= crit.threshold_db) {
      for (double& v : g) v = 10.0 * std::log10(v);
      BandwidthReport rep = bandwidth_report(kernel.omega(), g, osc, crit);
      if (rep.accepted && (!out.qualified || rep.bandwidth > out.best.bandwidth)) {
        out.qualified = true;
        out.best = std::move(rep);
        out.best_amplitude = amp;
        out.best_xi3 = 2.0 * omega_nr * std::sqrt(alpha);
      }
    }
    if (peak >= policy.stop_gain_db) break;
  }
  return out;
}

std::vector<MapCell> pump_bias_map(const DesignSpec& d, const EnvironmentModel& env,
                                   const std::vector<double>& omega_p_grid,
                                   const std::vector<double>& i_dc_grid,
                                   const PumpPolicy& policy,
                                   const SpectrumWindow& window,
                                   const BandwidthCriteria& crit, unsigned threads) {
  require(!omega_p_grid.empty() && !i_dc_grid.empty(), "map grids must be non-empty");
  validate(d);
  std::vector<std::unique_ptr<SweepKernel>> kernels(omega_p_grid.size());
  parallel_for(omega_p_grid.size(), threads, [&](std::size_t k) {
    const double c = omega_p_grid[k] / 2.0;
    kernels[k] = std::make_unique<SweepKernel>(
        d, env, omega_p_grid[k],
        make_grid(c - window.half_width, c + window.half_width, window.step));
  });
  const std::size_t ni = i_dc_grid.size();
  std::vector<MapCell> cells(omega_p_grid.size() * ni);
  parallel_for(cells.size(), threads, [&](std::size_t k) {
    MapCell& cell = cells[k];
    cell.omega_p = omega_p_grid[k / ni];
    cell.i_dc = i_dc_grid[k % ni];
    cell.ramp = ramp_pump(*kernels[k / ni], d, cell.i_dc, policy, crit);
  });
  return cells;
}

PowerLaw fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), "power-law data size mismatch");
  if (x.size() < 2) fail(ErrorKind::InsufficientData, "power-law fit needs two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    require(x[k] > 0.0 && y[k] > 0.0, "power-law data must be positive");
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) fail(ErrorKind::InsufficientData, "power-law abscissae coincide");
  PowerLaw p;
  p.exponent = (n * sxy - sx * sy) / den;
  p.prefactor = std::exp((sy - p.exponent * sx) / n);
  p.points = x.size();
  return p;
}

PowerLaw rnr_power_law(const IdlerModel& y_idler, double l0, double omega_nr,
                       const std::vector<double>& xi3_grid, double omega_s,
                       double omega_p) {
  require(l0 > 0.0 && omega_nr > 0.0, "resonator parameters must be positive");
  require(omega_s > 0.0 && omega_p > omega_s, "need 0 < omega_s < omega_p");
  require(!xi3_grid.empty(), "xi3 grid is empty");
  const auto [lo, hi] = std::minmax_element(xi3_grid.begin(), xi3_grid.end());
  require(*lo > 0.0 && *hi / *lo >= std::sqrt(10.0) * (1.0 - 1e-12),
          "xi3 grid must span at least half a decade");
  const double omega_i = omega_p - omega_s;
  const Complex yi = y_idler(omega_i);
  std::vector<double> xs, rs;
  for (double xi : xi3_grid) {
    const double alpha = xi * xi / (4.0 * omega_nr * omega_nr);
    if (alpha >= 1.0) continue;
    const Complex y = effective_admittance(l0, alpha, omega_s, omega_i, yi);
    if (y.real() >= 0.0) continue;
    xs.push_back(xi);
    rs.push_back(negative_resistance(y));
  }
  if (xs.size() < 4)
    fail(ErrorKind::InsufficientData, "fewer than 4 grid points show negative resistance");
  return fit_power_law(xs, rs);
}

PowerLaw rnr_power_law(const DesignSpec& d, const EnvironmentModel& env, double i_dc,
                       const std::vector<double>& xi3_grid, double omega_s,
                       double omega_p) {
  validate(d);
  const double l0 = resonator_inductance(d, i_dc);
  return rnr_power_law(
      [&](double wi) { return idler_admittance(d, env, wi).value; }, l0,
      1.0 / std::sqrt(l0 * d.c_shunt), xi3_grid, omega_s, omega_p);
}

}  // namespace kimpa
