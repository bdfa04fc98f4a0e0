#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "kimpa/design.h"
#include "kimpa/ki_material.h"
#include "kimpa/pump_element.h"

namespace kimpa {

// Linearized pump state seen by the resonator: everything the two-sideband
// model needs. The pump phase is carried for reporting only; gain depends on
// alpha alone.
struct PumpDrive {
  double l0 = 0.0;        // H, total inductance at the bias point
  double alpha = 0.0;
  double phase = 0.0;     // rad
  double omega_p = 0.0;   // rad/s
  double omega_nr = 0.0;  // rad/s, resonator frequency at the bias point

  double xi3() const { return 2.0 * omega_nr * std::sqrt(alpha); }
};

// Physical path: bias and pump current through the material model. The
// geometric inductance dilutes the modulation: alpha = |dL|^2 / 4 (L_k + L_geo)^2.
PumpDrive drive_from_operating_point(const DesignSpec& d, const PumpOperatingPoint& op);

// Direct path: |xi3| given, alpha = |xi3|^2 / (4 omega_nr^2).
PumpDrive drive_from_xi3(const DesignSpec& d, double i_dc, double xi3_mag,
                         double phase, double omega_p);

// Uniform grid lo, lo+step, ... up to hi (inclusive within half a step).
std::vector<double> make_grid(double lo, double hi, double step);

struct GainProfile {
  std::vector<double> omega;     // rad/s
  std::vector<Complex> s11;
  std::vector<double> gain_db;   // +inf at oscillation points
  std::vector<char> oscillation;
};

// Pump-independent part of a sweep at fixed omega_p: signal-side ABCD, the
// idler admittance and the source impedance at every grid point. Evaluating a
// new pump level then costs a handful of complex operations per point.
class SweepKernel {
 public:
  SweepKernel(const DesignSpec& d, const EnvironmentModel& env, double omega_p,
              std::vector<double> omega);

  double omega_p() const { return omega_p_; }
  const std::vector<double>& omega() const { return omega_; }
  std::size_t size() const { return omega_.size(); }

  GainProfile evaluate(double l0, double alpha) const;
  // |S11|^2 per point for pump ramps; returns the largest value.
  double evaluate_power(double l0, double alpha, std::vector<double>& power,
                        std::vector<char>& oscillation) const;

 private:
  struct Point {
    TwoPort chain;
    Complex y_idler;
    Complex y_cap;
    Complex z_env;
    double omega_i;
    // Hoisted products for evaluate_power.
    Complex idler_term, num_q, dd_q, dd_u;
  };
  Complex reflection(const Point& pt, double omega_s, double l0, double alpha,
                     bool& oscillating) const;

  double omega_p_;
  std::vector<double> omega_;
  std::vector<Point> points_;
};

GainProfile gain_spectrum(const DesignSpec& d, const PumpOperatingPoint& op,
                          const EnvironmentModel& env, const std::vector<double>& omega);
GainProfile gain_spectrum(const DesignSpec& d, const PumpDrive& drive,
                          const EnvironmentModel& env, const std::vector<double>& omega);

struct BandwidthCriteria {
  double threshold_db = 17.0;
  double ripple_max_db = 5.0;
  bool require_two_peaks = false;
  double prominence_db = 0.5;
};

struct BandwidthReport {
  double bandwidth = 0.0;  // rad/s
  std::vector<double> peak_frequencies;
  int peak_count = 0;
  double ripple_db = 0.0;
  double threshold_db = 17.0;
  double span_lo = 0.0, span_hi = 0.0;
  double max_gain_db = -std::numeric_limits<double>::infinity();
  std::vector<double> oscillation_frequencies;
  bool accepted = false;
  std::string rejection;
};

BandwidthReport bandwidth_report(const GainProfile& profile,
                                 const BandwidthCriteria& crit = {});
BandwidthReport bandwidth_report(const std::vector<double>& omega,
                                 const std::vector<double>& gain_db,
                                 const std::vector<char>& oscillation,
                                 const BandwidthCriteria& crit = {});

// Indices of local maxima whose prominence reaches `prominence_db`.
std::vector<std::size_t> find_peaks(const std::vector<double>& gain_db,
                                    const std::vector<char>& oscillation,
                                    double prominence_db);

enum class PumpPolicyKind { Current, Xi3 };

// Geometric pump ramp. Current: amplitude in A, default factor is a 0.1-dB
// power step; the ramp also stops at i_dc + |I_p| = i_c. Xi3: |xi3| in rad/s.
struct PumpPolicy {
  PumpPolicyKind kind = PumpPolicyKind::Xi3;
  double start = kTwoPi * 1e6;
  double factor = 1.02;
  double cap = kTwoPi * 20e9;
  double stop_gain_db = 40.0;
};

PumpPolicy xi3_ramp_policy(double cap = kTwoPi * 20e9);
PumpPolicy current_ramp_policy(double cap = std::numeric_limits<double>::infinity());

struct RampResult {
  bool qualified = false;
  BandwidthReport best;          // widest accepted profile
  double best_amplitude = 0.0;   // policy units
  double best_xi3 = 0.0;         // rad/s
  double max_gain_db = -std::numeric_limits<double>::infinity();
  int steps = 0;
};

// Raises the pump until the peak gain passes policy.stop_gain_db or the cap,
// keeping the widest profile accepted under `crit`.
RampResult ramp_pump(const SweepKernel& kernel, const DesignSpec& d, double i_dc,
                     const PumpPolicy& policy, const BandwidthCriteria& crit);

// Signal window used per pump frequency: omega_p/2 +- half_width.
struct SpectrumWindow {
  double half_width = kTwoPi * 1e9;
  double step = kTwoPi * 1e6;
};

struct MapCell {
  double omega_p = 0.0;
  double i_dc = 0.0;
  RampResult ramp;
};

// Row-major in (omega_p, i_dc). Output is independent of `threads`.
std::vector<MapCell> pump_bias_map(const DesignSpec& d, const EnvironmentModel& env,
                                   const std::vector<double>& omega_p_grid,
                                   const std::vector<double>& i_dc_grid,
                                   const PumpPolicy& policy,
                                   const SpectrumWindow& window = {},
                                   const BandwidthCriteria& crit = {17.0, 5.0, true, 0.5},
                                   unsigned threads = 0);

struct PowerLaw {
  double exponent = 0.0;
  double prefactor = 0.0;
  std::size_t points = 0;
};

// Least-squares line through (log x, log y).
PowerLaw fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

using IdlerModel = std::function<Complex(double omega_i)>;

// R_NR = -1/Re[Y_eff] against |xi3|. Points without gain are skipped.
PowerLaw rnr_power_law(const IdlerModel& y_idler, double l0, double omega_nr,
                       const std::vector<double>& xi3_grid, double omega_s,
                       double omega_p);
PowerLaw rnr_power_law(const DesignSpec& d, const EnvironmentModel& env, double i_dc,
                       const std::vector<double>& xi3_grid, double omega_s,
                       double omega_p);

}  // namespace kimpa
