#pragma once

#include <functional>
#include <map>
#include <vector>

#include "kimpa/design.h"
#include "kimpa/simulator.h"

namespace kimpa {

struct Range {
  double lo = 0.0, hi = 0.0, step = 1.0;

  std::vector<double> values() const { return make_grid(lo, hi, step); }
};

struct SearchRanges {
  CircuitKind kind = CircuitKind::ThreeStage;
  Range z_quarter{30.0, 100.0, 10.0};
  Range z_half{30.0, 100.0, 10.0};
  Range z_nr{50.0, 100.0, 10.0};
  Range omega_p_half{kTwoPi * 7.5e9, kTwoPi * 8.5e9, kTwoPi * 0.25e9};
  double z_ki = 150.0;
  double omega0 = kTwoPi * 8e9;
  double z0 = 50.0;
  SpectrumWindow window;  // signal band around omega_p/2
  PumpPolicy policy = xi3_ramp_policy();
};

// Ranges of the three-stage search; the conventional variant drops the KI
// line and scans Z_NR in [1, 20] ohm.
SearchRanges default_search_ranges(CircuitKind kind);

void validate(const SearchRanges& r);

struct DesignPoint {
  double z_quarter = 0.0, z_half = 0.0, z_nr = 0.0, omega_p_half = 0.0;
};

struct DesignRecord {
  DesignPoint params;
  double max_bandwidth = 0.0;  // rad/s
  double optimal_xi3 = 0.0;    // rad/s
  double eta = 0.0;
};

// Qualifying records in lexicographic order of (z_quarter, z_half, z_nr,
// omega_p_half). `sink`, when given, also sees each record in that order.
std::vector<DesignRecord> search_designs(
    const SearchRanges& ranges, unsigned threads = 0,
    const std::function<void(const DesignRecord&)>& sink = {});

// One grid point: nullopt-like record with zero bandwidth when not qualifying.
DesignRecord evaluate_design_point(const SearchRanges& ranges, const DesignPoint& p);

struct ZnrStatistics {
  double z_nr = 0.0;
  std::size_t count = 0;
  double mean_bandwidth = 0.0;  // rad/s
  double std_bandwidth = 0.0;   // rad/s, population
  double max_eta = 0.0;
  double min_eta = 0.0;
  double capacitance = 0.0;     // F, 1/(omega0 z_nr)
};

std::vector<ZnrStatistics> aggregate_by_znr(const std::vector<DesignRecord>& records,
                                            double omega0);

// Largest capacitance (smallest Z_NR bin) whose mean bandwidth reaches
// `fraction` of omega0; 0 when no bin does.
double capacitance_for_fractional_bandwidth(const std::vector<ZnrStatistics>& stats,
                                            double omega0, double fraction);

}  // namespace kimpa
