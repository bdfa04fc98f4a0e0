#include "kimpa/design_search.h"

#include <cmath>

#include "kimpa/errors.h"
#include "kimpa/parallel.h"

namespace kimpa {

SearchRanges default_search_ranges(CircuitKind kind) {
  SearchRanges r;
  r.kind = kind;
  if (kind == CircuitKind::Conventional) r.z_nr = {1.0, 20.0, 1.0};
  return r;
}

namespace {

void validate(const Range& r, const char* name) {
  require(r.step > 0.0 && r.hi >= r.lo, std::string(name) + " range needs lo <= hi and step > 0");
}

}  // namespace

void validate(const SearchRanges& r) {
  validate(r.z_quarter, "z_quarter");
  validate(r.z_half, "z_half");
  validate(r.z_nr, "z_nr");
  validate(r.omega_p_half, "omega_p_half");
  require(r.z_quarter.lo > 0.0 && r.z_half.lo > 0.0 && r.z_nr.lo > 0.0,
          "search impedances must be positive");
  require(r.omega_p_half.lo > r.window.half_width, "signal window reaches zero frequency");
  require(r.z_ki > 0.0 && r.omega0 > 0.0 && r.z0 > 0.0, "fixed search parameters must be positive");
  require(r.window.half_width > 0.0 && r.window.step > 0.0, "signal window must be non-empty");
}

DesignRecord evaluate_design_point(const SearchRanges& r, const DesignPoint& p) {
  const DesignSpec d = make_lumped_design(r.kind, p.z_quarter, p.z_half, r.z_ki,
                                          r.omega0, p.z_nr, r.omega0, r.z0);
  const double omega_p = 2.0 * p.omega_p_half;
  const SweepKernel kernel(
      d, EnvironmentModel{r.z0, {}}, omega_p,
      make_grid(p.omega_p_half - r.window.half_width, p.omega_p_half + r.window.half_width,
                r.window.step));
  const BandwidthCriteria crit{17.0, 5.0, true, 0.5};
  const RampResult ramp = ramp_pump(kernel, d, 0.0, r.policy, crit);
  DesignRecord rec;
  rec.params = p;
  if (ramp.qualified && ramp.best.ripple_db < crit.ripple_max_db) {
    rec.max_bandwidth = ramp.best.bandwidth;
    rec.optimal_xi3 = ramp.best_xi3;
    rec.eta = rec.max_bandwidth / rec.optimal_xi3;
  }
  return rec;
}

std::vector<DesignRecord> search_designs(const SearchRanges& ranges, unsigned threads,
                                         const std::function<void(const DesignRecord&)>& sink) {
  validate(ranges);
  std::vector<DesignPoint> points;
  for (double zq : ranges.z_quarter.values())
    for (double zh : ranges.z_half.values())
      for (double zn : ranges.z_nr.values())
        for (double wp : ranges.omega_p_half.values()) points.push_back({zq, zh, zn, wp});
  std::vector<DesignRecord> all(points.size());
  parallel_for(points.size(), threads,
               [&](std::size_t k) { all[k] = evaluate_design_point(ranges, points[k]); });
  std::vector<DesignRecord> out;
  for (const auto& rec : all) {
    if (rec.max_bandwidth <= 0.0) continue;
    if (sink) sink(rec);
    out.push_back(rec);
  }
  return out;
}

std::vector<ZnrStatistics> aggregate_by_znr(const std::vector<DesignRecord>& records,
                                            double omega0) {
  std::map<double, std::vector<const DesignRecord*>> groups;
  for (const auto& r : records) groups[r.params.z_nr].push_back(&r);
  std::vector<ZnrStatistics> out;
  for (const auto& [z_nr, group] : groups) {
    ZnrStatistics s;
    s.z_nr = z_nr;
    s.count = group.size();
    s.capacitance = 1.0 / (omega0 * z_nr);
    s.max_eta = group.front()->eta;
    s.min_eta = group.front()->eta;
    double sum = 0.0;
    for (const auto* r : group) {
      sum += r->max_bandwidth;
      s.max_eta = std::max(s.max_eta, r->eta);
      s.min_eta = std::min(s.min_eta, r->eta);
    }
    s.mean_bandwidth = sum / double(s.count);
    double var = 0.0;
    for (const auto* r : group) var += std::pow(r->max_bandwidth - s.mean_bandwidth, 2);
    s.std_bandwidth = std::sqrt(var / double(s.count));
    out.push_back(s);
  }
  return out;
}

double capacitance_for_fractional_bandwidth(const std::vector<ZnrStatistics>& stats,
                                            double omega0, double fraction) {
  for (const auto& s : stats)  // ascending z_nr
    if (s.mean_bandwidth >= fraction * omega0) return s.capacitance;
  return 0.0;
}

}  // namespace kimpa
