#ifndef TDGL_RUN_HPP
#define TDGL_RUN_HPP

#include <optional>
#include <string>
#include <vector>

#include "tdgl/config.hpp"
#include "tdgl/snapshot.hpp"
#include "tdgl/vortex.hpp"

namespace tdgl {

// Outcome of one integration: step count N, cost per step C = wall / N
// (seconds, exclusive of file I/O), the final diagnostics, and why the run
// stopped ("equilibrium", "t_max", or "divergence").
struct RunReport {
  StepperKind algorithm = StepperKind::ExplicitI;
  Real dt = 0;
  long steps = 0;
  Real physical_time = 0;
  Real wall_seconds = 0;
  Real cost_per_step = 0;
  Real final_energy = 0;
  VortexConfiguration final_config;
  std::string termination;
  long divergence_step = -1;
};

// Integrates the configured problem until the equilibrium monitor fires,
// t reaches t_max, or the step diverges. When output_dir is set, writes
// timeseries.csv, report.txt, a final snapshot, and cadence snapshots there.
RunReport run_to_equilibrium(const RunConfig& config);

void write_report(const RunReport& report, const std::string& path);
RunReport read_report(const std::string& path);

struct ProbeRecord {
  Real dt = 0;
  bool stable = false;
  long steps_completed = 0;
};

struct SweepResult {
  std::optional<Real> max_stable_dt;
  std::vector<ProbeRecord> log;
};

// Bisects for the largest stable dt in [dt_min, dt_max]. A dt counts as
// stable when a probe run of 20 * ceil(1/dt) steps from the configured
// initial state completes without divergence. Returns an empty result when
// dt_min itself is unstable.
SweepResult stability_sweep(const RunConfig& config, Real dt_min, Real dt_max,
                            Real resolution);

struct ComparisonReport {
  EquivalenceReport equivalence;
  RunReport a;
  RunReport b;
};

ComparisonReport compare_runs(const RunReport& a, const RunReport& b);
std::string format_comparison(const ComparisonReport& report);

}  // namespace tdgl

#endif  // TDGL_RUN_HPP
