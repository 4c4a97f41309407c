#ifndef TDGL_CONFIG_HPP
#define TDGL_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "tdgl/fields.hpp"
#include "tdgl/geometry.hpp"
#include "tdgl/stepper.hpp"

namespace tdgl {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One run description. Files use UTF-8 `key = value` lines with `#`
// comments; keys are exactly these field names. Geometry counts, mesh
// widths, kappa, dt, and t_max are required; the rest default as below.
struct RunConfig {
  int sc_width_cells = 0;
  int blanket_cells = 0;
  int period_cells = 0;
  Real h_x = 0;
  Real h_y = 0;
  Real kappa = 0;
  Real sigma = 1;
  Real h_left = 0;
  Real h_right = 0;
  std::string tau_source = "uniform:1";
  StepperKind algorithm = StepperKind::ExplicitI;
  Real dt = 0;
  Real t_max = 0;
  std::uint64_t seed = 1234;
  Real noise_amp = 1e-3;
  int check_interval = 100;
  Real position_tolerance = 1e-6;
  int consecutive_passes = 3;
  std::string output_dir;
  int snapshot_cadence = 0;
};

// Parses and validates a config file. Throws ConfigError with the line
// number for parse failures, the offending key for unknown keys, and the
// field name for missing or invalid values.
RunConfig load_config(const std::string& path);

// Parses config text (same grammar as load_config).
RunConfig parse_config(const std::string& text);

void save_config(const RunConfig& config, const std::string& path);
std::string format_config(const RunConfig& config);

void validate_config(const RunConfig& config);

// Named benchmark configurations:
//   "paper-benchmark"  128 xi superconductor, 2 xi blankets, 192 xi period,
//                      h = 0.5, kappa = 16, H = 0.5; dt at the published
//                      stability limit of the chosen algorithm.
//   "desk"             28 xi superconductor, 2 xi blankets, 48 xi period,
//                      h = 0.5, kappa = 4, H = 0.5; minutes-scale runs.
// Throws ConfigError on unknown names.
RunConfig preset(const std::string& name,
                 StepperKind kind = StepperKind::ExplicitI);

// Construction helpers shared by the CLI and the run harness.
DomainGeometry geometry_from(const RunConfig& config);
PhysicsParams params_from(const RunConfig& config, const DomainGeometry& geom);
FieldState initial_state_from(const RunConfig& config,
                              const DomainGeometry& geom,
                              const PhysicsParams& params);

}  // namespace tdgl

#endif  // TDGL_CONFIG_HPP
