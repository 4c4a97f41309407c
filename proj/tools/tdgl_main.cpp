// Command-line front end: run a configuration to equilibrium, sweep for the
// stability limit, analyze a snapshot, write preset configurations, and
// compare two run reports.
//
// Exit codes: 0 success/equilibrium, 2 divergence, 3 configuration error,
// 4 I/O error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tdgl/config.hpp"
#include "tdgl/operators.hpp"
#include "tdgl/run.hpp"
#include "tdgl/snapshot.hpp"
#include "tdgl/vortex.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDivergence = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;

void print_report(const tdgl::RunReport& r) {
  std::printf("algorithm        %s\n", tdgl::to_string(r.algorithm));
  std::printf("termination      %s\n", r.termination.c_str());
  if (r.divergence_step >= 0) {
    std::printf("diverged at step %ld\n", r.divergence_step);
  }
  std::printf("dt               %.6g\n", r.dt);
  std::printf("steps (N)        %ld\n", r.steps);
  std::printf("N*dt             %.6g\n", r.physical_time);
  std::printf("wall time (s)    %.4g\n", r.wall_seconds);
  std::printf("cost/step (s)    %.4g\n", r.cost_per_step);
  std::printf("final energy     %.10g\n", r.final_energy);
  std::printf("vortex count     %d\n", r.final_config.count());
  if (r.final_config.mean_bond_length) {
    std::printf("mean bond length %.10g\n", *r.final_config.mean_bond_length);
  }
  if (r.final_config.mean_bond_angle) {
    std::printf("mean bond angle  %.10g\n", *r.final_config.mean_bond_angle);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-dependent Ginzburg-Landau vortex dynamics solver"};
  app.require_subcommand(1);

  std::string config_path, algorithm_override, out_path, snapshot_path;
  std::optional<double> dt_override;
  double dt_min = 0, dt_max = 0, resolution = 0.05;
  std::string preset_name, report_a, report_b;

  CLI::App* run = app.add_subcommand("run", "integrate a configuration to equilibrium");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--algorithm", algorithm_override, "I, II, III, or IV");
  run->add_option("--dt", dt_override, "time step override");

  CLI::App* sweep = app.add_subcommand("sweep", "bisect for the largest stable time step");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--dt-min", dt_min, "lower bound")->required();
  sweep->add_option("--dt-max", dt_max, "upper bound")->required();
  sweep->add_option("--resolution", resolution, "relative bisection resolution");
  sweep->add_option("--algorithm", algorithm_override, "I, II, III, or IV");

  CLI::App* analyze = app.add_subcommand("analyze", "vortex statistics of a snapshot");
  analyze->add_option("--snapshot", snapshot_path, "snapshot file")->required();

  CLI::App* preset_cmd = app.add_subcommand("preset", "write a named preset config");
  preset_cmd->add_option("name", preset_name, "desk or paper-benchmark")->required();
  preset_cmd->add_option("--out", out_path, "output file (default <name>.cfg)");
  preset_cmd->add_option("--algorithm", algorithm_override, "I, II, III, or IV");

  CLI::App* compare = app.add_subcommand("compare", "compare two run reports");
  compare->add_option("report_a", report_a, "first report.txt")->required();
  compare->add_option("report_b", report_b, "second report.txt")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      tdgl::RunConfig config = tdgl::load_config(config_path);
      if (!algorithm_override.empty()) {
        config.algorithm = tdgl::stepper_kind_from_string(algorithm_override);
      }
      if (dt_override) config.dt = *dt_override;
      tdgl::validate_config(config);
      const tdgl::RunReport report = tdgl::run_to_equilibrium(config);
      print_report(report);
      return report.termination == "divergence" ? kExitDivergence : kExitOk;
    }

    if (sweep->parsed()) {
      tdgl::RunConfig config = tdgl::load_config(config_path);
      if (!algorithm_override.empty()) {
        config.algorithm = tdgl::stepper_kind_from_string(algorithm_override);
      }
      const tdgl::SweepResult result =
          tdgl::stability_sweep(config, dt_min, dt_max, resolution);
      for (const tdgl::ProbeRecord& p : result.log) {
        std::printf("probe dt=%-12.6g %s after %ld steps\n", p.dt,
                    p.stable ? "stable  " : "diverged", p.steps_completed);
      }
      if (result.max_stable_dt) {
        std::printf("max stable dt: %.6g\n", *result.max_stable_dt);
      } else {
        std::printf("max stable dt: none (dt_min already unstable)\n");
      }
      return kExitOk;
    }

    if (analyze->parsed()) {
      const tdgl::Snapshot snap = tdgl::read_snapshot(snapshot_path);
      const tdgl::DomainGeometry geom = tdgl::geometry_from(snap.config);
      const tdgl::PhysicsParams params = tdgl::params_from(snap.config, geom);
      tdgl::FieldState state = snap.state;
      tdgl::sync_state(state, geom, params.kappa);
      const tdgl::VortexConfiguration config =
          tdgl::vortex_configuration(state, params, geom);
      std::printf("t                %.10g\n", state.t);
      std::printf("energy           %.10g\n",
                  tdgl::discrete_energy(state, params, geom));
      std::printf("vortex count     %d\n", config.count());
      if (config.mean_bond_length) {
        std::printf("mean bond length %.10g\n", *config.mean_bond_length);
      }
      if (config.mean_bond_angle) {
        std::printf("mean bond angle  %.10g\n", *config.mean_bond_angle);
      }
      for (const auto& p : config.positions) {
        std::printf("vortex  %14.8f %14.8f\n", p.x(), p.y());
      }
      return kExitOk;
    }

    if (preset_cmd->parsed()) {
      tdgl::StepperKind kind = tdgl::StepperKind::ExplicitI;
      if (!algorithm_override.empty()) {
        kind = tdgl::stepper_kind_from_string(algorithm_override);
      }
      const tdgl::RunConfig config = tdgl::preset(preset_name, kind);
      const std::string path = out_path.empty() ? preset_name + ".cfg" : out_path;
      tdgl::save_config(config, path);
      std::printf("wrote %s\n", path.c_str());
      return kExitOk;
    }

    if (compare->parsed()) {
      const tdgl::RunReport a = tdgl::read_report(report_a);
      const tdgl::RunReport b = tdgl::read_report(report_b);
      std::fputs(tdgl::format_comparison(tdgl::compare_runs(a, b)).c_str(), stdout);
      return kExitOk;
    }
  } catch (const tdgl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const tdgl::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
