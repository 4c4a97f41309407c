#include "tdgl/run.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "tdgl/operators.hpp"
#include "tdgl/stepper.hpp"

namespace tdgl {

namespace {

using Clock = std::chrono::steady_clock;

Real seconds_since(Clock::time_point t0) {
  return std::chrono::duration<Real>(Clock::now() - t0).count();
}

std::string fmt_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunReport run_to_equilibrium(const RunConfig& config) {
  validate_config(config);
  const DomainGeometry geom = geometry_from(config);
  const PhysicsParams params = params_from(config, geom);
  FieldState state = initial_state_from(config, geom, params);
  Stepper stepper = make_stepper(config.algorithm, geom, params, config.dt);

  const bool emit = !config.output_dir.empty();
  if (emit) std::filesystem::create_directories(config.output_dir);
  const auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(config.output_dir) / name).string();
  };

  EquilibriumMonitor monitor(config.check_interval, config.position_tolerance,
                             config.consecutive_passes, geom.period_length());
  std::vector<TimeseriesRecord> records;

  RunReport report;
  report.algorithm = config.algorithm;
  report.dt = config.dt;
  report.termination = "t_max";

  Real wall = 0;
  long step = 0;
  while (state.t < config.t_max) {
    const auto t0 = Clock::now();
    try {
      stepper.step(state);
    } catch (const DivergenceError&) {
      wall += seconds_since(t0);
      report.termination = "divergence";
      report.divergence_step = step + 1;
      break;
    }
    wall += seconds_since(t0);
    ++step;

    if (step % config.check_interval == 0) {
      const auto a0 = Clock::now();
      TimeseriesRecord rec;
      rec.step = step;
      rec.t = state.t;
      rec.energy = discrete_energy(state, params, geom);
      const VortexConfiguration snapshot_config =
          vortex_configuration(state, params, geom);
      rec.vortex_count = snapshot_config.count();
      const bool settled = monitor.update(snapshot_config);
      rec.max_position_delta = monitor.last_displacement();
      wall += seconds_since(a0);
      records.push_back(rec);
      if (settled) {
        report.termination = "equilibrium";
        break;
      }
    }
    if (emit && config.snapshot_cadence > 0 &&
        step % config.snapshot_cadence == 0) {
      write_snapshot(state, config, out_path("snapshot_" + std::to_string(step) + ".tdgl"));
    }
  }

  report.steps = step;
  report.physical_time = state.t;
  report.wall_seconds = wall;
  report.cost_per_step = step > 0 ? wall / static_cast<Real>(step) : 0;
  if (report.termination == "divergence") {
    report.final_energy = std::numeric_limits<Real>::quiet_NaN();
  } else {
    report.final_energy = discrete_energy(state, params, geom);
    report.final_config = vortex_configuration(state, params, geom);
  }

  if (emit) {
    emit_timeseries(records, out_path("timeseries.csv"));
    write_report(report, out_path("report.txt"));
    if (report.termination != "divergence") {
      write_snapshot(state, config, out_path("final.tdgl"));
    }
  }
  return report;
}

void write_report(const RunReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report: " + path);
  const Real nan = std::numeric_limits<Real>::quiet_NaN();
  out << "algorithm = " << to_string(r.algorithm) << "\n";
  out << "dt = " << fmt_real(r.dt) << "\n";
  out << "steps = " << r.steps << "\n";
  out << "physical_time = " << fmt_real(r.physical_time) << "\n";
  out << "wall_seconds = " << fmt_real(r.wall_seconds) << "\n";
  out << "cost_per_step = " << fmt_real(r.cost_per_step) << "\n";
  out << "final_energy = " << fmt_real(r.final_energy) << "\n";
  out << "termination = " << r.termination << "\n";
  out << "divergence_step = " << r.divergence_step << "\n";
  out << "vortex_count = " << r.final_config.count() << "\n";
  out << "mean_bond_length = "
      << fmt_real(r.final_config.mean_bond_length.value_or(nan)) << "\n";
  out << "mean_bond_angle = "
      << fmt_real(r.final_config.mean_bond_angle.value_or(nan)) << "\n";
  if (!out) throw IoError("failed writing report: " + path);
}

RunReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open report: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto trim = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(key);
    trim(value);
    kv[key] = value;
  }
  const auto need = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw IoError("report missing key '" + key + "'");
    return it->second;
  };
  RunReport r;
  r.algorithm = stepper_kind_from_string(need("algorithm"));
  r.dt = std::strtod(need("dt").c_str(), nullptr);
  r.steps = std::strtol(need("steps").c_str(), nullptr, 10);
  r.physical_time = std::strtod(need("physical_time").c_str(), nullptr);
  r.wall_seconds = std::strtod(need("wall_seconds").c_str(), nullptr);
  r.cost_per_step = std::strtod(need("cost_per_step").c_str(), nullptr);
  r.final_energy = std::strtod(need("final_energy").c_str(), nullptr);
  r.termination = need("termination");
  r.divergence_step = std::strtol(need("divergence_step").c_str(), nullptr, 10);
  const int count = static_cast<int>(std::strtol(need("vortex_count").c_str(), nullptr, 10));
  r.final_config.positions.assign(static_cast<std::size_t>(count),
                                  Eigen::Vector2d::Zero());
  const Real mbl = std::strtod(need("mean_bond_length").c_str(), nullptr);
  const Real mba = std::strtod(need("mean_bond_angle").c_str(), nullptr);
  if (!std::isnan(mbl)) r.final_config.mean_bond_length = mbl;
  if (!std::isnan(mba)) r.final_config.mean_bond_angle = mba;
  return r;
}

SweepResult stability_sweep(const RunConfig& config, Real dt_min, Real dt_max,
                            Real resolution) {
  if (!(dt_min > 0) || !(dt_min < dt_max)) {
    throw std::invalid_argument("stability_sweep: need 0 < dt_min < dt_max");
  }
  if (!(resolution > 0)) {
    throw std::invalid_argument("stability_sweep: resolution must be positive");
  }
  const DomainGeometry geom = geometry_from(config);
  const PhysicsParams params = params_from(config, geom);

  SweepResult result;
  const auto probe = [&](Real dt) {
    FieldState state = initial_state_from(config, geom, params);
    Stepper stepper = make_stepper(config.algorithm, geom, params, dt);
    const long budget = 20 * static_cast<long>(std::ceil(1.0 / dt));
    ProbeRecord rec;
    rec.dt = dt;
    rec.stable = true;
    for (long s = 0; s < budget; ++s) {
      try {
        stepper.step(state);
      } catch (const DivergenceError&) {
        rec.stable = false;
        break;
      }
      ++rec.steps_completed;
    }
    result.log.push_back(rec);
    return rec.stable;
  };

  if (!probe(dt_min)) return result;
  if (probe(dt_max)) {
    result.max_stable_dt = dt_max;
    return result;
  }
  Real lo = dt_min, hi = dt_max;
  while (hi - lo > resolution * lo) {
    const Real mid = 0.5 * (lo + hi);
    if (probe(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.max_stable_dt = lo;
  return result;
}

ComparisonReport compare_runs(const RunReport& a, const RunReport& b) {
  ComparisonReport c;
  c.a = a;
  c.b = b;
  c.equivalence = configs_equivalent(a.final_config, b.final_config);
  return c;
}

std::string format_comparison(const ComparisonReport& c) {
  std::ostringstream out;
  const auto row = [&](const char* label, const RunReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-4s %-11s %10.6g %12ld %12.4g %12.4g %12.6g\n", label,
                  to_string(r.algorithm), r.dt, r.steps, r.cost_per_step,
                  r.wall_seconds / 3600.0, r.physical_time);
    out << buf;
  };
  out << "run  algorithm          dt            N      C (s/step)     T (h)"
         "       N*dt\n";
  row("A", c.a);
  row("B", c.b);
  out << "vortex count: " << c.equivalence.count_a << " vs "
      << c.equivalence.count_b << "\n";
  out << "mean bond length delta: " << fmt_real(c.equivalence.bond_length_delta)
      << "\n";
  out << "mean bond angle delta:  " << fmt_real(c.equivalence.bond_angle_delta)
      << "\n";
  out << "equivalent: " << (c.equivalence.equivalent ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace tdgl
