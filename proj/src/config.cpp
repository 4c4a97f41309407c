#include "tdgl/config.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace tdgl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string fmt_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for key '" + key + "': " + value);
  }
  if (pos != value.size()) {
    throw ConfigError("invalid integer for key '" + key + "': " + value);
  }
  return v;
}

Real parse_real(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  Real v;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': " + value);
  }
  if (pos != value.size()) {
    throw ConfigError("invalid number for key '" + key + "': " + value);
  }
  return v;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    if (kv.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    }
    kv[key] = value;
  }

  static const std::set<std::string> known = {
      "sc_width_cells", "blanket_cells",      "period_cells",
      "h_x",            "h_y",                "kappa",
      "sigma",          "h_left",             "h_right",
      "tau_source",     "algorithm",          "dt",
      "t_max",          "seed",               "noise_amp",
      "check_interval", "position_tolerance", "consecutive_passes",
      "output_dir",     "snapshot_cadence"};
  for (const auto& [key, value] : kv) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "'");
  }
  static const std::vector<std::string> required = {
      "sc_width_cells", "blanket_cells", "period_cells", "h_x", "h_y",
      "kappa",          "dt",            "t_max"};
  for (const std::string& key : required) {
    if (!kv.count(key)) throw ConfigError("missing required key '" + key + "'");
  }

  RunConfig c;
  const auto geti = [&](const char* key, int fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const long long v = parse_int(key, it->second);
    if (v < INT_MIN || v > INT_MAX) {
      throw ConfigError(std::string("value out of range for key '") + key + "'");
    }
    return static_cast<int>(v);
  };
  const auto getr = [&](const char* key, Real fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_real(key, it->second);
  };

  c.sc_width_cells = geti("sc_width_cells", 0);
  c.blanket_cells = geti("blanket_cells", 0);
  c.period_cells = geti("period_cells", 0);
  c.h_x = getr("h_x", 0);
  c.h_y = getr("h_y", 0);
  c.kappa = getr("kappa", 0);
  c.sigma = getr("sigma", c.sigma);
  c.h_left = getr("h_left", c.h_left);
  c.h_right = getr("h_right", c.h_right);
  if (kv.count("tau_source")) c.tau_source = kv["tau_source"];
  if (kv.count("algorithm")) {
    try {
      c.algorithm = stepper_kind_from_string(kv["algorithm"]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  c.dt = getr("dt", 0);
  c.t_max = getr("t_max", 0);
  if (kv.count("seed")) {
    try {
      c.seed = std::stoull(kv["seed"]);
    } catch (const std::exception&) {
      throw ConfigError("invalid integer for key 'seed': " + kv["seed"]);
    }
  }
  c.noise_amp = getr("noise_amp", c.noise_amp);
  c.check_interval = geti("check_interval", c.check_interval);
  c.position_tolerance = getr("position_tolerance", c.position_tolerance);
  c.consecutive_passes = geti("consecutive_passes", c.consecutive_passes);
  if (kv.count("output_dir")) c.output_dir = kv["output_dir"];
  c.snapshot_cadence = geti("snapshot_cadence", c.snapshot_cadence);

  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& c) {
  const auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("invalid value for '" + key + "': " + why);
  };
  if (c.sc_width_cells < 1) fail("sc_width_cells", "must be >= 1");
  if (c.blanket_cells < 1) fail("blanket_cells", "must be >= 1");
  if (c.period_cells < 1) fail("period_cells", "must be >= 1");
  if (!(c.h_x > 0)) fail("h_x", "must be positive");
  if (!(c.h_y > 0)) fail("h_y", "must be positive");
  if (!(c.kappa > 0)) fail("kappa", "must be positive");
  if (!(c.sigma > 0)) fail("sigma", "must be positive");
  if (!(c.dt > 0)) fail("dt", "must be positive");
  if (!(c.t_max >= 0)) fail("t_max", "must be >= 0");
  if (!(c.noise_amp >= 0)) fail("noise_amp", "must be >= 0");
  if (c.check_interval < 1) fail("check_interval", "must be >= 1");
  if (!(c.position_tolerance > 0)) fail("position_tolerance", "must be positive");
  if (c.consecutive_passes < 1) fail("consecutive_passes", "must be >= 1");
  if (c.snapshot_cadence < 0) fail("snapshot_cadence", "must be >= 0");

  // Fail early on a malformed tau_source.
  DomainGeometry g = build_geometry(c.sc_width_cells, c.blanket_cells,
                                    c.period_cells, c.h_x, c.h_y);
  (void)params_from(c, g);
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  out << "sc_width_cells = " << c.sc_width_cells << "\n";
  out << "blanket_cells = " << c.blanket_cells << "\n";
  out << "period_cells = " << c.period_cells << "\n";
  out << "h_x = " << fmt_real(c.h_x) << "\n";
  out << "h_y = " << fmt_real(c.h_y) << "\n";
  out << "kappa = " << fmt_real(c.kappa) << "\n";
  out << "sigma = " << fmt_real(c.sigma) << "\n";
  out << "h_left = " << fmt_real(c.h_left) << "\n";
  out << "h_right = " << fmt_real(c.h_right) << "\n";
  out << "tau_source = " << c.tau_source << "\n";
  out << "algorithm = " << to_string(c.algorithm) << "\n";
  out << "dt = " << fmt_real(c.dt) << "\n";
  out << "t_max = " << fmt_real(c.t_max) << "\n";
  out << "seed = " << c.seed << "\n";
  out << "noise_amp = " << fmt_real(c.noise_amp) << "\n";
  out << "check_interval = " << c.check_interval << "\n";
  out << "position_tolerance = " << fmt_real(c.position_tolerance) << "\n";
  out << "consecutive_passes = " << c.consecutive_passes << "\n";
  if (!c.output_dir.empty()) out << "output_dir = " << c.output_dir << "\n";
  out << "snapshot_cadence = " << c.snapshot_cadence << "\n";
  return out.str();
}

void save_config(const RunConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << format_config(config);
  if (!out) throw ConfigError("failed writing config file: " + path);
}

RunConfig preset(const std::string& name, StepperKind kind) {
  RunConfig c;
  c.algorithm = kind;
  if (name == "paper-benchmark") {
    c.sc_width_cells = 256;
    c.blanket_cells = 4;
    c.period_cells = 384;
    c.h_x = c.h_y = 0.5;
    c.kappa = 16;
    c.sigma = 1;
    c.h_left = c.h_right = 0.5;
    switch (kind) {
      case StepperKind::ExplicitI: c.dt = 0.0025; break;
      case StepperKind::SemiImplicitII: c.dt = 0.05; break;
      case StepperKind::ImplicitIII: c.dt = 0.10; break;
      case StepperKind::FullyImplicitIV: c.dt = 0.19; break;
    }
    c.t_max = 25000;
    c.check_interval = 1000;
    c.seed = 1234;
    return c;
  }
  if (name == "desk") {
    c.sc_width_cells = 56;
    c.blanket_cells = 4;
    c.period_cells = 96;
    c.h_x = c.h_y = 0.5;
    c.kappa = 4;
    c.sigma = 0.25;
    c.h_left = c.h_right = 0.5;
    switch (kind) {
      case StepperKind::ExplicitI: c.dt = 0.0075; break;
      case StepperKind::SemiImplicitII: c.dt = 0.025; break;
      case StepperKind::ImplicitIII: c.dt = 0.05; break;
      case StepperKind::FullyImplicitIV: c.dt = 0.08; break;
    }
    c.t_max = 20000;
    c.check_interval = 200;
    c.seed = 1234;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

DomainGeometry geometry_from(const RunConfig& c) {
  return build_geometry(c.sc_width_cells, c.blanket_cells, c.period_cells,
                        c.h_x, c.h_y);
}

PhysicsParams params_from(const RunConfig& c, const DomainGeometry& geom) {
  PhysicsParams p;
  p.kappa = c.kappa;
  p.sigma = c.sigma;
  p.h_left = Eigen::ArrayXd::Constant(geom.cols(), c.h_left);
  p.h_right = Eigen::ArrayXd::Constant(geom.cols(), c.h_right);
  p.tau = RealField::Ones(geom.rows(), geom.cols());

  // tau_source grammar: "uniform:<v>" or "disk:<cx>,<cy>,<radius>,<v>".
  const std::string& src = c.tau_source;
  const std::size_t colon = src.find(':');
  const std::string head = colon == std::string::npos ? src : src.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : src.substr(colon + 1);
  if (head == "uniform") {
    const Real v = parse_real("tau_source", args);
    p.tau.setConstant(v);
  } else if (head == "disk") {
    std::vector<Real> vals;
    std::string piece;
    std::istringstream as(args);
    while (std::getline(as, piece, ',')) {
      vals.push_back(parse_real("tau_source", trim(piece)));
    }
    if (vals.size() != 4) {
      throw ConfigError("tau_source disk needs cx,cy,radius,value");
    }
    const Real cx = vals[0], cy = vals[1], radius = vals[2], v = vals[3];
    for (int j = 1; j <= geom.n_y; ++j) {
      for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
        const Real dx = geom.x(i) - cx;
        const Real dy = geom.y(j) - cy;
        if (dx * dx + dy * dy <= radius * radius) p.tau(i, j) = v;
      }
    }
  } else {
    throw ConfigError("unknown tau_source '" + src + "'");
  }
  sync_ghost_rows(p.tau, geom);
  try {
    validate_params(p, geom);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

FieldState initial_state_from(const RunConfig& c, const DomainGeometry& geom,
                              const PhysicsParams& params) {
  return init_meissner_state(geom, params, c.seed, c.noise_amp);
}

}  // namespace tdgl
