#include "tdgl/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tdgl {

namespace {

constexpr char kMagic[] = "TDGL1\n";
constexpr std::size_t kMagicLen = 6;

static_assert(std::endian::native == std::endian::little,
              "snapshot payload assumes a little-endian host");

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
  char buf[8];
  in.read(buf, 8);
  if (in.gcount() != 8) throw IoError("snapshot truncated in header length");
  std::uint64_t v;
  std::memcpy(&v, buf, 8);
  return v;
}

void write_doubles(std::ostream& out, const Real* data, std::size_t count) {
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * sizeof(Real)));
}

void read_doubles(std::istream& in, Real* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data),
          static_cast<std::streamsize>(count * sizeof(Real)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(Real)) {
    throw IoError("snapshot truncated in field payload");
  }
}

std::string fmt_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_snapshot(const FieldState& state, const RunConfig& config,
                    const std::string& path) {
  const DomainGeometry geom = geometry_from(config);
  if (state.psi.rows() != geom.rows() || state.psi.cols() != geom.cols()) {
    throw IoError("snapshot: state shape does not match config geometry");
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open snapshot for writing: " + path);

  std::string header = format_config(config);
  header += "t = " + fmt_real(state.t) + "\n";

  out.write(kMagic, kMagicLen);
  put_u64(out, header.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));

  const int rows = geom.rows();
  const int cols = geom.cols();
  std::vector<Real> row(2 * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      row[2 * j] = state.psi(i, j).real();
      row[2 * j + 1] = state.psi(i, j).imag();
    }
    write_doubles(out, row.data(), row.size());
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) row[j] = state.a_x(i, j);
    write_doubles(out, row.data(), static_cast<std::size_t>(cols));
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) row[j] = state.a_y(i, j);
    write_doubles(out, row.data(), static_cast<std::size_t>(cols));
  }
  if (!out) throw IoError("failed writing snapshot: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot: " + path);

  char magic[kMagicLen];
  in.read(magic, kMagicLen);
  if (in.gcount() != static_cast<std::streamsize>(kMagicLen) ||
      std::memcmp(magic, kMagic, kMagicLen) != 0) {
    throw IoError("snapshot magic mismatch");
  }

  const std::uint64_t header_len = get_u64(in);
  if (header_len > (1ull << 20)) throw IoError("snapshot header length corrupt");
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (static_cast<std::uint64_t>(in.gcount()) != header_len) {
    throw IoError("snapshot truncated in header");
  }

  // Split off the trailing time entry; the rest is a config document.
  Real t = 0;
  bool have_t = false;
  std::string config_text;
  {
    std::istringstream hs(header);
    std::string line;
    while (std::getline(hs, line)) {
      std::istringstream ls(line);
      std::string key, eq;
      if (ls >> key >> eq && key == "t" && eq == "=") {
        std::string value;
        ls >> value;
        t = std::strtod(value.c_str(), nullptr);
        have_t = true;
      } else {
        config_text += line;
        config_text += '\n';
      }
    }
  }
  if (!have_t) throw IoError("snapshot header missing time entry");

  Snapshot snap;
  try {
    snap.config = parse_config(config_text);
  } catch (const ConfigError& e) {
    throw IoError(std::string("snapshot header invalid: ") + e.what());
  }
  const DomainGeometry geom = geometry_from(snap.config);
  snap.state = make_field_state(geom);
  snap.state.t = t;

  const int rows = geom.rows();
  const int cols = geom.cols();
  std::vector<Real> row(2 * cols);
  for (int i = 0; i < rows; ++i) {
    read_doubles(in, row.data(), row.size());
    for (int j = 0; j < cols; ++j) {
      snap.state.psi(i, j) = Complex(row[2 * j], row[2 * j + 1]);
    }
  }
  for (int i = 0; i < rows; ++i) {
    read_doubles(in, row.data(), static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) snap.state.a_x(i, j) = row[j];
  }
  for (int i = 0; i < rows; ++i) {
    read_doubles(in, row.data(), static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) snap.state.a_y(i, j) = row[j];
  }
  char extra;
  if (in.read(&extra, 1); in.gcount() != 0) {
    throw IoError("snapshot has trailing bytes beyond the field payload");
  }
  return snap;
}

void emit_timeseries(const std::vector<TimeseriesRecord>& records,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open timeseries for writing: " + path);
  out << "step,t,energy,vortex_count,max_position_delta\n";
  char buf[160];
  for (const TimeseriesRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%d,%.17g\n", r.step, r.t,
                  r.energy, r.vortex_count, r.max_position_delta);
    out << buf;
  }
  if (!out) throw IoError("failed writing timeseries: " + path);
}

}  // namespace tdgl
