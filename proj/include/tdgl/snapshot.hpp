#ifndef TDGL_SNAPSHOT_HPP
#define TDGL_SNAPSHOT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "tdgl/config.hpp"
#include "tdgl/fields.hpp"

namespace tdgl {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary checkpoint layout:
//   magic "TDGL1\n"
//   uint64 little-endian header byte count
//   text header: the config key = value lines plus "t = <time>"
//   psi (interleaved re/im), A_x, A_y as little-endian doubles, each array
//   row-major over the full storage box (i = 0..n_x, j = 0..n_y+1).
// Round-trips are bit-exact.
void write_snapshot(const FieldState& state, const RunConfig& config,
                    const std::string& path);

struct Snapshot {
  FieldState state;
  RunConfig config;
};

// Throws IoError on a bad magic, truncation, or header geometry that does
// not match the array payload.
Snapshot read_snapshot(const std::string& path);

// One monitoring record per equilibrium check.
struct TimeseriesRecord {
  long step = 0;
  Real t = 0;
  Real energy = 0;
  int vortex_count = 0;
  Real max_position_delta = 0;
};

// CSV with header step,t,energy,vortex_count,max_position_delta and
// 17-significant-digit values; byte-deterministic for identical records.
void emit_timeseries(const std::vector<TimeseriesRecord>& records,
                     const std::string& path);

}  // namespace tdgl

#endif  // TDGL_SNAPSHOT_HPP
