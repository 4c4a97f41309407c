#include "tdgl/geometry.hpp"

#include <stdexcept>
#include <string>

namespace tdgl {

DomainGeometry build_geometry(int sc_width_cells, int blanket_cells,
                              int period_cells, Real h_x, Real h_y) {
  if (sc_width_cells < 1) {
    throw std::invalid_argument("build_geometry: sc_width_cells must be >= 1, got " +
                                std::to_string(sc_width_cells));
  }
  if (blanket_cells < 1) {
    throw std::invalid_argument("build_geometry: blanket_cells must be >= 1, got " +
                                std::to_string(blanket_cells));
  }
  if (period_cells < 1) {
    throw std::invalid_argument("build_geometry: period_cells must be >= 1, got " +
                                std::to_string(period_cells));
  }
  if (!(h_x > 0) || !(h_y > 0)) {
    throw std::invalid_argument("build_geometry: mesh widths must be positive");
  }

  DomainGeometry g;
  g.n_x = sc_width_cells + 2 * blanket_cells;
  g.n_y = period_cells;
  g.n_sx = blanket_cells + 1;
  g.n_ex = g.n_x - blanket_cells;
  g.h_x = h_x;
  g.h_y = h_y;
  return g;
}

}  // namespace tdgl
