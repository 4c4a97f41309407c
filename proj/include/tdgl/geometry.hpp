#ifndef TDGL_GEOMETRY_HPP
#define TDGL_GEOMETRY_HPP

#include "tdgl/types.hpp"

namespace tdgl {

// Staggered grid for a superconducting strip embedded in an insulating
// blanket, bounded in x and periodic in y.
//
// Vertices carry i = 1..n_x; the outer surfaces pass through x_0 + h_x/2 and
// x_{n_x} + h_x/2. The superconducting columns are i = n_sx..n_ex, the
// blanket columns i = 1..n_sx-1 and i = n_ex+1..n_x. One y period is
// j = 1..n_y with ghost rows j = 0 and j = n_y + 1.
//
// Edge and cell placement:
//   A_x, U_x, J_x   x-edge midpoints (x_i + h_x/2, y_j),      i = 1..n_x-1
//   A_y, U_y, J_y   y-edge midpoints (x_i, y_j + h_y/2),      i = 1..n_x
//   B               cell centers (x_i + h_x/2, y_j + h_y/2),  i = 0..n_x
// where the boundary cells i = 0 and i = n_x hold the applied field.
struct DomainGeometry {
  int n_x = 0;   // last vertex index in x (vertices 1..n_x carry data)
  int n_y = 0;   // interior vertex count per y period
  int n_sx = 0;  // first superconducting column
  int n_ex = 0;  // last superconducting column
  Real h_x = 0;
  Real h_y = 0;

  int rows() const { return n_x + 1; }
  int cols() const { return n_y + 2; }

  int sc_columns() const { return n_ex - n_sx + 1; }
  bool in_sc(int i, int j) const {
    return i >= n_sx && i <= n_ex && j >= 1 && j <= n_y;
  }
  bool in_blanket(int i, int j) const {
    return i >= 1 && i <= n_x && j >= 1 && j <= n_y && !(i >= n_sx && i <= n_ex);
  }

  Real x(int i) const { return h_x * i; }
  Real y(int j) const { return h_y * j; }

  Real period_length() const { return h_y * n_y; }
  Real sc_width() const { return h_x * sc_columns(); }
  Real total_width() const { return h_x * n_x; }
  Real sc_area() const { return sc_width() * period_length(); }
  Real total_area() const { return total_width() * period_length(); }

  RealField make_real_field() const { return RealField::Zero(rows(), cols()); }
  ComplexField make_complex_field() const {
    return ComplexField::Zero(rows(), cols());
  }
};

// Builds the domain from cell counts: sc_width_cells superconducting cells
// flanked by blanket_cells insulating cells on each side, period_cells cells
// along one y period. Throws std::invalid_argument on nonpositive counts or
// mesh widths.
DomainGeometry build_geometry(int sc_width_cells, int blanket_cells,
                              int period_cells, Real h_x, Real h_y);

}  // namespace tdgl

#endif  // TDGL_GEOMETRY_HPP
