#ifndef TDGL_TYPES_HPP
#define TDGL_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace tdgl {

using Real = double;
using Complex = std::complex<double>;

// Field arrays are stored on the full index box (n_x + 1) x (n_y + 2):
// rows are the transverse vertex index i = 0..n_x, columns the periodic
// index j = 0..n_y+1 with ghost columns j = 0 and j = n_y + 1.
using RealField = Eigen::ArrayXXd;
using ComplexField = Eigen::ArrayXXcd;
using IntField = Eigen::ArrayXXi;

}  // namespace tdgl

#endif  // TDGL_TYPES_HPP
