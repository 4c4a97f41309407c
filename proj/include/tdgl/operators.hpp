#ifndef TDGL_OPERATORS_HPP
#define TDGL_OPERATORS_HPP

#include <utility>

#include "tdgl/fields.hpp"
#include "tdgl/geometry.hpp"
#include "tdgl/types.hpp"

namespace tdgl {

// Unit-modulus edge factors U_x = exp(-i h_x A_x / kappa) on x-edges and
// U_y = exp(-i h_y A_y / kappa) on y-edges.
struct LinkVariables {
  ComplexField u_x;
  ComplexField u_y;
};

// Gauge-invariant supercurrent on the same edges as A; identically zero on
// edges not adjacent to two superconducting (or interface ghost) vertices.
struct SupercurrentField {
  RealField j_x;
  RealField j_y;
};

// Induced field B at cell centers i = 0..n_x; the boundary cells i = 0 and
// i = n_x carry the applied field.
struct MagneticField {
  RealField b;
};

LinkVariables link_variables(const RealField& a_x, const RealField& a_y,
                             const DomainGeometry& geom, Real kappa);

// J_x;i,j = Im[conj(psi_{i,j}) U_x;i,j psi_{i+1,j}] / (kappa h_x) on x-edges
// i = n_sx-1..n_ex and the y analog on i = n_sx..n_ex; zero elsewhere.
// Requires synchronized ghosts.
SupercurrentField supercurrent(const ComplexField& psi, const LinkVariables& u,
                               const DomainGeometry& geom, Real kappa);

// Gauged second differences on the superconducting columns,
//   (L_xx psi)_i = [U_x;i psi_{i+1} - 2 psi_i + conj(U_x;i-1) psi_{i-1}] / h_x^2,
// and the y analog. Interface ghost columns (x) and periodic ghost rows (y)
// must be populated; the result is meaningful on Sc only.
ComplexField apply_Lxx(const ComplexField& psi, const ComplexField& u_x,
                       const DomainGeometry& geom);
ComplexField apply_Lyy(const ComplexField& psi, const ComplexField& u_y,
                       const DomainGeometry& geom);

// N(psi) = tau psi - |psi|^2 psi on Sc.
ComplexField nonlinear_N(const ComplexField& psi, const RealField& tau,
                         const DomainGeometry& geom);

// Sets the interface ghost columns of psi from the adjacent interior values
// and the interface edge links.
void apply_interface(ComplexField& psi, const ComplexField& u_x,
                     const DomainGeometry& geom);

// Overwrites the boundary cells with the applied field, B_{0,j} = H_L;j and
// B_{n_x,j} = H_R;j.
void apply_field_bc(MagneticField& b, const Eigen::ArrayXd& h_left,
                    const Eigen::ArrayXd& h_right, const DomainGeometry& geom);

// Discrete curl of A on cells i = 1..n_x-1, j = 0..n_y, with the boundary
// cells filled from the applied field.
MagneticField discrete_B(const RealField& a_x, const RealField& a_y,
                         const DomainGeometry& geom,
                         const Eigen::ArrayXd& h_left,
                         const Eigen::ArrayXd& h_right);

// Minus the discrete curl-curl of A, assembled through B:
//   x component  -(B_{i,j} - B_{i,j-1}) / h_y   on x-edges i = 1..n_x-1
//   y component   (B_{i,j} - B_{i-1,j}) / h_x   on y-edges i = 1..n_x
// which equals (D_yy A_x - D_yx A_y, D_xx A_y - D_xy A_x) with the applied
// field substituted for the missing outside cells at i = 1 and i = n_x.
std::pair<RealField, RealField> apply_curl_curl(const RealField& a_x,
                                                const RealField& a_y,
                                                const DomainGeometry& geom,
                                                const Eigen::ArrayXd& h_left,
                                                const Eigen::ArrayXd& h_right);

// Midpoint-rule energy: gauged gradient terms on edges, condensation terms
// -tau |psi|^2 + |psi|^4 / 2 on superconducting vertices, field term |B|^2 on
// cells (half weight on the boundary cells), each weighted by h_x h_y.
// Fixed summation order; requires synchronized ghosts.
Real discrete_energy(const FieldState& state, const PhysicsParams& params,
                     const DomainGeometry& geom);

}  // namespace tdgl

#endif  // TDGL_OPERATORS_HPP
