#include "tdgl/operators.hpp"

#include <cmath>

namespace tdgl {

LinkVariables link_variables(const RealField& a_x, const RealField& a_y,
                             const DomainGeometry& geom, Real kappa) {
  const Real cx = geom.h_x / kappa;
  const Real cy = geom.h_y / kappa;
  LinkVariables u;
  u.u_x = a_x.unaryExpr(
      [cx](Real a) { return std::polar(Real(1), -cx * a); });
  u.u_y = a_y.unaryExpr(
      [cy](Real a) { return std::polar(Real(1), -cy * a); });
  return u;
}

SupercurrentField supercurrent(const ComplexField& psi, const LinkVariables& u,
                               const DomainGeometry& geom, Real kappa) {
  SupercurrentField j;
  j.j_x = geom.make_real_field();
  j.j_y = geom.make_real_field();
  const Real fx = Real(1) / (kappa * geom.h_x);
  const Real fy = Real(1) / (kappa * geom.h_y);
  for (int jj = 1; jj <= geom.n_y; ++jj) {
    for (int i = geom.n_sx - 1; i <= geom.n_ex; ++i) {
      j.j_x(i, jj) =
          fx * std::imag(std::conj(psi(i, jj)) * u.u_x(i, jj) * psi(i + 1, jj));
    }
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      j.j_y(i, jj) =
          fy * std::imag(std::conj(psi(i, jj)) * u.u_y(i, jj) * psi(i, jj + 1));
    }
  }
  return j;
}

ComplexField apply_Lxx(const ComplexField& psi, const ComplexField& u_x,
                       const DomainGeometry& geom) {
  ComplexField out = geom.make_complex_field();
  const Real f = Real(1) / (geom.h_x * geom.h_x);
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      out(i, j) = f * (u_x(i, j) * psi(i + 1, j) - Real(2) * psi(i, j) +
                       std::conj(u_x(i - 1, j)) * psi(i - 1, j));
    }
  }
  return out;
}

ComplexField apply_Lyy(const ComplexField& psi, const ComplexField& u_y,
                       const DomainGeometry& geom) {
  ComplexField out = geom.make_complex_field();
  const Real f = Real(1) / (geom.h_y * geom.h_y);
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      out(i, j) = f * (u_y(i, j) * psi(i, j + 1) - Real(2) * psi(i, j) +
                       std::conj(u_y(i, j - 1)) * psi(i, j - 1));
    }
  }
  return out;
}

ComplexField nonlinear_N(const ComplexField& psi, const RealField& tau,
                         const DomainGeometry& geom) {
  ComplexField out = geom.make_complex_field();
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      const Complex p = psi(i, j);
      out(i, j) = (tau(i, j) - std::norm(p)) * p;
    }
  }
  return out;
}

void apply_interface(ComplexField& psi, const ComplexField& u_x,
                     const DomainGeometry& geom) {
  const int sx = geom.n_sx;
  const int ex = geom.n_ex;
  for (int j = 1; j <= geom.n_y; ++j) {
    psi(sx - 1, j) = u_x(sx - 1, j) * psi(sx, j);
    psi(ex + 1, j) = std::conj(u_x(ex, j)) * psi(ex, j);
  }
}

void apply_field_bc(MagneticField& b, const Eigen::ArrayXd& h_left,
                    const Eigen::ArrayXd& h_right, const DomainGeometry& geom) {
  for (int j = 0; j <= geom.n_y; ++j) {
    b.b(0, j) = h_left(j);
    b.b(geom.n_x, j) = h_right(j);
  }
}

MagneticField discrete_B(const RealField& a_x, const RealField& a_y,
                         const DomainGeometry& geom,
                         const Eigen::ArrayXd& h_left,
                         const Eigen::ArrayXd& h_right) {
  MagneticField b;
  b.b = geom.make_real_field();
  // Includes the ghost cell row j = 0; its value matches j = n_y exactly
  // because the A ghosts are bit copies of the period.
  for (int j = 0; j <= geom.n_y; ++j) {
    for (int i = 1; i <= geom.n_x - 1; ++i) {
      b.b(i, j) = (a_y(i + 1, j) - a_y(i, j)) / geom.h_x -
                  (a_x(i, j + 1) - a_x(i, j)) / geom.h_y;
    }
  }
  apply_field_bc(b, h_left, h_right, geom);
  return b;
}

std::pair<RealField, RealField> apply_curl_curl(const RealField& a_x,
                                                const RealField& a_y,
                                                const DomainGeometry& geom,
                                                const Eigen::ArrayXd& h_left,
                                                const Eigen::ArrayXd& h_right) {
  const MagneticField b = discrete_B(a_x, a_y, geom, h_left, h_right);
  RealField cc_x = geom.make_real_field();
  RealField cc_y = geom.make_real_field();
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = 1; i <= geom.n_x - 1; ++i) {
      cc_x(i, j) = -(b.b(i, j) - b.b(i, j - 1)) / geom.h_y;
    }
    for (int i = 1; i <= geom.n_x; ++i) {
      cc_y(i, j) = (b.b(i, j) - b.b(i - 1, j)) / geom.h_x;
    }
  }
  return {std::move(cc_x), std::move(cc_y)};
}

Real discrete_energy(const FieldState& state, const PhysicsParams& params,
                     const DomainGeometry& geom) {
  const LinkVariables u = link_variables(state.a_x, state.a_y, geom, params.kappa);
  const MagneticField b =
      discrete_B(state.a_x, state.a_y, geom, params.h_left, params.h_right);

  const Real fx = Real(1) / (geom.h_x * geom.h_x);
  const Real fy = Real(1) / (geom.h_y * geom.h_y);
  Real sum = 0;
  for (int j = 1; j <= geom.n_y; ++j) {
    // Gauged gradient, x edges touching the superconductor. The two
    // interface edges contribute exactly zero once ghosts are synchronized.
    for (int i = geom.n_sx - 1; i <= geom.n_ex; ++i) {
      sum += fx * std::norm(u.u_x(i, j) * state.psi(i + 1, j) - state.psi(i, j));
    }
    // Gauged gradient, y edges inside the superconductor (one period).
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      sum += fy * std::norm(u.u_y(i, j) * state.psi(i, j + 1) - state.psi(i, j));
    }
    // Condensation term on superconducting vertices.
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      const Real d = std::norm(state.psi(i, j));
      sum += -params.tau(i, j) * d + Real(0.5) * d * d;
    }
    // Field term on cells; the boundary cells are half inside the domain.
    sum += Real(0.5) * b.b(0, j) * b.b(0, j);
    for (int i = 1; i <= geom.n_x - 1; ++i) {
      sum += b.b(i, j) * b.b(i, j);
    }
    sum += Real(0.5) * b.b(geom.n_x, j) * b.b(geom.n_x, j);
  }
  return sum * geom.h_x * geom.h_y;
}

}  // namespace tdgl
