#ifndef TDGL_FIELDS_HPP
#define TDGL_FIELDS_HPP

#include <cstdint>

#include "tdgl/geometry.hpp"
#include "tdgl/types.hpp"

namespace tdgl {

// Order parameter and vector potential. psi lives on the superconducting
// vertices plus one interface ghost column on each side (i = n_sx - 1 and
// i = n_ex + 1); entries outside that set are stored but never read.
// Time t is measured in units of xi^2 / D.
struct FieldState {
  ComplexField psi;
  RealField a_x;
  RealField a_y;
  Real t = 0;
};

FieldState make_field_state(const DomainGeometry& geom);

// kappa: Ginzburg-Landau parameter, sigma: dimensionless resistivity,
// tau: condensation coefficient over the superconductor (tau < 1 marks a
// defect), h_left/h_right: applied field per period row j = 1..n_y in units
// of H_c sqrt(2), stored with periodic ghost entries.
struct PhysicsParams {
  Real kappa = 0;
  Real sigma = 1;
  RealField tau;
  Eigen::ArrayXd h_left;
  Eigen::ArrayXd h_right;
};

// Uniform tau = 1 and a scalar applied field broadcast over j.
PhysicsParams make_params(const DomainGeometry& geom, Real kappa, Real sigma,
                          Real h_applied);

// Throws std::invalid_argument if kappa/sigma are nonpositive, tau violates
// 0 < tau <= 1 on the superconductor, or array shapes disagree with geom.
void validate_params(const PhysicsParams& params, const DomainGeometry& geom);

// Real gauge scalar chi on vertices, periodic in j.
struct GaugeFunction {
  RealField chi;
};

// Deterministic 64-bit generator used for the initial-state perturbation.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  Real next_real() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }
};

// Copies one period into the ghost rows: row j = 0 mirrors j = n_y and
// j = n_y + 1 mirrors j = 1. Idempotent.
void sync_ghost_rows(RealField& f, const DomainGeometry& geom);
void sync_ghost_rows(ComplexField& f, const DomainGeometry& geom);

// Full ghost refresh for a state: periodic rows for psi/A and the interface
// ghost columns of psi, psi_{n_sx-1,j} = U_x;n_sx-1,j psi_{n_sx,j} and
// psi_{n_ex+1,j} = conj(U_x;n_ex,j) psi_{n_ex,j}, with U derived from the
// state's own A. Idempotent.
void sync_state(FieldState& state, const DomainGeometry& geom, Real kappa);

// Meissner start: A = 0, psi = sqrt(tau) plus a complex perturbation of
// magnitude <= noise_amp drawn uniformly from the disk with a SplitMix64
// stream seeded by `seed`; t = 0.
FieldState init_meissner_state(const DomainGeometry& geom,
                               const PhysicsParams& params, std::uint64_t seed,
                               Real noise_amp);

// Discrete gauge transformation
//   psi   -> psi * exp(i chi)
//   A_x   -> A_x + kappa (chi_{i+1,j} - chi_{i,j}) / h_x
//   A_y   -> A_y + kappa (chi_{i,j+1} - chi_{i,j}) / h_y
// using the discrete gradient so the link-variable products transform
// exactly. chi must be periodic in j.
FieldState gauge_transform(const FieldState& state, const GaugeFunction& chi,
                           const DomainGeometry& geom, Real kappa);

}  // namespace tdgl

#endif  // TDGL_FIELDS_HPP
