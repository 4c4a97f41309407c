#include "tdgl/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace tdgl {

FieldState make_field_state(const DomainGeometry& geom) {
  FieldState s;
  s.psi = geom.make_complex_field();
  s.a_x = geom.make_real_field();
  s.a_y = geom.make_real_field();
  s.t = 0;
  return s;
}

PhysicsParams make_params(const DomainGeometry& geom, Real kappa, Real sigma,
                          Real h_applied) {
  PhysicsParams p;
  p.kappa = kappa;
  p.sigma = sigma;
  p.tau = RealField::Ones(geom.rows(), geom.cols());
  p.h_left = Eigen::ArrayXd::Constant(geom.cols(), h_applied);
  p.h_right = Eigen::ArrayXd::Constant(geom.cols(), h_applied);
  validate_params(p, geom);
  return p;
}

void validate_params(const PhysicsParams& params, const DomainGeometry& geom) {
  if (!(params.kappa > 0)) {
    throw std::invalid_argument("params: kappa must be positive");
  }
  if (!(params.sigma > 0)) {
    throw std::invalid_argument("params: sigma must be positive");
  }
  if (params.tau.rows() != geom.rows() || params.tau.cols() != geom.cols()) {
    throw std::invalid_argument("params: tau shape does not match geometry");
  }
  if (params.h_left.size() != geom.cols() ||
      params.h_right.size() != geom.cols()) {
    throw std::invalid_argument("params: applied field length must be n_y + 2");
  }
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      const Real t = params.tau(i, j);
      if (!(t > 0) || t > 1) {
        throw std::invalid_argument("params: tau must satisfy 0 < tau <= 1");
      }
    }
  }
}

namespace {

template <typename Field>
void copy_period_into_ghosts(Field& f, int n_y) {
  f.col(0) = f.col(n_y);
  f.col(n_y + 1) = f.col(1);
}

}  // namespace

void sync_ghost_rows(RealField& f, const DomainGeometry& geom) {
  copy_period_into_ghosts(f, geom.n_y);
}

void sync_ghost_rows(ComplexField& f, const DomainGeometry& geom) {
  copy_period_into_ghosts(f, geom.n_y);
}

void sync_state(FieldState& state, const DomainGeometry& geom, Real kappa) {
  sync_ghost_rows(state.a_x, geom);
  sync_ghost_rows(state.a_y, geom);

  // Interface ghost columns from the two interface edge links.
  const int sx = geom.n_sx;
  const int ex = geom.n_ex;
  const Real cx = geom.h_x / kappa;
  for (int j = 1; j <= geom.n_y; ++j) {
    const Complex u_left = std::polar(Real(1), -cx * state.a_x(sx - 1, j));
    const Complex u_right = std::polar(Real(1), -cx * state.a_x(ex, j));
    state.psi(sx - 1, j) = u_left * state.psi(sx, j);
    state.psi(ex + 1, j) = std::conj(u_right) * state.psi(ex, j);
  }
  sync_ghost_rows(state.psi, geom);
}

FieldState init_meissner_state(const DomainGeometry& geom,
                               const PhysicsParams& params, std::uint64_t seed,
                               Real noise_amp) {
  if (noise_amp < 0) {
    throw std::invalid_argument("init_meissner_state: noise_amp must be >= 0");
  }
  validate_params(params, geom);

  FieldState s = make_field_state(geom);
  SplitMix64 rng(seed);
  constexpr Real two_pi = 6.283185307179586476925286766559;
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      const Real r = noise_amp * std::sqrt(rng.next_real());
      const Real theta = two_pi * rng.next_real();
      s.psi(i, j) = std::sqrt(params.tau(i, j)) + std::polar(r, theta);
    }
  }
  sync_state(s, geom, params.kappa);
  return s;
}

FieldState gauge_transform(const FieldState& state, const GaugeFunction& chi,
                           const DomainGeometry& geom, Real kappa) {
  FieldState out = state;
  RealField c = chi.chi;
  sync_ghost_rows(c, geom);

  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      out.psi(i, j) = state.psi(i, j) * std::polar(Real(1), c(i, j));
    }
  }
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = 1; i <= geom.n_x - 1; ++i) {
      out.a_x(i, j) = state.a_x(i, j) + kappa * (c(i + 1, j) - c(i, j)) / geom.h_x;
    }
    for (int i = 1; i <= geom.n_x; ++i) {
      out.a_y(i, j) = state.a_y(i, j) + kappa * (c(i, j + 1) - c(i, j)) / geom.h_y;
    }
  }
  sync_state(out, geom, kappa);
  return out;
}

}  // namespace tdgl
