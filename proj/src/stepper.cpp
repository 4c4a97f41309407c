#include "tdgl/stepper.hpp"

#include <algorithm>
#include <cmath>

namespace tdgl {

const char* to_string(StepperKind kind) {
  switch (kind) {
    case StepperKind::ExplicitI: return "I";
    case StepperKind::SemiImplicitII: return "II";
    case StepperKind::ImplicitIII: return "III";
    case StepperKind::FullyImplicitIV: return "IV";
  }
  return "?";
}

StepperKind stepper_kind_from_string(const std::string& name) {
  if (name == "I") return StepperKind::ExplicitI;
  if (name == "II") return StepperKind::SemiImplicitII;
  if (name == "III") return StepperKind::ImplicitIII;
  if (name == "IV") return StepperKind::FullyImplicitIV;
  throw std::invalid_argument("unknown algorithm '" + name +
                              "' (expected I, II, III, or IV)");
}

Complex semigroup_map(Complex psi, Real tau, Real dt) {
  const Real x = std::norm(psi);
  const Real denom = x + (tau - x) * std::exp(-2 * tau * dt);
  return std::sqrt(tau) * psi / std::sqrt(denom);
}

ComplexField semigroup_S(const ComplexField& psi, const RealField& tau,
                         Real dt, const DomainGeometry& geom) {
  if (dt < 0) throw std::invalid_argument("semigroup_S: dt must be >= 0");
  ComplexField out = geom.make_complex_field();
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      if (!(tau(i, j) > 0)) {
        throw std::invalid_argument("semigroup_S: tau must be positive");
      }
      out(i, j) = semigroup_map(psi(i, j), tau(i, j), dt);
    }
  }
  return out;
}

Stepper::Stepper(StepperKind kind, const DomainGeometry& geom,
                 const PhysicsParams& params, Real dt)
    : kind_(kind), geom_(geom), params_(params), dt_(dt) {
  if (!(dt > 0)) throw std::invalid_argument("stepper: dt must be positive");
  validate_params(params_, geom_);
  Real tau_max = 0;
  for (int j = 1; j <= geom_.n_y; ++j) {
    for (int i = geom_.n_sx; i <= geom_.n_ex; ++i) {
      tau_max = std::max(tau_max, params_.tau(i, j));
    }
  }
  max_psi_norm_ = 10 * std::max(Real(1), std::sqrt(tau_max));
  // The vector potential of any physical state is O(H * width); a runaway
  // A mode crosses this long before the floats stop being finite.
  Real h_max = 0;
  for (int j = 1; j <= geom_.n_y; ++j) {
    h_max = std::max({h_max, std::abs(params_.h_left(j)),
                      std::abs(params_.h_right(j))});
  }
  max_a_norm_ = 1e4 * std::max(Real(1), h_max * geom_.total_width());
  varphi_ = geom_.make_complex_field();
  if (kind_ != StepperKind::ExplicitI) rebuild_factors();
}

void Stepper::set_dt(Real dt) {
  if (!(dt > 0)) throw std::invalid_argument("stepper: dt must be positive");
  if (dt != dt_) {
    dt_ = dt;
    factors_valid_ = false;
  }
}

void Stepper::rebuild_factors() {
  const Real beta_y = dt_ / (params_.sigma * geom_.h_y * geom_.h_y);
  ax_factor_.compute(TridiagonalSystem<Real>::constant(
      geom_.n_y, -beta_y, 1 + 2 * beta_y, -beta_y, /*periodic=*/true));

  // I - (dt/sigma) D_xx over A_y lines i = 1..n_x. The edge rows come from
  // substituting the applied field for the outside cells, which turns the
  // second difference into a one-sided difference there.
  const Real beta_x = dt_ / (params_.sigma * geom_.h_x * geom_.h_x);
  TridiagonalSystem<Real> sys = TridiagonalSystem<Real>::constant(
      geom_.n_x, -beta_x, 1 + 2 * beta_x, -beta_x, /*periodic=*/false);
  sys.diag(0) = 1 + beta_x;
  sys.diag(geom_.n_x - 1) = 1 + beta_x;
  ay_factor_.compute(sys);

  factors_valid_ = true;
}

void Stepper::check_divergence(const FieldState& state) const {
  Real worst = 0;
  bool finite = true;
  for (int j = 1; j <= geom_.n_y && finite; ++j) {
    for (int i = geom_.n_sx; i <= geom_.n_ex; ++i) {
      const Complex p = state.psi(i, j);
      if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
        finite = false;
        break;
      }
      worst = std::max(worst, std::abs(p));
    }
  }
  Real worst_a = 0;
  if (finite) {
    for (int j = 1; j <= geom_.n_y && finite; ++j) {
      for (int i = 1; i <= geom_.n_x; ++i) {
        if (!std::isfinite(state.a_x(i, j)) || !std::isfinite(state.a_y(i, j))) {
          finite = false;
          break;
        }
        worst_a = std::max({worst_a, std::abs(state.a_x(i, j)),
                            std::abs(state.a_y(i, j))});
      }
    }
  }
  if (!finite || worst > max_psi_norm_ || worst_a > max_a_norm_) {
    throw DivergenceError(state.t, "divergence at t = " + std::to_string(state.t));
  }
}

void Stepper::update_A_semi_implicit(FieldState& state,
                                     const SupercurrentField& j,
                                     const RealField& cc_x,
                                     const RealField& cc_y) {
  if (!factors_valid_) rebuild_factors();
  const Real r = dt_ / params_.sigma;
  const Real fy = Real(1) / (geom_.h_y * geom_.h_y);
  const Real fx = Real(1) / (geom_.h_x * geom_.h_x);
  const int n_x = geom_.n_x;
  const int n_y = geom_.n_y;

  // A_x: one cyclic solve in j per interior x-edge line. The explicit part
  // is the full curl-curl minus the implicit D_yy contribution.
  rhs_real_.resize(n_y);
  for (int i = 1; i <= n_x - 1; ++i) {
    for (int jj = 1; jj <= n_y; ++jj) {
      const Real dyy = fy * (state.a_x(i, jj + 1) - 2 * state.a_x(i, jj) +
                             state.a_x(i, jj - 1));
      rhs_real_(jj - 1) =
          state.a_x(i, jj) + r * (cc_x(i, jj) + j.j_x(i, jj) - dyy);
    }
    ax_factor_.solve_in_place(rhs_real_);
    for (int jj = 1; jj <= n_y; ++jj) state.a_x(i, jj) = rhs_real_(jj - 1);
  }

  // A_y: one tridiagonal solve in i per row, with the one-sided edge rows.
  rhs_real_.resize(n_x);
  for (int jj = 1; jj <= n_y; ++jj) {
    for (int i = 1; i <= n_x; ++i) {
      Real dxx;
      if (i == 1) {
        dxx = fx * (state.a_y(2, jj) - state.a_y(1, jj));
      } else if (i == n_x) {
        dxx = fx * (state.a_y(n_x - 1, jj) - state.a_y(n_x, jj));
      } else {
        dxx = fx * (state.a_y(i + 1, jj) - 2 * state.a_y(i, jj) +
                    state.a_y(i - 1, jj));
      }
      rhs_real_(i - 1) =
          state.a_y(i, jj) + r * (cc_y(i, jj) + j.j_y(i, jj) - dxx);
    }
    ay_factor_.solve_in_place(rhs_real_);
    for (int i = 1; i <= n_x; ++i) state.a_y(i, jj) = rhs_real_(i - 1);
  }
}

void Stepper::solve_psi_correction(FieldState& state,
                                   const LinkVariables& u_old,
                                   const LinkVariables& u_new,
                                   const ComplexField& f) {
  const int sx = geom_.n_sx;
  const int ex = geom_.n_ex;
  const int n_sc = geom_.sc_columns();
  const int n_y = geom_.n_y;
  const Real ax = dt_ / (geom_.h_x * geom_.h_x);
  const Real ay = dt_ / (geom_.h_y * geom_.h_y);

  // x sweep: (I - dt L_xx) varphi = F per row j. The operator uses the old
  // links; the reduced interface conditions phi_ghost = U^{new} phi_interior
  // are folded into the edge rows.
  sweep_sys_.periodic = false;
  sweep_sys_.lower.resize(n_sc);
  sweep_sys_.diag.resize(n_sc);
  sweep_sys_.upper.resize(n_sc);
  rhs_complex_.resize(n_sc);
  for (int jj = 1; jj <= n_y; ++jj) {
    for (int i = sx; i <= ex; ++i) {
      const int k = i - sx;
      sweep_sys_.diag(k) = Real(1) + 2 * ax;
      if (i > sx) sweep_sys_.lower(k) = -ax * std::conj(u_old.u_x(i - 1, jj));
      if (i < ex) sweep_sys_.upper(k) = -ax * u_old.u_x(i, jj);
      rhs_complex_(k) = f(i, jj);
    }
    sweep_sys_.lower(0) = Complex(0);
    sweep_sys_.upper(n_sc - 1) = Complex(0);
    const Complex left_fold =
        std::conj(u_old.u_x(sx - 1, jj)) * u_new.u_x(sx - 1, jj);
    const Complex right_fold =
        u_old.u_x(ex, jj) * std::conj(u_new.u_x(ex, jj));
    if (n_sc == 1) {
      sweep_sys_.diag(0) = Real(1) + ax * (Real(2) - left_fold - right_fold);
    } else {
      sweep_sys_.diag(0) = Real(1) + ax * (Real(2) - left_fold);
      sweep_sys_.diag(n_sc - 1) = Real(1) + ax * (Real(2) - right_fold);
    }
    sweep_factor_.compute(sweep_sys_);
    sweep_factor_.solve_in_place(rhs_complex_);
    for (int i = sx; i <= ex; ++i) varphi_(i, jj) = rhs_complex_(i - sx);
  }

  // y sweep: (I - dt L_yy) phi = varphi per column i, cyclic over the
  // period. The wrap couplings reuse the ghost-row links.
  sweep_sys_.periodic = true;
  sweep_sys_.lower.resize(n_y);
  sweep_sys_.diag.resize(n_y);
  sweep_sys_.upper.resize(n_y);
  rhs_complex_.resize(n_y);
  for (int i = sx; i <= ex; ++i) {
    for (int jj = 1; jj <= n_y; ++jj) {
      const int k = jj - 1;
      sweep_sys_.diag(k) = Real(1) + 2 * ay;
      sweep_sys_.lower(k) = -ay * std::conj(u_old.u_y(i, jj - 1));
      sweep_sys_.upper(k) = -ay * u_old.u_y(i, jj);
      rhs_complex_(k) = varphi_(i, jj);
    }
    sweep_factor_.compute(sweep_sys_);
    sweep_factor_.solve_in_place(rhs_complex_);
    for (int jj = 1; jj <= n_y; ++jj) state.psi(i, jj) += rhs_complex_(jj - 1);
  }
}

void Stepper::step(FieldState& state) {
  sync_state(state, geom_, params_.kappa);

  const LinkVariables u = link_variables(state.a_x, state.a_y, geom_, params_.kappa);
  const SupercurrentField j = supercurrent(state.psi, u, geom_, params_.kappa);
  const auto [cc_x, cc_y] =
      apply_curl_curl(state.a_x, state.a_y, geom_, params_.h_left, params_.h_right);
  const ComplexField lxx = apply_Lxx(state.psi, u.u_x, geom_);
  const ComplexField lyy = apply_Lyy(state.psi, u.u_y, geom_);

  switch (kind_) {
    case StepperKind::ExplicitI:
    case StepperKind::SemiImplicitII: {
      const ComplexField n = nonlinear_N(state.psi, params_.tau, geom_);
      for (int jj = 1; jj <= geom_.n_y; ++jj) {
        for (int i = geom_.n_sx; i <= geom_.n_ex; ++i) {
          state.psi(i, jj) += dt_ * (lxx(i, jj) + lyy(i, jj) + n(i, jj));
        }
      }
      if (kind_ == StepperKind::ExplicitI) {
        const Real r = dt_ / params_.sigma;
        for (int jj = 1; jj <= geom_.n_y; ++jj) {
          for (int i = 1; i <= geom_.n_x - 1; ++i) {
            state.a_x(i, jj) += r * (cc_x(i, jj) + j.j_x(i, jj));
          }
          for (int i = 1; i <= geom_.n_x; ++i) {
            state.a_y(i, jj) += r * (cc_y(i, jj) + j.j_y(i, jj));
          }
        }
      } else {
        update_A_semi_implicit(state, j, cc_x, cc_y);
      }
      break;
    }
    case StepperKind::ImplicitIII:
    case StepperKind::FullyImplicitIV: {
      // A first, so the updated links are available for the reduced
      // interface conditions.
      update_A_semi_implicit(state, j, cc_x, cc_y);
      const LinkVariables u_new =
          link_variables(state.a_x, state.a_y, geom_, params_.kappa);

      ComplexField f = geom_.make_complex_field();
      if (kind_ == StepperKind::ImplicitIII) {
        const ComplexField n = nonlinear_N(state.psi, params_.tau, geom_);
        for (int jj = 1; jj <= geom_.n_y; ++jj) {
          for (int i = geom_.n_sx; i <= geom_.n_ex; ++i) {
            f(i, jj) = dt_ * (lxx(i, jj) + lyy(i, jj) + n(i, jj));
          }
        }
      } else {
        const ComplexField s = semigroup_S(state.psi, params_.tau, dt_, geom_);
        for (int jj = 1; jj <= geom_.n_y; ++jj) {
          for (int i = geom_.n_sx; i <= geom_.n_ex; ++i) {
            f(i, jj) = dt_ * (lxx(i, jj) + lyy(i, jj)) +
                       (s(i, jj) - state.psi(i, jj));
          }
        }
      }
      solve_psi_correction(state, u, u_new, f);
      break;
    }
  }

  state.t += dt_;
  sync_state(state, geom_, params_.kappa);
  check_divergence(state);
}

Stepper make_stepper(StepperKind kind, const DomainGeometry& geom,
                     const PhysicsParams& params, Real dt) {
  return Stepper(kind, geom, params, dt);
}

}  // namespace tdgl
