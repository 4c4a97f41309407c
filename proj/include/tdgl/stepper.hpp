#ifndef TDGL_STEPPER_HPP
#define TDGL_STEPPER_HPP

#include <stdexcept>
#include <string>

#include "tdgl/fields.hpp"
#include "tdgl/geometry.hpp"
#include "tdgl/operators.hpp"
#include "tdgl/tridiag.hpp"
#include "tdgl/types.hpp"

namespace tdgl {

// The four time integration schemes, ordered from fully explicit to fully
// implicit treatment of the order-parameter equation.
enum class StepperKind { ExplicitI, SemiImplicitII, ImplicitIII, FullyImplicitIV };

const char* to_string(StepperKind kind);
StepperKind stepper_kind_from_string(const std::string& name);

// Raised when a step produces non-finite values or the order parameter
// leaves the physical range (arithmetic divergence above the stability
// limit).
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(Real t, const std::string& what)
      : std::runtime_error(what), t_(t) {}
  Real t() const { return t_; }

 private:
  Real t_;
};

// Closed-form relaxation of the order-parameter magnitude: phase preserved,
// |S(psi)|^2 follows the logistic flow x' = 2 x (tau - x) over dt,
//   S(psi) = sqrt(tau) psi / sqrt(|psi|^2 + (tau - |psi|^2) exp(-2 tau dt)).
Complex semigroup_map(Complex psi, Real tau, Real dt);

// Array form over the superconducting vertices. Throws on dt < 0 or on
// nonpositive tau entries.
ComplexField semigroup_S(const ComplexField& psi, const RealField& tau,
                         Real dt, const DomainGeometry& geom);

// One uniform stepping interface over the four algorithms.
//
//   I    forward Euler for psi and A.
//   II   forward Euler for psi; D_yy/D_xx treated implicitly in the A
//        equations, giving per-line constant-coefficient tridiagonal systems
//        that are factored once and reused.
//   III  A as in II, then the psi correction phi = psi^{n+1} - psi^n from
//        the factored operator (I - dt L_xx)(I - dt L_yy) via an x sweep of
//        tridiagonal solves (reduced interface conditions folded into the
//        edge rows with the updated links) and a y sweep of cyclic solves.
//   IV   as III with the dt N(psi^n) term of the right-hand side replaced by
//        S(psi^n) - psi^n.
//
// A stepper owns its workspace; the cached A-system factorizations are keyed
// on (dt, sigma, mesh) and rebuilt lazily after set_dt.
class Stepper {
 public:
  Stepper(StepperKind kind, const DomainGeometry& geom,
          const PhysicsParams& params, Real dt);

  // Advances the state by one step; throws DivergenceError on blow-up.
  void step(FieldState& state);

  StepperKind kind() const { return kind_; }
  Real dt() const { return dt_; }
  void set_dt(Real dt);

  // Introspection used by tests.
  bool has_cached_factors() const { return factors_valid_; }
  const TridiagFactor<Real>& ax_factor() const { return ax_factor_; }
  const TridiagFactor<Real>& ay_factor() const { return ay_factor_; }

 private:
  void rebuild_factors();
  void update_A_semi_implicit(FieldState& state, const SupercurrentField& j,
                              const RealField& cc_x, const RealField& cc_y);
  void solve_psi_correction(FieldState& state, const LinkVariables& u_old,
                            const LinkVariables& u_new, const ComplexField& f);
  void check_divergence(const FieldState& state) const;

  StepperKind kind_;
  DomainGeometry geom_;
  PhysicsParams params_;
  Real dt_;
  Real max_psi_norm_;
  Real max_a_norm_;
  bool factors_valid_ = false;

  // Constant-coefficient A-system factorizations (algorithms II-IV).
  TridiagFactor<Real> ax_factor_;  // cyclic in j, one per x-edge line
  TridiagFactor<Real> ay_factor_;  // tridiagonal in i, one per row

  // Scratch reused across steps.
  Eigen::VectorXd rhs_real_;
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> rhs_complex_;
  TridiagonalSystem<Complex> sweep_sys_;
  TridiagFactor<Complex> sweep_factor_;
  ComplexField varphi_;
};

Stepper make_stepper(StepperKind kind, const DomainGeometry& geom,
                     const PhysicsParams& params, Real dt);

}  // namespace tdgl

#endif  // TDGL_STEPPER_HPP
