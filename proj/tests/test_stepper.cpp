#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support.hpp"
#include "tdgl/stepper.hpp"

using namespace tdgl;
using namespace tdgl_test;

namespace {

constexpr StepperKind kAllKinds[] = {
    StepperKind::ExplicitI, StepperKind::SemiImplicitII,
    StepperKind::ImplicitIII, StepperKind::FullyImplicitIV};

// Cash-Karp embedded RK45 with adaptive steps, for the logistic oracle.
double integrate_logistic(double x0, double tau, double t_end,
                          double tol = 1e-13) {
  const auto f = [tau](double x) { return 2 * x * (tau - x); };
  double x = x0;
  double t = 0;
  if (t_end == 0) return x0;
  double h = std::min(1e-2, t_end);
  while (t < t_end) {
    h = std::min(h, t_end - t);
    const double k1 = f(x);
    const double k2 = f(x + h * k1 / 5);
    const double k3 = f(x + h * (3 * k1 + 9 * k2) / 40);
    const double k4 = f(x + h * (0.3 * k1 - 0.9 * k2 + 1.2 * k3));
    const double k5 =
        f(x + h * (-11.0 / 54 * k1 + 2.5 * k2 - 70.0 / 27 * k3 + 35.0 / 27 * k4));
    const double k6 =
        f(x + h * (1631.0 / 55296 * k1 + 175.0 / 512 * k2 + 575.0 / 13824 * k3 +
                   44275.0 / 110592 * k4 + 253.0 / 4096 * k5));
    const double x5 = x + h * (37.0 / 378 * k1 + 250.0 / 621 * k3 +
                               125.0 / 594 * k4 + 512.0 / 1771 * k6);
    const double x4 = x + h * (2825.0 / 27648 * k1 + 18575.0 / 48384 * k3 +
                               13525.0 / 55296 * k4 + 277.0 / 14336 * k5 +
                               0.25 * k6);
    const double err = std::abs(x5 - x4);
    const double scale = tol * std::max(1.0, std::abs(x));
    if (err <= scale) {
      t += h;
      x = x5;
    }
    const double grow = err > 0 ? 0.9 * std::pow(scale / err, 0.2) : 2.0;
    h *= std::clamp(grow, 0.1, 2.0);
    h = std::max(h, 1e-12);
  }
  return x;
}

DomainGeometry small_geom() { return build_geometry(12, 2, 12, 0.5, 0.5); }

Real max_state_diff(const FieldState& a, const FieldState& b,
                    const DomainGeometry& g) {
  Real m = 0;
  for (int j = 1; j <= g.n_y; ++j) {
    for (int i = g.n_sx; i <= g.n_ex; ++i) {
      m = std::max(m, std::abs(a.psi(i, j) - b.psi(i, j)));
    }
    for (int i = 1; i <= g.n_x - 1; ++i) {
      m = std::max(m, std::abs(a.a_x(i, j) - b.a_x(i, j)));
    }
    for (int i = 1; i <= g.n_x; ++i) {
      m = std::max(m, std::abs(a.a_y(i, j) - b.a_y(i, j)));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("semigroup map: fixed point, zero, and identity limits") {
  CHECK(std::abs(semigroup_map(Complex(0.5, 0), 0.25, 0.7) - Complex(0.5, 0)) <
        1e-15);
  CHECK(semigroup_map(Complex(0, 0), 1.0, 0.3) == Complex(0, 0));
  const Complex z(0.3, -0.4);
  CHECK(std::abs(semigroup_map(z, 0.8, 0.0) - z) < 1e-15);
}

TEST_CASE("semigroup map preserves the phase exactly") {
  const Complex z = std::polar(0.37, 2.1);
  const Complex s = semigroup_map(z, 0.9, 0.45);
  CHECK(std::abs(std::arg(s) - std::arg(z)) < 1e-15);
}

TEST_CASE("semigroup magnitude matches the adaptive logistic oracle") {
  // |S(psi)|^2 solves x' = 2 x (tau - x) from x(0) = |psi|^2.
  const double x0 = 0.25, tau = 1.0, dt = 0.5;
  const Complex s = semigroup_map(Complex(std::sqrt(x0), 0), tau, dt);
  const double oracle = integrate_logistic(x0, tau, dt);
  CHECK(std::abs(std::norm(s) - oracle) < 1e-10);
}

TEST_CASE("(S(psi) - psi)/dt converges to N(psi) at first order") {
  const Complex z = std::polar(0.8, -0.9);
  const double tau = 0.7;
  const Complex n = (tau - std::norm(z)) * z;
  std::vector<double> gaps;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    const Complex approx = (semigroup_map(z, tau, dt) - z) / dt;
    gaps.push_back(std::abs(approx - n));
  }
  CHECK(gaps[0] / gaps[1] == doctest::Approx(2.0).epsilon(0.15));
  CHECK(gaps[1] / gaps[2] == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("semigroup_S validates tau and dt") {
  const DomainGeometry g = small_geom();
  const PhysicsParams p = make_params(g, 2.0, 1.0, 0.0);
  ComplexField psi = g.make_complex_field();
  CHECK_THROWS_AS(semigroup_S(psi, p.tau, -0.1, g), std::invalid_argument);
  RealField bad_tau = p.tau;
  bad_tau(g.n_sx, 1) = 0.0;
  CHECK_THROWS_AS(semigroup_S(psi, bad_tau, 0.1, g), std::invalid_argument);
}

TEST_CASE("uniform Meissner state is a fixed point of all four steppers") {
  const DomainGeometry g = small_geom();
  const PhysicsParams p = make_params(g, 2.0, 1.0, 0.0);
  for (StepperKind kind : kAllKinds) {
    FieldState s = init_meissner_state(g, p, 1, 0.0);
    const FieldState ref = s;
    Stepper stepper = make_stepper(kind, g, p, 0.01);
    for (int n = 0; n < 200; ++n) stepper.step(s);
    CHECK(max_state_diff(s, ref, g) < 1e-13);
  }
}

TEST_CASE("dt = 0 is rejected") {
  const DomainGeometry g = small_geom();
  const PhysicsParams p = make_params(g, 2.0, 1.0, 0.0);
  CHECK_THROWS_AS(make_stepper(StepperKind::ExplicitI, g, p, 0.0),
                  std::invalid_argument);
}

TEST_CASE("semi-implicit minus explicit step is O(dt^2)") {
  const DomainGeometry g = small_geom();
  const Real kappa = 2.0;
  const PhysicsParams p = make_params(g, kappa, 1.0, 0.4);
  std::mt19937_64 rng(5);
  const FieldState base = random_state(g, kappa, rng, 0.4);

  std::vector<Real> gaps;
  for (Real dt : {4e-3, 2e-3, 1e-3}) {
    FieldState a = base;
    FieldState b = base;
    make_stepper(StepperKind::ExplicitI, g, p, dt).step(a);
    make_stepper(StepperKind::SemiImplicitII, g, p, dt).step(b);
    gaps.push_back(max_state_diff(a, b, g));
  }
  CHECK(gaps[0] / gaps[1] == doctest::Approx(4.0).epsilon(0.2));
  CHECK(gaps[1] / gaps[2] == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("Douglas-Gunn factored operator deviates by exactly O(dt^2)") {
  const DomainGeometry g = small_geom();
  const Real kappa = 2.0;
  std::mt19937_64 rng(7);
  const FieldState s = random_state(g, kappa, rng);
  const LinkVariables u = link_variables(s.a_x, s.a_y, g, kappa);

  std::mt19937_64 rng2(8);
  const FieldState phi_state = random_state(g, kappa, rng2);
  const ComplexField& phi = phi_state.psi;

  std::vector<Real> norms;
  for (Real dt : {1e-1, 5e-2, 2.5e-2}) {
    // (I - dt Lxx)(I - dt Lyy) phi - (I - dt (Lxx + Lyy)) phi
    //   = dt^2 Lxx Lyy phi.
    const ComplexField lyy = apply_Lyy(phi, u.u_y, g);
    ComplexField inner = g.make_complex_field();
    for (int j = 1; j <= g.n_y; ++j) {
      for (int i = g.n_sx; i <= g.n_ex; ++i) {
        inner(i, j) = phi(i, j) - dt * lyy(i, j);
      }
    }
    sync_ghost_rows(inner, g);
    apply_interface(inner, u.u_x, g);
    const ComplexField lxx_inner = apply_Lxx(inner, u.u_x, g);
    const ComplexField lxx = apply_Lxx(phi, u.u_x, g);
    Real worst = 0;
    for (int j = 1; j <= g.n_y; ++j) {
      for (int i = g.n_sx; i <= g.n_ex; ++i) {
        const Complex lhs = inner(i, j) - dt * lxx_inner(i, j);
        const Complex rhs = phi(i, j) - dt * (lxx(i, j) + lyy(i, j));
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    norms.push_back(worst);
  }
  CHECK(norms[0] / norms[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(norms[1] / norms[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("algorithm IV approaches algorithm III as dt -> 0") {
  const DomainGeometry g = small_geom();
  const Real kappa = 2.0;
  const PhysicsParams p = make_params(g, kappa, 1.0, 0.3);
  std::mt19937_64 rng(11);
  const FieldState base = random_state(g, kappa, rng, 0.5);

  std::vector<Real> gaps;
  for (Real dt : {8e-3, 4e-3, 2e-3}) {
    FieldState a = base;
    FieldState b = base;
    make_stepper(StepperKind::ImplicitIII, g, p, dt).step(a);
    make_stepper(StepperKind::FullyImplicitIV, g, p, dt).step(b);
    gaps.push_back(max_state_diff(a, b, g));
  }
  // The per-step gap shrinks faster than dt (S - psi = dt N + O(dt^2)).
  CHECK(gaps[0] / gaps[1] > 3.0);
  CHECK(gaps[1] / gaps[2] > 3.0);
}

TEST_CASE("stepping commutes with a time-independent gauge transform") {
  const DomainGeometry g = build_geometry(10, 2, 10, 0.5, 0.5);
  const Real kappa = 2.0;
  const PhysicsParams p = make_params(g, kappa, 1.0, 0.3);
  std::mt19937_64 rng(13);
  const GaugeFunction chi = random_gauge(g, rng);

  for (StepperKind kind : kAllKinds) {
    FieldState plain = init_meissner_state(g, p, 3, 1e-3);
    FieldState gauged = gauge_transform(plain, chi, g, kappa);
    Stepper sp = make_stepper(kind, g, p, 5e-3);
    Stepper sg = make_stepper(kind, g, p, 5e-3);
    for (int n = 0; n < 100; ++n) {
      sp.step(plain);
      sg.step(gauged);
    }
    const FieldState expected = gauge_transform(plain, chi, g, kappa);
    CHECK(max_state_diff(gauged, expected, g) < 1e-11);
  }
}

TEST_CASE("first-order convergence to a fine-dt reference trajectory") {
  const DomainGeometry g = build_geometry(10, 2, 10, 0.5, 0.5);
  const Real kappa = 3.0;
  const PhysicsParams p = make_params(g, kappa, 0.5, 0.4);
  const Real t_end = 0.2;

  const auto run = [&](StepperKind kind, Real dt) {
    FieldState s = init_meissner_state(g, p, 9, 1e-3);
    Stepper st = make_stepper(kind, g, p, dt);
    const long n = std::lround(t_end / dt);
    for (long k = 0; k < n; ++k) st.step(s);
    return s;
  };

  const FieldState ref = run(StepperKind::ExplicitI, 1e-5);
  for (StepperKind kind : kAllKinds) {
    std::vector<Real> errs;
    const std::vector<Real> dts = {4e-3, 2e-3, 1e-3};
    for (Real dt : dts) errs.push_back(max_state_diff(run(kind, dt), ref, g));
    const Real slope = std::log(errs.front() / errs.back()) /
                       std::log(dts.front() / dts.back());
    CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
  }
}

TEST_CASE("stepper workspace: explicit allocates no factors, caches match") {
  const DomainGeometry g = small_geom();
  const PhysicsParams p = make_params(g, 2.0, 1.0, 0.3);
  Stepper explicit_stepper = make_stepper(StepperKind::ExplicitI, g, p, 1e-3);
  CHECK(!explicit_stepper.has_cached_factors());

  Stepper a = make_stepper(StepperKind::SemiImplicitII, g, p, 1e-3);
  Stepper b = make_stepper(StepperKind::SemiImplicitII, g, p, 1e-3);
  CHECK(a.has_cached_factors());
  CHECK((a.ax_factor().pivots() - b.ax_factor().pivots()).norm() == 0.0);
  CHECK((a.ay_factor().pivots() - b.ay_factor().pivots()).norm() == 0.0);
}

TEST_CASE("changing dt invalidates the cache and matches a fresh stepper") {
  const DomainGeometry g = small_geom();
  const Real kappa = 2.0;
  const PhysicsParams p = make_params(g, kappa, 1.0, 0.4);
  FieldState s1 = init_meissner_state(g, p, 21, 1e-3);
  FieldState s2 = s1;

  Stepper reused = make_stepper(StepperKind::FullyImplicitIV, g, p, 2e-3);
  reused.step(s1);
  reused.set_dt(1e-3);
  CHECK(!reused.has_cached_factors());
  reused.step(s1);

  Stepper first = make_stepper(StepperKind::FullyImplicitIV, g, p, 2e-3);
  first.step(s2);
  Stepper fresh = make_stepper(StepperKind::FullyImplicitIV, g, p, 1e-3);
  fresh.step(s2);

  CHECK(max_state_diff(s1, s2, g) == 0.0);
}

TEST_CASE("explicit stepper diverges above the stability limit") {
  const DomainGeometry g = small_geom();
  const PhysicsParams p = make_params(g, 2.0, 1.0, 0.5);
  FieldState s = init_meissner_state(g, p, 2, 1e-3);
  Stepper st = make_stepper(StepperKind::ExplicitI, g, p, 0.5);
  bool diverged = false;
  try {
    for (int n = 0; n < 10000; ++n) st.step(s);
  } catch (const DivergenceError&) {
    diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("gradient flow: energy decreases along the explicit trajectory") {
  // With H = 0 the discrete equations are the exact gradient flow of the
  // discrete energy (no boundary work), so the decrease is unconditional.
  const DomainGeometry g = build_geometry(16, 2, 16, 0.5, 0.5);
  const PhysicsParams p = make_params(g, 2.0, 1.0, 0.0);
  std::mt19937_64 rng(19);
  FieldState s = random_state(g, p.kappa, rng, 0.7);
  Stepper st = make_stepper(StepperKind::ExplicitI, g, p, 5e-3);
  Real prev = discrete_energy(s, p, g);
  for (int n = 0; n < 600; ++n) {
    st.step(s);
    const Real e = discrete_energy(s, p, g);
    REQUIRE(e <= prev + 1e-9);
    prev = e;
  }
}
