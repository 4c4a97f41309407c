#include "tdgl/vortex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tdgl {

namespace {

constexpr Real kTwoPi = 6.283185307179586476925286766559;
constexpr Real kIndeterminateFloor = 1e-12;

Real fold_dy(Real dy, Real period) {
  return period > 0 ? std::remainder(dy, period) : dy;
}

Real min_image_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        Real period) {
  const Real dx = a.x() - b.x();
  const Real dy = fold_dy(a.y() - b.y(), period);
  return std::hypot(dx, dy);
}

}  // namespace

WindingNumbers winding_numbers(const ComplexField& psi, const LinkVariables& u,
                               const MagneticField& b,
                               const DomainGeometry& geom, Real kappa) {
  WindingNumbers out;
  out.w = IntField::Zero(geom.rows(), geom.cols());
  const Real flux_scale = geom.h_x * geom.h_y / kappa;
  for (int i = geom.n_sx; i <= geom.n_ex - 1; ++i) {
    for (int j = 1; j <= geom.n_y; ++j) {
      const Complex pa = psi(i, j);
      const Complex pb = psi(i + 1, j);
      const Complex pc = psi(i + 1, j + 1);
      const Complex pd = psi(i, j + 1);
      if (std::abs(pa) < kIndeterminateFloor ||
          std::abs(pb) < kIndeterminateFloor ||
          std::abs(pc) < kIndeterminateFloor ||
          std::abs(pd) < kIndeterminateFloor) {
        out.indeterminate.emplace_back(i, j);
        continue;
      }
      // Branch-reduced phases of the gauge-invariant link products around
      // the plaquette, counterclockwise.
      const Real d1 = std::arg(std::conj(pa) * u.u_x(i, j) * pb);
      const Real d2 = std::arg(std::conj(pb) * u.u_y(i + 1, j) * pc);
      const Real d3 = std::arg(std::conj(pc) * std::conj(u.u_x(i, j + 1)) * pd);
      const Real d4 = std::arg(std::conj(pd) * std::conj(u.u_y(i, j)) * pa);
      const Real total = d1 + d2 + d3 + d4 + flux_scale * b.b(i, j);
      out.w(i, j) = static_cast<int>(std::lround(total / kTwoPi));
    }
  }
  return out;
}

namespace {

// Intersection of the bilinear zero curves of Re psi and Im psi inside the
// unit cell; returns false when no intersection lies in [0,1]^2.
bool bilinear_zero_intersection(const Complex& p00, const Complex& p10,
                                const Complex& p11, const Complex& p01,
                                Real& s_out, Real& t_out) {
  // f(s,t) = a + b s + c t + d s t for each component.
  const Real a1 = p00.real(), a2 = p00.imag();
  const Real b1 = p10.real() - p00.real(), b2 = p10.imag() - p00.imag();
  const Real c1 = p01.real() - p00.real(), c2 = p01.imag() - p00.imag();
  const Real d1 = p11.real() - p10.real() - p01.real() + p00.real();
  const Real d2 = p11.imag() - p10.imag() - p01.imag() + p00.imag();

  // Eliminating t gives a quadratic in s.
  const Real q2 = b2 * d1 - b1 * d2;
  const Real q1 = a2 * d1 + b2 * c1 - a1 * d2 - b1 * c2;
  const Real q0 = a2 * c1 - a1 * c2;

  constexpr Real slack = 1e-9;
  Real roots[2];
  int n_roots = 0;
  const Real scale = std::max({std::abs(q2), std::abs(q1), std::abs(q0)});
  if (scale == 0) return false;
  if (std::abs(q2) < 1e-14 * scale) {
    if (std::abs(q1) < 1e-14 * scale) return false;
    roots[n_roots++] = -q0 / q1;
  } else {
    const Real disc = q1 * q1 - 4 * q2 * q0;
    if (disc < 0) return false;
    const Real sq = std::sqrt(disc);
    // Stable quadratic roots.
    const Real q = -Real(0.5) * (q1 + (q1 >= 0 ? sq : -sq));
    roots[n_roots++] = q / q2;
    if (q != 0) roots[n_roots++] = q0 / q;
  }

  for (int k = 0; k < n_roots; ++k) {
    const Real s = roots[k];
    if (!(s >= -slack && s <= 1 + slack)) continue;
    Real t;
    const Real den_re = c1 + d1 * s;
    const Real den_im = c2 + d2 * s;
    if (std::abs(den_re) >= std::abs(den_im)) {
      if (den_re == 0) continue;
      t = -(a1 + b1 * s) / den_re;
    } else {
      t = -(a2 + b2 * s) / den_im;
    }
    if (!(t >= -slack && t <= 1 + slack)) continue;
    s_out = std::clamp(s, Real(0), Real(1));
    t_out = std::clamp(t, Real(0), Real(1));
    return true;
  }
  return false;
}

}  // namespace

std::vector<Eigen::Vector2d> vortex_positions(const ComplexField& psi,
                                              const WindingNumbers& windings,
                                              const DomainGeometry& geom) {
  std::vector<Eigen::Vector2d> positions;
  for (int i = geom.n_sx; i <= geom.n_ex - 1; ++i) {
    for (int j = 1; j <= geom.n_y; ++j) {
      if (windings.w(i, j) == 0) continue;
      const Complex p00 = psi(i, j);
      const Complex p10 = psi(i + 1, j);
      const Complex p11 = psi(i + 1, j + 1);
      const Complex p01 = psi(i, j + 1);
      Real s, t;
      if (!bilinear_zero_intersection(p00, p10, p11, p01, s, t)) {
        // Inverse-magnitude corner centroid.
        const Real w00 = 1 / std::max(std::abs(p00), kIndeterminateFloor);
        const Real w10 = 1 / std::max(std::abs(p10), kIndeterminateFloor);
        const Real w11 = 1 / std::max(std::abs(p11), kIndeterminateFloor);
        const Real w01 = 1 / std::max(std::abs(p01), kIndeterminateFloor);
        const Real wsum = w00 + w10 + w11 + w01;
        s = (w10 + w11) / wsum;
        t = (w01 + w11) / wsum;
      }
      positions.emplace_back(geom.x(i) + s * geom.h_x, geom.y(j) + t * geom.h_y);
    }
  }
  return positions;
}

std::pair<std::optional<Real>, std::optional<Real>> bond_statistics(
    const std::vector<Eigen::Vector2d>& positions, const DomainGeometry& geom) {
  const int n = static_cast<int>(positions.size());
  if (n < 2) return {std::nullopt, std::nullopt};
  const Real period = geom.period_length();

  // Mean nearest-neighbor distance sets the bond cutoff.
  Real nn_sum = 0;
  for (int a = 0; a < n; ++a) {
    Real best = std::numeric_limits<Real>::infinity();
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      best = std::min(best, min_image_distance(positions[a], positions[b], period));
    }
    nn_sum += best;
  }
  const Real cutoff = Real(1.35) * (nn_sum / n);

  std::vector<std::vector<int>> neighbors(n);
  Real bond_sum = 0;
  long bond_count = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Real d = min_image_distance(positions[a], positions[b], period);
      if (d <= cutoff) {
        bond_sum += d;
        ++bond_count;
        neighbors[a].push_back(b);
        neighbors[b].push_back(a);
      }
    }
  }
  std::optional<Real> mean_length;
  if (bond_count > 0) mean_length = bond_sum / static_cast<Real>(bond_count);

  // Each bond contributes the angle to its angularly nearest neighbor bond
  // at the shared vortex (pi/3 for a hexagonal lattice, pi/2 for square,
  // boundary vortices included).
  std::optional<Real> mean_angle;
  if (n >= 3) {
    Real angle_sum = 0;
    long angle_count = 0;
    std::vector<Real> angles;
    for (int a = 0; a < n; ++a) {
      const std::size_t m = neighbors[a].size();
      if (m < 2) continue;
      angles.clear();
      for (int b : neighbors[a]) {
        const Real dx = positions[b].x() - positions[a].x();
        const Real dy = fold_dy(positions[b].y() - positions[a].y(), period);
        angles.push_back(std::atan2(dy, dx));
      }
      std::sort(angles.begin(), angles.end());
      for (std::size_t k = 0; k < m; ++k) {
        const Real next =
            (k + 1 < m ? angles[k + 1] : angles[0] + kTwoPi) - angles[k];
        const Real prev =
            angles[k] - (k > 0 ? angles[k - 1] : angles[m - 1] - kTwoPi);
        angle_sum += std::min(next, prev);
        ++angle_count;
      }
    }
    if (angle_count > 0) mean_angle = angle_sum / static_cast<Real>(angle_count);
  }
  return {mean_length, mean_angle};
}

VortexConfiguration vortex_configuration(const FieldState& state,
                                         const PhysicsParams& params,
                                         const DomainGeometry& geom) {
  const LinkVariables u =
      link_variables(state.a_x, state.a_y, geom, params.kappa);
  const MagneticField b =
      discrete_B(state.a_x, state.a_y, geom, params.h_left, params.h_right);
  const WindingNumbers w = winding_numbers(state.psi, u, b, geom, params.kappa);

  VortexConfiguration config;
  config.positions = vortex_positions(state.psi, w, geom);
  config.t = state.t;
  auto [length, angle] = bond_statistics(config.positions, geom);
  config.mean_bond_length = length;
  config.mean_bond_angle = angle;
  return config;
}

Real max_matched_displacement(const std::vector<Eigen::Vector2d>& a,
                              const std::vector<Eigen::Vector2d>& b,
                              Real period_y) {
  if (a.size() != b.size()) return std::numeric_limits<Real>::infinity();
  if (a.empty()) return 0;

  struct Pair {
    Real d;
    int ia;
    int ib;
  };
  std::vector<Pair> pairs;
  pairs.reserve(a.size() * b.size());
  for (int ia = 0; ia < static_cast<int>(a.size()); ++ia) {
    for (int ib = 0; ib < static_cast<int>(b.size()); ++ib) {
      pairs.push_back({min_image_distance(a[ia], b[ib], period_y), ia, ib});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.ia != y.ia) return x.ia < y.ia;
    return x.ib < y.ib;
  });
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  std::size_t matched = 0;
  Real worst = 0;
  for (const Pair& p : pairs) {
    if (used_a[p.ia] || used_b[p.ib]) continue;
    used_a[p.ia] = true;
    used_b[p.ib] = true;
    worst = std::max(worst, p.d);
    if (++matched == a.size()) break;
  }
  return worst;
}

EquilibriumMonitor::EquilibriumMonitor(int check_interval, Real tolerance,
                                       int required_passes, Real period_y)
    : check_interval_(check_interval),
      tolerance_(tolerance),
      required_passes_(required_passes),
      last_displacement_(std::numeric_limits<Real>::quiet_NaN()),
      period_y_(period_y) {
  if (check_interval < 1) {
    throw std::invalid_argument("equilibrium monitor: check_interval must be >= 1");
  }
  if (!(tolerance > 0)) {
    throw std::invalid_argument("equilibrium monitor: tolerance must be positive");
  }
  if (required_passes < 1) {
    throw std::invalid_argument("equilibrium monitor: required passes must be >= 1");
  }
}

bool EquilibriumMonitor::update(const VortexConfiguration& config) {
  if (!has_previous_) {
    previous_ = config;
    has_previous_ = true;
    last_displacement_ = std::numeric_limits<Real>::quiet_NaN();
    return false;
  }
  if (config.count() != previous_.count()) {
    passes_ = 0;
    last_displacement_ = std::numeric_limits<Real>::infinity();
    previous_ = config;
    return false;
  }
  last_displacement_ =
      max_matched_displacement(previous_.positions, config.positions, period_y_);
  if (last_displacement_ < tolerance_) {
    ++passes_;
  } else {
    passes_ = 0;
  }
  previous_ = config;
  return passes_ >= required_passes_;
}

EquivalenceReport configs_equivalent(const VortexConfiguration& a,
                                     const VortexConfiguration& b,
                                     Real length_tol, Real angle_tol) {
  EquivalenceReport r;
  r.count_a = a.count();
  r.count_b = b.count();
  const auto delta = [](const std::optional<Real>& x,
                        const std::optional<Real>& y) {
    if (x.has_value() != y.has_value()) {
      return std::numeric_limits<Real>::infinity();
    }
    if (!x.has_value()) return Real(0);
    return std::abs(*x - *y);
  };
  r.bond_length_delta = delta(a.mean_bond_length, b.mean_bond_length);
  r.bond_angle_delta = delta(a.mean_bond_angle, b.mean_bond_angle);
  r.equivalent = r.count_a == r.count_b && r.bond_length_delta < length_tol &&
                 r.bond_angle_delta < angle_tol;
  return r;
}

}  // namespace tdgl
