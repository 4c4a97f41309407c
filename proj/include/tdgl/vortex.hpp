#ifndef TDGL_VORTEX_HPP
#define TDGL_VORTEX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "tdgl/fields.hpp"
#include "tdgl/geometry.hpp"
#include "tdgl/operators.hpp"
#include "tdgl/types.hpp"

namespace tdgl {

// Detected vortex set at one instant: sub-cell positions (units of xi, y
// inside one period) in row-major plaquette order, plus lattice statistics.
struct VortexConfiguration {
  std::vector<Eigen::Vector2d> positions;
  std::optional<Real> mean_bond_length;
  std::optional<Real> mean_bond_angle;
  Real t = 0;

  int count() const { return static_cast<int>(positions.size()); }
};

// Per-plaquette winding numbers over the superconducting cells
// i = n_sx..n_ex-1, j = 1..n_y,
//   w = round[(sum of branch-reduced link-product phases + h_x h_y B / kappa)
//             / 2 pi],
// which is exactly gauge invariant. Plaquettes with a corner where
// |psi| < 1e-12 are flagged indeterminate and given w = 0.
struct WindingNumbers {
  IntField w;
  std::vector<std::pair<int, int>> indeterminate;

  long total() const { return w.cast<long>().sum(); }
};

WindingNumbers winding_numbers(const ComplexField& psi, const LinkVariables& u,
                               const MagneticField& b,
                               const DomainGeometry& geom, Real kappa);

// Sub-cell positions for the w = +-1 plaquettes: the intersection of the
// bilinear zero curves of Re psi and Im psi inside the cell, falling back to
// an inverse-magnitude corner centroid when the intersection leaves the cell.
std::vector<Eigen::Vector2d> vortex_positions(const ComplexField& psi,
                                              const WindingNumbers& windings,
                                              const DomainGeometry& geom);

// Bonds join pairs closer than 1.35x the mean nearest-neighbor distance
// (minimum-image in y). The bond angle averages the gaps between angularly
// consecutive bonds at each vortex. Fewer than 2 (3) vortices leave the
// length (angle) empty.
std::pair<std::optional<Real>, std::optional<Real>> bond_statistics(
    const std::vector<Eigen::Vector2d>& positions, const DomainGeometry& geom);

// Windings -> positions -> statistics for a synchronized state.
VortexConfiguration vortex_configuration(const FieldState& state,
                                         const PhysicsParams& params,
                                         const DomainGeometry& geom);

// Greedy nearest-neighbor matching (minimum-image in y); returns the largest
// matched displacement, or infinity when the counts differ.
Real max_matched_displacement(const std::vector<Eigen::Vector2d>& a,
                              const std::vector<Eigen::Vector2d>& b,
                              Real period_y);

// Equilibrium criterion: vortex count constant and every vortex moved less
// than `tolerance` since the previous check, for `required_passes`
// consecutive checks.
class EquilibriumMonitor {
 public:
  EquilibriumMonitor(int check_interval, Real tolerance, int required_passes,
                     Real period_y);

  // Feeds one sampled configuration; returns true once equilibrium holds.
  bool update(const VortexConfiguration& config);

  int check_interval() const { return check_interval_; }
  Real last_displacement() const { return last_displacement_; }
  int passes() const { return passes_; }

 private:
  int check_interval_;
  Real tolerance_;
  int required_passes_;
  int passes_ = 0;
  bool has_previous_ = false;
  VortexConfiguration previous_;
  Real last_displacement_;
  Real period_y_ = 0;
};

struct EquivalenceReport {
  bool equivalent = false;
  int count_a = 0;
  int count_b = 0;
  Real bond_length_delta = 0;
  Real bond_angle_delta = 0;
};

// Configurations match when the counts are equal and the mean bond length
// and angle differ by less than 1e-3 (xi and radians respectively).
EquivalenceReport configs_equivalent(const VortexConfiguration& a,
                                     const VortexConfiguration& b,
                                     Real length_tol = 1e-3,
                                     Real angle_tol = 1e-3);

}  // namespace tdgl

#endif  // TDGL_VORTEX_HPP
