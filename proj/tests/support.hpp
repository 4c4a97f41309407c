// Shared helpers for the test suite: deterministic random fields and
// independent dense-matrix oracles assembled directly from the stencil
// definitions (kept separate from the library's stencil application paths).
#ifndef TDGL_TESTS_SUPPORT_HPP
#define TDGL_TESTS_SUPPORT_HPP

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tdgl/fields.hpp"
#include "tdgl/geometry.hpp"
#include "tdgl/operators.hpp"

namespace tdgl_test {

using tdgl::Complex;
using tdgl::ComplexField;
using tdgl::DomainGeometry;
using tdgl::FieldState;
using tdgl::PhysicsParams;
using tdgl::Real;
using tdgl::RealField;

inline Real uniform(std::mt19937_64& rng, Real lo, Real hi) {
  return std::uniform_real_distribution<Real>(lo, hi)(rng);
}

// Random psi on the superconducting vertices, random A on the valid edge
// ranges, ghosts synchronized.
inline FieldState random_state(const DomainGeometry& geom, Real kappa,
                               std::mt19937_64& rng, Real amplitude = 1.0) {
  FieldState s = tdgl::make_field_state(geom);
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      s.psi(i, j) = Complex(uniform(rng, -amplitude, amplitude),
                            uniform(rng, -amplitude, amplitude));
    }
    for (int i = 1; i <= geom.n_x - 1; ++i) {
      s.a_x(i, j) = uniform(rng, -amplitude, amplitude);
    }
    for (int i = 1; i <= geom.n_x; ++i) {
      s.a_y(i, j) = uniform(rng, -amplitude, amplitude);
    }
  }
  tdgl::sync_state(s, geom, kappa);
  return s;
}

inline tdgl::GaugeFunction random_gauge(const DomainGeometry& geom,
                                        std::mt19937_64& rng,
                                        Real amplitude = 1.0) {
  tdgl::GaugeFunction g;
  g.chi = RealField::Zero(geom.rows(), geom.cols());
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = 1; i <= geom.n_x; ++i) {
      g.chi(i, j) = uniform(rng, -amplitude, amplitude);
    }
  }
  tdgl::sync_ghost_rows(g.chi, geom);
  return g;
}

// Flattened index of a superconducting vertex, k = (j - 1) * n_sc + (i - n_sx).
inline int sc_index(const DomainGeometry& geom, int i, int j) {
  return (j - 1) * geom.sc_columns() + (i - geom.n_sx);
}

inline Eigen::VectorXcd flatten_sc(const ComplexField& psi,
                                   const DomainGeometry& geom) {
  Eigen::VectorXcd v(geom.sc_columns() * geom.n_y);
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      v(sc_index(geom, i, j)) = psi(i, j);
    }
  }
  return v;
}

// Dense matrix of the gauged x second difference on Sc with the interface
// ghost columns eliminated: the ghost relation psi_ghost = U psi contributes
// |U|^2 = 1 to the edge diagonals.
inline Eigen::MatrixXcd dense_Lxx(const ComplexField& u_x,
                                  const DomainGeometry& geom) {
  const int n = geom.sc_columns() * geom.n_y;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const Real f = 1 / (geom.h_x * geom.h_x);
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      const int row = sc_index(geom, i, j);
      m(row, row) += -2 * f;
      if (i < geom.n_ex) {
        m(row, sc_index(geom, i + 1, j)) += f * u_x(i, j);
      } else {
        m(row, row) += f * u_x(i, j) * std::conj(u_x(i, j));
      }
      if (i > geom.n_sx) {
        m(row, sc_index(geom, i - 1, j)) += f * std::conj(u_x(i - 1, j));
      } else {
        m(row, row) += f * std::conj(u_x(i - 1, j)) * u_x(i - 1, j);
      }
    }
  }
  return m;
}

// Dense matrix of the gauged y second difference on Sc, periodic over the
// period.
inline Eigen::MatrixXcd dense_Lyy(const ComplexField& u_y,
                                  const DomainGeometry& geom) {
  const int n = geom.sc_columns() * geom.n_y;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const Real f = 1 / (geom.h_y * geom.h_y);
  for (int j = 1; j <= geom.n_y; ++j) {
    const int up = j == geom.n_y ? 1 : j + 1;
    const int down = j == 1 ? geom.n_y : j - 1;
    for (int i = geom.n_sx; i <= geom.n_ex; ++i) {
      const int row = sc_index(geom, i, j);
      m(row, row) += -2 * f;
      m(row, sc_index(geom, i, up)) += f * u_y(i, j);
      // The j - 1 link is the ghost-row link for j = 1.
      m(row, sc_index(geom, i, down)) += f * std::conj(u_y(i, j == 1 ? 0 : j - 1));
    }
  }
  return m;
}

// Edge unknowns for the curl-curl oracle: A_x lines i = 1..n_x-1 then A_y
// lines i = 1..n_x, each over j = 1..n_y.
struct EdgeIndexer {
  const DomainGeometry& geom;
  int n_ax() const { return (geom.n_x - 1) * geom.n_y; }
  int n_ay() const { return geom.n_x * geom.n_y; }
  int total() const { return n_ax() + n_ay(); }
  int ax(int i, int j) const { return (j - 1) * (geom.n_x - 1) + (i - 1); }
  int ay(int i, int j) const { return n_ax() + (j - 1) * geom.n_x + (i - 1); }
};

inline Eigen::VectorXd flatten_edges(const RealField& a_x, const RealField& a_y,
                                     const DomainGeometry& geom) {
  const EdgeIndexer idx{geom};
  Eigen::VectorXd v(idx.total());
  for (int j = 1; j <= geom.n_y; ++j) {
    for (int i = 1; i <= geom.n_x - 1; ++i) v(idx.ax(i, j)) = a_x(i, j);
    for (int i = 1; i <= geom.n_x; ++i) v(idx.ay(i, j)) = a_y(i, j);
  }
  return v;
}

// Dense curl-curl assembled from the four second-difference stencils
// (D_yy, D_yx, D_xx, D_xy) with periodic j and the one-sided boundary rows
// for zero applied field.
inline Eigen::MatrixXd dense_curl_curl(const DomainGeometry& geom) {
  const EdgeIndexer idx{geom};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(idx.total(), idx.total());
  const Real fyy = 1 / (geom.h_y * geom.h_y);
  const Real fxx = 1 / (geom.h_x * geom.h_x);
  const Real fxy = 1 / (geom.h_x * geom.h_y);
  const auto jup = [&](int j) { return j == geom.n_y ? 1 : j + 1; };
  const auto jdn = [&](int j) { return j == 1 ? geom.n_y : j - 1; };

  for (int j = 1; j <= geom.n_y; ++j) {
    // x rows: D_yy A_x - D_yx A_y.
    for (int i = 1; i <= geom.n_x - 1; ++i) {
      const int row = idx.ax(i, j);
      m(row, idx.ax(i, jup(j))) += fyy;
      m(row, idx.ax(i, j)) += -2 * fyy;
      m(row, idx.ax(i, jdn(j))) += fyy;
      m(row, idx.ay(i + 1, j)) -= fxy;
      m(row, idx.ay(i, j)) -= -fxy;
      m(row, idx.ay(i + 1, jdn(j))) -= -fxy;
      m(row, idx.ay(i, jdn(j))) -= fxy;
    }
    // y rows: D_xx A_y - D_xy A_x, one-sided at i = 1 and i = n_x.
    for (int i = 1; i <= geom.n_x; ++i) {
      const int row = idx.ay(i, j);
      if (i == 1) {
        m(row, idx.ay(2, j)) += fxx;
        m(row, idx.ay(1, j)) += -fxx;
        m(row, idx.ax(1, jup(j))) -= fxy;
        m(row, idx.ax(1, j)) -= -fxy;
      } else if (i == geom.n_x) {
        m(row, idx.ay(geom.n_x - 1, j)) += fxx;
        m(row, idx.ay(geom.n_x, j)) += -fxx;
        m(row, idx.ax(geom.n_x - 1, jup(j))) -= -fxy;
        m(row, idx.ax(geom.n_x - 1, j)) -= fxy;
      } else {
        m(row, idx.ay(i + 1, j)) += fxx;
        m(row, idx.ay(i, j)) += -2 * fxx;
        m(row, idx.ay(i - 1, j)) += fxx;
        m(row, idx.ax(i, jup(j))) -= fxy;
        m(row, idx.ax(i, j)) -= -fxy;
        m(row, idx.ax(i - 1, jup(j))) -= -fxy;
        m(row, idx.ax(i - 1, j)) -= fxy;
      }
    }
  }
  return m;
}

}  // namespace tdgl_test

#endif  // TDGL_TESTS_SUPPORT_HPP
