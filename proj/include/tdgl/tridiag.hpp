#ifndef TDGL_TRIDIAG_HPP
#define TDGL_TRIDIAG_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tdgl {

// Tridiagonal system, optionally with periodic corner couplings. Row k holds
// lower(k) on column k-1, diag(k) on column k, upper(k) on column k+1. When
// periodic, lower(0) couples row 0 to column n-1 and upper(n-1) couples row
// n-1 to column 0.
template <typename Scalar>
struct TridiagonalSystem {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector lower;
  Vector diag;
  Vector upper;
  bool periodic = false;

  Eigen::Index size() const { return diag.size(); }

  static TridiagonalSystem constant(Eigen::Index n, Scalar lo, Scalar di,
                                    Scalar up, bool periodic) {
    TridiagonalSystem s;
    s.lower = Vector::Constant(n, lo);
    s.diag = Vector::Constant(n, di);
    s.upper = Vector::Constant(n, up);
    s.periodic = periodic;
    return s;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    const Eigen::Index n = size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      m(k, k) += diag(k);
      if (k > 0) m(k, k - 1) += lower(k);
      if (k + 1 < n) m(k, k + 1) += upper(k);
    }
    if (periodic && n > 1) {
      m(0, n - 1) += lower(0);
      m(n - 1, 0) += upper(n - 1);
    } else if (periodic && n == 1) {
      m(0, 0) += lower(0) + upper(0);
    }
    return m;
  }
};

// Reusable LU-style factorization. The plain case is the Thomas algorithm
// without pivoting (intended for diagonally dominant systems); the periodic
// case factors a rank-one-corrected reduced system and applies the
// Sherman-Morrison update on each solve. Periodic systems with n < 3 fall
// back to a small dense factorization.
template <typename Scalar>
class TridiagFactor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  TridiagFactor() = default;
  explicit TridiagFactor(const TridiagonalSystem<Scalar>& sys) { compute(sys); }

  TridiagFactor& compute(const TridiagonalSystem<Scalar>& sys) {
    const Eigen::Index n = sys.size();
    if (n < 1) throw std::invalid_argument("tridiag: empty system");
    n_ = n;
    periodic_ = sys.periodic && n > 1;

    if (sys.periodic && n < 3) {
      dense_.compute(sys.dense());
      use_dense_ = true;
      // PartialPivLU has no singularity signal; probe the pivots.
      for (Eigen::Index k = 0; k < n; ++k) {
        if (dense_.matrixLU()(k, k) == Scalar(0)) {
          throw std::runtime_error("tridiag: singular pivot at row " +
                                   std::to_string(k));
        }
      }
      return *this;
    }
    use_dense_ = false;

    Vector diag = sys.diag;
    upper_ = sys.upper;
    if (periodic_) {
      // Remove the corners with A = T + u v^T, u = (gamma, 0,.., alpha)^T,
      // v = (1, 0,.., beta/gamma)^T, alpha = upper(n-1), beta = lower(0).
      gamma_ = -sys.diag(0);
      alpha_ = sys.upper(n - 1);
      beta_over_gamma_ = sys.lower(0) / gamma_;
      diag(0) -= gamma_;
      diag(n - 1) -= alpha_ * beta_over_gamma_;
    }

    pivot_.resize(n);
    mult_.resize(n);
    mult_(0) = Scalar(0);
    pivot_(0) = diag(0);
    check_pivot(pivot_(0), 0);
    for (Eigen::Index k = 1; k < n; ++k) {
      mult_(k) = sys.lower(k) / pivot_(k - 1);
      pivot_(k) = diag(k) - mult_(k) * upper_(k - 1);
      check_pivot(pivot_(k), k);
    }

    if (periodic_) {
      Vector u = Vector::Zero(n);
      u(0) = gamma_;
      u(n - 1) = alpha_;
      z_ = u;
      base_solve(z_);
      const Scalar denom = Scalar(1) + z_(0) + beta_over_gamma_ * z_(n - 1);
      if (denom == Scalar(0)) {
        throw std::runtime_error("tridiag: singular rank-one correction");
      }
      denom_ = denom;
    }
    return *this;
  }

  Eigen::Index size() const { return n_; }

  void solve_in_place(Eigen::Ref<Vector> b) const {
    if (use_dense_) {
      b = dense_.solve(b.eval());
      return;
    }
    base_solve(b);
    if (periodic_) {
      const Scalar factor = (b(0) + beta_over_gamma_ * b(n_ - 1)) / denom_;
      b -= factor * z_;
    }
  }

  Vector solve(const Vector& rhs) const {
    Vector x = rhs;
    solve_in_place(x);
    return x;
  }

  // Factor internals, exposed for cache-identity checks.
  const Vector& pivots() const { return pivot_; }
  const Vector& multipliers() const { return mult_; }

 private:
  static void check_pivot(const Scalar& p, Eigen::Index row) {
    using std::abs;
    if (abs(p) == 0) {
      throw std::runtime_error("tridiag: singular pivot at row " +
                               std::to_string(row));
    }
  }

  // Forward elimination / back substitution with the stored factors.
  void base_solve(Eigen::Ref<Vector> b) const {
    for (Eigen::Index k = 1; k < n_; ++k) b(k) -= mult_(k) * b(k - 1);
    b(n_ - 1) /= pivot_(n_ - 1);
    for (Eigen::Index k = n_ - 2; k >= 0; --k) {
      b(k) = (b(k) - upper_(k) * b(k + 1)) / pivot_(k);
    }
  }

  Eigen::Index n_ = 0;
  bool periodic_ = false;
  bool use_dense_ = false;
  Vector pivot_;
  Vector mult_;
  Vector upper_;
  Vector z_;
  Scalar gamma_{};
  Scalar alpha_{};
  Scalar beta_over_gamma_{};
  Scalar denom_{};
  Eigen::PartialPivLU<Matrix> dense_;
};

}  // namespace tdgl

#endif  // TDGL_TRIDIAG_HPP
