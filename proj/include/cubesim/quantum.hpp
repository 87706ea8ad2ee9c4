#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cubesim/errors.hpp"
#include "cubesim/ifm_result.hpp"
#include "cubesim/linalg.hpp"
#include "cubesim/tolerance.hpp"

namespace cubesim {

/// Hermitian, unit-trace, positive semidefinite N x N matrix.
///
/// The Eigen matrix is 0-based; functions taking a path label use 1-based paths.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Matrix& rho, Tolerance tol = {}) {
    if (rho.rows() != rho.cols()) throw DimensionMismatch("density matrix must be square");
    if (rho.rows() < 1) throw InvalidArgument("density matrix must be non-empty");
    if (hermiticity_residual(rho) > tol.eps()) throw NotHermitian("density matrix is not Hermitian");
    const Matrix h = hermitian_part(rho);
    const double trace = h.trace().real();
    if (std::abs(trace - 1.0) > tol.eps()) {
      throw InvalidArgument("density matrix trace is " + std::to_string(trace));
    }
    const double smallest = hermitian_eigenvalues(h).minCoeff();
    if (smallest < -tol.eps()) {
      throw NotPositiveSemidefinite("density matrix has eigenvalue " + std::to_string(smallest));
    }
    return DensityMatrix(h);
  }

  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const Vector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw InvalidArgument("cannot normalize the zero vector");
    const Vector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
  }

  static DensityMatrix basis_state(int n_paths, int path) {
    check_path(n_paths, path);
    Matrix m = Matrix::Zero(n_paths, n_paths);
    m(path - 1, path - 1) = 1.0;
    return DensityMatrix(m);
  }

  static DensityMatrix maximally_mixed(int n_paths) {
    if (n_paths < 1) throw InvalidArgument("need at least one path");
    return DensityMatrix(Matrix::Identity(n_paths, n_paths) / static_cast<double>(n_paths));
  }

  int n_paths() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  /// 1-based element access.
  Complex element(int j, int k) const {
    check_path(n_paths(), j);
    check_path(n_paths(), k);
    return rho_(j - 1, k - 1);
  }
  double population(int path) const { return element(path, path).real(); }
  double purity() const { return (rho_ * rho_).trace().real(); }

  static void check_path(int n_paths, int path) {
    if (path < 1 || path > n_paths) {
      throw InvalidArgument("path " + std::to_string(path) + " outside 1.." + std::to_string(n_paths));
    }
  }

 private:
  explicit DensityMatrix(Matrix rho) : rho_(std::move(rho)) {}
  Matrix rho_;
};

class UnitaryMatrix {
 public:
  static UnitaryMatrix from_matrix(const Matrix& u, Tolerance tol = {}) {
    if (u.rows() != u.cols() || u.rows() < 1) throw DimensionMismatch("unitary must be square");
    const double residual =
        (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (residual > tol.eps()) throw InvalidArgument("matrix is not unitary: residual " + std::to_string(residual));
    return UnitaryMatrix(u);
  }

  int n_paths() const { return static_cast<int>(u_.rows()); }
  const Matrix& matrix() const { return u_; }
  UnitaryMatrix adjoint() const { return UnitaryMatrix(u_.adjoint()); }

  /// U rho U^dagger.
  Matrix evolve(const DensityMatrix& rho) const {
    if (rho.n_paths() != n_paths()) throw DimensionMismatch("unitary and state dimensions differ");
    return u_ * rho.matrix() * u_.adjoint();
  }

 private:
  explicit UnitaryMatrix(Matrix u) : u_(std::move(u)) {}
  Matrix u_;
};

/// Discrete Fourier transform, entries omega^{jk} / sqrt(n) with omega = exp(2*pi*i/n).
inline UnitaryMatrix fourier_unitary(int n) {
  if (n < 2) throw InvalidArgument("fourier_unitary needs n >= 2");
  Matrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) f(j, k) = scale * root_of_unity(static_cast<long long>(j) * k, n);
  return UnitaryMatrix::from_matrix(f);
}

struct PathRemoval {
  double p_trigger;
  DensityMatrix post;
};

/// Projective "is the particle on this path?" measurement, conditioned on "no".
inline PathRemoval luders_remove_path(const DensityMatrix& rho, int path, Tolerance tol = {}) {
  DensityMatrix::check_path(rho.n_paths(), path);
  const double p = detail::clamp_probability(rho.population(path));
  if (p >= 1.0 - tol.eps()) {
    throw ZeroProbabilityEvent("certain detonation; post-measurement state undefined");
  }
  Matrix m = rho.matrix();
  m.row(path - 1).setZero();
  m.col(path - 1).setZero();
  m /= (1.0 - p);
  return {p, DensityMatrix::from_matrix(m, tol)};
}

/// Projector onto the span of eigenvectors with eigenvalue above tol.
inline Matrix support_projector(const DensityMatrix& rho, Tolerance tol = {}) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw Error("support_projector: eigendecomposition failed");
  const Matrix& v = solver.eigenvectors();
  Matrix e = Matrix::Zero(rho.n_paths(), rho.n_paths());
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    if (solver.eigenvalues()[i] > tol.eps()) e += v.col(i) * v.col(i).adjoint();
  }
  return e;
}

struct TradeoffBounds {
  /// 1 - 2 P_* + P_* <b|E(rho)|b>
  double bound_support;
  /// (1 - P_*)^2
  double bound_pure;
};

inline TradeoffBounds quantum_tradeoff_bounds(const DensityMatrix& rho, int bomb_path, Tolerance tol = {}) {
  DensityMatrix::check_path(rho.n_paths(), bomb_path);
  const double p = detail::clamp_probability(rho.population(bomb_path));
  const double overlap = support_projector(rho, tol)(bomb_path - 1, bomb_path - 1).real();
  return {1.0 - 2.0 * p + p * overlap, (1.0 - p) * (1.0 - p)};
}

/// Single-shot interaction-free measurement for a particle already inside the
/// interferometer (state rho_inside), followed by the unitary u2.
///
/// The inconclusive outcome collects every output port the particle reaches
/// with probability above support_threshold when no bomb is present.
inline IFMResult quantum_ifm(const DensityMatrix& rho_inside, const UnitaryMatrix& u2, int bomb_path,
                             Tolerance tol = {}, double support_threshold = kSupportThreshold) {
  if (rho_inside.n_paths() != u2.n_paths()) throw DimensionMismatch("state and unitary dimensions differ");
  const int n = rho_inside.n_paths();
  const auto [p_trigger, post] = luders_remove_path(rho_inside, bomb_path, tol);

  const Matrix no_bomb = u2.evolve(rho_inside);
  const Matrix with_bomb = u2.evolve(post);

  IFMResult r;
  r.model = Model::quantum;
  r.n_paths = n;
  r.p_trigger = p_trigger;
  double inside_support = 0.0;
  for (int s = 0; s < n; ++s) {
    const double p_free = no_bomb(s, s).real();
    if (detail::near_threshold(p_free, support_threshold)) r.support_ambiguous = true;
    if (p_free > support_threshold) inside_support += with_bomb(s, s).real();
  }
  r.p_inconclusive = detail::clamp_probability((1.0 - p_trigger) * inside_support);
  r.p_success = detail::clamp_probability(1.0 - r.p_trigger - r.p_inconclusive);
  r.bound_value = quantum_tradeoff_bounds(rho_inside, bomb_path, tol).bound_support;
  return r;
}

/// Particle injected into path 1, prepared by u1, then measured as above.
inline IFMResult quantum_ifm_from_input(const UnitaryMatrix& u1, const UnitaryMatrix& u2, int bomb_path,
                                        Tolerance tol = {}, double support_threshold = kSupportThreshold) {
  return quantum_ifm(DensityMatrix::pure(u1.matrix().col(0)), u2, bomb_path, tol, support_threshold);
}

}  // namespace cubesim
