#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "cubesim/errors.hpp"
#include "cubesim/tolerance.hpp"

namespace cubesim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// exp(2*pi*i*k/n), with the exponent reduced modulo n before evaluation.
inline Complex root_of_unity(long long k, int n) {
  const long long r = ((k % n) + n) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / n);
}

/// Largest entry of |M - M^dagger|.
inline double hermiticity_residual(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue decomposition failed");
  return solver.eigenvalues();
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in [-tol, 0) are treated as rounding noise and clamped to zero;
/// anything below -tol is rejected.
inline Matrix hermitian_sqrt(const Matrix& p, Tolerance tol = {}) {
  if (p.rows() != p.cols()) throw DimensionMismatch("hermitian_sqrt: matrix is not square");
  if (hermiticity_residual(p) > tol.eps()) throw NotHermitian("hermitian_sqrt: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(p));
  if (solver.info() != Eigen::Success) throw Error("hermitian_sqrt: eigendecomposition failed");

  Eigen::VectorXd roots = solver.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (roots[i] < -tol.eps()) {
      throw NotPositiveSemidefinite("matrix not PSD: eigenvalue " + std::to_string(roots[i]));
    }
    roots[i] = std::sqrt(std::max(roots[i], 0.0));
  }
  const Matrix& v = solver.eigenvectors();
  return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

/// Distance from x to the closest element of a finite set.
template <typename Range>
double distance_to_set(double x, const Range& targets) {
  double best = std::numeric_limits<double>::infinity();
  for (double t : targets) best = std::min(best, std::abs(x - t));
  return best;
}

}  // namespace cubesim
