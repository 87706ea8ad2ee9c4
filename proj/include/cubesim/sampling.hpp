#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "cubesim/errors.hpp"
#include "cubesim/linalg.hpp"
#include "cubesim/quantum.hpp"

namespace cubesim {

using Rng = std::mt19937_64;

inline Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = Complex(g(rng), g(rng));
  }
  return m;
}

inline DensityMatrix random_pure_state(int n_paths, Rng& rng) {
  return DensityMatrix::pure(ginibre(n_paths, 1, rng).col(0));
}

/// Wishart-distributed state of the given rank.
inline DensityMatrix random_density_matrix(int n_paths, int rank, Rng& rng) {
  if (rank < 1 || rank > n_paths) throw InvalidArgument("rank outside 1..n");
  const Matrix g = ginibre(n_paths, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(hermitian_part(rho));
}

inline DensityMatrix random_density_matrix(int n_paths, Rng& rng) {
  std::uniform_int_distribution<int> rank(1, n_paths);
  return random_density_matrix(n_paths, rank(rng), rng);
}

/// Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases removed.
inline Matrix haar_matrix(int n, Rng& rng) {
  if (n < 1) return Matrix(0, 0);
  Eigen::HouseholderQR<Matrix> qr(ginibre(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

inline UnitaryMatrix haar_unitary(int n_paths, Rng& rng) {
  return UnitaryMatrix::from_matrix(haar_matrix(n_paths, rng), Tolerance(1e-9));
}

/// Random unitary that sends the support of rho onto rank(rho) randomly chosen
/// output ports, leaving the others dark in the absence of the bomb.
inline UnitaryMatrix tuned_unitary(const DensityMatrix& rho, Rng& rng, Tolerance tol = {}) {
  const int n = rho.n_paths();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  const Matrix& v = solver.eigenvectors();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  Matrix w(n, n);
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    w.col(i) = v.col(order[i]);
    if (solver.eigenvalues()[order[i]] > tol.eps()) ++rank;
  }
  Matrix block = Matrix::Zero(n, n);
  block.topLeftCorner(rank, rank) = haar_matrix(rank, rng);
  block.bottomRightCorner(n - rank, n - rank) = haar_matrix(n - rank, rng);

  std::vector<int> ports(n);
  std::iota(ports.begin(), ports.end(), 0);
  std::shuffle(ports.begin(), ports.end(), rng);
  Matrix perm = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) perm(ports[i], i) = 1.0;

  return UnitaryMatrix::from_matrix(perm * block * w.adjoint(), Tolerance(1e-9));
}

}  // namespace cubesim
