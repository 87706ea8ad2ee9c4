#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cubesim/cube.hpp"
#include "cubesim/errors.hpp"
#include "cubesim/phase_matrix.hpp"
#include "cubesim/quantum.hpp"

namespace cubesim {

/// M_n: particle definitely on path n.
inline HermitianCube basis_cube(int n_paths, int path) {
  if (n_paths < 2) throw InvalidArgument("a cube needs at least two paths");
  if (path < 1 || path > n_paths) throw InvalidArgument("path out of range");
  CubeTensor t(n_paths);
  t(path, path, path) = 1.0;
  return HermitianCube::from_tensor(t, CubeRole::state);
}

struct BasisCubeSet {
  int n_paths;
  std::vector<HermitianCube> cubes;  // cubes[n - 1] == M_n

  const HermitianCube& operator[](int path) const { return cubes.at(path - 1); }
};

inline BasisCubeSet basis_cubes(int n_paths) {
  BasisCubeSet set{n_paths, {}};
  for (int n = 1; n <= n_paths; ++n) set.cubes.push_back(basis_cube(n_paths, n));
  return set;
}

namespace detail {

inline const double kSqrtTwoThirds = std::sqrt(2.0 / 3.0);
inline const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

/// Diagonal and two-path entries shared by the quantum and nonquantum families:
/// C_jjj = diag(j), C_jjk = sqrt(2/3) scale Re rho_jk, C_jkk = sqrt(2/3) scale Im rho_jk.
template <typename DiagFn>
CanonicalEntries two_path_entries(const DensityMatrix& rho, double scale, DiagFn diag) {
  CanonicalEntries e;
  const int n = rho.n_paths();
  for (int j = 1; j <= n; ++j) {
    e[{j, j, j}] = diag(j);
    for (int k = j + 1; k <= n; ++k) {
      const Complex r = rho.element(j, k);
      e[{j, j, k}] = kSqrtTwoThirds * scale * r.real();
      e[{j, k, k}] = kSqrtTwoThirds * scale * r.imag();
    }
  }
  return e;
}

}  // namespace detail

/// Embedding of a density matrix as a cube without three-path coherence.
/// Preserves inner products: (Q(rho), Q(sigma)) = Tr(rho sigma).
inline HermitianCube quantum_to_cube(const DensityMatrix& rho, Tolerance tol = {}) {
  if (rho.n_paths() < 2) throw InvalidArgument("a cube needs at least two paths");
  auto entries = detail::two_path_entries(rho, 1.0, [&](int j) { return Complex{rho.population(j)}; });
  return hermitian_complete(entries, rho.n_paths(), CubeRole::state, tol);
}

/// f(gamma, j, k) -> exponent e in 1..N of omega = exp(-2*pi*i/N).
using PhaseFunction = std::function<int(int gamma, int j, int k)>;

/// Phase assignment that reproduces the optimal cubes: with this function,
/// nonquantum_cube(|n><n|, f, n) is the n-th optimal cube built from
/// build_phase_matrix(N, sign).
inline PhaseFunction default_phase_function(int n_paths, PhaseSign sign = PhaseSign::positive) {
  if (n_paths < 3) throw InvalidArgument("phase functions need at least three paths");
  const PhaseMatrix pm = build_phase_matrix(n_paths, sign);
  return [pm](int gamma, int j, int k) {
    const double turns = std::arg(pm.phase(gamma, j, k)) / (2.0 * std::numbers::pi);
    const int n = pm.n_paths();
    // x = exp(-2 pi i e / N)  =>  e = -N * turns (mod N), reported in 1..N
    int e = static_cast<int>(std::lround(-turns * n)) % n;
    if (e <= 0) e += n;
    return e;
  };
}

/// Nonquantum cube family indexed by gamma: quantum-like diagonal and two-path
/// part built from 1 - rho_jj and rho_jk, plus three-path coherences to path 1
/// with phases omega^{f(gamma, j, k)}, omega = exp(-2*pi*i/N). All three-path
/// entries not involving path 1 are zero.
inline HermitianCube nonquantum_cube(const DensityMatrix& rho, const PhaseFunction& phases, int gamma,
                                     Tolerance tol = {}) {
  const int n = rho.n_paths();
  if (n < 3) throw InvalidArgument("nonquantum cubes need N >= 3 (no three-path slot otherwise)");
  if (gamma < 1 || gamma > n) throw InvalidArgument("gamma outside 1..N");
  if (!phases) throw InvalidArgument("phase function is empty");
  const double scale = 1.0 / (n - 1);
  auto entries = detail::two_path_entries(
      rho, scale, [&](int j) { return Complex{scale * (1.0 - rho.population(j))}; });
  for (int j = 2; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      const int e = phases(gamma, j, k);
      entries[{1, j, k}] = detail::kInvSqrt3 * scale * root_of_unity(-static_cast<long long>(e), n);
    }
  }
  return hermitian_complete(entries, n, CubeRole::state, tol);
}

inline void require_state(const HermitianCube& c, const char* what) {
  if (!c.is_state()) throw InvalidArgument(std::string(what) + " requires a state cube");
}

/// Probability (M_n, C) of finding the particle on path n.
inline double measure_path_prob(const HermitianCube& c, int path, Tolerance tol = {}) {
  require_state(c, "measure_path_prob");
  if (path < 1 || path > c.n_paths()) throw InvalidArgument("path out of range");
  const double p = cube_inner(basis_cube(c.n_paths(), path), c, tol);
  if (p < -tol.eps() || p > 1.0 + tol.eps()) {
    throw InvalidArgument("invalid state cube: path probability " + std::to_string(p));
  }
  return detail::clamp_probability(p);
}

/// State update after asking whether the particle is on `path`.
///
/// found: the cube collapses to M_path. Not found: every entry carrying the
/// index `path` is erased and the rest is renormalized by 1 - C_{path path path}.
inline HermitianCube luders_update_cube(const HermitianCube& c, int path, bool found, Tolerance tol = {}) {
  require_state(c, "luders_update_cube");
  if (path < 1 || path > c.n_paths()) throw InvalidArgument("path out of range");
  if (found) return basis_cube(c.n_paths(), path);

  const double p = detail::clamp_probability(c.diagonal(path));
  if (p >= 1.0 - tol.eps()) throw ZeroProbabilityEvent("conditioning on zero-probability event");
  CubeTensor t(c.n_paths());
  c.tensor().for_each_index([&](const IndexTriple& idx) {
    if (!idx.contains(path)) t[idx] = c.tensor()[idx] / (1.0 - p);
  });
  return HermitianCube::from_tensor(t, CubeRole::state, tol);
}

/// Removes all two-path coherences; diagonal and three-path entries are kept.
inline HermitianCube dephase(const HermitianCube& c) {
  CubeTensor t = c.tensor();
  t.for_each_index([&](const IndexTriple& idx) {
    if (idx.is_two_path()) t[idx] = Complex{};
  });
  return HermitianCube::from_tensor(t, c.role());
}

}  // namespace cubesim
