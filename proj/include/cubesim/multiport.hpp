#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "cubesim/cube.hpp"
#include "cubesim/cube_states.hpp"
#include "cubesim/errors.hpp"
#include "cubesim/linalg.hpp"
#include "cubesim/phase_matrix.hpp"

namespace cubesim {

enum class BasisKind {
  diagonal,   ///< M_n
  coherence,  ///< B^(vw): 1/sqrt3 at (1,v,w), (w,1,v), (v,w,1)
  conjugate,  ///< B^(wv): 1/sqrt3 at (1,w,v), (v,1,w), (w,v,1)
};

struct BasisLabel {
  BasisKind kind;
  int first;   // path n for diagonal cubes, otherwise the superscript order
  int second;  // unused for diagonal cubes

  std::string name() const {
    if (kind == BasisKind::diagonal) return "M(" + std::to_string(first) + ")";
    return "B(" + std::to_string(first) + "," + std::to_string(second) + ")";
  }
};

/// Orthonormal basis of the cubes that carry no two-path coherence and whose
/// three-path coherences all involve path 1.
///
/// Coordinate order: the N diagonal cubes, then B^(vw) for the pairs of
/// coherence_pairs() in lexicographic order, then B^(wv) in the same order.
/// Basis tensors are generated on request; nothing of size N^3 * d is stored.
class SubBasis {
 public:
  explicit SubBasis(int n_paths) : n_(n_paths) {
    if (n_paths < 3) throw InvalidArgument("sub-basis needs at least three paths");
    for (int n = 1; n <= n_; ++n) labels_.push_back({BasisKind::diagonal, n, 0});
    const auto pairs = coherence_pairs(n_);
    for (const auto& p : pairs) labels_.push_back({BasisKind::coherence, p.v, p.w});
    for (const auto& p : pairs) labels_.push_back({BasisKind::conjugate, p.w, p.v});
  }

  int n_paths() const { return n_; }
  int dimension() const { return static_cast<int>(labels_.size()); }
  int pair_count() const { return coherence_pair_count(n_); }
  const std::vector<BasisLabel>& labels() const { return labels_; }

  int diagonal_index(int path) const { return path - 1; }
  int coherence_index(int pair) const { return n_ + pair; }
  int conjugate_index(int pair) const { return n_ + pair_count() + pair; }
  bool is_diagonal(int index) const { return index < n_; }

  /// Index of the conjugate partner; diagonal coordinates are their own partner.
  int partner(int index) const {
    if (index < 0 || index >= dimension()) throw InvalidArgument("basis index out of range");
    if (index < n_) return index;
    const int p = pair_count();
    return index < n_ + p ? index + p : index - p;
  }

  CubeTensor cube(int index) const {
    const BasisLabel& b = labels_.at(index);
    CubeTensor t(n_);
    if (b.kind == BasisKind::diagonal) {
      t(b.first, b.first, b.first) = 1.0;
      return t;
    }
    const int v = b.first;
    const int w = b.second;
    const double s = detail::kInvSqrt3;
    t(1, v, w) = s;
    t(w, 1, v) = s;
    t(v, w, 1) = s;
    return t;
  }

 private:
  int n_;
  std::vector<BasisLabel> labels_;
};

inline SubBasis sub_basis(int n_paths) { return SubBasis(n_paths); }

/// Coordinates (B_j, C) of a cube in SubBasis order.
struct SubspaceVector {
  Vector coords;

  /// Largest violation of the constraints that make the vector a Hermitian cube:
  /// real diagonal coordinates and conjugate-paired coherence coordinates.
  double pairing_violation(const SubBasis& basis) const {
    if (coords.size() != basis.dimension()) throw DimensionMismatch("coordinate vector has wrong length");
    double worst = 0.0;
    for (int i = 0; i < basis.dimension(); ++i) {
      const int j = basis.partner(i);
      worst = std::max(worst, std::abs(coords[i] - std::conj(coords[j])));
    }
    return worst;
  }

  double diagonal_sum(const SubBasis& basis) const {
    double s = 0.0;
    for (int n = 1; n <= basis.n_paths(); ++n) s += coords[basis.diagonal_index(n)].real();
    return s;
  }
};

/// Coordinates of a cube in the multiport sub-basis.
inline SubspaceVector to_coords(const HermitianCube& c, const SubBasis& basis, Tolerance tol = {}) {
  const int n = basis.n_paths();
  if (c.n_paths() != n) throw DimensionMismatch("cube and sub-basis path counts differ");
  c.tensor().for_each_index([&](const IndexTriple& idx) {
    const double mag = std::abs(c.tensor()[idx]);
    if (mag <= tol.eps()) return;
    if (idx.is_two_path()) throw OutsideDomain("cube outside multiport domain; dephase first");
    if (idx.is_three_path() && !idx.contains(1)) {
      throw OutsideDomain("cube outside multiport domain: three-path coherence not involving path 1");
    }
  });

  const double root3 = std::sqrt(3.0);
  SubspaceVector v{Vector::Zero(basis.dimension())};
  for (int p = 1; p <= n; ++p) v.coords[basis.diagonal_index(p)] = c(p, p, p);
  const auto pairs = coherence_pairs(n);
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    v.coords[basis.coherence_index(i)] = root3 * c(1, pairs[i].v, pairs[i].w);
    v.coords[basis.conjugate_index(i)] = root3 * c(1, pairs[i].w, pairs[i].v);
  }
  return v;
}

/// sum_j v_j B_j; throws NotHermitian when the coordinates break the pairing rule.
inline HermitianCube from_coords(const SubspaceVector& v, const SubBasis& basis,
                                 CubeRole role = CubeRole::effect, Tolerance tol = {}) {
  const int n = basis.n_paths();
  if (v.coords.size() != basis.dimension()) throw DimensionMismatch("coordinate vector has wrong length");
  CubeTensor t(n);
  for (int p = 1; p <= n; ++p) t(p, p, p) = v.coords[basis.diagonal_index(p)];
  const double s = detail::kInvSqrt3;
  const auto pairs = coherence_pairs(n);
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    const int a = pairs[i].v;
    const int b = pairs[i].w;
    const Complex x = s * v.coords[basis.coherence_index(i)];
    const Complex y = s * v.coords[basis.conjugate_index(i)];
    t(1, a, b) += x;
    t(b, 1, a) += x;
    t(a, b, 1) += x;
    t(1, b, a) += y;
    t(a, 1, b) += y;
    t(b, a, 1) += y;
  }
  return HermitianCube::from_tensor(t, role, tol);
}

/// d x d matrix of a cube transformation in SubBasis coordinates, with blocks
///   T = [ A  C ]
///       [ B  D ]
/// where A is N x N on the diagonal coordinates.
class MultiportMatrix {
 public:
  MultiportMatrix(int n_paths, Matrix t) : n_(n_paths), t_(std::move(t)) {
    const int d = SubBasis(n_paths).dimension();
    if (t_.rows() != d || t_.cols() != d) throw DimensionMismatch("multiport matrix must be d x d");
  }

  int n_paths() const { return n_; }
  int dimension() const { return static_cast<int>(t_.rows()); }
  const Matrix& matrix() const { return t_; }

  Matrix a_block() const { return t_.topLeftCorner(n_, n_); }
  Matrix b_block() const { return t_.bottomLeftCorner(dimension() - n_, n_); }
  Matrix c_block() const { return t_.topRightCorner(n_, dimension() - n_); }
  Matrix d_block() const { return t_.bottomRightCorner(dimension() - n_, dimension() - n_); }

  SubspaceVector operator*(const SubspaceVector& v) const {
    if (v.coords.size() != dimension()) throw DimensionMismatch("coordinate vector has wrong length");
    return {t_ * v.coords};
  }

 private:
  int n_;
  Matrix t_;
};

/// Three-path multiport written out literally, omega = exp(-2*pi*i/3).
inline MultiportMatrix t3_matrix() {
  const Complex w = root_of_unity(-1, 3);
  const Complex wc = std::conj(w);
  Matrix t(5, 5);
  // clang-format off
  t << 0, 1,  1,  1,  1,
       1, 0,  1,  wc, w,
       1, 1,  0,  w,  wc,
       1, w,  wc, 1,  0,
       1, wc, w,  0,  1;
  // clang-format on
  return MultiportMatrix(3, 0.5 * t);
}

/// Swaps every B^(vw) coordinate with its partner B^(wv).
///
/// For the multiports built here this equals entrywise complex conjugation,
/// i.e. it maps the omega = exp(+2 pi i/N) construction onto the
/// omega = exp(-2 pi i/N) one.
inline MultiportMatrix conjugate_relabel(const MultiportMatrix& m) {
  const SubBasis basis(m.n_paths());
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(basis.dimension());
  for (int i = 0; i < basis.dimension(); ++i) perm.indices()[i] = basis.partner(i);
  return MultiportMatrix(m.n_paths(), perm * m.matrix() * perm.transpose());
}

/// Pure, mutually orthonormal nonquantum cubes C^(1..N): diagonal 1/(N-1)
/// except zero on path n, and C^(n)_1vw = x^(n)_vw / (sqrt3 (N-1)).
inline std::vector<HermitianCube> optimal_cubes(int n_paths, PhaseSign sign = PhaseSign::positive,
                                                Tolerance tol = {}) {
  const PhaseMatrix pm = build_phase_matrix(n_paths, sign);
  const double scale = 1.0 / (n_paths - 1);
  std::vector<HermitianCube> out;
  out.reserve(n_paths);
  for (int n = 1; n <= n_paths; ++n) {
    CanonicalEntries e;
    for (int j = 1; j <= n_paths; ++j)
      if (j != n) e[{j, j, j}] = scale;
    for (const auto& p : coherence_pairs(n_paths)) {
      e[{1, p.v, p.w}] = detail::kInvSqrt3 * scale * pm.phase(n, p.v, p.w);
    }
    out.push_back(hermitian_complete(e, n_paths, CubeRole::state, tol));
  }
  return out;
}

/// Hermitian involutive multiport mapping M_n to C^(n).
///
/// A = (J - 1)/(N - 1), B = [X; X*]/(N - 1), C = B^dagger and D is the
/// principal square root of 1 - B B^dagger. Throws ConstructionFailed when the
/// assembled matrix is not an involution within matrix_tol (Frobenius norm).
inline MultiportMatrix assemble_multiport(int n_paths, PhaseSign sign = PhaseSign::positive,
                                          double matrix_tol = kMatrixTolerance) {
  const PhaseMatrix pm = build_phase_matrix(n_paths, sign);
  const int n = n_paths;
  const int p = coherence_pair_count(n);
  const int d = n + 2 * p;
  const double scale = 1.0 / (n - 1);

  Matrix a = Matrix::Constant(n, n, scale);
  a.diagonal().setZero();
  Matrix b(2 * p, n);
  b.topRows(p) = scale * pm.matrix();
  b.bottomRows(p) = scale * pm.matrix().conjugate();
  const Matrix dblk = hermitian_sqrt(Matrix::Identity(2 * p, 2 * p) - b * b.adjoint(), Tolerance(matrix_tol));

  Matrix t(d, d);
  t.topLeftCorner(n, n) = a;
  t.topRightCorner(n, 2 * p) = b.adjoint();
  t.bottomLeftCorner(2 * p, n) = b;
  t.bottomRightCorner(2 * p, 2 * p) = dblk;

  const double involution = (t * t - Matrix::Identity(d, d)).norm();
  if (involution > matrix_tol) {
    throw ConstructionFailed("principal-root sign choice failed: |T^2 - 1| = " + std::to_string(involution));
  }
  return MultiportMatrix(n, std::move(t));
}

/// Cube transformation by matrix multiplication on sub-basis coordinates.
inline HermitianCube apply_transform(const MultiportMatrix& t, const HermitianCube& c, Tolerance tol = {}) {
  if (t.n_paths() != c.n_paths()) throw DimensionMismatch("multiport and cube path counts differ");
  const SubBasis basis(t.n_paths());
  return from_coords(t * to_coords(c, basis, tol), basis, c.role(), tol);
}

/// Residuals of the consistency conditions of a multiport.
struct MultiportReport {
  int n_paths = 0;
  double hermiticity_residual = 0.0;  ///< |T - T^dagger|_F
  double involution_residual = 0.0;   ///< |T^2 - 1|_F
  double pairing_violation = 0.0;     ///< worst Hermiticity break over images of Hermitian basis vectors
  double diagonal_sum_drift = 0.0;    ///< worst change of the total path probability
  double bbt_spectrum_deviation = 0.0;  ///< eigenvalues of B B^dagger vs {0, N(N-2)/(N-1)^2}
  double d_spectrum_deviation = 0.0;    ///< eigenvalues of D vs {1, 1/(N-1)}

  double worst() const {
    return std::max({hermiticity_residual, involution_residual, pairing_violation, diagonal_sum_drift,
                     bbt_spectrum_deviation, d_spectrum_deviation});
  }
  bool passed(double tol) const { return worst() <= tol; }
};

inline MultiportReport verify_multiport(const MultiportMatrix& t) {
  const SubBasis basis(t.n_paths());
  const int n = t.n_paths();
  const int d = basis.dimension();
  const Matrix& m = t.matrix();

  MultiportReport r;
  r.n_paths = n;
  r.hermiticity_residual = (m - m.adjoint()).norm();
  r.involution_residual = (m * m - Matrix::Identity(d, d)).norm();

  // Hermitian combinations of the basis: M_n, (B^vw + B^wv)/sqrt2, i(B^vw - B^wv)/sqrt2.
  std::vector<Vector> probes;
  for (int i = 0; i < n; ++i) probes.push_back(Vector::Unit(d, i));
  const double h = 1.0 / std::sqrt(2.0);
  for (int pair = 0; pair < basis.pair_count(); ++pair) {
    const int x = basis.coherence_index(pair);
    const int y = basis.conjugate_index(pair);
    probes.push_back(h * (Vector::Unit(d, x) + Vector::Unit(d, y)));
    probes.push_back(kI * h * (Vector::Unit(d, x) - Vector::Unit(d, y)));
  }
  for (const auto& probe : probes) {
    const SubspaceVector in{probe};
    const SubspaceVector out = t * in;
    r.pairing_violation = std::max(r.pairing_violation, out.pairing_violation(basis));
    r.diagonal_sum_drift =
        std::max(r.diagonal_sum_drift, std::abs(out.diagonal_sum(basis) - in.diagonal_sum(basis)));
  }

  const Matrix b = t.b_block();
  const double nn = n;
  const std::array<double, 2> bbt_targets{0.0, nn * (nn - 2.0) / ((nn - 1.0) * (nn - 1.0))};
  for (double e : hermitian_eigenvalues(b * b.adjoint())) {
    r.bbt_spectrum_deviation = std::max(r.bbt_spectrum_deviation, distance_to_set(e, bbt_targets));
  }
  const std::array<double, 2> d_targets{1.0, 1.0 / (nn - 1.0)};
  for (double e : hermitian_eigenvalues(t.d_block())) {
    r.d_spectrum_deviation = std::max(r.d_spectrum_deviation, distance_to_set(e, d_targets));
  }
  return r;
}

}  // namespace cubesim
