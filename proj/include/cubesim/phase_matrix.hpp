#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cubesim/errors.hpp"
#include "cubesim/linalg.hpp"

namespace cubesim {

/// Sign of the root of unity omega = exp(+-2*pi*i/N) used to build phases.
///
/// The two choices give complex-conjugate families; both satisfy every
/// orthonormality condition. `positive` is the default for phase matrices,
/// `negative` is the convention of the literal three-path multiport and of
/// the nonquantum cube family.
enum class PhaseSign { positive, negative };

inline int sign_factor(PhaseSign s) { return s == PhaseSign::positive ? 1 : -1; }

/// Unordered pair of paths (v, w), 1 < v < w <= N, that share a three-path
/// coherence with path 1.
struct CoherencePair {
  int v;
  int w;
  bool operator==(const CoherencePair&) const = default;
};

/// All pairs in lexicographic order; this order fixes the rows of the phase
/// matrix and the coherence coordinates of the multiport sub-basis.
inline std::vector<CoherencePair> coherence_pairs(int n_paths) {
  std::vector<CoherencePair> out;
  for (int v = 2; v <= n_paths; ++v)
    for (int w = v + 1; w <= n_paths; ++w) out.push_back({v, w});
  return out;
}

inline int coherence_pair_count(int n_paths) { return (n_paths - 1) * (n_paths - 2) / 2; }

/// Position of (v, w) in coherence_pairs(n_paths).
inline int coherence_pair_index(int n_paths, int v, int w) {
  if (v > w) std::swap(v, w);
  if (v < 2 || w > n_paths || v == w) throw InvalidArgument("not a coherence pair");
  // pairs with first element 2..v-1 come first
  int before = 0;
  for (int a = 2; a < v; ++a) before += n_paths - a;
  return before + (w - v - 1);
}

/// Unimodular phases of the optimal cubes; column n holds the phases of cube n.
class PhaseMatrix {
 public:
  PhaseMatrix(int n_paths, Matrix x, PhaseSign sign) : n_(n_paths), x_(std::move(x)), sign_(sign) {
    if (x_.rows() != coherence_pair_count(n_) || x_.cols() != n_) {
      throw DimensionMismatch("phase matrix must be (N-1)(N-2)/2 x N");
    }
  }

  int n_paths() const { return n_; }
  PhaseSign sign() const { return sign_; }
  const Matrix& matrix() const { return x_; }
  /// Phase vector of cube n (1-based).
  Vector column(int n) const { return x_.col(n - 1); }
  /// x^{(n)}_{vw}
  Complex phase(int n, int v, int w) const { return x_(coherence_pair_index(n_, v, w), n - 1); }

 private:
  int n_;
  Matrix x_;
  PhaseSign sign_;
};

/// Row of the (first-row-deleted) Fourier matrix that feeds row `pair_row` of X.
///
/// Even N stacks (N-2)/2 copies of all N-1 non-trivial rows; odd N stacks N-2
/// copies of the first (N-1)/2 of them.
inline int fourier_row_for_pair(int n_paths, int pair_row) {
  const int block = (n_paths % 2 == 0) ? n_paths - 1 : (n_paths - 1) / 2;
  return pair_row % block + 1;
}

inline PhaseMatrix build_phase_matrix(int n_paths, PhaseSign sign = PhaseSign::positive) {
  if (n_paths < 3) throw InvalidArgument("phase matrix needs at least three paths");
  const int rows = coherence_pair_count(n_paths);
  Matrix x(rows, n_paths);
  for (int p = 0; p < rows; ++p) {
    const long long r = fourier_row_for_pair(n_paths, p);
    for (int col = 0; col < n_paths; ++col) {
      x(p, col) = root_of_unity(sign_factor(sign) * r * col, n_paths);
    }
  }
  return PhaseMatrix(n_paths, std::move(x), sign);
}

struct PhaseMatrixCheck {
  /// max | |x| - 1 | over all entries
  double modulus_deviation;
  /// max over m != n of | 2 Re(x_m^dagger x_n) - (2 - N) |
  double overlap_deviation;
};

inline PhaseMatrixCheck check_phase_matrix(const PhaseMatrix& pm) {
  const Matrix& x = pm.matrix();
  PhaseMatrixCheck out{0.0, 0.0};
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out.modulus_deviation = std::max(out.modulus_deviation, std::abs(std::abs(x(i)) - 1.0));
  }
  const Matrix gram = x.adjoint() * x;
  const double target = 2.0 - pm.n_paths();
  for (int m = 0; m < pm.n_paths(); ++m)
    for (int n = 0; n < pm.n_paths(); ++n)
      if (m != n) {
        out.overlap_deviation =
            std::max(out.overlap_deviation, std::abs(gram(m, n).real() + gram(n, m).real() - target));
      }
  return out;
}

}  // namespace cubesim
