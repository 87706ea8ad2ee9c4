#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <compare>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubesim/errors.hpp"
#include "cubesim/linalg.hpp"
#include "cubesim/tolerance.hpp"

namespace cubesim {

/// Index triple (j, k, l) with 1-based path labels.
struct IndexTriple {
  int j = 1;
  int k = 1;
  int l = 1;

  auto operator<=>(const IndexTriple&) const = default;

  bool is_canonical() const { return j <= k && k <= l; }
  bool is_diagonal() const { return j == k && k == l; }
  /// Exactly two of the three indices coincide.
  bool is_two_path() const { return !is_diagonal() && (j == k || k == l || j == l); }
  bool is_three_path() const { return j != k && k != l && j != l; }
  bool contains(int path) const { return j == path || k == path || l == path; }
};

/// Calls fn(permuted_triple, odd) for all six permutations of the index
/// positions; odd permutations are those reached by an odd number of swaps.
template <typename Fn>
void for_each_permutation(const IndexTriple& t, Fn&& fn) {
  fn(IndexTriple{t.j, t.k, t.l}, false);
  fn(IndexTriple{t.k, t.l, t.j}, false);
  fn(IndexTriple{t.l, t.j, t.k}, false);
  fn(IndexTriple{t.k, t.j, t.l}, true);
  fn(IndexTriple{t.j, t.l, t.k}, true);
  fn(IndexTriple{t.l, t.k, t.j}, true);
}

/// Dense N x N x N complex tensor without any symmetry guarantee.
class CubeTensor {
 public:
  explicit CubeTensor(int n_paths) : n_(n_paths) {
    if (n_paths < 1) throw InvalidArgument("cube needs at least one path");
    data_.assign(static_cast<std::size_t>(n_) * n_ * n_, Complex{});
  }

  int n_paths() const { return n_; }

  Complex& operator()(int j, int k, int l) { return data_[offset(j, k, l)]; }
  const Complex& operator()(int j, int k, int l) const { return data_[offset(j, k, l)]; }
  Complex& operator[](const IndexTriple& t) { return (*this)(t.j, t.k, t.l); }
  const Complex& operator[](const IndexTriple& t) const { return (*this)(t.j, t.k, t.l); }

  /// Bounds-checked access.
  const Complex& at(int j, int k, int l) const {
    if (!in_range(j) || !in_range(k) || !in_range(l)) {
      throw InvalidArgument("cube index out of range");
    }
    return (*this)(j, k, l);
  }

  std::span<const Complex> data() const { return data_; }

  /// Visits every index triple in lexicographic order.
  template <typename Fn>
  void for_each_index(Fn&& fn) const {
    for (int j = 1; j <= n_; ++j)
      for (int k = 1; k <= n_; ++k)
        for (int l = 1; l <= n_; ++l) fn(IndexTriple{j, k, l});
  }

  CubeTensor& operator+=(const CubeTensor& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }
  CubeTensor& operator-=(const CubeTensor& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }
  CubeTensor& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend CubeTensor operator+(CubeTensor a, const CubeTensor& b) { return a += b; }
  friend CubeTensor operator-(CubeTensor a, const CubeTensor& b) { return a -= b; }
  friend CubeTensor operator*(Complex s, CubeTensor a) { return a *= s; }

  bool in_range(int i) const { return i >= 1 && i <= n_; }

 private:
  std::size_t offset(int j, int k, int l) const {
    assert(in_range(j) && in_range(k) && in_range(l));
    return (static_cast<std::size_t>(j - 1) * n_ + (k - 1)) * n_ + (l - 1);
  }
  void require_same_size(const CubeTensor& other) const {
    if (other.n_ != n_) throw DimensionMismatch("cube sizes differ");
  }

  int n_;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_difference(const CubeTensor& a, const CubeTensor& b) {
  if (a.n_paths() != b.n_paths()) throw DimensionMismatch("cube sizes differ");
  double worst = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) worst = std::max(worst, std::abs(da[i] - db[i]));
  return worst;
}

/// Largest deviation from the conjugation rule over all index permutations.
inline double hermiticity_residual(const CubeTensor& c) {
  double worst = 0.0;
  c.for_each_index([&](const IndexTriple& t) {
    const Complex v = c[t];
    for_each_permutation(t, [&](const IndexTriple& p, bool odd) {
      worst = std::max(worst, std::abs(c[p] - (odd ? std::conj(v) : v)));
    });
  });
  return worst;
}

/// True iff every transposition of two indices conjugates the entry, within tol.
inline bool is_hermitian(const CubeTensor& c, Tolerance tol = {}) {
  return hermiticity_residual(c) <= tol.eps();
}

/// Raw contraction sum_{jkl} conj(a_jkl) b_jkl.
inline Complex raw_inner(const CubeTensor& a, const CubeTensor& b) {
  if (a.n_paths() != b.n_paths()) throw DimensionMismatch("cube_inner: path counts differ");
  Complex sum{};
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) sum += std::conj(da[i]) * db[i];
  return sum;
}

/// Real inner product of two Hermitian tensors; a non-negligible imaginary part
/// means one of the inputs breaks the conjugation rule.
inline double cube_inner(const CubeTensor& m, const CubeTensor& c, Tolerance tol = {}) {
  const Complex raw = raw_inner(m, c);
  if (std::abs(raw.imag()) > tol.eps()) {
    throw NotHermitian("cube_inner: imaginary residue " + std::to_string(raw.imag()) +
                       " indicates a non-Hermitian input");
  }
  return raw.real();
}

enum class CubeRole { state, effect };

/// Rank-3 tensor obeying the index-exchange conjugation rule.
///
/// Values are immutable once constructed. Construction symmetrizes the input
/// tensor onto the Hermitian subspace after checking that it was already
/// Hermitian within tolerance, so stored entries satisfy the rule exactly.
/// Cubes tagged as states additionally carry unit total path probability,
/// diagonal entries in [0, 1] and purity at most one.
class HermitianCube {
 public:
  static HermitianCube from_tensor(const CubeTensor& t, CubeRole role = CubeRole::effect,
                                   Tolerance tol = {}) {
    const double residual = hermiticity_residual(t);
    if (residual > tol.eps()) {
      throw NotHermitian("tensor violates the index-exchange conjugation rule by " +
                         std::to_string(residual));
    }
    HermitianCube cube(symmetrize(t), role);
    if (role == CubeRole::state) cube.check_state(tol);
    return cube;
  }

  int n_paths() const { return tensor_.n_paths(); }
  CubeRole role() const { return role_; }
  bool is_state() const { return role_ == CubeRole::state; }
  const CubeTensor& tensor() const { return tensor_; }

  Complex operator()(int j, int k, int l) const { return tensor_.at(j, k, l); }
  Complex operator[](const IndexTriple& t) const { return tensor_.at(t.j, t.k, t.l); }
  double diagonal(int n) const { return tensor_.at(n, n, n).real(); }

  double diagonal_sum() const {
    double s = 0.0;
    for (int n = 1; n <= n_paths(); ++n) s += diagonal(n);
    return s;
  }

  HermitianCube with_role(CubeRole role, Tolerance tol = {}) const {
    HermitianCube copy(tensor_, role);
    if (role == CubeRole::state) copy.check_state(tol);
    return copy;
  }

  /// Orthogonal projection of an arbitrary tensor onto the Hermitian subspace.
  static CubeTensor symmetrize(const CubeTensor& t) {
    CubeTensor out(t.n_paths());
    t.for_each_index([&](const IndexTriple& idx) {
      if (!idx.is_canonical()) return;
      Complex acc{};
      for_each_permutation(idx, [&](const IndexTriple& p, bool odd) {
        acc += odd ? std::conj(t[p]) : t[p];
      });
      acc /= 6.0;
      for_each_permutation(idx, [&](const IndexTriple& p, bool odd) {
        out[p] = odd ? std::conj(acc) : acc;
      });
    });
    return out;
  }

 private:
  HermitianCube(CubeTensor t, CubeRole role) : tensor_(std::move(t)), role_(role) {}

  void check_state(Tolerance tol) const {
    double total = 0.0;
    for (int n = 1; n <= n_paths(); ++n) {
      const double p = diagonal(n);
      if (p < -tol.eps() || p > 1.0 + tol.eps()) {
        throw InvalidArgument("state cube has path probability " + std::to_string(p) +
                              " outside [0, 1] on path " + std::to_string(n));
      }
      total += p;
    }
    if (std::abs(total - 1.0) > tol.eps()) {
      throw InvalidArgument("state cube path probabilities sum to " + std::to_string(total));
    }
    const double purity = raw_inner(tensor_, tensor_).real();
    if (purity > 1.0 + tol.eps()) {
      throw InvalidArgument("state cube purity " + std::to_string(purity) + " exceeds one");
    }
  }

  CubeTensor tensor_;
  CubeRole role_;
};

inline double cube_inner(const HermitianCube& m, const HermitianCube& c, Tolerance tol = {}) {
  return cube_inner(m.tensor(), c.tensor(), tol);
}

/// (C, C); equals one for pure cubes.
inline double purity(const HermitianCube& c) { return raw_inner(c.tensor(), c.tensor()).real(); }

inline double max_abs_difference(const HermitianCube& a, const HermitianCube& b) {
  return max_abs_difference(a.tensor(), b.tensor());
}

using CanonicalEntries = std::map<IndexTriple, Complex>;

/// Builds a Hermitian cube from its entries at canonical triples j <= k <= l.
///
/// Even permutations of a canonical triple copy its value, odd permutations copy
/// the conjugate; canonical triples that are not listed are zero. Entries with a
/// repeated index are fixed by a transposition and therefore must be real.
inline HermitianCube hermitian_complete(const CanonicalEntries& canonical, int n_paths,
                                        CubeRole role = CubeRole::effect, Tolerance tol = {}) {
  if (n_paths < 2) throw InvalidArgument("a cube needs at least two paths");
  CubeTensor t(n_paths);
  for (const auto& [idx, value] : canonical) {
    if (!t.in_range(idx.j) || !t.in_range(idx.k) || !t.in_range(idx.l)) {
      throw InvalidArgument("canonical triple out of range");
    }
    if (!idx.is_canonical()) throw InvalidArgument("triple is not canonical (need j <= k <= l)");
    Complex v = value;
    if (!idx.is_three_path()) {
      if (std::abs(v.imag()) > tol.eps()) {
        throw NotHermitian(std::string(idx.is_diagonal() ? "diagonal" : "repeated-index") +
                           " canonical value must be real");
      }
      v = Complex{v.real(), 0.0};
    }
    for_each_permutation(idx, [&](const IndexTriple& p, bool odd) { t[p] = odd ? std::conj(v) : v; });
  }
  return HermitianCube::from_tensor(t, role, tol);
}

/// Non-zero entries at canonical triples; inverse of hermitian_complete.
inline CanonicalEntries extract_canonical(const HermitianCube& c) {
  CanonicalEntries out;
  c.tensor().for_each_index([&](const IndexTriple& idx) {
    if (!idx.is_canonical()) return;
    const Complex v = c.tensor()[idx];
    if (v != Complex{}) out.emplace(idx, v);
  });
  return out;
}

}  // namespace cubesim
