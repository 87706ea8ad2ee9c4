#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "cubesim/cube.hpp"
#include "cubesim/linalg.hpp"

// Reference values transcribed entry by entry, including their typos.
namespace cubesim::reference {

template <std::size_t N>
using Slabs = std::array<std::array<std::array<Complex, N>, N>, N>;

/// slabs[j][k][l] holds C_{j+1, k+1, l+1}.
template <std::size_t N>
CubeTensor from_slabs(const Slabs<N>& slabs, double scale) {
  CubeTensor t(static_cast<int>(N));
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t l = 0; l < N; ++l)
        t(static_cast<int>(j + 1), static_cast<int>(k + 1), static_cast<int>(l + 1)) = scale * slabs[j][k][l];
  return t;
}

/// Three-path cube produced inside the optimal N = 3 interferometer.
inline CubeTensor interferometer_cube_n3() {
  const Complex a = 1.0 / std::sqrt(3.0);
  const Slabs<3> s{{
      {{{0, 0, 0}, {0, 0, a}, {0, a, 0}}},
      {{{0, 0, a}, {0, 1, 0}, {a, 0, 0}}},
      {{{0, a, 0}, {a, 0, 0}, {0, 0, 1}}},
  }};
  return from_slabs<3>(s, 0.5);
}

/// The same cube after the bomb on path 1 did not fire.
inline CubeTensor post_measurement_cube_n3() {
  const Slabs<3> s{{
      {{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
      {{{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}},
      {{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}},
  }};
  return from_slabs<3>(s, 0.5);
}

/// Output cube when the bomb is present.
inline CubeTensor bomb_output_cube_n3() {
  const Complex a = -1.0 / (4.0 * std::sqrt(3.0));
  const Slabs<3> s{{
      {{{0.5, 0, 0}, {0, 0, a}, {0, a, 0}}},
      {{{0, 0, a}, {0, 0.25, 0}, {a, 0, 0}}},
      {{{0, a, 0}, {a, 0, 0}, {0, 0, 0.25}}},
  }};
  return from_slabs<3>(s, 1.0);
}

/// The four displayed N = 4 optimal cubes, common prefactor 1/(3 sqrt 3).
inline std::vector<CubeTensor> optimal_cubes_n4() {
  const Complex r(std::sqrt(3.0), 0);
  const Complex i(0, 1);
  const double scale = 1.0 / (3.0 * std::sqrt(3.0));
  const Slabs<4> c1{{
      {{{0, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}}},
      {{{0, 0, 1, 1}, {0, r, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}}},
      {{{0, 1, 0, 1}, {1, 0, 0, 0}, {0, 0, r, 0}, {1, 0, 0, 0}}},
      {{{0, 1, 1, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, r}}},
  }};
  const Slabs<4> c2{{
      {{{r, 0, 0, 0}, {0, 0, -i, -1}, {0, i, 0, i}, {0, -1, -i, 0}}},
      {{{0, 0, i, -1}, {0, 0, 0, 0}, {-i, 0, 0, 0}, {-1, 0, 0, 0}}},
      {{{0, -i, 0, i}, {i, 0, 0, 0}, {0, 0, r, 0}, {-i, 0, 0, 0}}},
      {{{0, -1, -i, 0}, {-1, 0, 0, 0}, {i, 0, 0, 0}, {0, 0, 0, r}}},
  }};
  const Slabs<4> c3{{
      {{{r, 0, 0, 0}, {0, 0, -1, 1}, {0, -1, 0, -1}, {0, 1, -1, 0}}},
      {{{0, 0, -1, 1}, {0, r, 0, 0}, {-1, 0, 0, 0}, {1, 0, 0, 0}}},
      {{{0, -1, 0, -1}, {-1, 0, 0, 0}, {0, 0, 0, 0}, {-1, 0, 0, 0}}},
      {{{0, 1, -1, 0}, {1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, r}}},
  }};
  const Slabs<4> c4{{
      {{{r, 0, 0, 0}, {0, 0, i, -1}, {0, -i, 0, -i}, {0, -1, i, 0}}},
      {{{0, 0, -i, -1}, {0, r, 0, 0}, {i, 0, 0, 0}, {-1, 0, 0, 0}}},
      {{{0, i, 0, -i}, {-i, 0, 0, 0}, {0, 0, r, 0}, {i, 0, 0, 0}}},
      {{{0, -1, i, 0}, {-1, 0, 0, 0}, {-i, 0, 0, 0}, {0, 0, 0, 0}}},
  }};
  return {from_slabs<4>(c1, scale), from_slabs<4>(c2, scale), from_slabs<4>(c3, scale),
          from_slabs<4>(c4, scale)};
}

namespace detail {
inline Matrix rows(std::initializer_list<std::initializer_list<Complex>> data, double scale) {
  Matrix m(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(data.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : data) {
    Eigen::Index c = 0;
    for (const Complex& x : row) m(r, c++) = scale * x;
    ++r;
  }
  return m;
}
}  // namespace detail

/// D block for N = 4 from the principal square root.
inline Matrix d_block_n4() {
  return detail::rows({{2, 0, 0, 0, 0, -1},
                       {0, 2, 0, 0, -1, 0},
                       {0, 0, 2, -1, 0, 0},
                       {0, 0, -1, 2, 0, 0},
                       {0, -1, 0, 0, 2, 0},
                       {-1, 0, 0, 0, 0, 2}},
                      1.0 / 3.0);
}

/// Two non-principal D blocks for N = 4.
inline Matrix d_block_n4_alt1() {
  const Complex i(0, 1);
  return detail::rows({{1, -i, i, -i, i, 0},
                       {i, 1, 1, -1, 0, -i},
                       {-i, 1, 1, 0, -1, i},
                       {i, -1, 0, 1, 1, -i},
                       {-i, 0, -1, 1, 1, i},
                       {0, i, -i, i, -i, 1}},
                      1.0 / 3.0);
}

inline Matrix d_block_n4_alt2() {
  const Complex i(0, 1);
  return detail::rows({{1, -1, -i, i, 1, 0},
                       {-1, 1, -i, i, 0, 1},
                       {i, i, 1, 0, -i, -i},
                       {-i, -i, 0, 1, i, i},
                       {1, 0, i, -i, 1, -1},
                       {0, 1, i, -i, -1, 1}},
                      1.0 / 3.0);
}

/// Full 10 x 10 transformation for N = 4 built around the second alternative D.
inline Matrix multiport_n4_alt2() {
  const Complex i(0, 1);
  return detail::rows({{0, 1, 1, 1, 1, 1, 1, 1, 1, 1},
                       {1, 0, 1, 1, i, -1, -i, -i, -1, i},
                       {1, 1, 0, 1, -1, 1, -1, -1, 1, -1},
                       {1, 1, 1, 0, -i, -1, i, i, -1, -i},
                       {1, -i, -1, i, 1, -1, -i, i, 1, 0},
                       {1, -1, 1, -1, -1, 1, -i, i, 0, 1},
                       {1, i, -1, -i, i, i, 1, 0, -i, -i},
                       {1, i, -1, -i, -i, -i, 0, 1, i, i},
                       {1, -1, 1, -1, 1, 0, i, -i, 1, -1},
                       {1, -i, -1, i, 0, 1, i, -i, -1, 1}},
                      1.0 / 3.0);
}

}  // namespace cubesim::reference
