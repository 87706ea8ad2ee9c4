#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cubesim/cube.hpp"
#include "cubesim/cube_states.hpp"
#include "cubesim/errors.hpp"
#include "cubesim/ifm_result.hpp"
#include "cubesim/multiport.hpp"
#include "cubesim/quantum.hpp"

namespace cubesim {

/// Lower bound (1 - P_*)^2 / (N - 1) on the inconclusive probability of a cube interferometer.
inline double cube_tradeoff_bound(double p_trigger, int n_paths) {
  if (n_paths < 2) throw InvalidArgument("trade-off bound needs N >= 2");
  if (!(p_trigger >= 0.0 && p_trigger <= 1.0)) throw InvalidArgument("p_trigger outside [0, 1]");
  return (1.0 - p_trigger) * (1.0 - p_trigger) / (n_paths - 1);
}

/// Every intermediate object of a cube-model run.
struct CubeIfmTrace {
  IFMResult result;
  HermitianCube inside;               // after the first transformation
  HermitianCube post_measurement;     // bomb present, not triggered
  HermitianCube output_with_bomb;
  HermitianCube output_without_bomb;
  std::vector<int> support_ports;     // 1-based
  /// No-bomb output is a mixture of path cubes (no two- or three-path coherence).
  bool no_bomb_output_classical = false;
};

/// Cube-model interaction-free measurement in which both halves of the
/// interferometer apply `t` after complete dephasing of two-path coherences.
inline CubeIfmTrace trace_cube_ifm(const HermitianCube& input, const MultiportMatrix& t, int bomb_path,
                                   Tolerance tol = {}, double support_threshold = kSupportThreshold) {
  const int n = t.n_paths();
  if (input.n_paths() != n) throw DimensionMismatch("input cube and multiport path counts differ");
  const HermitianCube state = input.with_role(CubeRole::state, tol);
  auto stage = [&](const HermitianCube& c) { return apply_transform(t, dephase(c), tol); };

  const HermitianCube inside = stage(state);
  const double p_trigger = measure_path_prob(inside, bomb_path, tol);
  const HermitianCube post = luders_update_cube(inside, bomb_path, false, tol);
  const HermitianCube with_bomb = stage(post);
  const HermitianCube without_bomb = stage(inside);

  bool classical = true;
  without_bomb.tensor().for_each_index([&](const IndexTriple& idx) {
    if (!idx.is_diagonal() && std::abs(without_bomb.tensor()[idx]) > tol.eps()) classical = false;
  });

  IFMResult r;
  r.model = Model::cube;
  r.n_paths = n;
  r.p_trigger = p_trigger;
  std::vector<int> support;
  double inside_support = 0.0;
  for (int s = 1; s <= n; ++s) {
    const double p_free = without_bomb.diagonal(s);
    if (detail::near_threshold(p_free, support_threshold)) r.support_ambiguous = true;
    if (p_free > support_threshold) {
      support.push_back(s);
      inside_support += cube_inner(basis_cube(n, s), with_bomb, tol);
    }
  }
  r.p_inconclusive = detail::clamp_probability((1.0 - p_trigger) * inside_support);
  r.p_success = detail::clamp_probability(1.0 - r.p_trigger - r.p_inconclusive);
  r.bound_value = cube_tradeoff_bound(r.p_trigger, n);
  return {r, inside, post, with_bomb, without_bomb, std::move(support), classical};
}

/// Optimal N-path run: inject M_1, bomb on path 1, both transformations equal
/// to assemble_multiport(N). Throws if the no-bomb output is not exactly M_1.
inline CubeIfmTrace trace_optimal_cube_ifm(int n_paths, PhaseSign sign = PhaseSign::positive, Tolerance tol = {}) {
  if (n_paths < 3) throw InvalidArgument("the cube interferometer needs N >= 3");
  const MultiportMatrix t = assemble_multiport(n_paths, sign);
  CubeIfmTrace trace = trace_cube_ifm(basis_cube(n_paths, 1), t, 1, tol);
  if (!trace.no_bomb_output_classical ||
      max_abs_difference(trace.output_without_bomb, basis_cube(n_paths, 1)) > tol.eps()) {
    throw ConstructionFailed("no-bomb output of the multiport interferometer is not M_1");
  }
  return trace;
}

inline IFMResult run_cube_ifm(int n_paths, Tolerance tol = {}) { return trace_optimal_cube_ifm(n_paths, PhaseSign::positive, tol).result; }

struct RegionRow {
  int n_paths;
  double p_trigger;
  double bound;
};

/// Trade-off curves on a uniform P_* grid over [0, 1]. The N = 2 row is the
/// quantum pure-state curve (1 - P_*)^2, which the cube formula reproduces.
inline std::vector<RegionRow> region_scan(const std::vector<int>& n_list, int grid_points) {
  if (grid_points < 2) throw InvalidArgument("region_scan needs at least two grid points");
  std::vector<RegionRow> rows;
  rows.reserve(n_list.size() * static_cast<std::size_t>(grid_points));
  for (int n : n_list) {
    if (n < 2) throw InvalidArgument("region_scan needs N >= 2");
    for (int i = 0; i < grid_points; ++i) {
      const double p = static_cast<double>(i) / (grid_points - 1);
      const double bound = (n == 2) ? (1.0 - p) * (1.0 - p) : cube_tradeoff_bound(p, n);
      rows.push_back({n, p, bound});
    }
  }
  return rows;
}

/// Intensities I_S of every non-empty subset S of the three paths.
struct SorkinIntensities {
  double i1, i2, i3, i12, i13, i23, i123;
  double third_order() const { return i123 - i12 - i13 - i23 + i1 + i2 + i3; }
};

/// Intensity at `port` when every path outside `open_paths` is blocked. Blocking
/// zeroes each entry with an index outside the set; there is no renormalization.
inline double blocked_intensity(const HermitianCube& c, const MultiportMatrix& t, int port,
                                const std::vector<int>& open_paths, Tolerance tol = {}) {
  CubeTensor truncated(c.n_paths());
  auto open = [&](int p) { return std::find(open_paths.begin(), open_paths.end(), p) != open_paths.end(); };
  c.tensor().for_each_index([&](const IndexTriple& idx) {
    if (open(idx.j) && open(idx.k) && open(idx.l)) truncated[idx] = c.tensor()[idx];
  });
  const HermitianCube out = apply_transform(t, HermitianCube::from_tensor(truncated, CubeRole::effect, tol), tol);
  return cube_inner(basis_cube(c.n_paths(), port), out, tol);
}

inline SorkinIntensities sorkin_intensities(const HermitianCube& c, const MultiportMatrix& t2, int port,
                                            Tolerance tol = {}) {
  if (c.n_paths() != 3 || t2.n_paths() != 3) {
    throw InvalidArgument("the third-order Sorkin term is defined for three paths");
  }
  if (port < 1 || port > 3) throw InvalidArgument("port outside 1..3");
  auto I = [&](std::vector<int> s) { return blocked_intensity(c, t2, port, s, tol); };
  return {I({1}), I({2}), I({3}), I({1, 2}), I({1, 3}), I({2, 3}), I({1, 2, 3})};
}

/// I_123 - I_12 - I_13 - I_23 + I_1 + I_2 + I_3; vanishes without three-path coherence.
inline double sorkin_term(const HermitianCube& c, const MultiportMatrix& t2, int port, Tolerance tol = {}) {
  return sorkin_intensities(c, t2, port, tol).third_order();
}

struct PresetResult {
  std::string name;
  IFMResult result;
};

/// Balanced Mach-Zehnder: 50/50 splitter on both sides, bomb in arm 1.
inline IFMResult elitzur_vaidman_ifm(Tolerance tol = {}) {
  const UnitaryMatrix h = fourier_unitary(2);
  return quantum_ifm_from_input(h, h, 1, tol);
}

/// Uniform superposition inside, inverse Fourier transform at the output.
inline IFMResult fourier_ifm(int n_paths, Tolerance tol = {}) {
  const UnitaryMatrix f = fourier_unitary(n_paths);
  return quantum_ifm_from_input(f, f.adjoint(), 1, tol);
}

inline std::vector<PresetResult> run_quantum_presets(Tolerance tol = {}) {
  std::vector<PresetResult> out;
  out.push_back({"elitzur-vaidman", elitzur_vaidman_ifm(tol)});
  for (int n = 2; n <= 8; ++n) out.push_back({"fourier-" + std::to_string(n), fourier_ifm(n, tol)});
  return out;
}

struct ClickCounts {
  std::uint64_t triggered = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t success = 0;
};

/// Detector clicks drawn from the outcome distribution. Demonstration only.
inline ClickCounts sample_clicks(const IFMResult& r, std::uint64_t shots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ClickCounts c;
  for (std::uint64_t i = 0; i < shots; ++i) {
    const double x = u(rng);
    if (x < r.p_trigger) {
      ++c.triggered;
    } else if (x < r.p_trigger + r.p_inconclusive) {
      ++c.inconclusive;
    } else {
      ++c.success;
    }
  }
  return c;
}

}  // namespace cubesim
