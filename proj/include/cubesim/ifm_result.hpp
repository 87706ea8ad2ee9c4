#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "cubesim/tolerance.hpp"

namespace cubesim {

enum class Model { quantum, cube };

inline std::string_view to_string(Model m) { return m == Model::quantum ? "quantum" : "cube"; }

/// Outcome probabilities of one single-shot interaction-free measurement.
///
/// p_trigger + p_inconclusive + p_success == 1. bound_value is the model's
/// lower bound on p_inconclusive given p_trigger: the support-projector bound for
/// quantum runs and (1 - p_trigger)^2 / (N - 1) for cube runs.
struct IFMResult {
  Model model = Model::quantum;
  int n_paths = 0;
  double p_trigger = 0.0;
  double p_inconclusive = 0.0;
  double p_success = 0.0;
  double bound_value = 0.0;
  /// Set when some no-bomb port probability is within a factor of ten of the
  /// support threshold, i.e. the support set could flip under rounding.
  bool support_ambiguous = false;
};

/// The bomb never explodes, and yet the outcome is sometimes conclusive.
inline bool is_perfect_ifm(const IFMResult& r, Tolerance tol = {}) {
  return r.p_trigger < tol.eps() && r.p_inconclusive < 1.0 - tol.eps();
}

/// Normalization, range and model-bound checks.
inline bool satisfies_invariants(const IFMResult& r, Tolerance tol = {}) {
  const double e = tol.eps();
  auto in_unit = [e](double p) { return p >= -e && p <= 1.0 + e; };
  return in_unit(r.p_trigger) && in_unit(r.p_inconclusive) && in_unit(r.p_success) &&
         std::abs(r.p_trigger + r.p_inconclusive + r.p_success - 1.0) <= e &&
         r.p_inconclusive >= r.bound_value - e;
}

namespace detail {

/// Snaps rounding noise back into [0, 1].
inline double clamp_probability(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

/// True when p could land on either side of the support threshold.
inline bool near_threshold(double p, double threshold) {
  return p >= threshold / 10.0 && p <= threshold * 10.0;
}

}  // namespace detail

}  // namespace cubesim
