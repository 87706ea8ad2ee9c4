#pragma once

#include "cubesim/errors.hpp"

namespace cubesim {

/// Absolute tolerance for entrywise comparisons.
class Tolerance {
 public:
  static constexpr double kDefault = 1e-10;

  constexpr Tolerance() = default;
  constexpr explicit Tolerance(double eps) : eps_(eps) {
    if (!(eps > 0.0)) throw InvalidArgument("tolerance must be positive");
  }

  constexpr double eps() const { return eps_; }

 private:
  double eps_ = kDefault;
};

/// Threshold deciding which output ports belong to the no-bomb support.
inline constexpr double kSupportThreshold = 1e-9;

/// Frobenius-norm bound for residuals of assembled multiport matrices.
inline constexpr double kMatrixTolerance = 1e-9;

/// Largest number of paths the command-line front end accepts.
inline constexpr int kMaxPaths = 32;

}  // namespace cubesim
