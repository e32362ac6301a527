#pragma once

#include <cstddef>
#include <vector>

#include "quench/core.hpp"

namespace quench {

/// Structure-of-arrays storage for the real mode basis (a, a', b, b') of every
/// grid momentum, plus the per-mode constants the kernels need.
struct ModeArrays {
  std::vector<double> k2;
  std::vector<double> omega0;
  std::vector<double> vacuum;  // 1 / (2 w_k) with the post-quench mass
  std::vector<double> weight;
  // w / (2 w0), w w0 / 2 and w / (2 w_k): the weighted <phi_k^2> and its subtraction
  std::vector<double> a_coef, b_coef, offset;
  std::vector<double> a, a_dot, b, b_dot;

  std::size_t size() const { return k2.size(); }

  /// Basis at t = 0: a = 1, a' = 0, b = 0, b' = 1.
  static ModeArrays initial(const MomentumGrid& grid, double m0, double m);
};

/// Fourth-order symplectic position-Verlet composition (Forest-Ruth):
/// drift c0, kick d0, drift c1, kick d1, drift c2, kick d2, drift c3.
struct ForestRuth {
  static constexpr double theta = 1.3512071919596578;  // 1 / (2 - 2^{1/3})
  static constexpr double c[4] = {theta / 2, (1 - theta) / 2, (1 - theta) / 2, theta / 2};
  static constexpr double d[3] = {theta, 1 - 2 * theta, theta};
};

/// Modes per reduction block. Partial sums are formed per block and combined
/// in block order, so the result does not depend on the thread count.
inline constexpr std::size_t kReductionBlock = 256;

namespace kernels {

/// Drift positions by h and return sum_k w_k (<phi_k^2> - 1/(2 w_k)).
double drift_and_sum_serial(ModeArrays& s, double h);
double drift_and_sum_parallel(ModeArrays& s, double h);

/// Kick velocities by kick_h under w_k^2 = k^2 + m_eff_sq, drift by drift_h,
/// then return the regularized fluctuation sum.
double kick_drift_sum_serial(ModeArrays& s, double kick_h, double m_eff_sq, double drift_h);
double kick_drift_sum_parallel(ModeArrays& s, double kick_h, double m_eff_sq, double drift_h);

/// sum_k w_k (<phi'^2>/2 + (k^2 + m^2) <phi^2>/2 - w_k/2).
double free_energy_sum(const ModeArrays& s, double m_sq);

/// max_k |a b' - a' b - 1|.
double max_wronskian_deviation(const ModeArrays& s);

/// Index of the first mode with a non-finite entry, or size() when all finite.
std::size_t first_non_finite(const ModeArrays& s);

}  // namespace kernels

}  // namespace quench
