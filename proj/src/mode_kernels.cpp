#include "quench/mode_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace quench {

ModeArrays ModeArrays::initial(const MomentumGrid& grid, double m0, double m) {
  const std::size_t n = grid.size();
  ModeArrays s;
  s.k2.resize(n);
  s.omega0.resize(n);
  s.vacuum.resize(n);
  s.weight.assign(grid.weights().begin(), grid.weights().end());
  s.a.assign(n, 1.0);
  s.a_dot.assign(n, 0.0);
  s.b.assign(n, 0.0);
  s.b_dot.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = grid.nodes()[i];
    s.k2[i] = k * k;
    s.omega0[i] = omega(k, m0);
    s.vacuum[i] = 1.0 / (2.0 * omega(k, m));
  }
  s.a_coef.resize(n);
  s.b_coef.resize(n);
  s.offset.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.a_coef[i] = s.weight[i] / (2.0 * s.omega0[i]);
    s.b_coef[i] = s.weight[i] * s.omega0[i] / 2.0;
    s.offset[i] = s.weight[i] * s.vacuum[i];
  }
  return s;
}

namespace kernels {

namespace {

// One block of kick (skipped when kick_h == 0) followed by a drift, then the
// weighted fluctuation sum of the block. The simd reduction order is fixed at
// compile time, so results stay reproducible for a given build.
double block_partial(ModeArrays& s, std::size_t blk, double kick_h, double m_eff_sq, double drift_h) {
  const std::size_t lo = blk * kReductionBlock;
  const std::size_t n = std::min(s.size(), lo + kReductionBlock) - lo;
  const double* __restrict k2 = s.k2.data() + lo;
  const double* __restrict ac = s.a_coef.data() + lo;
  const double* __restrict bc = s.b_coef.data() + lo;
  const double* __restrict off = s.offset.data() + lo;
  double* __restrict a = s.a.data() + lo;
  double* __restrict ad = s.a_dot.data() + lo;
  double* __restrict b = s.b.data() + lo;
  double* __restrict bd = s.b_dot.data() + lo;
  if (kick_h != 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double f = kick_h * (k2[i] + m_eff_sq);
      ad[i] -= f * a[i];
      bd[i] -= f * b[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    a[i] += drift_h * ad[i];
    b[i] += drift_h * bd[i];
  }
  double acc = 0.0;
#pragma omp simd reduction(+ : acc)
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i] * ac[i] + b[i] * b[i] * bc[i] - off[i];
  return acc;
}

double combine(const std::vector<double>& partial) {
  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

std::size_t block_count(const ModeArrays& s) { return (s.size() + kReductionBlock - 1) / kReductionBlock; }

double blocked_sum_serial(ModeArrays& s, double kick_h, double m_eff_sq, double drift_h) {
  std::vector<double> partial(block_count(s));
  for (std::size_t blk = 0; blk < partial.size(); ++blk)
    partial[blk] = block_partial(s, blk, kick_h, m_eff_sq, drift_h);
  return combine(partial);
}

double blocked_sum_parallel(ModeArrays& s, double kick_h, double m_eff_sq, double drift_h) {
  std::vector<double> partial(block_count(s));
  const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>(partial.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < blocks; ++blk)
    partial[blk] = block_partial(s, static_cast<std::size_t>(blk), kick_h, m_eff_sq, drift_h);
  return combine(partial);
}

}  // namespace

double drift_and_sum_serial(ModeArrays& s, double h) { return blocked_sum_serial(s, 0.0, 0.0, h); }

double drift_and_sum_parallel(ModeArrays& s, double h) { return blocked_sum_parallel(s, 0.0, 0.0, h); }

double kick_drift_sum_serial(ModeArrays& s, double kick_h, double m_eff_sq, double drift_h) {
  return blocked_sum_serial(s, kick_h, m_eff_sq, drift_h);
}

double kick_drift_sum_parallel(ModeArrays& s, double kick_h, double m_eff_sq, double drift_h) {
  return blocked_sum_parallel(s, kick_h, m_eff_sq, drift_h);
}

double free_energy_sum(const ModeArrays& s, double m_sq) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w0 = s.omega0[i];
    const double phi2 = s.a[i] * s.a[i] / (2.0 * w0) + s.b[i] * s.b[i] * w0 / 2.0;
    const double pi2 = s.a_dot[i] * s.a_dot[i] / (2.0 * w0) + s.b_dot[i] * s.b_dot[i] * w0 / 2.0;
    const double w_sq = s.k2[i] + m_sq;
    acc.add(s.weight[i] * (0.5 * pi2 + 0.5 * w_sq * phi2 - 0.25 / s.vacuum[i]));
  }
  return acc.value();
}

double max_wronskian_deviation(const ModeArrays& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    worst = std::max(worst, std::abs(s.a[i] * s.b_dot[i] - s.a_dot[i] * s.b[i] - 1.0));
  return worst;
}

std::size_t first_non_finite(const ModeArrays& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!std::isfinite(s.a[i]) || !std::isfinite(s.b[i]) || !std::isfinite(s.a_dot[i]) || !std::isfinite(s.b_dot[i]))
      return i;
  return s.size();
}

}  // namespace kernels

}  // namespace quench
