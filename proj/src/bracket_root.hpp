#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "quench/core.hpp"

namespace quench::detail {

struct RootInU {
  double u;
  int iterations;
};

// Root of an increasing residual R(u) on [lo, inf): expands the upper end
// geometrically until R changes sign, then refines with TOMS 748.
template <class R>
RootInU bracketed_root_in_u(R&& residual, double lo, double hi_start) {
  const double r_lo = residual(lo);
  if (r_lo == 0.0) return {lo, 0};
  if (r_lo > 0.0) {
    std::ostringstream os;
    os << "gap residual already positive at the lower end u = " << lo;
    throw NumericalError(os.str());
  }
  double a = lo;
  double fa = r_lo;
  double b = std::max(hi_start, 2.0 * lo);
  double fb = residual(b);
  int expansions = 0;
  while (fb < 0.0) {
    if (++expansions > 80) {
      std::ostringstream os;
      os << "no sign change of the gap residual in u = [" << lo << ", " << b << "]";
      throw NumericalError(os.str());
    }
    a = b;
    fa = fb;
    b *= 4.0;
    fb = residual(b);
  }
  if (fb == 0.0) return {b, expansions};
  std::uintmax_t iters = 200;
  const auto tol = [](double x, double y) { return std::abs(y - x) <= 4e-16 * std::abs(x) + 1e-300; };
  const auto [x, y] = boost::math::tools::toms748_solve(residual, a, b, fa, fb, tol, iters);
  const double u = std::abs(residual(x)) <= std::abs(residual(y)) ? x : y;
  return {u, static_cast<int>(iters) + expansions};
}

}  // namespace quench::detail
