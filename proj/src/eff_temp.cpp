#include "quench/eff_temp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/tools/roots.hpp>

namespace quench {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::size_t kNodes = 2048;
constexpr double kAsymptoticBelow = 1e-6;

void check_dimension(int d) {
  if (d < 1 || d > 3) throw DomainError("dimension must be 1, 2 or 3");
}

// The grids carry Omega_d / (2 pi)^d; the dimensionless integrals do not.
template <class F>
double dimensionless_integral(int d, double k_lo, double k_hi, F&& f) {
  GridProfile p;
  p.spacing = Spacing::geometric;
  p.nodes = kNodes;
  p.k_min = k_lo;
  const MomentumGrid grid = build_grid(d, k_hi, p);
  return radial_integrate(grid, f) / angular_measure(d);
}

std::string entry_name(const char* fn, int d, AsymptoticRegime r) {
  static const char* names[] = {"s~0", "s~1", "s->inf"};
  std::ostringstream os;
  os << fn << " table entry d=" << d << " " << names[static_cast<int>(r)];
  return os.str();
}

}  // namespace

bool f_d_is_asymptotic(double s, int d) { return d == 1 && s < kAsymptoticBelow; }

double f_d(double s, int d) {
  check_dimension(d);
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("f_d needs s > 0");
  if (s == 1.0) return 0.0;
  if (f_d_is_asymptotic(s, d)) return (pi / (2.0 * s) + 2.0 * std::log(s)) / 4.0;

  const double diff = (1.0 - s) * (1.0 + s);
  const double k_hi = 1e4 * std::max(1.0, s);
  const double body = dimensionless_integral(d, 1e-6 * std::min(1.0, s), k_hi, [&](double k) {
    const double a = std::sqrt(k * k + 1.0);
    const double b = std::sqrt(k * k + s * s);
    const double num = diff / (a + b);
    return num * num / (4.0 * a * b * b);
  });
  // Leading tail beyond k_hi: (1 - s^2)^2 k^{d-6} / 16.
  const double tail = diff * diff * std::pow(k_hi, d - 5) / (16.0 * (5 - d));
  return body + tail;
}

double g_d(double s, int d) {
  check_dimension(d);
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("g_d needs s > 0");
  const double k_hi = 1.0 + 60.0 / s + 12.0 / std::sqrt(s);
  return dimensionless_integral(d, 1e-6 * std::min(1.0, 1.0 / s), k_hi, [&](double k) {
    const double w = std::sqrt(k * k + 1.0);
    return 1.0 / (w * std::expm1(s * w));
  });
}

double f_d_closed(double s, int d) {
  check_dimension(d);
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("f_d exact form needs s > 0");
  if (s == 1.0) return 0.0;
  const double ls = std::log(s);
  switch (d) {
    case 1:
      if (s < 1.0) return (2.0 * ls + std::sqrt((1.0 - s) * (1.0 + s)) / s * std::acos(s)) / 4.0;
      return (2.0 * ls - std::sqrt((s - 1.0) * (s + 1.0)) / s * std::acosh(s)) / 4.0;
    case 2:
      if (s > 1.0) return (2.0 * (s - 1.0) - std::sqrt((s - 1.0) * (s + 1.0)) * std::acos(1.0 / s)) / 4.0;
      return (2.0 * (s - 1.0) + std::sqrt((1.0 - s) * (1.0 + s)) * std::acosh(1.0 / s)) / 4.0;
    default:
      if (s < 1.0)
        return ((1.0 - s * s) / 2.0 - s * s * ls - s * std::sqrt((1.0 - s) * (1.0 + s)) * std::acos(s)) / 4.0;
      return ((1.0 - s * s) / 2.0 - s * s * ls + s * std::sqrt((s - 1.0) * (s + 1.0)) * std::acosh(s)) / 4.0;
  }
}

double g_d_closed(double s, int d) {
  check_dimension(d);
  if (d != 2) throw DomainError("g_d has no exact table entry for d = " + std::to_string(d));
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("g_2 exact form needs s > 0");
  const double one_minus = s < std::numbers::ln2 ? -std::expm1(-s) : -std::exp(-s);
  return s < std::numbers::ln2 ? -std::log(one_minus) / s : -std::log1p(one_minus) / s;
}

double f_d_asymptotic(double s, int d, AsymptoticRegime regime) {
  check_dimension(d);
  const bool ok = (regime == AsymptoticRegime::small_s && s > 0.0 && s <= 0.1) ||
                  (regime == AsymptoticRegime::near_one && std::abs(s - 1.0) <= 0.1) ||
                  (regime == AsymptoticRegime::large_s && s >= 10.0 && std::isfinite(s));
  if (!ok) throw DomainError("s outside the validity of " + entry_name("f", d, regime));
  const double ls = std::log(s);
  switch (regime) {
    case AsymptoticRegime::small_s:
      if (d == 1) return (pi / (2.0 * s) + 2.0 * ls) / 4.0;
      if (d == 2) return -ls / 4.0;
      return (1.0 - pi * s) / 8.0;
    case AsymptoticRegime::near_one:
      return (s - 1.0) * (s - 1.0) / (d == 1 ? 6.0 : 12.0);
    case AsymptoticRegime::large_s:
      if (d == 1) return ls / 4.0;
      if (d == 2) return (1.0 - pi / 4.0) * s / 2.0;
      return (std::numbers::ln2 - 0.5) * s * s / 4.0;
  }
  return 0.0;
}

double g_d_asymptotic(double s, int d, AsymptoticRegime regime) {
  check_dimension(d);
  const bool ok = (regime == AsymptoticRegime::small_s && s > 0.0 && s <= 0.1) ||
                  (regime == AsymptoticRegime::large_s && s >= 5.0 && std::isfinite(s));
  if (!ok) throw DomainError("s outside the validity of " + entry_name("g", d, regime));
  if (regime == AsymptoticRegime::small_s) {
    if (d == 1) return pi / (2.0 * s) + std::log(s) / 2.0;
    if (d == 2) return -std::log(s) / s;
    return pi * pi / (6.0 * s * s) * (1.0 - 3.0 * s / pi);
  }
  if (d == 1) return std::exp(-s) * std::sqrt(pi / (2.0 * s));
  if (d == 2) return std::exp(-s) / s;
  return std::exp(-s) * std::sqrt(pi / 2.0) * std::pow(s, -1.5);
}

BetaSolveResult solve_average_beta(const QuenchSpec& spec) {
  spec.validate();
  if (!(spec.m > 0.0)) throw DomainError("average beta needs m > 0");
  const int d = spec.d;
  const double x = spec.m / spec.m0;
  BetaSolveResult res{MaybeInfinite::infinity(), 0.0, 0, 0.0, 0.0, x, 0.0};
  if (spec.m == spec.m0) return res;

  const double fx = f_d(x, d);
  const double xp = std::pow(x, d - 1);
  auto F = [&](double y) { return xp * g_d(x * y, d) - fx; };

  constexpr double y_lo = 1e-3;
  constexpr double y_hi = 1e3;
  constexpr int steps = 48;
  double a = y_lo;
  double fa = F(a);
  double b = 0.0;
  double fb = 0.0;
  bool found = false;
  for (int i = 1; i <= steps && !found; ++i) {
    b = y_lo * std::pow(y_hi / y_lo, static_cast<double>(i) / steps);
    fb = F(b);
    if ((fa > 0.0) != (fb > 0.0) || fb == 0.0) {
      found = true;
    } else {
      a = b;
      fa = fb;
    }
  }
  if (!found) {
    std::ostringstream os;
    os << "no sign change of the matching function for beta_bar m0 in [" << y_lo << ", " << y_hi
       << "] (x = " << x << ", d = " << d << ")";
    throw NumericalError(os.str());
  }

  std::uintmax_t iters = 100;
  const auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-13 * std::abs(lo); };
  const auto [lo, hi] = boost::math::tools::toms748_solve(F, a, b, fa, fb, tol, iters);
  const double y = 0.5 * (lo + hi);
  res.beta_bar = MaybeInfinite::finite(y / spec.m0);
  res.residual = std::abs(F(y)) / fx;
  res.iterations = static_cast<int>(iters);
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.y = y;
  if (!(res.residual < 1e-8)) throw NumericalError("average beta residual above 1e-8");
  return res;
}

double beta_expansion(const QuenchSpec& spec) {
  spec.validate();
  const double x = spec.m / spec.m0;
  if (!(x < 0.2)) throw DomainError("small-m expansion of beta_bar only valid for m / m0 < 0.2");
  switch (spec.d) {
    case 1: return 4.0 / spec.m0 + 32.0 * std::numbers::ln2 * spec.m / (pi * spec.m0 * spec.m0);
    case 2:
      if (x == 0.0) return 4.0 / spec.m0;
      return 4.0 / spec.m0 * (1.0 + (3.0 * std::numbers::ln2 - 2.0) / std::log(x));
    default: {
      const double r3 = std::sqrt(3.0);
      return (2.0 * pi / r3 - pi * (2.0 - pi / r3) * x) / spec.m0;
    }
  }
}

}  // namespace quench
