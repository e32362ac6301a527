#pragma once

#include "quench/core.hpp"
#include "quench/imaginary_time.hpp"

namespace quench {

enum class AsymptoticRegime { small_s, near_one, large_s };

/// Quench integral int_0^inf k^{d-1} (sqrt(k^2+1) - sqrt(k^2+s^2))^2 / (4 sqrt(k^2+1) (k^2+s^2)) dk
/// by quadrature. In d = 1 below s = 1e-6 the small-s asymptotic form is returned instead;
/// f_d_is_asymptotic reports when that happens.
double f_d(double s, int d);
bool f_d_is_asymptotic(double s, int d);

/// Thermal integral int_0^inf k^{d-1} / (sqrt(k^2+1) (e^{s sqrt(k^2+1)} - 1)) dk by quadrature.
double g_d(double s, int d);

/// Exact forms of the quench integral, continued to real values on both sides of s = 1.
double f_d_closed(double s, int d);
/// Only d = 2 has an exact thermal form: -log(1 - e^{-s}) / s.
double g_d_closed(double s, int d);

/// Leading asymptotic entries. Each regime has a validity guard
/// (small_s: s <= 0.1, near_one: |s - 1| <= 0.1, large_s: s >= 10 for f and s >= 5 for g).
double f_d_asymptotic(double s, int d, AsymptoticRegime regime);
/// g has no near_one entry.
double g_d_asymptotic(double s, int d, AsymptoticRegime regime);

struct BetaSolveResult {
  MaybeInfinite beta_bar;
  /// |x^{d-1} g_d(x y) - f_d(x)| / f_d(x) at the returned root.
  double residual;
  int iterations;
  double bracket_lo;
  double bracket_hi;
  double x;  // m / m0
  double y;  // beta_bar m0
};

/// Average effective temperature from matching the late-time fluctuation
/// integral to the thermal one. m = m0 gives the infinite sentinel, m = 0 is rejected.
BetaSolveResult solve_average_beta(const QuenchSpec& spec);

/// Printed small-m expansions of beta_bar (m / m0 < 0.2 only).
double beta_expansion(const QuenchSpec& spec);

}  // namespace quench
