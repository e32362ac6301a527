#pragma once

#include <optional>

#include "quench/core.hpp"

namespace quench {

enum class GapBranch { generic, massless_1d_limit, no_quench };

struct GapSolveResult {
  double m_star;
  double sigma_star;  // m*^2 - m^2
  /// |gap equation| at the root, in units m0 = 1 (re-evaluated after the solve).
  double residual;
  GapBranch branch;
  int iterations;
};

struct InitialMassResult {
  double m_eff_sq_0;
  bool stable;
};

/// Closed forms of int_0^Lambda k^{d-1} (1/(2 sqrt(k^2+1)) - 1/(2 sqrt(k^2+s^2))) dk:
/// (log s)/2, (s-1)/2, and the leading-log (s^2-1) log(Lambda)/4 in d = 3.
double h_d(double s, int d, std::optional<double> cutoff = std::nullopt);

/// Exact d = 3 value at finite cutoff (same units as s).
double h_3_exact(double s, double cutoff);

/// The defining integral by quadrature up to the cutoff.
double h_d_quadrature(double s, int d, double cutoff);

/// (lambda/2) int d^dk/(2pi)^d 1/(2 sqrt(k^2 + mass^2)) up to the cutoff.
double mass_counterterm(double mass, double coupling, int d, double cutoff);

/// int d^3k/(2pi)^3 1/(8 (k^2+mass^2)^{3/2}) up to the cutoff, by quadrature.
double coupling_counterterm_3d(double mass, double cutoff);
/// Same integral from its antiderivative.
double coupling_counterterm_3d_closed(double mass, double cutoff);

/// Bare coupling lambda_R / (1 - lambda_R delta_lambda). Throws at the Landau pole.
double renormalized_coupling(double lambda_r, double delta_lambda);

/// m_eff^2(0+) = m^2 + (lambda/2) Omega_d/(2pi)^d m0^{d-1} h_d(m/m0), with the
/// exact finite-cutoff h_3 in d = 3.
InitialMassResult initial_effective_mass(const QuenchSpec& spec);

/// Same quantity as the quadrature sum on a grid (the value the evolution starts from).
InitialMassResult initial_effective_mass_on_grid(const QuenchSpec& spec, const MomentumGrid& grid);

/// Grid used by the gap equation: default profile, with the large-k tail
/// correction switched on in d = 1, 2.
MomentumGrid gap_grid(const QuenchSpec& spec, std::size_t nodes = 4096);

/// Asymptotic gap equation solved in u = m*^2 on the given grid.
GapSolveResult solve_m_star(const QuenchSpec& spec, const MomentumGrid& grid);
GapSolveResult solve_m_star(const QuenchSpec& spec);

/// The same equation in its dimensionless form with the exact f_d and h_d.
GapSolveResult solve_m_star_closed_forms(const QuenchSpec& spec);

/// Coupling-renormalized d = 3 variant (adds (m*^2 - m^2)/(4 w^3)); meaningful only for small lambda.
GapSolveResult solve_m_star_renormalized_3d(const QuenchSpec& spec, const MomentumGrid& grid);

/// Gap-equation residual u - m^2 - (lambda/2) int (...), evaluated on the grid.
double gap_residual(double u, const QuenchSpec& spec, const MomentumGrid& grid);

enum class MStarRegime { massless_small_lambda, massless_1d_limit, large_lambda };

/// Printed asymptotic solutions, each behind a validity guard.
double m_star_asymptotic(const QuenchSpec& spec, MStarRegime regime);

}  // namespace quench
