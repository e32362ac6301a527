#include "quench/mass_gap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bracket_root.hpp"
#include "quench/eff_temp.hpp"

namespace quench {

namespace {

constexpr double pi = std::numbers::pi;

// Analytic continuation of int_cutoff^inf d^dk/(2pi)^d (c3 k^-3 + c5 k^-5), d < 3.
double tail_integral(int d, double cutoff, double c3, double c5) {
  return angular_measure(d) *
         (c3 * std::pow(cutoff, d - 3) / (3 - d) + c5 * std::pow(cutoff, d - 5) / (5 - d));
}

bool use_tail(const MomentumGrid& grid) { return grid.profile().tail_correction && grid.dimension() < 3; }

double gap_integrand(double k, double u, double m0, double m) {
  const double w0 = omega(k, m0);
  const double w = omega(k, m);
  const double ws = std::sqrt(k * k + u);
  const double a = (m0 - std::sqrt(u)) * (m0 + std::sqrt(u));
  const double s = w0 + ws;
  return a * a / (4.0 * s * s * w0 * ws * ws) + (m - std::sqrt(u)) * (m + std::sqrt(u)) / (2.0 * w * ws * (w + ws));
}

void check_grid(const QuenchSpec& spec, const MomentumGrid& grid) {
  if (grid.dimension() != spec.d) throw DomainError("grid dimension does not match the quench spec");
}

GapSolveResult finish(const QuenchSpec& spec, const detail::RootInU& root, double residual) {
  const double m_star = std::sqrt(root.u);
  return {m_star, (m_star - spec.m) * (m_star + spec.m), residual, GapBranch::generic, root.iterations};
}

std::optional<GapSolveResult> trivial_branch(const QuenchSpec& spec) {
  if (spec.lambda == 0.0) return GapSolveResult{spec.m, 0.0, 0.0, GapBranch::generic, 0};
  if (spec.m == spec.m0) return GapSolveResult{spec.m, 0.0, 0.0, GapBranch::no_quench, 0};
  if (spec.d == 1 && spec.m == 0.0) return GapSolveResult{0.0, 0.0, 0.0, GapBranch::massless_1d_limit, 0};
  return std::nullopt;
}

double start_hi(const QuenchSpec& spec) { return std::max({spec.m * spec.m, spec.m0 * spec.m0, 1e-4}); }

}  // namespace

double h_d(double s, int d, std::optional<double> cutoff) {
  switch (d) {
    case 1:
      if (!(s > 0.0)) throw DomainError("h_1 needs s > 0");
      return std::log(s) / 2.0;
    case 2:
      if (!(s >= 0.0)) throw DomainError("h_2 needs s >= 0");
      return (s - 1.0) / 2.0;
    case 3:
      if (!(s >= 0.0)) throw DomainError("h_3 needs s >= 0");
      if (!cutoff || !std::isfinite(*cutoff) || !(*cutoff > 0.0)) throw DomainError("h_3 needs a finite cutoff");
      return (s * s - 1.0) * std::log(*cutoff) / 4.0;
    default: throw DomainError("dimension must be 1, 2 or 3");
  }
}

double h_3_exact(double s, double cutoff) {
  if (!(s >= 0.0)) throw DomainError("h_3 needs s >= 0");
  if (!std::isfinite(cutoff) || !(cutoff > 0.0)) throw DomainError("h_3 needs a finite cutoff");
  const double L = cutoff;
  const double a = std::sqrt(L * L + 1.0);
  const double b = std::sqrt(L * L + s * s);
  const double sq = s == 0.0 ? 0.0 : s * s * std::asinh(L / s);
  return (L * (1.0 - s) * (1.0 + s) / (a + b) - std::asinh(L) + sq) / 4.0;
}

double h_d_quadrature(double s, int d, double cutoff) {
  if (d == 1 && !(s > 0.0)) throw DomainError("h_1 needs s > 0");
  if (!(s >= 0.0)) throw DomainError("h_d needs s >= 0");
  GridProfile p;
  p.nodes = 4096;
  p.k_min = 1e-4 * std::min(1.0, s + 1e-6);
  p.k_mid = 10.0 * std::max(1.0, s);
  const MomentumGrid grid = build_grid(d, cutoff, p);
  const double v = radial_integrate(grid, [&](double k) {
    const double a = omega(k, 1.0);
    const double b = omega(k, s);
    return (s - 1.0) * (s + 1.0) / (2.0 * a * b * (a + b));
  });
  return v / angular_measure(d);
}

double mass_counterterm(double mass, double coupling, int d, double cutoff) {
  if (!std::isfinite(cutoff) || !(cutoff > 0.0)) throw DomainError("mass counterterm needs a finite cutoff");
  if (!(mass >= 0.0)) throw DomainError("mass must be non-negative");
  if (d == 1 && mass == 0.0) throw DomainError("d = 1 mass counterterm is infrared divergent at zero mass");
  if (coupling == 0.0) return 0.0;
  GridProfile p;
  p.k_min = 1e-4 * std::min(cutoff, mass + 1e-6);
  p.k_mid = 10.0 * std::max(mass, 1e-3);
  const MomentumGrid grid = build_grid(d, cutoff, p);
  return coupling / 2.0 * radial_integrate(grid, [&](double k) { return 1.0 / (2.0 * omega(k, mass)); });
}

double coupling_counterterm_3d(double mass, double cutoff) {
  if (!std::isfinite(cutoff) || !(cutoff > 0.0)) throw DomainError("coupling counterterm needs a finite cutoff");
  if (!(mass > 0.0)) throw DomainError("coupling counterterm needs mass > 0");
  GridProfile p;
  p.k_min = 1e-4 * mass;
  p.k_mid = 10.0 * mass;
  const MomentumGrid grid = build_grid(3, cutoff, p);
  return radial_integrate(grid, [&](double k) {
    const double w = omega(k, mass);
    return 1.0 / (8.0 * w * w * w);
  });
}

double coupling_counterterm_3d_closed(double mass, double cutoff) {
  if (!(mass > 0.0) || !(cutoff > 0.0)) throw DomainError("coupling counterterm needs mass, cutoff > 0");
  return (std::asinh(cutoff / mass) - cutoff / std::hypot(cutoff, mass)) / (16.0 * pi * pi);
}

double renormalized_coupling(double lambda_r, double delta_lambda) {
  const double denom = 1.0 - lambda_r * delta_lambda;
  if (denom <= 1e-12) throw DomainError("Landau pole: lambda_R * delta_lambda >= 1");
  return lambda_r / denom;
}

InitialMassResult initial_effective_mass(const QuenchSpec& spec) {
  spec.validate();
  const double s = spec.m / spec.m0;
  const double h = spec.d == 3 ? h_3_exact(s, spec.resolved_cutoff() / spec.m0) : h_d(s, spec.d);
  const double v = spec.m * spec.m + spec.lambda / 2.0 * angular_measure(spec.d) * std::pow(spec.m0, spec.d - 1) * h;
  return {v, v > 0.0};
}

InitialMassResult initial_effective_mass_on_grid(const QuenchSpec& spec, const MomentumGrid& grid) {
  spec.validate();
  check_grid(spec, grid);
  if (spec.d == 1 && spec.m == 0.0) throw DomainError("d = 1 initial mass shift is infrared divergent at m = 0");
  const double m2 = spec.m * spec.m;
  const double m02 = spec.m0 * spec.m0;
  double integral = radial_integrate(grid, [&](double k) {
    const double w0 = omega(k, spec.m0);
    const double w = omega(k, spec.m);
    return (spec.m - spec.m0) * (spec.m + spec.m0) / (2.0 * w0 * w * (w0 + w));
  });
  if (use_tail(grid)) integral += tail_integral(spec.d, grid.cutoff(), (m2 - m02) / 4.0, 3.0 * (m02 * m02 - m2 * m2) / 16.0);
  const double v = m2 + spec.lambda / 2.0 * integral;
  return {v, v > 0.0};
}

MomentumGrid gap_grid(const QuenchSpec& spec, std::size_t nodes) {
  spec.validate();
  GridProfile p = GridProfile::for_spec(spec, nodes);
  p.tail_correction = spec.d < 3;
  return build_grid(spec.d, spec.resolved_cutoff(), p);
}

double gap_residual(double u, const QuenchSpec& spec, const MomentumGrid& grid) {
  double integral = radial_integrate(grid, [&](double k) { return gap_integrand(k, u, spec.m0, spec.m); });
  if (use_tail(grid)) {
    const double m2 = spec.m * spec.m;
    const double a = spec.m0 * spec.m0 - u;
    integral += tail_integral(spec.d, grid.cutoff(), (m2 - u) / 4.0, (a * a - 3.0 * (m2 * m2 - u * u)) / 16.0);
  }
  return u - spec.m * spec.m - spec.lambda / 2.0 * integral;
}

GapSolveResult solve_m_star(const QuenchSpec& spec, const MomentumGrid& grid) {
  spec.validate();
  check_grid(spec, grid);
  if (auto t = trivial_branch(spec)) return *t;
  const auto R = [&](double u) { return gap_residual(u, spec, grid); };
  const auto root = detail::bracketed_root_in_u(R, spec.m * spec.m, start_hi(spec));
  return finish(spec, root, std::abs(R(root.u)) / (spec.m0 * spec.m0));
}

GapSolveResult solve_m_star(const QuenchSpec& spec) { return solve_m_star(spec, gap_grid(spec)); }

GapSolveResult solve_m_star_closed_forms(const QuenchSpec& spec) {
  spec.validate();
  if (auto t = trivial_branch(spec)) return *t;
  const int d = spec.d;
  const double ang = angular_measure(d);
  const double cutoff = d == 3 ? spec.resolved_cutoff() : 0.0;
  const auto R = [&](double u) {
    const double ms = std::sqrt(u);
    const double s = spec.m / ms;
    const double h = d == 3 ? h_3_exact(s, cutoff / ms) : h_d(s, d);
    return u - spec.m * spec.m -
           spec.lambda / 2.0 * ang * (std::pow(spec.m0, d - 1) * f_d_closed(ms / spec.m0, d) + std::pow(ms, d - 1) * h);
  };
  const double lo = spec.m > 0.0 ? spec.m * spec.m : 1e-300;
  const auto root = detail::bracketed_root_in_u(R, lo, start_hi(spec));
  return finish(spec, root, std::abs(R(root.u)) / (spec.m0 * spec.m0));
}

GapSolveResult solve_m_star_renormalized_3d(const QuenchSpec& spec, const MomentumGrid& grid) {
  spec.validate();
  if (spec.d != 3) throw DomainError("renormalized gap equation is for d = 3 only");
  check_grid(spec, grid);
  if (auto t = trivial_branch(spec)) return *t;
  const double m2 = spec.m * spec.m;
  const auto R = [&](double u) {
    const double integral = radial_integrate(grid, [&](double k) {
      const double w = omega(k, spec.m);
      return gap_integrand(k, u, spec.m0, spec.m) + (u - m2) / (4.0 * w * w * w);
    });
    return u - m2 - spec.lambda / 2.0 * integral;
  };
  const auto root = detail::bracketed_root_in_u(R, m2, start_hi(spec));
  return finish(spec, root, std::abs(R(root.u)) / (spec.m0 * spec.m0));
}

double m_star_asymptotic(const QuenchSpec& spec, MStarRegime regime) {
  spec.validate();
  const double m0 = spec.m0;
  const double lam = spec.lambda;
  switch (regime) {
    case MStarRegime::massless_small_lambda: {
      if (spec.m != 0.0) throw DomainError("massless small-lambda regime needs m = 0");
      if (spec.d == 1) return 0.0;
      const double scaled = lam / std::pow(m0, 3 - spec.d);
      if (!(scaled > 0.0 && scaled <= 0.1)) throw DomainError("massless small-lambda regime needs 0 < lambda <= 0.1 (units of m0)");
      if (spec.d == 2) return 0.25 * std::sqrt(lam * m0 * std::log(m0 / lam) / (2.0 * pi));
      return m0 * std::sqrt(lam) / (4.0 * pi * std::sqrt(2.0));
    }
    case MStarRegime::massless_1d_limit: {
      if (spec.d != 1) throw DomainError("m -> 0 limit formula is for d = 1");
      if (!(spec.m > 0.0 && spec.m <= 0.1 * m0)) throw DomainError("m -> 0 limit needs 0 < m <= 0.1 m0");
      if (!(lam > 0.0)) throw DomainError("m -> 0 limit needs lambda > 0");
      return m0 * pi / 2.0 /
             (2.0 * std::log(m0 / spec.m) + 1.0 - 16.0 * pi * pi * spec.m * spec.m / (lam * m0 * m0));
    }
    case MStarRegime::large_lambda: {
      if (spec.d == 3) throw DomainError("d = 3 large-lambda behaviour is cutoff dependent; no formula");
      if (!(spec.m > 0.0)) throw DomainError("large-lambda regime needs m > 0");
      if (!(lam / std::pow(m0, 3 - spec.d) >= 100.0)) throw DomainError("large-lambda regime needs lambda >= 100 (units of m0)");
      return spec.d == 1 ? spec.m * spec.m / (2.0 * m0) : 4.0 * spec.m / pi;
    }
  }
  return 0.0;
}

}  // namespace quench
