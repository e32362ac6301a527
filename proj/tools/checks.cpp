#include "checks.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "quench/eff_temp.hpp"
#include "quench/evolution.hpp"
#include "quench/free_quench.hpp"
#include "quench/imaginary_time.hpp"
#include "quench/mass_gap.hpp"
#include "quench/mode_kernels.hpp"

namespace quench::checks {

namespace {

using Outcome = std::pair<bool, std::string>;

template <class F>
CheckResult timed(std::string id, std::string title, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r{std::move(id), std::move(title), false, "", 0.0};
  try {
    auto [ok, detail] = body();
    r.passed = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = fmt::format("threw: {}", e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

QuenchSpec make_spec(int d, double m0, double m, double lambda, std::optional<double> cutoff = std::nullopt) {
  QuenchSpec s;
  s.d = d;
  s.m0 = m0;
  s.m = m;
  s.lambda = lambda;
  s.cutoff = cutoff;
  return s;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_points(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, i / double(n - 1));
  return v;
}

double worst_identity(int specs, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> k_dist(0.0, 4.0), mass(0.3, 4.0), post(0.0, 4.0), time(0.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < specs; ++i) {
    QuenchSpec s;
    s.m0 = mass(rng);
    do s.m = post(rng);
    while (std::abs(s.m - s.m0) < 1e-3);
    const double k = k_dist(rng);
    std::vector<std::pair<double, double>> samples(static_cast<std::size_t>(pairs));
    for (auto& p : samples) p = {time(rng), time(rng)};
    worst = std::max(worst, verify_quench_slab_identity(k, s, samples));
  }
  return worst;
}

}  // namespace

CheckResult slab_identity_criterion() {
  return timed("1", "slab-quench identity at matched L", [] {
    const double worst = worst_identity(32, 64, 20240601);
    return Outcome{worst < 1e-12, fmt::format("max |C_q - G_slab| = {:.3e} over 32 specs x 64 time pairs (bound 1e-12)", worst)};
  });
}

CheckResult table_criterion() {
  return timed("2", "f_d and g_2 quadrature vs closed forms", [] {
    const auto points = log_points(0.02, 8.0, 16);
    double worst = 0.0;
    std::string where;
    for (int d = 1; d <= 3; ++d)
      for (double s : points) {
        const double e = relative(f_d(s, d), f_d_closed(s, d));
        if (e > worst) {
          worst = e;
          where = fmt::format("f_{}(s={:.4g})", d, s);
        }
      }
    for (double s : points) {
      const double e = relative(g_d(s, 2), g_d_closed(s, 2));
      if (e > worst) {
        worst = e;
        where = fmt::format("g_2(s={:.4g})", s);
      }
    }
    return Outcome{worst < 1e-6, fmt::format("worst relative error {:.3e} at {} over 4 entries x 16 points (bound 1e-6)", worst, where)};
  });
}

CheckResult beta_intercept_criterion() {
  return timed("3", "average inverse temperature intercepts", [] {
    const auto beta_at = [](int d, double x) { return solve_average_beta(make_spec(d, 1.0, x, 0.0)).beta_bar.value(); };
    const double target3 = 2.0 * std::numbers::pi / std::sqrt(3.0);
    const double b1 = beta_at(3, 1e-3);
    const double b2 = beta_at(3, 2e-3);
    const double intercept3 = 2.0 * b1 - b2;
    const bool ok3 = std::abs(intercept3 - target3) < 0.01;

    double worst1 = 0.0;
    double worst_x = 0.0;
    for (double x : {1e-3, 2e-3, 5e-3, 1e-2, 2e-2}) {
      const auto s = make_spec(1, 1.0, x, 0.0);
      const double e = relative(solve_average_beta(s).beta_bar.value(), beta_expansion(s));
      if (e > worst1) {
        worst1 = e;
        worst_x = x;
      }
    }
    const bool ok1 = worst1 <= 0.01;

    const double b2d = beta_at(2, 1e-3);
    const bool ok2 = std::abs(b2d - 4.0) <= 0.4;
    return Outcome{ok1 && ok2 && ok3,
                   fmt::format("d=3 extrapolated {:.6f} vs {:.4f} ({}); d=1 worst gap to 4 + 32 log2 x / pi is {:.2f}% at x={} "
                               "(bound 1%, {}); d=2 at x=1e-3 {:.4f} (within 10% of 4: {})",
                               intercept3, target3, ok3 ? "ok" : "FAIL", 100 * worst1, worst_x, ok1 ? "ok" : "FAIL", b2d,
                               ok2 ? "ok" : "FAIL")};
  });
}

CheckResult horizon_criterion() {
  return timed("4", "d=1 deep-quench horizon profile", [] {
    const QuenchSpec s = make_spec(1, 1.0, 0.0, 0.0, 500.0);
    const MomentumGrid grid = default_grid(s, 16384);
    RealSpaceOptions opt;
    opt.deep_quench = true;
    double worst_in = 0.0;
    double worst_out = 0.0;
    for (double t : {0.5, 1.0, 2.0, 3.0})
      for (int i = 0; i < 16; ++i) {
        const double r = 8.0 * i / 15.0;
        const double v = real_space_propagator(r, t, t, s, grid, opt).value;
        const double e = std::abs(v - deep_quench_closed_form(r, t, 1, s.m0));
        if (horizon_indicator(r, t))
          worst_in = std::max(worst_in, e);
        else
          worst_out = std::max(worst_out, std::abs(v));
      }
    return Outcome{worst_in < 1e-3 && worst_out < 1e-3,
                   fmt::format("64 points: worst |C - m0(2t - r)/8| inside = {:.3e}, worst |C| outside = {:.3e} (bound 1e-3 m0)",
                               worst_in, worst_out)};
  });
}

CheckResult gap_asymptotics_criterion() {
  return timed("5", "gap-equation asymptotics", [] {
    const double m2 = solve_m_star(make_spec(2, 1.0, 0.0, 1e6)).m_star;
    const bool ok2 = std::abs(m2 - 0.24954) <= 1e-3;
    const double target3 = std::sqrt(1e-3) / (4.0 * std::numbers::pi * std::sqrt(2.0));
    const double m3a = solve_m_star(make_spec(3, 1.0, 0.0, 1e-3, 1e4)).m_star;
    const double m3b = solve_m_star(make_spec(3, 1.0, 0.0, 1e-3, 1e7)).m_star;
    const bool ok3 = relative(m3a, target3) <= 0.02 && relative(m3b, target3) <= 0.02;
    const double m1 = solve_m_star(make_spec(1, 1.0, 2.0, 1e4)).m_star;
    const bool ok1 = relative(m1, 2.0) <= 0.05;
    return Outcome{ok1 && ok2 && ok3,
                   fmt::format("d=2 m=0 lambda=1e6: {:.6f} vs 0.24954 ({}); d=3 m=0 lambda=1e-3: {:.6e} (L=1e4), {:.6e} (L=1e7) "
                               "vs {:.6e} ({}); d=1 m=2 lambda=1e4: {:.5f} vs 2, off by {:.1f}% (bound 5%, {})",
                               m2, ok2 ? "ok" : "FAIL", m3a, m3b, target3, ok3 ? "ok" : "FAIL", m1, 100 * relative(m1, 2.0),
                               ok1 ? "ok" : "FAIL")};
  });
}

CheckResult quasi_adiabatic_criterion() {
  return timed("8", "quasi-adiabatic limit", [] {
    const std::pair<int, double> cases[] = {{1, 2.0}, {2, 2.0}, {2, 5.0}};
    double worst_small = 0.0;
    double least_large = INFINITY;
    for (const auto& [d, m] : cases) {
      const auto small = make_spec(d, 1.0, m, 1e-3);
      worst_small = std::max(worst_small, std::abs(quasi_adiabatic_stationary(small).sigma_star / solve_m_star(small).sigma_star - 1.0));
      const auto large = make_spec(d, 1.0, m, 10.0);
      const double star = solve_m_star(large).sigma_star;
      least_large = std::min(least_large, relative(quasi_adiabatic_stationary(large).sigma_star, star));
    }
    return Outcome{worst_small <= 0.01 && least_large > 0.05,
                   fmt::format("lambda=1e-3: worst |Sigma_qa/Sigma* - 1| = {:.3e} (bound 1e-2); lambda=10: smallest gap {:.1f}% (needs > 5%)",
                               worst_small, 100 * least_large)};
  });
}

CheckResult vertex_criterion() {
  return timed("9", "vertex correlator branches", [] {
    double worst_branch = 0.0;
    double worst_prop = 0.0;
    for (double q : {0.5, 1.0, 2.0})
      for (double m0 : {1.0, 3.0})
        for (double t : {0.25, 1.0, 4.0})
          for (int i = 0; i < 12; ++i) {
            const double r = 1.5 * i;
            const VertexParams vp{q, m0};
            const double v = vertex_correlator(r, t, vp);
            const double branch = r > 2.0 * t ? std::exp(-q * q * m0 * t / 4.0) : std::exp(-q * q * m0 * r / 8.0);
            worst_branch = std::max(worst_branch, std::abs(v - branch));
            worst_prop = std::max(worst_prop, std::abs(v - vertex_correlator_from_propagator(r, t, vp)));
          }
    return Outcome{worst_branch == 0.0 && worst_prop < 1e-12,
                   fmt::format("216 points: |V - closed branch| max {:.3e} (exact), |V - exp(-q^2 (C(0)-C(r)))| max {:.3e} (bound 1e-12)",
                               worst_branch, worst_prop)};
  });
}

std::vector<CheckResult> evolution_criteria() {
  struct Case {
    int d;
    double m;
    double lambda;
    std::optional<double> cutoff;
    double t_max;
  };
  const Case cases[] = {{1, 2.0, 10.0, {}, 100.0},  {1, 0.5, 10.0, {}, 100.0}, {2, 2.0, 1.0, {}, 100.0},
                        {2, 2.0, 5.0, {}, 100.0},   {2, 2.0, 10.0, {}, 100.0}, {2, 2.0, 20.0, {}, 100.0},
                        {2, 5.0, 10.0, {}, 100.0},  {3, 0.0, 1.0, 100.0, 400.0}};

  const auto t0 = std::chrono::steady_clock::now();
  bool sigma_ok = true;
  bool exponent_ok = true;
  bool recovery_ok = true;
  bool canonical_ok = true;
  double worst_wronskian = 0.0;
  double worst_drift = 0.0;
  std::string sigma_detail;
  std::string exponent_detail;
  std::string recovery_detail;
  std::string failure;

  try {
    for (const Case& c : cases) {
      const QuenchSpec s = make_spec(c.d, 1.0, c.m, c.lambda, c.cutoff);
      EvolutionConfig cfg;
      cfg.t_max = c.t_max;
      const AnsatzComparison cmp = compare_ansatz(s, cfg);
      const double bound = c.d == 3 ? 0.05 : 0.03;
      sigma_ok = sigma_ok && cmp.relative_gap <= bound;
      sigma_detail += fmt::format("({},{},{}) {:.2e}; ", c.d, c.m, c.lambda, cmp.relative_gap);
      if (c.d == 1) {
        const bool ok = std::abs(cmp.fit.decay_exponent - 0.5) <= 0.1;
        exponent_ok = exponent_ok && ok;
        exponent_detail += fmt::format("m={}: p={:.3f}, Omega/m*={:.4f}; ", c.m, cmp.fit.decay_exponent,
                                       cmp.fit.frequency / std::sqrt(cmp.sigma_ansatz + c.m * c.m));
      }
      if (cmp.run.m_eff_sq_initial < 0.0) {
        double t_pos = INFINITY;
        for (std::size_t i = 0; i < cmp.run.trace.times.size(); ++i)
          if (cmp.run.trace.m_eff_sq[i] > 0.0) {
            t_pos = cmp.run.trace.times[i];
            break;
          }
        recovery_ok = recovery_ok && t_pos < 10.0 / s.m0;
        recovery_detail += fmt::format("({},{},{}) m_eff^2(0+)={:.4f} turns positive at t={:.3f}; ", c.d, c.m, c.lambda,
                                       cmp.run.m_eff_sq_initial, t_pos);
      }
      worst_wronskian = std::max(worst_wronskian, cmp.run.max_wronskian_deviation);
      worst_drift = std::max(worst_drift, cmp.run.energy_drift);
    }
  } catch (const std::exception& e) {
    failure = e.what();
  }
  const double evo_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool budget_ok = evo_seconds <= 600.0;

  CheckResult six{"6", "evolution vs ansatz", false, "", evo_seconds};
  if (!failure.empty()) {
    six.detail = fmt::format("threw: {}", failure);
  } else {
    six.passed = sigma_ok && exponent_ok && recovery_ok && budget_ok;
    six.detail = fmt::format("relative Sigma gaps (bound 3%, d=3 5%): {}[{}]; d=1 decay exponent (needs |p - 0.5| <= 0.1): {}[{}]; "
                             "{}[{}]; runtime {:.0f} s (budget 600 s)",
                             sigma_detail, sigma_ok ? "ok" : "FAIL", exponent_detail, exponent_ok ? "ok" : "FAIL",
                             recovery_detail, recovery_ok ? "ok" : "FAIL", evo_seconds);
  }

  CheckResult seven = timed("7", "conservation and canonical structure", [&] {
    if (!failure.empty()) throw NumericalError("evolution runs did not complete: " + failure);
    const QuenchSpec s = make_spec(1, 1.0, 2.0, 10.0);
    EvolutionConfig cfg;
    cfg.t_max = 100.0;
    const EvolutionRun coarse = self_consistent_evolve(s, cfg);
    cfg.dt = coarse.dt / 2.0;
    const EvolutionRun fine = self_consistent_evolve(s, cfg);
    const double ratio = coarse.energy_drift / fine.energy_drift;
    canonical_ok = worst_wronskian <= 1e-8 && worst_drift < 1e-4 && ratio >= 8.0;
    return Outcome{canonical_ok,
                   fmt::format("max Wronskian deviation {:.2e} (bound 1e-8); max energy drift {:.2e} (bound 1e-4); "
                               "drift ratio dt vs dt/2 = {:.2f} (needs >= 8)",
                               worst_wronskian, worst_drift, ratio)};
  });
  return {six, seven};
}

std::vector<CheckResult> figure_suite() {
  std::vector<CheckResult> out;
  out.push_back(slab_identity_criterion());
  out.push_back(table_criterion());
  out.push_back(beta_intercept_criterion());
  out.push_back(horizon_criterion());
  out.push_back(gap_asymptotics_criterion());
  for (auto& r : evolution_criteria()) out.push_back(std::move(r));
  out.push_back(quasi_adiabatic_criterion());
  out.push_back(vertex_criterion());
  return out;
}

std::vector<CheckResult> fast_suite() {
  std::vector<CheckResult> out;
  out.push_back(timed("slab", "slab identity, 8 specs x 16 pairs", [] {
    const double worst = worst_identity(8, 16, 7);
    return Outcome{worst < 1e-12, fmt::format("max deviation {:.3e}", worst)};
  }));
  out.push_back(timed("grid", "grid weights integrate e^-k", [] {
    QuenchSpec s;
    const MomentumGrid g = default_grid(s, 2048);
    const double v = radial_integrate(g, [](double k) { return std::exp(-k); });
    const double exact = -std::expm1(-100.0) / std::numbers::pi;
    return Outcome{relative(v, exact) < 1e-8, fmt::format("relative error {:.3e}", relative(v, exact))};
  }));
  out.push_back(timed("tables", "f_d, g_2 closed forms at 4 points", [] {
    double worst = 0.0;
    for (double s : {0.1, 0.6, 1.7, 5.0}) {
      for (int d = 1; d <= 3; ++d) worst = std::max(worst, relative(f_d(s, d), f_d_closed(s, d)));
      worst = std::max(worst, relative(g_d(s, 2), g_d_closed(s, 2)));
    }
    return Outcome{worst < 1e-6, fmt::format("worst relative error {:.3e}", worst)};
  }));
  out.push_back(timed("beta", "average beta solve residuals", [] {
    double worst = 0.0;
    for (int d = 1; d <= 3; ++d) worst = std::max(worst, solve_average_beta(make_spec(d, 1.0, 0.5, 0.0)).residual);
    return Outcome{worst < 1e-8, fmt::format("worst relative residual {:.3e}", worst)};
  }));
  out.push_back(timed("oscillator", "constant-frequency integrator accuracy", [] {
    std::vector<ModeState> st{ModeState{0.0}};
    for (int i = 0; i < 10000; ++i) step_modes(st, 1.0, 1e-3);
    const double e = std::max(std::abs(st[0].a - std::cos(10.0)), std::abs(st[0].b - std::sin(10.0)));
    return Outcome{e < 1e-9, fmt::format("max basis error {:.3e} after 1e4 steps", e)};
  }));
  out.push_back(timed("mstar", "massless d=2 strong-coupling gap", [] {
    const double m = solve_m_star(make_spec(2, 1.0, 0.0, 1e6)).m_star;
    return Outcome{std::abs(m - 0.24954) <= 1e-3, fmt::format("m* = {:.6f}", m)};
  }));
  out.push_back(timed("qa", "quasi-adiabatic weak-coupling agreement", [] {
    const auto s = make_spec(1, 1.0, 2.0, 1e-6);
    const double e = std::abs(quasi_adiabatic_stationary(s).sigma_star / solve_m_star(s).sigma_star - 1.0);
    return Outcome{e <= 1e-3, fmt::format("|Sigma_qa / Sigma* - 1| = {:.3e}", e)};
  }));
  out.push_back(timed("evolve", "short evolution: Wronskian, drift, serial = parallel", [] {
    const auto s = make_spec(1, 1.0, 2.0, 10.0);
    EvolutionConfig cfg;
    cfg.t_max = 20.0;
    const EvolutionRun par = self_consistent_evolve(s, cfg);
    cfg.parallel = false;
    const EvolutionRun ser = self_consistent_evolve(s, cfg);
    const bool same = par.trace.m_eff_sq == ser.trace.m_eff_sq;
    return Outcome{par.max_wronskian_deviation <= 1e-8 && par.energy_drift < 1e-4 && same,
                   fmt::format("Wronskian {:.2e}, drift {:.2e}, traces identical: {}", par.max_wronskian_deviation,
                               par.energy_drift, same ? "yes" : "no")};
  }));
  return out;
}

}  // namespace quench::checks
