#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "quench/evolution.hpp"
#include "quench/free_quench.hpp"

using namespace quench;

TEST_CASE("evolution grid sizing") {
  const QuenchSpec s{.m0 = 1.0, .m = 2.0, .lambda = 10.0};
  const auto g = evolution_grid(s, 100.0);
  CHECK(g.cutoff() == 40.0);
  CHECK(g.size() == 4 * (200 + static_cast<std::size_t>(std::ceil(std::log(10.0) / 0.02))));
  const QuenchSpec d3{.m0 = 1.0, .m = 0.0, .lambda = 1.0, .d = 3, .cutoff = 100.0};
  CHECK(evolution_grid(d3, 50.0).cutoff() == 100.0);
  CHECK_THROWS_AS(evolution_grid(s, 0.0), DomainError);
}

TEST_CASE("time step choice and stability guard") {
  const QuenchSpec s{.m0 = 1.0, .m = 2.0, .lambda = 10.0};
  const auto g = evolution_grid(s, 10.0);
  const auto sc = resolve_time_step(s, g, 0.0);
  CHECK(sc.dt * sc.omega_max == doctest::Approx(0.02));
  CHECK_THROWS_AS(resolve_time_step(s, g, 1.0), DomainError);
  EvolutionConfig cfg;
  cfg.t_max = 1.0;
  cfg.dt = 1.0;
  CHECK_THROWS_AS(self_consistent_evolve(s, cfg), DomainError);
}

TEST_CASE("free evolution reproduces the exact mode propagator") {
  const QuenchSpec s{.m0 = 1.0, .m = 2.0};
  EvolutionConfig cfg;
  cfg.t_max = 10.0;
  cfg.record_stride = 50;
  cfg.probe_modes = {0, 100, 300};
  const auto run = self_consistent_evolve(s, cfg);
  for (double v : run.trace.m_eff_sq) CHECK(v == 4.0);
  for (const auto& p : run.probes) {
    const auto pair = ModePair::at(p.k, s.m0, s.m);
    for (std::size_t j = 0; j < p.a.size(); ++j) {
      const double t = run.trace.times[j];
      const ModeState st{p.k, p.a[j], p.a_dot[j], p.b[j], p.b_dot[j]};
      CHECK(mode_correlator(st, p.omega0) ==
            doctest::Approx(quench_mode_propagator(t, t, pair).real()).epsilon(1e-10));
    }
  }
}

TEST_CASE("self-consistent run conserves energy and the Wronskian") {
  const QuenchSpec s{.m0 = 1.0, .m = 2.0, .lambda = 10.0};
  EvolutionConfig cfg;
  cfg.t_max = 20.0;
  const auto run = self_consistent_evolve(s, cfg);
  CHECK(run.max_wronskian_deviation < 1e-8);
  CHECK(run.energy_drift < 1e-6);
  CHECK(run.m_eff_sq_initial == doctest::Approx(initial_effective_mass_on_grid(s, evolution_grid(s, 20.0)).m_eff_sq_0));
  CHECK(run.trace.m_eff_sq.front() == doctest::Approx(run.m_eff_sq_initial));
  CHECK(conserved_energy(run.trace).max_relative_drift == doctest::Approx(run.energy_drift));
}

TEST_CASE("serial and parallel evolutions agree bit for bit") {
  const QuenchSpec s{.m0 = 1.0, .m = 0.5, .lambda = 10.0, .d = 2};
  EvolutionConfig cfg;
  cfg.t_max = 3.0;
  cfg.parallel = false;
  const auto a = self_consistent_evolve(s, cfg);
  cfg.parallel = true;
  const auto b = self_consistent_evolve(s, cfg);
  CHECK(a.trace.m_eff_sq == b.trace.m_eff_sq);
  CHECK(a.trace.energy == b.trace.energy);
}

TEST_CASE("coupling schemes converge to the same trace") {
  const QuenchSpec s{.m0 = 1.0, .m = 2.0, .lambda = 10.0};
  EvolutionConfig cfg;
  cfg.t_max = 5.0;
  const auto staged = self_consistent_evolve(s, cfg);
  cfg.coupling = CouplingMode::within_step_iterated;
  const auto iterated = self_consistent_evolve(s, cfg);
  REQUIRE(staged.trace.m_eff_sq.size() == iterated.trace.m_eff_sq.size());
  for (std::size_t i = 0; i < staged.trace.m_eff_sq.size(); ++i)
    CHECK(staged.trace.m_eff_sq[i] == doctest::Approx(iterated.trace.m_eff_sq[i]).epsilon(1e-6));
}

TEST_CASE("probe modes satisfy the instantaneous frequency relation") {
  const QuenchSpec s{.m0 = 1.0, .m = 2.0, .lambda = 10.0};
  EvolutionConfig cfg;
  cfg.t_max = 10.0;
  cfg.record_stride = 1;
  cfg.probe_modes = {10, 200};
  const auto run = self_consistent_evolve(s, cfg);
  for (const auto& p : run.probes) CHECK(condnum_residual(run, p) < 1e-4);
}

TEST_CASE("asymptote fit recovers a synthetic signal") {
  EffectiveMassTrace tr;
  const double M = 4.1, p = 1.5, W = 2.05, A = 0.7, B = -0.2;
  for (int i = 0; i <= 40000; ++i) {
    const double t = 0.0025 * i;
    tr.times.push_back(t);
    const double v = M + (t > 0 ? std::pow(t, -p) * (A * std::cos(2 * W * t) + B * std::sin(2 * W * t)) : 0.0);
    tr.m_eff_sq.push_back(v);
    tr.sigma.push_back(v - 4.0);
  }
  const auto f = fit_asymptote(tr, 20.0, 100.0);
  CHECK(f.m_inf_sq == doctest::Approx(M).epsilon(1e-8));
  CHECK(f.m_inf == doctest::Approx(std::sqrt(M)).epsilon(1e-8));
  CHECK(f.decay_exponent == doctest::Approx(p).epsilon(1e-4));
  CHECK(f.frequency == doctest::Approx(W).epsilon(1e-6));
  CHECK(f.cos_amplitude == doctest::Approx(A).epsilon(1e-3));
  CHECK(f.sin_amplitude == doctest::Approx(B).epsilon(1e-3));
  CHECK(asymptote_model(f, 50.0) == doctest::Approx(tr.m_eff_sq[20000]).epsilon(1e-8));
  CHECK_THROWS(fit_asymptote(tr, 90.0, 20.0));
}

TEST_CASE("quasi-adiabatic evolution") {
  const QuenchSpec unstable{.m0 = 1.0, .m = 0.5, .lambda = 10.0};
  CHECK_THROWS_AS(quasi_adiabatic_evolve(unstable), DomainError);
  const QuenchSpec s{.m0 = 1.0, .m = 2.0, .lambda = 1e-3, .d = 2};
  const auto qa = quasi_adiabatic_stationary(s);
  const auto gap = solve_m_star(s);
  CHECK(qa.sigma_star / gap.sigma_star == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("late-time mass approaches the gap-equation value") {
  const QuenchSpec s{.m0 = 1.0, .m = 2.0, .lambda = 10.0};
  EvolutionConfig cfg;
  cfg.t_max = 60.0;
  const auto cmp = compare_ansatz(s, cfg);
  CHECK(cmp.relative_gap < 0.03);
  CHECK(cmp.sigma_qa.has_value());
  CHECK(cmp.fit.frequency == doctest::Approx(cmp.fit.m_inf).epsilon(0.05));
}

TEST_CASE("unstable start turns positive") {
  const QuenchSpec s{.m0 = 1.0, .m = 0.5, .lambda = 10.0};
  EvolutionConfig cfg;
  cfg.t_max = 5.0;
  const auto run = self_consistent_evolve(s, cfg);
  CHECK(run.m_eff_sq_initial < 0.0);
  CHECK(run.trace.m_eff_sq.back() > 0.0);
}
