#include "quench/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bracket_root.hpp"
#include "quench/mode_kernels.hpp"

namespace quench {

namespace {

using FR = ForestRuth;

constexpr double kStabilityBound = 0.3;
constexpr double kDriftWarning = 1e-4;
constexpr std::size_t kMaxRecords = 50000;

struct Kernels {
  double (*drift_sum)(ModeArrays&, double);
  double (*kick_drift_sum)(ModeArrays&, double, double, double);
};

Kernels pick_kernels(bool parallel) {
  if (parallel) return {kernels::drift_and_sum_parallel, kernels::kick_drift_sum_parallel};
  return {kernels::drift_and_sum_serial, kernels::kick_drift_sum_serial};
}

// Returns the fluctuation sum at the end of the step.
double advance_staged(ModeArrays& s, const Kernels& kr, double dt, double m_sq, double lambda) {
  double c = kr.drift_sum(s, FR::c[0] * dt);
  for (int j = 0; j < 3; ++j) c = kr.kick_drift_sum(s, FR::d[j] * dt, m_sq + 0.5 * lambda * c, FR::c[j + 1] * dt);
  return c;
}

double advance_fixed(ModeArrays& s, const Kernels& kr, double dt, double m_eff_sq) {
  double c = kr.drift_sum(s, FR::c[0] * dt);
  for (int j = 0; j < 3; ++j) c = kr.kick_drift_sum(s, FR::d[j] * dt, m_eff_sq, FR::c[j + 1] * dt);
  return c;
}

struct Positions {
  std::vector<double> a, a_dot, b, b_dot;
};

Positions save(const ModeArrays& s) { return {s.a, s.a_dot, s.b, s.b_dot}; }

void restore(ModeArrays& s, const Positions& p) {
  s.a = p.a;
  s.a_dot = p.a_dot;
  s.b = p.b;
  s.b_dot = p.b_dot;
}

[[noreturn]] void throw_blowup(const ModeArrays& s, const MomentumGrid& grid, double t) {
  const std::size_t i = kernels::first_non_finite(s);
  std::ostringstream os;
  os << "evolution blew up at t = " << t;
  if (i < s.size()) os << " (mode " << i << ", k = " << grid.nodes()[i] << ")";
  throw NumericalError(os.str());
}

std::size_t auto_stride(std::size_t steps, std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, (steps + kMaxRecords - 1) / kMaxRecords);
}

std::size_t step_count(double t_max, double dt) {
  return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

MomentumGrid grid_for(const QuenchSpec& spec, const EvolutionConfig& config) {
  MomentumGrid grid = config.grid ? *config.grid : evolution_grid(spec, config.t_max);
  if (grid.dimension() != spec.d) throw DomainError("grid dimension does not match the quench spec");
  return grid;
}

void check_evolvable(const QuenchSpec& spec, const EvolutionConfig& config) {
  spec.validate();
  if (spec.d == 1 && spec.m == 0.0) throw DomainError("d = 1 evolution with m = 0 has an infrared-divergent subtraction");
  if (!(config.t_max > 0.0) || !std::isfinite(config.t_max)) throw DomainError("t_max must be positive and finite");
  if (config.dt < 0.0) throw DomainError("dt must be non-negative (0 selects the default)");
}

}  // namespace

void step_modes(std::span<ModeState> states, double m_eff_sq, double dt) {
  for (auto& s : states) {
    const double w2 = s.k * s.k + m_eff_sq;
    for (int j = 0; j < 4; ++j) {
      s.a += FR::c[j] * dt * s.a_dot;
      s.b += FR::c[j] * dt * s.b_dot;
      if (j == 3) break;
      s.a_dot -= FR::d[j] * dt * w2 * s.a;
      s.b_dot -= FR::d[j] * dt * w2 * s.b;
    }
    if (!std::isfinite(s.a) || !std::isfinite(s.b) || !std::isfinite(s.a_dot) || !std::isfinite(s.b_dot)) {
      std::ostringstream os;
      os << "non-finite mode state at k = " << s.k;
      throw NumericalError(os.str());
    }
  }
}

double mode_correlator(const ModeState& state, double omega0k) {
  if (!(omega0k > 0.0)) throw DomainError("mode correlator needs omega0 > 0");
  return state.a * state.a / (2.0 * omega0k) + state.b * state.b * omega0k / 2.0;
}

MomentumGrid evolution_grid(const QuenchSpec& spec, double t_max) {
  spec.validate();
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be positive and finite");
  const double scale = std::max(spec.m0, spec.m);
  const double cutoff = spec.d < 3 ? std::min(spec.resolved_cutoff(), 20.0 * scale) : spec.resolved_cutoff();
  GridProfile p;
  p.spacing = Spacing::uniform_geometric;
  p.k_mid = std::min(cutoff, 2.0 * scale);
  const double uniform_panels = std::ceil(p.k_mid * t_max / 2.0);
  const double log_panels = std::ceil(std::log(cutoff / p.k_mid) / p.geometric_step);
  p.nodes = std::max<std::size_t>(64, 4 * static_cast<std::size_t>(uniform_panels + log_panels));
  return build_grid(spec.d, cutoff, p);
}

StepChoice resolve_time_step(const QuenchSpec& spec, const MomentumGrid& grid, double requested_dt) {
  const double m0_sq = initial_effective_mass_on_grid(spec, grid).m_eff_sq_0;
  const double w_max = std::sqrt(grid.cutoff() * grid.cutoff() + std::abs(m0_sq) + spec.m0 * spec.m0);
  const double dt = requested_dt > 0.0 ? requested_dt : 0.02 / w_max;
  if (!(dt * w_max < kStabilityBound)) {
    std::ostringstream os;
    os << "time step dt = " << dt << " violates the stability bound dt * w_max < " << kStabilityBound
       << " (w_max = " << w_max << ", so dt < " << kStabilityBound / w_max << ")";
    throw DomainError(os.str());
  }
  return {dt, w_max};
}

EvolutionRun self_consistent_evolve(const QuenchSpec& spec, const EvolutionConfig& config) {
  check_evolvable(spec, config);
  const MomentumGrid grid = grid_for(spec, config);
  const StepChoice sc = resolve_time_step(spec, grid, config.dt);
  const double dt = sc.dt;
  const double m_sq = spec.m * spec.m;
  const double lambda = spec.lambda;
  const Kernels kr = pick_kernels(config.parallel);

  EvolutionRun run{};
  run.dt = dt;
  run.steps = step_count(config.t_max, dt);
  run.record_stride = auto_stride(run.steps, config.record_stride);

  try {
    const double m_star = solve_m_star(spec, grid).m_star;
    const double scale = std::max(spec.m, m_star);
    if (scale > 0.0 && !(config.t_max > 20.0 / scale)) {
      std::ostringstream os;
      os << "t_max = " << config.t_max << " is below 20 / max(m, m*) = " << 20.0 / scale
         << "; the late-time window may not have settled";
      run.warnings.push_back(os.str());
    }
  } catch (const NumericalError&) {
    run.warnings.push_back("could not estimate m* for the t_max check");
  }

  ModeArrays s = ModeArrays::initial(grid, spec.m0, spec.m);
  for (std::size_t p : config.probe_modes) {
    if (p >= s.size()) throw DomainError("probe mode index outside the grid");
    run.probes.push_back({p, grid.nodes()[p], s.omega0[p], {}, {}, {}, {}});
  }

  auto& tr = run.trace;
  const std::size_t records = run.steps / run.record_stride + 1;
  tr.times.reserve(records);
  tr.m_eff_sq.reserve(records);
  tr.sigma.reserve(records);
  tr.energy.reserve(records);
  tr.c_of_t.reserve(records);

  auto record = [&](std::size_t n, double c, double m_eff_sq) {
    tr.times.push_back(static_cast<double>(n) * dt);
    tr.m_eff_sq.push_back(m_eff_sq);
    tr.sigma.push_back(m_eff_sq - m_sq);
    tr.c_of_t.push_back(c);
    tr.energy.push_back(kernels::free_energy_sum(s, m_sq) + lambda / 8.0 * c * c);
    run.max_wronskian_deviation = std::max(run.max_wronskian_deviation, kernels::max_wronskian_deviation(s));
    for (auto& p : run.probes) {
      p.a.push_back(s.a[p.index]);
      p.a_dot.push_back(s.a_dot[p.index]);
      p.b.push_back(s.b[p.index]);
      p.b_dot.push_back(s.b_dot[p.index]);
    }
  };

  double c = kr.drift_sum(s, 0.0);
  double m_eff_sq = m_sq + 0.5 * lambda * c;
  run.m_eff_sq_initial = m_eff_sq;
  record(0, c, m_eff_sq);

  for (std::size_t n = 0; n < run.steps; ++n) {
    switch (config.coupling) {
      case CouplingMode::staged:
        c = advance_staged(s, kr, dt, m_sq, lambda);
        break;
      case CouplingMode::lagged:
        c = advance_fixed(s, kr, dt, m_eff_sq);
        break;
      case CouplingMode::within_step_iterated: {
        const Positions start = save(s);
        double guess = m_eff_sq;
        for (int it = 0; it < 5; ++it) {
          if (it > 0) restore(s, start);
          c = advance_fixed(s, kr, dt, guess);
          const double next = 0.5 * (m_eff_sq + m_sq + 0.5 * lambda * c);
          const bool done = std::abs(next - guess) <= 1e-8 * std::max(1.0, std::abs(next));
          guess = next;
          if (done) break;
        }
        break;
      }
    }
    m_eff_sq = m_sq + 0.5 * lambda * c;
    if (!std::isfinite(m_eff_sq)) throw_blowup(s, grid, static_cast<double>(n + 1) * dt);
    if ((n + 1) % run.record_stride == 0) record(n + 1, c, m_eff_sq);
  }

  run.energy_drift = conserved_energy(tr).max_relative_drift;
  if (run.energy_drift > kDriftWarning) {
    std::ostringstream os;
    os << "relative energy drift " << run.energy_drift << " exceeds " << kDriftWarning << "; try dt = " << dt / 2;
    run.warnings.push_back(os.str());
  }
  return run;
}

EffectiveMassTrace quasi_adiabatic_evolve(const QuenchSpec& spec, const EvolutionConfig& config) {
  check_evolvable(spec, config);
  const MomentumGrid grid = grid_for(spec, config);
  const double m_eff0 = initial_effective_mass_on_grid(spec, grid).m_eff_sq_0;
  if (!(m_eff0 > 0.0)) throw DomainError("quasi-adiabatic evolution needs m_eff^2(0+) > 0");
  const double dt = resolve_time_step(spec, grid, config.dt).dt;
  const std::size_t steps = step_count(config.t_max, dt);
  const std::size_t stride = auto_stride(steps, config.record_stride);
  const double m_sq = spec.m * spec.m;

  const std::size_t n = grid.size();
  std::vector<double> k2(n), w_init(n), mean(n), osc(n), vacuum(n), phase(n, 0.0);
  const auto w = grid.weights();
  for (std::size_t i = 0; i < n; ++i) {
    const double k = grid.nodes()[i];
    k2[i] = k * k;
    const double w0 = omega(k, spec.m0);
    w_init[i] = std::sqrt(k2[i] + m_eff0);
    mean[i] = (w_init[i] * w_init[i] + w0 * w0) / (4.0 * w0 * w_init[i]);
    osc[i] = (w_init[i] - w0) * (w_init[i] + w0) / (4.0 * w0 * w_init[i]);
    vacuum[i] = 1.0 / (2.0 * omega(k, spec.m));
  }

  EffectiveMassTrace tr;
  double m_eff_sq = m_eff0;
  auto push = [&](std::size_t step, double c) {
    tr.times.push_back(static_cast<double>(step) * dt);
    tr.m_eff_sq.push_back(m_eff_sq);
    tr.sigma.push_back(m_eff_sq - m_sq);
    tr.c_of_t.push_back(c);
  };
  CompensatedSum c0;
  for (std::size_t i = 0; i < n; ++i) c0.add(w[i] * ((mean[i] + osc[i]) / w_init[i] - vacuum[i]));
  push(0, c0.value());

  for (std::size_t step = 0; step < steps; ++step) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
      const double wt2 = k2[i] + m_eff_sq;
      if (!(wt2 > 0.0)) throw NumericalError("quasi-adiabatic frequency became imaginary");
      const double wt = std::sqrt(wt2);
      phase[i] += wt * dt;
      acc.add(w[i] * ((mean[i] + osc[i] * std::cos(2.0 * phase[i])) / wt - vacuum[i]));
    }
    const double c = acc.value();
    m_eff_sq = m_sq + 0.5 * spec.lambda * c;
    if (!std::isfinite(m_eff_sq)) throw NumericalError("quasi-adiabatic evolution produced a non-finite mass");
    if ((step + 1) % stride == 0) push(step + 1, c);
  }
  return tr;
}

GapSolveResult quasi_adiabatic_stationary(const QuenchSpec& spec, const MomentumGrid& grid) {
  spec.validate();
  if (grid.dimension() != spec.d) throw DomainError("grid dimension does not match the quench spec");
  if (spec.lambda == 0.0) return {spec.m, 0.0, 0.0, GapBranch::generic, 0};
  const double m_eff0 = initial_effective_mass_on_grid(spec, grid).m_eff_sq_0;
  if (!(m_eff0 > 0.0)) throw DomainError("quasi-adiabatic stationary value needs m_eff^2(0+) > 0");
  const double m_sq = spec.m * spec.m;
  const bool tail = grid.profile().tail_correction && spec.d < 3;
  const auto R = [&](double u) {
    double integral = radial_integrate(grid, [&](double k) {
      const double w0 = omega(k, spec.m0);
      const double wi = std::sqrt(k * k + m_eff0);
      const double ws = std::sqrt(k * k + u);
      const double w = omega(k, spec.m);
      const double dw = (m_eff0 - spec.m0 * spec.m0) / (wi + w0);
      // (wi^2 + w0^2) / (4 w0 ws wi) - 1/(2w), split so the 1/k parts cancel exactly
      return dw * dw / (4.0 * w0 * ws * wi) + (m_sq - u) / (2.0 * w * ws * (w + ws));
    });
    if (tail) {
      const double c3 = (m_sq - u) / 4.0;
      const double e = m_eff0 - spec.m0 * spec.m0;
      const double c5 = (3.0 * (u * u - m_sq * m_sq) + e * e) / 16.0;
      const double L = grid.cutoff();
      integral += angular_measure(spec.d) *
                  (c3 * std::pow(L, spec.d - 3) / (3 - spec.d) + c5 * std::pow(L, spec.d - 5) / (5 - spec.d));
    }
    return u - m_sq - spec.lambda / 2.0 * integral;
  };
  const auto root = detail::bracketed_root_in_u(R, m_sq, std::max({m_sq, m_eff0, spec.m0 * spec.m0, 1e-4}));
  const double m_qa = std::sqrt(root.u);
  return {m_qa, root.u - m_sq, std::abs(R(root.u)) / (spec.m0 * spec.m0), GapBranch::generic, root.iterations};
}

GapSolveResult quasi_adiabatic_stationary(const QuenchSpec& spec) {
  return quasi_adiabatic_stationary(spec, gap_grid(spec));
}

EnergyDriftReport conserved_energy(const EffectiveMassTrace& trace) {
  if (trace.energy.empty()) throw DomainError("trace carries no energy samples");
  const double e0 = trace.energy.front();
  const double scale = std::max(std::abs(e0), 1e-300);
  double worst = 0.0;
  for (double e : trace.energy) worst = std::max(worst, std::abs(e - e0) / scale);
  return {e0, worst};
}

double condnum_residual(const EvolutionRun& run, const ProbeTrace& probe) {
  const auto& m = run.trace.m_eff_sq;
  const std::size_t n = probe.a.size();
  if (n < 3) throw DomainError("probe needs at least three records");
  const double k2 = probe.k * probe.k;
  const double w_start_sq = k2 + run.m_eff_sq_initial;
  if (!(w_start_sq > 0.0)) throw DomainError("Omega reconstruction needs k^2 + m_eff^2(0+) > 0");
  const double w_start = std::sqrt(w_start_sq);
  std::vector<double> W(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(k2 + m[j] > 0.0)) throw DomainError("Omega reconstruction needs k^2 + m_eff^2 > 0 throughout");
    W[j] = w_start / (probe.a[j] * probe.a[j] + w_start_sq * probe.b[j] * probe.b[j]);
  }
  const double h = run.dt * static_cast<double>(run.record_stride);
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double d1 = (W[j + 1] - W[j - 1]) / (2.0 * h);
    const double d2 = (W[j + 1] - 2.0 * W[j] + W[j - 1]) / (h * h);
    const double r = d2 / (2.0 * W[j]) - 0.75 * (d1 / W[j]) * (d1 / W[j]) + W[j] * W[j] - (k2 + m[j]);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

AnsatzComparison compare_ansatz(const QuenchSpec& spec, const EvolutionConfig& config) {
  EvolutionConfig cfg = config;
  if (!cfg.grid) cfg.grid = evolution_grid(spec, cfg.t_max);
  const GapSolveResult gap = solve_m_star(spec, *cfg.grid);
  std::optional<double> sigma_qa;
  if (initial_effective_mass_on_grid(spec, *cfg.grid).stable)
    sigma_qa = quasi_adiabatic_stationary(spec, *cfg.grid).sigma_star;

  AnsatzComparison out{};
  out.run = self_consistent_evolve(spec, cfg);
  out.sigma_ansatz = gap.sigma_star;
  out.sigma_qa = sigma_qa;
  if (spec.lambda == 0.0) {
    out.sigma_numeric = out.run.trace.sigma.back();
    out.fit = {spec.m * spec.m, spec.m, 0.0, 0.0, 0.0, 0.0, 0.0};
  } else {
    out.fit = fit_asymptote(out.run.trace, 0.5 * cfg.t_max, cfg.t_max, gap.m_star);
    out.sigma_numeric = out.fit.m_inf_sq - spec.m * spec.m;
  }
  const double denom = std::abs(out.sigma_ansatz);
  out.relative_gap = denom > 0.0 ? std::abs(out.sigma_numeric - out.sigma_ansatz) / denom : std::abs(out.sigma_numeric);
  return out;
}

}  // namespace quench
