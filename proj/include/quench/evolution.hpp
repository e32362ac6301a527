#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quench/core.hpp"
#include "quench/mass_gap.hpp"

namespace quench {

/// One momentum mode in the real basis: a(0) = 1, a'(0) = 0, b(0) = 0, b'(0) = 1.
struct ModeState {
  double k;
  double a = 1.0;
  double a_dot = 0.0;
  double b = 0.0;
  double b_dot = 1.0;
};

/// One fourth-order symplectic step of x'' = -(k^2 + m_eff_sq) x for every mode.
void step_modes(std::span<ModeState> states, double m_eff_sq, double dt);

/// <phi_k^2> = a^2 / (2 w0) + b^2 w0 / 2 for the pre-quench ground state.
double mode_correlator(const ModeState& state, double omega0k);

enum class CouplingMode {
  staged,                // m_eff^2 re-evaluated from the modes before every kick
  lagged,                // m_eff^2 frozen over a step, updated after it
  within_step_iterated,  // frozen at the midpoint estimate, fixed-point iterated
};

struct EvolutionConfig {
  /// 0 selects 0.02 / w_max with w_max = sqrt(cutoff^2 + |m_eff^2(0+)| + m0^2).
  double dt = 0.0;
  double t_max = 100.0;
  CouplingMode coupling = CouplingMode::staged;
  /// Defaults to evolution_grid(spec, t_max).
  std::optional<MomentumGrid> grid;
  /// 0 picks a stride giving at most ~50000 records.
  std::size_t record_stride = 0;
  /// Grid indices whose basis functions are recorded.
  std::vector<std::size_t> probe_modes;
  bool parallel = true;
};

struct EffectiveMassTrace {
  std::vector<double> times;
  std::vector<double> m_eff_sq;
  std::vector<double> sigma;   // m_eff^2 - m^2
  std::vector<double> energy;  // conserved Hartree-Fock energy (empty for quasi-adiabatic runs)
  std::vector<double> c_of_t;  // regularized fluctuation integral
};

struct ProbeTrace {
  std::size_t index;
  double k;
  double omega0;
  std::vector<double> a, a_dot, b, b_dot;
};

struct EvolutionRun {
  EffectiveMassTrace trace;
  std::vector<ProbeTrace> probes;
  double dt;
  std::size_t steps;
  std::size_t record_stride;
  double m_eff_sq_initial;
  double max_wronskian_deviation;
  double energy_drift;
  std::vector<std::string> warnings;
};

/// Grid used for time evolution, sized so neighbouring modes stay in phase up
/// to t_max: uniform panels of width 2 / t_max on [0, 2 max(m0, m)], log panels
/// of 2% relative width above. In d = 1, 2 the cutoff is lowered to
/// min(cutoff, 20 max(m0, m)); d = 3 keeps the physical cutoff. No tail
/// correction, so gap-equation values on this grid describe the same
/// truncated system that is evolved.
MomentumGrid evolution_grid(const QuenchSpec& spec, double t_max = 100.0);

/// Resolved time step and the stability product dt * w_max (must stay below 0.3).
struct StepChoice {
  double dt;
  double omega_max;
};
StepChoice resolve_time_step(const QuenchSpec& spec, const MomentumGrid& grid, double requested_dt);

EvolutionRun self_consistent_evolve(const QuenchSpec& spec, const EvolutionConfig& config = {});

/// Phase-integrated quasi-adiabatic evolution; refuses m_eff^2(0+) <= 0.
EffectiveMassTrace quasi_adiabatic_evolve(const QuenchSpec& spec, const EvolutionConfig& config = {});

/// Stationary value of the quasi-adiabatic equation, solved in u = m_qa^2.
GapSolveResult quasi_adiabatic_stationary(const QuenchSpec& spec, const MomentumGrid& grid);
GapSolveResult quasi_adiabatic_stationary(const QuenchSpec& spec);

struct EnergyDriftReport {
  double initial;
  double max_relative_drift;
};
EnergyDriftReport conserved_energy(const EffectiveMassTrace& trace);

/// Largest |W''/(2W) - 3/4 (W'/W)^2 + W^2 - w^2(t)| over interior records of a
/// probe, with W = w(0) / (a^2 + w(0)^2 b^2) and centred finite differences.
/// Requires k^2 + m_eff^2 > 0 throughout.
double condnum_residual(const EvolutionRun& run, const ProbeTrace& probe);

struct AsymptoteFit {
  double m_inf_sq;
  double m_inf;
  double decay_exponent;
  double frequency;  // Omega in cos(2 Omega t)
  double rms_residual;
  double cos_amplitude;
  double sin_amplitude;
};

/// m_inf^2 + t^-p (A cos 2 Omega t + B sin 2 Omega t) for a fitted asymptote.
double asymptote_model(const AsymptoteFit& fit, double t);

/// Least-squares fit of m_eff^2(t) = M + t^{-p} (c1 cos 2 Omega t + c2 sin 2 Omega t) on [t_lo, t_hi].
/// frequency_hint <= 0 estimates Omega from mean crossings.
AsymptoteFit fit_asymptote(const EffectiveMassTrace& trace, double t_lo, double t_hi, double frequency_hint = 0.0);

struct AnsatzComparison {
  double sigma_numeric;
  double sigma_ansatz;
  std::optional<double> sigma_qa;  // absent when the quasi-adiabatic start is unstable
  double relative_gap;             // |sigma_numeric - sigma_ansatz| / sigma_ansatz
  AsymptoteFit fit;
  EvolutionRun run;
};

/// Evolves, fits the late half of the trace, and compares with the gap
/// equation and the quasi-adiabatic value on the same grid.
AnsatzComparison compare_ansatz(const QuenchSpec& spec, const EvolutionConfig& config = {});

}  // namespace quench
