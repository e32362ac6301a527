#pragma once

#include <complex>

#include "quench/core.hpp"

namespace quench {

/// Pre- and post-quench frequencies of one momentum mode.
struct ModePair {
  double omega0;
  double omega;

  static ModePair at(double k, double m0, double m) { return {quench::omega(k, m0), quench::omega(k, m)}; }
};

enum class PropagatorKind { quench_mode, quench_real_space, deep_quench, slab, thermal, vertex };

/// A propagator value with the point it was evaluated at. For momentum-space
/// kinds the arguments are (t1, t2, k); for real-space kinds (r, t, unused).
struct PropagatorSample {
  PropagatorKind kind;
  double arg0;
  double arg1;
  double arg2;
  std::complex<double> value;
};

/// Time-ordered two-point function of one mode after a frequency quench,
/// starting from the pre-quench ground state. Symmetric in t1, t2.
std::complex<double> quench_mode_propagator(double t1, double t2, const ModePair& pair);

/// Time-translation-invariant equal-time part: (w0 - w)^2 / (4 w0 w^2) + 1 / (2 w).
double stationary_mode_part(const ModePair& pair);

struct RealSpaceOptions {
  /// Use the deep-quench integrand m0 (1 - cos 2wt) / (4 w^2) instead of the
  /// full propagator. Never inferred from the masses.
  bool deep_quench = false;
  /// Relative truncation error above which `accurate` is cleared.
  double warn_threshold = 1e-4;
};

struct RealSpaceValue {
  double value;
  /// |fine - coarse| between the grid and its half-size sibling.
  double error_estimate;
  bool accurate;
};

/// Fourier transform of the mode propagator to separation r, using the
/// angular kernels cos(kr), J0(kr), sin(kr)/(kr) for d = 1, 2, 3.
///
/// d = 2, 3 require t1 == t2. The full propagator with m = 0 in d = 1 is
/// infrared divergent and is rejected; the deep-quench integrand is finite.
RealSpaceValue real_space_propagator(double r, double t1, double t2, const QuenchSpec& spec,
                                     const MomentumGrid& grid, const RealSpaceOptions& options = {});

/// Exact massless deep-quench forms: zero outside the horizon, and inside
///   d=1: m0 (2t - r) / 8,  d=2: m0/(8 pi) log[(2t + sqrt(4t^2 - r^2)) / r],  d=3: m0 / (16 pi r).
/// r = 2t takes the inside value.
double deep_quench_closed_form(double r, double t, int d, double m0);

/// True iff r < 2t. The boundary r = 2t counts as outside.
bool horizon_indicator(double r, double t);

struct LargeTimeEnvelope {
  double stationary;              // e^{-m r} / r^{(d-1)/2}
  double oscillation_amplitude;   // |m^2 - m0^2| m^{d-2} / m0 / (m t)^{d/2}
  double oscillation_frequency;   // 2 m
  double decay_power;             // d / 2
};

/// Analytic large-t envelope of the equal-time propagator. Requires m > 0.
LargeTimeEnvelope large_time_envelope(double r, double t, const QuenchSpec& spec);

struct VertexParams {
  double q;
  double m0;
};

/// <exp(i q phi(0,t)) exp(-i q phi(r,t))> after a deep quench to m = 0 in d = 1.
double vertex_correlator(double r, double t, const VertexParams& vp);

/// Same correlator built as exp(-q^2 (C(0) - C(r))) from the d = 1 deep-quench
/// propagator.
double vertex_correlator_from_propagator(double r, double t, const VertexParams& vp);

}  // namespace quench
