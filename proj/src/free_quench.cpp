#include "quench/free_quench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace quench {

std::complex<double> quench_mode_propagator(double t1, double t2, const ModePair& pair) {
  if (t1 < 0.0 || t2 < 0.0) throw DomainError("quench propagator needs t1, t2 >= 0");
  const double w = pair.omega;
  const double w0 = pair.omega0;
  const double denom = 4.0 * w * w * w0;
  const double stationary = (w - w0) * (w - w0) / denom;
  const double breaking = (w - w0) * (w + w0) / denom;
  const double dt = t1 - t2;
  const double feynman_phase = -w * std::abs(dt);
  return stationary * std::cos(w * dt) + breaking * std::cos(w * (t1 + t2)) +
         std::complex<double>(std::cos(feynman_phase), std::sin(feynman_phase)) / (2.0 * w);
}

double stationary_mode_part(const ModePair& pair) {
  const double w = pair.omega;
  const double w0 = pair.omega0;
  return (w0 - w) * (w0 - w) / (4.0 * w0 * w * w) + 1.0 / (2.0 * w);
}

namespace {

double angular_kernel(int d, double kr) {
  switch (d) {
    case 1: return std::cos(kr);
    case 2: return std::cyl_bessel_j(0.0, kr);
    default: return std::abs(kr) < 1e-8 ? 1.0 - kr * kr / 6.0 : std::sin(kr) / kr;
  }
}

// Equal-time real part rewritten so the 1/k pieces cancel analytically:
//   Re C(t,t;k) = 1/(2 w0) + (w0^2 - w^2) sin^2(w t) / (2 w^2 w0).
double equal_time_mode(double k, double t, const QuenchSpec& spec, bool deep) {
  const double w = omega(k, spec.m);
  const double s = std::sin(w * t);
  if (deep) return spec.m0 * s * s / (2.0 * w * w);
  const double w0 = omega(k, spec.m0);
  return 1.0 / (2.0 * w0) + (spec.m0 - spec.m) * (spec.m0 + spec.m) * s * s / (2.0 * w * w * w0);
}

double integrate_on(const MomentumGrid& grid, double r, double t1, double t2, const QuenchSpec& spec,
                    bool deep) {
  const int d = grid.dimension();
  if (t1 == t2) {
    return radial_integrate(grid, [&](double k) {
      return angular_kernel(d, k * r) * equal_time_mode(k, t1, spec, deep);
    });
  }
  return radial_integrate(grid, [&](double k) {
    return angular_kernel(d, k * r) * quench_mode_propagator(t1, t2, ModePair::at(k, spec.m0, spec.m)).real();
  });
}

}  // namespace

RealSpaceValue real_space_propagator(double r, double t1, double t2, const QuenchSpec& spec,
                                     const MomentumGrid& grid, const RealSpaceOptions& options) {
  spec.validate();
  if (r < 0.0 || t1 < 0.0 || t2 < 0.0) throw DomainError("real-space propagator needs r, t1, t2 >= 0");
  if (grid.dimension() != spec.d) throw DomainError("grid dimension does not match the quench spec");
  if (t1 != t2 && (spec.d > 1 || options.deep_quench))
    throw DomainError("unequal-time real-space propagator is only supported for the full d = 1 propagator");
  if (!options.deep_quench && spec.d == 1 && spec.m == 0.0)
    throw DomainError("d = 1 propagator with m = 0 is infrared divergent; use vertex_correlator");

  const double fine = integrate_on(grid, r, t1, t2, spec, options.deep_quench);
  const double coarse = integrate_on(grid.coarsened(), r, t1, t2, spec, options.deep_quench);
  const double err = std::abs(fine - coarse);
  const double scale = std::max(std::abs(fine), std::numeric_limits<double>::min());
  return {fine, err, err <= options.warn_threshold * scale};
}

double deep_quench_closed_form(double r, double t, int d, double m0) {
  if (r < 0.0 || t < 0.0) throw DomainError("closed form needs r, t >= 0");
  if (!(m0 > 0.0)) throw DomainError("closed form needs m0 > 0");
  if (d < 1 || d > 3) throw DomainError("dimension must be 1, 2 or 3");
  if (r == 0.0 && d > 1) throw DomainError("deep-quench closed form is singular at r = 0 for d = 2, 3");
  if (r > 2.0 * t) return 0.0;
  switch (d) {
    case 1: return m0 * (2.0 * t - r) / 8.0;
    case 2: {
      const double root = std::sqrt((2.0 * t - r) * (2.0 * t + r));
      return m0 / (8.0 * std::numbers::pi) * std::log((2.0 * t + root) / r);
    }
    default: return m0 / (16.0 * std::numbers::pi * r);
  }
}

bool horizon_indicator(double r, double t) {
  if (r < 0.0 || t < 0.0) throw DomainError("horizon indicator needs r, t >= 0");
  return r < 2.0 * t;
}

LargeTimeEnvelope large_time_envelope(double r, double t, const QuenchSpec& spec) {
  spec.validate();
  if (!(spec.m > 0.0)) throw DomainError("large-time envelope requires m > 0");
  if (!(t > 0.0)) throw DomainError("large-time envelope requires t > 0");
  if (r < 0.0 || (r == 0.0 && spec.d > 1)) throw DomainError("large-time envelope requires r > 0 for d > 1");
  const double m = spec.m;
  const double half_d = 0.5 * spec.d;
  LargeTimeEnvelope env{};
  env.stationary = std::exp(-m * r) / std::pow(r, 0.5 * (spec.d - 1));
  env.oscillation_amplitude = std::abs(m * m - spec.m0 * spec.m0) * std::pow(m, spec.d - 2) / spec.m0 /
                              std::pow(m * t, half_d);
  env.oscillation_frequency = 2.0 * m;
  env.decay_power = half_d;
  return env;
}

double vertex_correlator(double r, double t, const VertexParams& vp) {
  if (r < 0.0 || t < 0.0) throw DomainError("vertex correlator needs r, t >= 0");
  if (!(vp.m0 > 0.0)) throw DomainError("vertex correlator needs m0 > 0");
  const double q2 = vp.q * vp.q;
  return r > 2.0 * t ? std::exp(-q2 * vp.m0 * t / 4.0) : std::exp(-q2 * vp.m0 * r / 8.0);
}

double vertex_correlator_from_propagator(double r, double t, const VertexParams& vp) {
  const double c0 = deep_quench_closed_form(0.0, t, 1, vp.m0);
  const double cr = deep_quench_closed_form(r, t, 1, vp.m0);
  return std::exp(-vp.q * vp.q * (c0 - cr));
}

}  // namespace quench
