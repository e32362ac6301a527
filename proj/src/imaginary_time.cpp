#include "quench/imaginary_time.hpp"

#include <algorithm>
#include <cmath>

#include "quench/free_quench.hpp"

namespace quench {

namespace {

constexpr double kWallCutoff = 700.0;

std::complex<double> feynman(double t1, double t2, double w) {
  const double phase = -w * std::abs(t1 - t2);
  return std::complex<double>(std::cos(phase), std::sin(phase)) / (2.0 * w);
}

double image_sign(SlabBoundary b) { return b == SlabBoundary::dirichlet ? -1.0 : 1.0; }

double artanh_ratio(double k, const QuenchSpec& spec) {
  const double w = omega(k, spec.m);
  const double w0 = omega(k, spec.m0);
  return std::atanh(std::min(w, w0) / std::max(w, w0));
}

}  // namespace

double MaybeInfinite::value() const {
  if (infinite_) throw DomainError("value is infinite");
  return value_;
}

void SlabGeometry::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("slab thickness must be positive and finite");
}

void ThermalState::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
}

std::complex<double> slab_mode_propagator(double t1, double t2, double k, double mass, const SlabGeometry& geom) {
  geom.validate();
  const double w = omega(k, mass);
  if (!(w > 0.0)) throw DomainError("slab propagator needs omega > 0");
  const double wl = w * geom.L;
  if (wl > kWallCutoff) return feynman(t1, t2, w);
  const double direct = std::cos(w * (t1 - t2)) / (w * std::expm1(2.0 * wl));
  const double image = std::cos(w * (t1 + t2)) / (2.0 * w * std::sinh(wl));
  return direct + image_sign(geom.boundary) * image + feynman(t1, t2, w);
}

double slab_mode_propagator_euclidean(double tau1, double tau2, double k, double mass, const SlabGeometry& geom) {
  geom.validate();
  const double half = 0.5 * geom.L;
  if (std::abs(tau1) > half || std::abs(tau2) > half) throw DomainError("tau outside the slab");
  const double w = omega(k, mass);
  if (!(w > 0.0)) throw DomainError("slab propagator needs omega > 0");
  const double wl = w * geom.L;
  const double free = std::exp(-w * std::abs(tau1 - tau2)) / (2.0 * w);
  if (wl > kWallCutoff) return free;
  const double direct = std::cosh(w * (tau1 - tau2)) / (w * std::expm1(2.0 * wl));
  const double image = std::cosh(w * (tau1 + tau2)) / (2.0 * w * std::sinh(wl));
  return direct + image_sign(geom.boundary) * image + free;
}

MatchedSlab matched_slab(double k, const QuenchSpec& spec) {
  spec.validate();
  const double w = omega(k, spec.m);
  const double w0 = omega(k, spec.m0);
  if (!(w > 0.0)) throw DomainError("matched slab needs omega > 0");
  if (w == w0) return {MaybeInfinite::infinity(), SlabBoundary::dirichlet};
  const double L = (2.0 / w) * artanh_ratio(k, spec);
  return {MaybeInfinite::finite(L), w < w0 ? SlabBoundary::dirichlet : SlabBoundary::neumann};
}

MaybeInfinite matched_slab_thickness(double k, const QuenchSpec& spec) { return matched_slab(k, spec).L; }

std::complex<double> thermal_mode_propagator(double t1, double t2, double k, double mass, const ThermalState& th) {
  th.validate();
  const double w = omega(k, mass);
  if (!(w > 0.0)) throw DomainError("thermal propagator needs omega > 0");
  return feynman(t1, t2, w) + std::cos(w * (t1 - t2)) / (w * std::expm1(th.beta * w));
}

double thermal_mode_propagator_euclidean(double tau1, double tau2, double k, double mass, const ThermalState& th) {
  th.validate();
  const double dt = tau1 - tau2;
  if (std::abs(dt) > th.beta) throw DomainError("|tau1 - tau2| must not exceed beta");
  const double w = omega(k, mass);
  if (!(w > 0.0)) throw DomainError("thermal propagator needs omega > 0");
  return (std::exp(-w * std::abs(dt)) + 2.0 * std::cosh(w * dt) / std::expm1(th.beta * w)) / (2.0 * w);
}

MaybeInfinite beta_eff_mode(double k, const QuenchSpec& spec) {
  const MaybeInfinite L = matched_slab_thickness(k, spec);
  if (L.is_infinite()) return L;
  const double beta = (4.0 / omega(k, spec.m)) * artanh_ratio(k, spec);
  if (beta != 2.0 * L.value()) throw NumericalError("beta_eff and matched slab thickness disagree");
  return MaybeInfinite::finite(beta);
}

double verify_quench_slab_identity(double k, const QuenchSpec& spec,
                                   std::span<const std::pair<double, double>> samples) {
  const MatchedSlab slab = matched_slab(k, spec);
  const ModePair pair = ModePair::at(k, spec.m0, spec.m);
  double worst = 0.0;
  for (const auto& [t1, t2] : samples) {
    const auto q = quench_mode_propagator(t1, t2, pair);
    const auto s = slab.L.is_infinite() ? feynman(t1, t2, pair.omega)
                                        : slab_mode_propagator(t1, t2, k, spec.m, {slab.L.value(), slab.boundary});
    worst = std::max(worst, std::abs(q - s));
  }
  return worst;
}

}  // namespace quench
