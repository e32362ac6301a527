#pragma once

#include <complex>
#include <span>
#include <utility>

#include "quench/core.hpp"

namespace quench {

/// A length or inverse temperature that may be infinite. The infinite case is
/// a tag, never a floating-point infinity.
class MaybeInfinite {
 public:
  static MaybeInfinite finite(double v) { return MaybeInfinite(v, false); }
  static MaybeInfinite infinity() { return MaybeInfinite(0.0, true); }

  bool is_infinite() const { return infinite_; }
  /// Throws DomainError when infinite.
  double value() const;

 private:
  MaybeInfinite(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// Image sign of the slab walls. Dirichlet images enter with a minus sign,
/// Neumann images with a plus sign.
enum class SlabBoundary { dirichlet, neumann };

struct SlabGeometry {
  double L;
  SlabBoundary boundary = SlabBoundary::dirichlet;

  void validate() const;
};

struct ThermalState {
  double beta;

  void validate() const;
};

/// Real-time slab propagator of one mode (walls at tau = +-L/2).
/// For omega L > 700 the wall terms are below double precision and the
/// Feynman propagator is returned.
std::complex<double> slab_mode_propagator(double t1, double t2, double k, double mass, const SlabGeometry& geom);

/// Euclidean slab propagator before continuation, tau1, tau2 in [-L/2, L/2].
double slab_mode_propagator_euclidean(double tau1, double tau2, double k, double mass, const SlabGeometry& geom);

struct MatchedSlab {
  MaybeInfinite L;
  SlabBoundary boundary;
};

/// Slab thickness reproducing the quench propagator of mode k:
/// L = (2/w) artanh(min(w, w0) / max(w, w0)). Dirichlet walls for w < w0,
/// Neumann walls for w > w0, infinite for w = w0.
MatchedSlab matched_slab(double k, const QuenchSpec& spec);

MaybeInfinite matched_slab_thickness(double k, const QuenchSpec& spec);

/// Real-time thermal propagator (1/2w)(e^{-iw|t1-t2|} + 2 cos w(t1-t2) / (e^{beta w} - 1)).
std::complex<double> thermal_mode_propagator(double t1, double t2, double k, double mass, const ThermalState& th);

/// Matsubara form with cosh, valid for |tau1 - tau2| <= beta.
double thermal_mode_propagator_euclidean(double tau1, double tau2, double k, double mass, const ThermalState& th);

/// Per-mode effective inverse temperature (4/w) artanh(min/max) = 2 L.
MaybeInfinite beta_eff_mode(double k, const QuenchSpec& spec);

/// Largest |quench - slab| over the sample times at the matched thickness.
double verify_quench_slab_identity(double k, const QuenchSpec& spec,
                                   std::span<const std::pair<double, double>> samples);

}  // namespace quench
