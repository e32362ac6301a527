#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace quench {

/// Invalid input: violated precondition, out-of-domain argument.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that could not complete: no bracket, blow-up, failed fit.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical parameters of a composite quench of mass and coupling.
///
/// Masses are renormalized masses in energy units, couplings carry units of
/// energy^(3-d). The excitation speed is fixed to one.
struct QuenchSpec {
  double m0 = 1.0;
  double m = 0.0;
  double lambda0 = 0.0;
  double lambda = 0.0;
  int d = 1;
  std::optional<double> cutoff;

  static constexpr double c = 1.0;

  /// Throws DomainError when an invariant is broken.
  void validate() const;

  /// Cutoff actually used: the explicit one, or 100 m0 in d = 1, 2.
  /// In d = 3 the cutoff is a physical parameter and must be given.
  double resolved_cutoff() const;
};

/// Relativistic dispersion sqrt(k^2 + mass^2).
inline double omega(double k, double mass) { return std::hypot(k, mass); }

/// Total solid angle in d dimensions: 2, 2 pi, 4 pi.
double solid_angle(int d);

/// Omega_d / (2 pi)^d, the angular part of d^d k / (2 pi)^d.
double angular_measure(int d);

enum class Spacing {
  log_uniform,  // log panels on [k_min, k_mid], uniform panels on [k_mid, cutoff]
  geometric,    // log panels on [k_min, cutoff]
  uniform,      // uniform panels on [0, cutoff]
  uniform_geometric,  // uniform panels on [0, k_mid], log panels of relative width geometric_step above
};

struct GridProfile {
  Spacing spacing = Spacing::log_uniform;
  std::size_t nodes = 2048;
  double k_min = 1e-4;
  double k_mid = 10.0;
  /// Relative panel width above k_mid for uniform_geometric.
  double geometric_step = 0.02;
  /// Adds the analytic large-k tail of stationary integrands beyond the
  /// cutoff (d = 1, 2 only). Read by the gap-equation integrals.
  bool tail_correction = false;

  /// Default profile for a quench: k_min = 1e-4 min(m0, m + 1e-6),
  /// k_mid = 10 max(m0, m).
  static GridProfile for_spec(const QuenchSpec& spec, std::size_t nodes = 2048);
};

/// Radial quadrature nodes and weights for integrals of the form
/// int d^d k / (2 pi)^d f(|k|) on [0, cutoff]. The weights already carry the
/// angular factor and the k^(d-1) Jacobian.
class MomentumGrid {
 public:
  int dimension() const { return d_; }
  double cutoff() const { return cutoff_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  const GridProfile& profile() const { return profile_; }

  /// Same profile with half the nodes; used for truncation-error estimates.
  MomentumGrid coarsened() const;

 private:
  friend MomentumGrid build_grid(int d, double cutoff, const GridProfile& profile);

  int d_ = 1;
  double cutoff_ = 0.0;
  GridProfile profile_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Composite 4-point Gauss-Legendre grid (exact for cubics on every panel).
/// Rejects fewer than 64 nodes and non-positive cutoffs.
MomentumGrid build_grid(int d, double cutoff, const GridProfile& profile);

/// Grid for a quench with the default profile and the resolved cutoff.
MomentumGrid default_grid(const QuenchSpec& spec, std::size_t nodes = 2048);

/// Neumaier-compensated running sum; summation order is the call order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace detail {
[[noreturn]] void throw_non_finite(std::size_t index, double k, double value);
}

/// Sum_i w_i f(k_i) in ascending node order with compensated summation.
/// Never parallelized, so repeated calls are bit-identical.
template <std::invocable<double> F>
double radial_integrate(const MomentumGrid& grid, F&& f) {
  const auto k = grid.nodes();
  const auto w = grid.weights();
  CompensatedSum acc;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double v = static_cast<double>(f(k[i]));
    if (!std::isfinite(v)) detail::throw_non_finite(i, k[i], v);
    acc.add(w[i] * v);
  }
  return acc.value();
}

}  // namespace quench
