#include "quench/core.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace quench {

void QuenchSpec::validate() const {
  std::ostringstream err;
  if (!(m0 > 0.0) || !std::isfinite(m0)) err << "m0 must be positive and finite (got " << m0 << "); ";
  if (!(m >= 0.0) || !std::isfinite(m)) err << "m must be non-negative and finite (got " << m << "); ";
  if (!(lambda0 >= 0.0)) err << "lambda0 must be non-negative (got " << lambda0 << "); ";
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) err << "lambda must be non-negative (got " << lambda << "); ";
  if (d < 1 || d > 3) err << "dimension must be 1, 2 or 3 (got " << d << "); ";
  if (cutoff) {
    if (!std::isfinite(*cutoff) || !(*cutoff > std::max(m0, m)))
      err << "cutoff must be finite and exceed max(m0, m) (got " << *cutoff << "); ";
  }
  const auto msg = err.str();
  if (!msg.empty()) throw DomainError("invalid quench spec: " + msg.substr(0, msg.size() - 2));
}

double QuenchSpec::resolved_cutoff() const {
  if (cutoff) return *cutoff;
  if (d == 3) throw DomainError("d = 3 requires an explicit UV cutoff");
  return 100.0 * m0;
}

double solid_angle(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw DomainError("dimension must be 1, 2 or 3");
  }
}

double angular_measure(int d) {
  return solid_angle(d) / std::pow(2.0 * std::numbers::pi, d);
}

GridProfile GridProfile::for_spec(const QuenchSpec& spec, std::size_t nodes) {
  GridProfile p;
  p.nodes = nodes;
  p.k_min = 1e-4 * std::min(spec.m0, spec.m + 1e-6);
  p.k_mid = 10.0 * std::max(spec.m0, spec.m);
  return p;
}

namespace {

constexpr std::size_t kPanelPoints = 4;

struct GaussRule {
  std::array<double, kPanelPoints> x;
  std::array<double, kPanelPoints> w;
};

GaussRule gauss_rule() {
  using Rule = boost::math::quadrature::gauss<double, kPanelPoints>;
  const auto& a = Rule::abscissa();
  const auto& wt = Rule::weights();
  GaussRule r{};
  // boost stores the non-negative half, ascending.
  r.x = {-a[1], -a[0], a[0], a[1]};
  r.w = {wt[1], wt[0], wt[0], wt[1]};
  return r;
}

void append_geometric(std::vector<double>& edges, double lo, double hi, std::size_t panels) {
  const double ratio = std::log(hi / lo) / static_cast<double>(panels);
  for (std::size_t i = 1; i <= panels; ++i)
    edges.push_back(i == panels ? hi : lo * std::exp(ratio * static_cast<double>(i)));
}

void append_uniform(std::vector<double>& edges, double lo, double hi, std::size_t panels) {
  const double h = (hi - lo) / static_cast<double>(panels);
  for (std::size_t i = 1; i <= panels; ++i)
    edges.push_back(i == panels ? hi : lo + h * static_cast<double>(i));
}

}  // namespace

MomentumGrid build_grid(int d, double cutoff, const GridProfile& profile) {
  if (d < 1 || d > 3) throw DomainError("grid dimension must be 1, 2 or 3");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff))
    throw DomainError("grid cutoff must be positive and finite");
  if (profile.nodes < 64) throw DomainError("grid needs at least 64 nodes");

  const std::size_t panels = (profile.nodes + kPanelPoints - 1) / kPanelPoints;
  std::vector<double> edges{0.0};

  if (profile.spacing == Spacing::uniform) {
    append_uniform(edges, 0.0, cutoff, panels);
  } else if (profile.spacing == Spacing::uniform_geometric) {
    if (!(profile.k_mid > 0.0) || !(profile.k_mid <= cutoff))
      throw DomainError("grid k_mid must lie in (0, cutoff]");
    if (!(profile.geometric_step > 0.0)) throw DomainError("grid geometric_step must be positive");
    const double span = std::log(cutoff / profile.k_mid);
    const std::size_t n_geo =
        std::min(panels - 1, static_cast<std::size_t>(std::ceil(span / profile.geometric_step)));
    append_uniform(edges, 0.0, profile.k_mid, panels - n_geo);
    if (n_geo > 0) append_geometric(edges, profile.k_mid, cutoff, n_geo);
  } else {
    if (!(profile.k_min > 0.0) || !(profile.k_min < cutoff))
      throw DomainError("grid k_min must lie in (0, cutoff)");
    edges.push_back(profile.k_min);
    const std::size_t rest = panels - 1;
    const std::size_t n_log = std::max<std::size_t>(8, rest / 4);
    // A uniform tail is used only while its panels stay narrower than k_mid;
    // wider panels would under-resolve integrands decaying from k_mid.
    const bool uniform_tail = profile.spacing == Spacing::log_uniform &&
                              profile.k_mid > profile.k_min && profile.k_mid < cutoff &&
                              (cutoff - profile.k_mid) / static_cast<double>(rest - n_log) <= profile.k_mid;
    if (uniform_tail) {
      append_geometric(edges, profile.k_min, profile.k_mid, n_log);
      append_uniform(edges, profile.k_mid, cutoff, rest - n_log);
    } else {
      append_geometric(edges, profile.k_min, cutoff, rest);
    }
  }

  static const GaussRule rule = gauss_rule();
  const double ang = angular_measure(d);

  MomentumGrid grid;
  grid.d_ = d;
  grid.cutoff_ = cutoff;
  grid.profile_ = profile;
  grid.profile_.nodes = (edges.size() - 1) * kPanelPoints;
  grid.nodes_.reserve(grid.profile_.nodes);
  grid.weights_.reserve(grid.profile_.nodes);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (std::size_t j = 0; j < kPanelPoints; ++j) {
      const double k = mid + half * rule.x[j];
      grid.nodes_.push_back(k);
      grid.weights_.push_back(rule.w[j] * half * ang * std::pow(k, d - 1));
    }
  }
  return grid;
}

MomentumGrid default_grid(const QuenchSpec& spec, std::size_t nodes) {
  spec.validate();
  return build_grid(spec.d, spec.resolved_cutoff(), GridProfile::for_spec(spec, nodes));
}

MomentumGrid MomentumGrid::coarsened() const {
  GridProfile p = profile_;
  p.nodes = std::max<std::size_t>(64, profile_.nodes / 2);
  return build_grid(d_, cutoff_, p);
}

namespace detail {
void throw_non_finite(std::size_t index, double k, double value) {
  std::ostringstream os;
  os << "integrand is not finite at node " << index << " (k = " << k << ", value = " << value << ")";
  throw DomainError(os.str());
}
}  // namespace detail

}  // namespace quench
