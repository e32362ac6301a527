#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "quench/evolution.hpp"

namespace quench {

namespace {

constexpr std::size_t kMaxFitPoints = 4000;

struct Window {
  std::vector<double> t;
  std::vector<double> y;
};

Window select(const EffectiveMassTrace& trace, double t_lo, double t_hi) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < trace.times.size(); ++i)
    if (trace.times[i] >= t_lo && trace.times[i] <= t_hi && trace.times[i] > 0.0) idx.push_back(i);
  if (idx.size() < 16) throw DomainError("fit window holds fewer than 16 trace points");
  const std::size_t step = std::max<std::size_t>(1, idx.size() / kMaxFitPoints);
  Window w;
  for (std::size_t j = 0; j < idx.size(); j += step) {
    w.t.push_back(trace.times[idx[j]]);
    w.y.push_back(trace.m_eff_sq[idx[j]]);
  }
  return w;
}

struct Linear {
  double rss;
  Eigen::Vector3d coef;
};

Linear solve_linear(const Window& w, double p, double omega) {
  const Eigen::Index n = static_cast<Eigen::Index>(w.t.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = w.t[static_cast<std::size_t>(i)];
    const double env = std::pow(t, -p);
    A(i, 0) = 1.0;
    A(i, 1) = env * std::cos(2.0 * omega * t);
    A(i, 2) = env * std::sin(2.0 * omega * t);
    y(i) = w.y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
  return {(A * coef - y).squaredNorm(), coef};
}

struct Profile {
  double p;
  double rss;
};

Profile best_exponent(const Window& w, double omega, int bits) {
  const auto r = boost::math::tools::brent_find_minima(
      [&](double p) { return solve_linear(w, p, omega).rss; }, -0.5, 4.0, bits);
  return {r.first, r.second};
}

}  // namespace

AsymptoteFit fit_asymptote(const EffectiveMassTrace& trace, double t_lo, double t_hi, double frequency_hint) {
  if (!(t_hi > t_lo) || !(t_lo >= 0.0)) throw DomainError("fit window must satisfy 0 <= t_lo < t_hi");
  const Window w = select(trace, t_lo, t_hi);
  const double span = w.t.back() - w.t.front();

  double mean = 0.0;
  for (double v : w.y) mean += v;
  mean /= static_cast<double>(w.y.size());
  int crossings = 0;
  double spread = 0.0;
  for (std::size_t i = 0; i < w.y.size(); ++i) {
    spread = std::max(spread, std::abs(w.y[i] - mean));
    if (i > 0 && (w.y[i] - mean > 0.0) != (w.y[i - 1] - mean > 0.0)) ++crossings;
  }
  if (crossings < 4 || spread <= 1e-14 * std::max(1.0, std::abs(mean))) {
    std::ostringstream os;
    os << "trace is not oscillating in [" << t_lo << ", " << t_hi << "] (" << crossings
       << " mean crossings, spread " << spread << ")";
    throw NumericalError(os.str());
  }
  const double estimate = frequency_hint > 0.0 ? frequency_hint : std::numbers::pi * crossings / (2.0 * span);

  const double step = std::numbers::pi / (16.0 * span);
  double best_omega = estimate;
  double best_rss = INFINITY;
  for (double om = 0.7 * estimate; om <= 1.3 * estimate; om += step) {
    const double rss = best_exponent(w, om, 12).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best_omega = om;
    }
  }
  const auto refined = boost::math::tools::brent_find_minima(
      [&](double om) { return best_exponent(w, om, 30).rss; }, best_omega - step, best_omega + step, 40);
  const double omega = refined.first;
  const Profile prof = best_exponent(w, omega, 40);
  const Linear lin = solve_linear(w, prof.p, omega);
  if (!std::isfinite(lin.rss)) throw NumericalError("asymptote fit did not converge");

  AsymptoteFit fit{};
  fit.m_inf_sq = lin.coef(0);
  fit.m_inf = fit.m_inf_sq > 0.0 ? std::sqrt(fit.m_inf_sq) : 0.0;
  fit.decay_exponent = prof.p;
  fit.frequency = omega;
  fit.rms_residual = std::sqrt(lin.rss / static_cast<double>(w.t.size()));
  fit.cos_amplitude = lin.coef(1);
  fit.sin_amplitude = lin.coef(2);
  return fit;
}

double asymptote_model(const AsymptoteFit& fit, double t) {
  if (!(t > 0.0)) throw DomainError("asymptote model needs t > 0");
  const double phase = 2.0 * fit.frequency * t;
  return fit.m_inf_sq +
         std::pow(t, -fit.decay_exponent) * (fit.cos_amplitude * std::cos(phase) + fit.sin_amplitude * std::sin(phase));
}

}  // namespace quench
