#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>

#include "checks.hpp"
#include "quench/eff_temp.hpp"
#include "quench/evolution.hpp"
#include "quench/free_quench.hpp"
#include "quench/imaginary_time.hpp"
#include "quench/mass_gap.hpp"

namespace quench::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string spacing_name(Spacing s) {
  switch (s) {
    case Spacing::log_uniform: return "log_uniform";
    case Spacing::geometric: return "geometric";
    case Spacing::uniform: return "uniform";
    case Spacing::uniform_geometric: return "uniform_geometric";
  }
  return "unknown";
}

void spec_params(Table& t, const QuenchSpec& s) {
  t.param("d", std::to_string(s.d));
  t.param("m0", s.m0);
  t.param("m", s.m);
  t.param("lambda0", s.lambda0);
  t.param("lambda", s.lambda);
  if (s.cutoff)
    t.param("cutoff", *s.cutoff);
  else if (s.d < 3)
    t.param("cutoff", "default (100 m0)");
  else
    t.param("cutoff", "none");
}

void grid_params(Table& t, const MomentumGrid& g) {
  const GridProfile& p = g.profile();
  t.param("grid_nodes", std::to_string(g.size()));
  t.param("grid_cutoff", g.cutoff());
  t.param("grid_spacing", spacing_name(p.spacing));
  if (p.spacing == Spacing::log_uniform || p.spacing == Spacing::geometric) t.param("grid_k_min", p.k_min);
  if (p.spacing != Spacing::uniform && p.spacing != Spacing::geometric) t.param("grid_k_mid", p.k_mid);
  t.param("grid_tail_correction", p.tail_correction ? "on" : "off");
}

std::vector<double> linear_points(double lo, double hi, int n) {
  if (n < 1) throw DomainError("sweep needs at least one point");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / double(n - 1);
  return v;
}

template <class F>
double or_nan(F&& f) {
  try {
    return f();
  } catch (const DomainError&) {
    return kNaN;
  }
}

// Sweep points are independent; rows land at their own index, so the output
// order never depends on scheduling.
template <class F>
std::vector<std::vector<Cell>> sweep_rows(std::size_t n, F&& row_for) {
  std::vector<std::vector<Cell>> rows(n);
  std::vector<std::string> errors(n);
  std::vector<char> numerical(n, 0);
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::size_t j = static_cast<std::size_t>(i);
    try {
      rows[j] = row_for(j);
    } catch (const NumericalError& e) {
      errors[j] = e.what();
      numerical[j] = 1;
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (errors[j].empty()) continue;
    if (numerical[j]) throw NumericalError("sweep point " + std::to_string(j) + ": " + errors[j]);
    throw DomainError("sweep point " + std::to_string(j) + ": " + errors[j]);
  }
  return rows;
}

}  // namespace

QuenchSpec resolve_spec(const SpecOptions& so, const GlobalOptions& g) {
  QuenchSpec s;
  s.d = so.d;
  s.m0 = so.m0.value_or(1.0);
  s.m = so.m;
  s.lambda0 = so.lambda0;
  s.lambda = so.lambda;
  s.cutoff = g.cutoff;
  s.validate();
  return s;
}

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> tok;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) tok.push_back(part);
  if (tok.size() < 3 || tok.size() > 4) throw DomainError("sweep must look like lo:hi:n or lo:hi:n:log");
  const auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) throw DomainError("bad number in sweep: '" + s + "'");
    return v;
  };
  const double lo = number(tok[0]);
  const double hi = number(tok[1]);
  std::string scale = lo > 0.0 ? "log" : "lin";
  int n = -1;
  for (std::size_t i = 2; i < tok.size(); ++i) {
    if (tok[i] == "log" || tok[i] == "lin") {
      scale = tok[i];
    } else {
      const double v = number(tok[i]);
      if (v != std::floor(v) || v < 1 || v > 1e6) throw DomainError("sweep count must be a positive integer");
      n = static_cast<int>(v);
    }
  }
  if (n < 1) throw DomainError("sweep is missing its point count");
  if (scale == "lin") return linear_points(lo, hi, n);
  if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("log sweep needs positive end points");
  std::vector<double> v = linear_points(std::log(lo), std::log(hi), n);
  for (double& x : v) x = std::exp(x);
  v.front() = lo;
  v.back() = hi;
  return v;
}

int cmd_propagator(const PropagatorOptions& o, const GlobalOptions& g, Table& t) {
  if (!o.spec.m0) throw DomainError("propagator needs --m0");
  if (int(o.mode) + int(o.deep) + int(o.vertex) > 1) throw DomainError("--mode, --deep and --vertex are exclusive");
  const QuenchSpec s = resolve_spec(o.spec, g);
  t.param("command", "propagator");
  spec_params(t, s);
  t.param("units", "masses, momenta and 1/length in energy units; times and distances in inverse energy");

  if (o.mode) {
    t.param("kind", "mode");
    const ModePair pair = ModePair::at(o.k, s.m0, s.m);
    const MatchedSlab slab = matched_slab(o.k, s);
    t.param("k", o.k);
    t.param("matched_L", slab.L.is_infinite() ? "inf" : format_number(slab.L.value()));
    t.param("slab_boundary", slab.boundary == SlabBoundary::dirichlet ? "dirichlet" : "neumann");
    t.columns = {"t1", "t2", "k", "re", "im", "slab_re", "slab_im"};
    std::vector<std::pair<double, double>> times{{o.t1, o.t2}};
    if (o.t_max) {
      times.clear();
      for (double x : linear_points(0.0, *o.t_max, o.t_points)) times.emplace_back(x, x);
    }
    for (const auto& [t1, t2] : times) {
      const auto q = quench_mode_propagator(t1, t2, pair);
      const auto sl = slab.L.is_infinite() ? q : slab_mode_propagator(t1, t2, o.k, s.m, {slab.L.value(), slab.boundary});
      t.rows.push_back({t1, t2, o.k, q.real(), q.imag(), sl.real(), sl.imag()});
    }
    return 0;
  }

  if (o.vertex) {
    t.param("kind", "vertex");
    t.param("q", o.q);
    t.param("t", o.t);
    t.columns = {"r", "t", "value", "from_propagator"};
    const VertexParams vp{o.q, s.m0};
    for (double r : linear_points(0.0, o.r_max, o.r_points))
      t.rows.push_back({r, o.t, vertex_correlator(r, o.t, vp), vertex_correlator_from_propagator(r, o.t, vp)});
    return 0;
  }

  const MomentumGrid grid = default_grid(s, g.grid_nodes ? g.grid_nodes : 8192);
  t.param("kind", o.deep ? "deep_quench_real_space" : "quench_real_space");
  grid_params(t, grid);
  RealSpaceOptions opt;
  opt.deep_quench = o.deep;
  const bool closed = o.deep && s.m == 0.0;
  t.columns = {"r", "t", "value", "error_estimate", "accurate", "inside_horizon"};
  if (closed) t.columns.push_back("closed_form");

  std::vector<std::pair<double, double>> points;
  if (o.t_max) {
    t.param("r", o.r);
    for (double x : linear_points(0.0, *o.t_max, o.t_points)) points.emplace_back(o.r, x);
  } else {
    t.param("t", o.t);
    for (double x : linear_points(0.0, o.r_max, o.r_points)) points.emplace_back(x, o.t);
  }
  t.rows = sweep_rows(points.size(), [&](std::size_t i) {
    const auto [r, time] = points[i];
    const RealSpaceValue v = real_space_propagator(r, time, time, s, grid, opt);
    std::vector<Cell> row{r, time, v.value, v.error_estimate, v.accurate ? 1.0 : 0.0, horizon_indicator(r, time) ? 1.0 : 0.0};
    if (closed) row.push_back(or_nan([&] { return deep_quench_closed_form(r, time, s.d, s.m0); }));
    return row;
  });
  return 0;
}

int cmd_beta(const BetaOptions& o, const GlobalOptions& g, Table& t) {
  const QuenchSpec base = resolve_spec(o.spec, g);
  t.param("command", "beta");
  spec_params(t, base);
  t.param("units", "x = m/m0; beta_bar and its expansion in units 1/m0");
  std::vector<double> xs{base.m / base.m0};
  if (!o.sweep.empty()) {
    xs = parse_sweep(o.sweep);
    t.param("sweep", o.sweep);
  }
  t.columns = {"x", "beta_bar_m0", "residual", "iterations", "expansion_m0"};
  t.rows = sweep_rows(xs.size(), [&](std::size_t i) {
    QuenchSpec s = base;
    s.m = xs[i] * base.m0;
    const BetaSolveResult r = solve_average_beta(s);
    const double beta = r.beta_bar.is_infinite() ? std::numeric_limits<double>::infinity() : r.beta_bar.value() * s.m0;
    const double expansion = or_nan([&] { return beta_expansion(s) * s.m0; });
    return std::vector<Cell>{xs[i], beta, r.residual, double(r.iterations), expansion};
  });
  return 0;
}

int cmd_mstar(const MStarOptions& o, const GlobalOptions& g, Table& t) {
  const QuenchSpec base = resolve_spec(o.spec, g);
  t.param("command", "mstar");
  spec_params(t, base);
  t.param("units", "m_star in energy units; sigma_star = m_star^2 - m^2");
  t.param("solver", o.renormalized ? "renormalized_3d" : "cutoff");
  const MomentumGrid grid = gap_grid(base, g.grid_nodes ? g.grid_nodes : 4096);
  grid_params(t, grid);
  std::vector<double> lambdas{base.lambda};
  if (!o.lambda_sweep.empty()) {
    lambdas = parse_sweep(o.lambda_sweep);
    t.param("lambda_sweep", o.lambda_sweep);
  }
  t.columns = {"lambda", "m_star", "sigma_star", "residual", "iterations", "branch", "m_eff_sq_0"};
  t.rows = sweep_rows(lambdas.size(), [&](std::size_t i) {
    QuenchSpec s = base;
    s.lambda = lambdas[i];
    const GapSolveResult r = o.renormalized ? solve_m_star_renormalized_3d(s, grid) : solve_m_star(s, grid);
    const char* branch = r.branch == GapBranch::generic             ? "generic"
                         : r.branch == GapBranch::massless_1d_limit ? "massless_1d_limit"
                                                                    : "no_quench";
    const double m0_sq = or_nan([&] { return initial_effective_mass_on_grid(s, grid).m_eff_sq_0; });
    return std::vector<Cell>{s.lambda, r.m_star, r.sigma_star, r.residual, double(r.iterations), std::string(branch), m0_sq};
  });
  return 0;
}

int cmd_evolve(const EvolveOptions& o, const GlobalOptions& g, Table& t) {
  const QuenchSpec s = resolve_spec(o.spec, g);
  EvolutionConfig cfg;
  cfg.t_max = o.t_max;
  cfg.dt = o.dt;
  cfg.record_stride = o.stride;
  if (o.coupling == "staged")
    cfg.coupling = CouplingMode::staged;
  else if (o.coupling == "lagged")
    cfg.coupling = CouplingMode::lagged;
  else if (o.coupling == "iterated")
    cfg.coupling = CouplingMode::within_step_iterated;
  else
    throw DomainError("--coupling must be staged, lagged or iterated");
  MomentumGrid grid = evolution_grid(s, o.t_max);
  if (g.grid_nodes) {
    GridProfile p = grid.profile();
    p.nodes = g.grid_nodes;
    grid = build_grid(s.d, grid.cutoff(), p);
  }
  cfg.grid = grid;

  t.param("command", "evolve");
  spec_params(t, s);
  grid_params(t, grid);
  t.param("t_max", o.t_max);
  t.param("coupling", o.coupling);
  t.param("units", "times in 1/energy; m_eff_sq and sigma in energy^2");

  if (o.quasi_adiabatic) {
    t.param("method", "quasi_adiabatic");
    const EffectiveMassTrace tr = quasi_adiabatic_evolve(s, cfg);
    t.diagnostic("sigma_qa_stationary", quasi_adiabatic_stationary(s, grid).sigma_star);
    t.columns = {"t", "m_eff_sq", "sigma", "c"};
    for (std::size_t i = 0; i < tr.times.size(); ++i) t.rows.push_back({tr.times[i], tr.m_eff_sq[i], tr.sigma[i], tr.c_of_t[i]});
    return 0;
  }

  t.param("method", "self_consistent");
  const double fit_to = o.fit_to.value_or(o.t_max);
  const double fit_from = o.fit_from.value_or(0.5 * fit_to);
  t.param("fit_window", format_number(fit_from) + ":" + format_number(fit_to));

  // compare_ansatz fits the default window; run the pieces directly so a
  // failed fit still leaves the trace on disk.
  const GapSolveResult gap = solve_m_star(s, grid);
  const EvolutionRun run = self_consistent_evolve(s, cfg);
  t.param("dt", run.dt);
  t.param("steps", std::to_string(run.steps));
  t.param("record_stride", std::to_string(run.record_stride));
  t.diagnostic("m_eff_sq_initial", run.m_eff_sq_initial);
  t.diagnostic("m_star", gap.m_star);
  t.diagnostic("sigma_star", gap.sigma_star);
  if (run.m_eff_sq_initial > 0.0) t.diagnostic("sigma_qa", quasi_adiabatic_stationary(s, grid).sigma_star);
  t.diagnostic("max_wronskian_deviation", run.max_wronskian_deviation);
  t.diagnostic("energy_drift", run.energy_drift);
  for (std::size_t i = 0; i < run.warnings.size(); ++i) t.diagnostic("warning_" + std::to_string(i + 1), run.warnings[i]);

  int code = 0;
  std::optional<AsymptoteFit> fit;
  if (s.lambda > 0.0) {
    try {
      fit = fit_asymptote(run.trace, fit_from, fit_to, gap.m_star);
    } catch (const NumericalError& e) {
      t.diagnostic("fit_error", e.what());
      code = 3;
    }
  }
  if (fit) {
    const double sigma_num = fit->m_inf_sq - s.m * s.m;
    t.diagnostic("fit_m_inf", fit->m_inf);
    t.diagnostic("fit_decay_exponent", fit->decay_exponent);
    t.diagnostic("fit_frequency", fit->frequency);
    t.diagnostic("fit_rms_residual", fit->rms_residual);
    t.diagnostic("sigma_numeric", sigma_num);
    t.diagnostic("relative_gap", gap.sigma_star != 0.0 ? std::abs(sigma_num - gap.sigma_star) / std::abs(gap.sigma_star) : kNaN);
  }

  t.columns = {"t", "m_eff_sq", "sigma", "c", "energy", "fit_m_eff_sq", "fit_m_inf"};
  const auto& tr = run.trace;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const double time = tr.times[i];
    const bool in_window = fit && time >= fit_from && time <= fit_to && time > 0.0;
    t.rows.push_back({time, tr.m_eff_sq[i], tr.sigma[i], tr.c_of_t[i], tr.energy[i],
                      in_window ? asymptote_model(*fit, time) : kNaN, fit ? fit->m_inf : kNaN});
  }
  return code;
}

int cmd_verify(const VerifyOptions& o, const GlobalOptions&, Table& t) {
  std::vector<checks::CheckResult> results;
  if (o.suite == "fast")
    results = checks::fast_suite();
  else if (o.suite == "figures")
    results = checks::figure_suite();
  else
    throw DomainError("--suite must be fast or figures");
  t.param("command", "verify");
  t.param("suite", o.suite);
  t.columns = {"id", "title", "passed", "detail"};
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    t.rows.push_back({r.id, r.title, r.passed ? 1.0 : 0.0, r.detail});
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.title << " (" << r.seconds << " s): " << r.detail << '\n';
  }
  t.diagnostic("all_passed", all ? "yes" : "no");
  return all ? 0 : 4;
}

}  // namespace quench::cli
