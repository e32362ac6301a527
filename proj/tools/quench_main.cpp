#include <fstream>
#include <iostream>

#include <omp.h>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace quench;
using namespace quench::cli;

namespace {

void add_spec_options(CLI::App* sub, SpecOptions& so) {
  sub->add_option("--d", so.d, "spatial dimension")->check(CLI::Range(1, 3));
  sub->add_option("--m0", so.m0, "pre-quench mass (default 1 where optional)");
  sub->add_option("--m", so.m, "post-quench mass");
  sub->add_option("--lambda0", so.lambda0, "pre-quench coupling");
  sub->add_option("--lambda", so.lambda, "post-quench coupling");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mass and coupling quenches: propagators, effective temperatures, gap equation, time evolution"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file with option values (flags override it)");

  GlobalOptions g;
  app.add_option("--out", g.out, "output file, '-' for stdout");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--grid-nodes", g.grid_nodes, "momentum grid nodes");
  app.add_option("--cutoff", g.cutoff, "UV momentum cutoff (required in d = 3)");
  app.add_option("--threads", g.threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

  PropagatorOptions po;
  auto* prop = app.add_subcommand("propagator", "quench, deep-quench, slab-matched and vertex correlators");
  add_spec_options(prop, po.spec);
  prop->add_flag("--mode", po.mode, "single momentum mode (t1, t2, k) with its matched slab value");
  prop->add_flag("--deep", po.deep, "deep-quench real-space integrand");
  prop->add_flag("--vertex", po.vertex, "d = 1 vertex-operator correlator");
  prop->add_option("--k", po.k, "momentum for --mode");
  prop->add_option("--t1", po.t1, "first time for --mode");
  prop->add_option("--t2", po.t2, "second time for --mode");
  prop->add_option("--t", po.t, "time for an r sweep");
  prop->add_option("--r", po.r, "distance for a t sweep");
  prop->add_option("--r-max", po.r_max, "largest distance of the r sweep");
  prop->add_option("--r-points", po.r_points, "points of the r sweep")->check(CLI::PositiveNumber);
  prop->add_option("--t-max", po.t_max, "sweep equal times on [0, t-max] instead of distances");
  prop->add_option("--t-points", po.t_points, "points of the t sweep")->check(CLI::PositiveNumber);
  prop->add_option("--q", po.q, "vertex charge");

  BetaOptions bo;
  auto* beta = app.add_subcommand("beta", "average effective inverse temperature");
  add_spec_options(beta, bo.spec);
  beta->add_option("--sweep", bo.sweep, "sweep of m/m0 as lo:hi:n[:log|lin]");

  MStarOptions mo;
  auto* mstar = app.add_subcommand("mstar", "asymptotic effective mass from the gap equation");
  add_spec_options(mstar, mo.spec);
  mstar->add_option("--lambda-sweep", mo.lambda_sweep, "sweep of lambda as lo:hi:n[:log|lin]");
  mstar->add_flag("--renormalized", mo.renormalized, "d = 3 renormalized gap equation");

  EvolveOptions eo;
  auto* evolve = app.add_subcommand("evolve", "self-consistent time evolution of the effective mass");
  add_spec_options(evolve, eo.spec);
  evolve->add_option("--t-max", eo.t_max, "evolution horizon")->check(CLI::PositiveNumber);
  evolve->add_option("--dt", eo.dt, "time step (0 picks the default)");
  evolve->add_option("--coupling", eo.coupling, "staged, lagged or iterated");
  evolve->add_option("--stride", eo.stride, "record every n-th step (0 = automatic)");
  evolve->add_option("--fit-from", eo.fit_from, "start of the asymptote fit window");
  evolve->add_option("--fit-to", eo.fit_to, "end of the asymptote fit window");
  evolve->add_flag("--quasi-adiabatic", eo.quasi_adiabatic, "quasi-adiabatic phase-integral evolution");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", vo.suite, "fast or figures")->check(CLI::IsMember({"fast", "figures"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (g.threads > 0) omp_set_num_threads(g.threads);
  const Format format = g.format == "json" ? Format::json : Format::csv;

  Table table;
  int code = 0;
  try {
    if (*prop)
      code = cmd_propagator(po, g, table);
    else if (*beta)
      code = cmd_beta(bo, g, table);
    else if (*mstar)
      code = cmd_mstar(mo, g, table);
    else if (*evolve)
      code = cmd_evolve(eo, g, table);
    else
      code = cmd_verify(vo, g, table);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }

  if (g.out == "-") {
    write_table(std::cout, table, format);
  } else {
    std::ofstream os(g.out);
    if (!os) {
      std::cerr << "error: cannot open " << g.out << " for writing\n";
      return 2;
    }
    write_table(os, table, format);
    if (!os) {
      std::cerr << "error: failed writing " << g.out << '\n';
      return 2;
    }
  }
  for (const auto& [k, v] : table.diagnostics)
    if (k.rfind("warning", 0) == 0 || k == "fit_error") std::cerr << k << ": " << v << '\n';
  return code;
}
