#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quench/core.hpp"
#include "table.hpp"

namespace quench::cli {

struct GlobalOptions {
  std::string out = "-";
  std::string format = "csv";
  std::size_t grid_nodes = 0;  // 0 keeps each command's default
  std::optional<double> cutoff;
  int threads = 0;  // 0 keeps the OpenMP default
};

struct SpecOptions {
  int d = 1;
  std::optional<double> m0;
  double m = 0.0;
  double lambda0 = 0.0;
  double lambda = 0.0;
};

QuenchSpec resolve_spec(const SpecOptions& so, const GlobalOptions& g);

/// "lo:hi:n", optionally with a "log" or "lin" token anywhere after hi.
/// Log spacing is the default when lo > 0.
std::vector<double> parse_sweep(const std::string& text);

struct PropagatorOptions {
  SpecOptions spec;
  bool mode = false;
  bool deep = false;
  bool vertex = false;
  double k = 1.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t = 1.0;
  double r = 1.0;
  double r_max = 6.0;
  int r_points = 64;
  std::optional<double> t_max;
  int t_points = 64;
  double q = 1.0;
};

struct BetaOptions {
  SpecOptions spec;
  std::string sweep;
};

struct MStarOptions {
  SpecOptions spec;
  std::string lambda_sweep;
  bool renormalized = false;
};

struct EvolveOptions {
  SpecOptions spec;
  double t_max = 100.0;
  double dt = 0.0;
  std::string coupling = "staged";
  std::size_t stride = 0;
  std::optional<double> fit_from;
  std::optional<double> fit_to;
  bool quasi_adiabatic = false;
};

struct VerifyOptions {
  std::string suite = "fast";
};

/// Each command fills a table and returns the process exit code it wants
/// (0, or 3/4 when the table is still worth writing).
int cmd_propagator(const PropagatorOptions& o, const GlobalOptions& g, Table& table);
int cmd_beta(const BetaOptions& o, const GlobalOptions& g, Table& table);
int cmd_mstar(const MStarOptions& o, const GlobalOptions& g, Table& table);
int cmd_evolve(const EvolveOptions& o, const GlobalOptions& g, Table& table);
int cmd_verify(const VerifyOptions& o, const GlobalOptions& g, Table& table);

}  // namespace quench::cli
