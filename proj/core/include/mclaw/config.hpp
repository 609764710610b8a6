#pragma once

/// @file config.hpp
/// Plain-text run configuration. The grammar is `[section]` headers and
/// `key = value` lines; `#` or `;` start a comment line; list values are
/// comma separated. Parsing validates everything it can reach and reports
/// every problem at once, each tagged with its line number.

#include <string>
#include <vector>

#include "mclaw/expression.hpp"
#include "mclaw/flux.hpp"
#include "mclaw/geometry.hpp"
#include "mclaw/solver.hpp"

namespace mclaw {

/// One requested verification. `tol` and `ode_steps` only tune the
/// parameterized checks; tol = 0 means "use the check's built-in default".
struct CheckRequest {
  std::string name;
  double tol = 0.0;
  int ode_steps = 256;
};

/// Fully resolved run description: either a catalog scenario (possibly with
/// solver overrides) or an inline metric/flux/initial definition.
struct RunConfig {
  std::string label = "run";  // output file prefix
  int dim = 1;
  int n = 64;
  SolverOptions solver;  // scheme, cfl, epsilon, t_end, output_times
  int outputs = 8;       // evenly spaced outputs when output_times is empty
  int envelope_subsamples = 64;
  unsigned long seed = 42;
  MetricField metric;
  FluxField flux;
  Expression initial;  // in r1 (and r2 when dim == 2); defaults to 0
  std::vector<CheckRequest> checks;
};

/// Names of the checks run_scenario understands.
const std::vector<std::string>& known_checks();

/// Parses and validates configuration text. Throws ConfigError carrying one
/// message per problem ("line N: ...").
RunConfig parse_config(const std::string& text);

/// parse_config on the contents of a file.
RunConfig load_config_file(const std::string& path);

}  // namespace mclaw
