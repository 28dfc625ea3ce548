#pragma once

#include <string>

#include "moyodft/lattice_model.hpp"
#include "moyodft/scf_solvers.hpp"

namespace moyodft::cli {

/// Flat key=value configuration; unknown keys are errors so files cannot
/// drift silently against the binary.
struct RunConfig {
  LatticeSpec model;   // dimer with one electron unless configured
  ScfConfig solver;
  Vector v_ext;        // empty means the +1/-1 alternating default
  std::string output_path;
  unsigned long seed = 42;

  /// v_ext with the default applied and the length checked against model.sites.
  Vector external_potential() const;
};

struct ConfigError : Error {
  using Error::Error;
};

RunConfig default_config();

/// Parses a config file; throws ConfigError naming the offending key or line.
RunConfig load_config(const std::string& path);

/// Applies the MOYODFT_MAX_BASIS environment override, when present.
void apply_environment(RunConfig& config);

StepPolicy parse_step_policy(const std::string& name);
DualAscentConfig::StepRule parse_step_rule(const std::string& name);

/// Full round-trip decimal formatting, 17 significant digits.
std::string format_real(double x);

/// Comma-separated list of reals, e.g. "0.7,0.3".
Vector parse_real_list(const std::string& text);

}  // namespace moyodft::cli
