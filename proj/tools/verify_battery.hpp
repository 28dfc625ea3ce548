#pragma once

#include <vector>

#include "moyodft/oracles.hpp"
#include "run_config.hpp"

namespace moyodft::cli {

/// Cross-checks production code against closed forms and independent solvers.
/// Anchors are dimer (two sites, one electron) quantities plus one interacting
/// three-site self-consistency run; total runtime is a few seconds.
std::vector<OracleReport> verify_battery(const RunConfig& config);

}  // namespace moyodft::cli
