#pragma once

#include <optional>
#include <vector>

#include "moyodft/common.hpp"
#include "moyodft/lattice_model.hpp"
#include "moyodft/lieb_dual.hpp"

namespace moyodft {

/// Step-length policies for the outer iteration.
/// full: t = 1 always (basic scheme).
/// damped_feasible: largest t in {1, 1/2, 1/4, ...} keeping a nonpositive
///   directional slope at the trial point.
/// parabola_optimal: vertex of the majorizing regularization parabola;
///   deliberately unclamped.
enum class StepPolicy { full, damped_feasible, parabola_optimal };

struct ScfConfig {
  double eps = 0.1;
  StepPolicy step_policy = StepPolicy::parabola_optimal;
  double residual_tol = 1e-6;
  int max_outer = 500;
  DualAscentConfig dual;

  void validate() const;
};

/// One outer iteration. step_length, parabola_minimum, and descent_slope are
/// NaN when not applicable (terminating record, or policy without a parabola).
struct ScfIterationRecord {
  Vector quasidensity;
  Vector effective_potential;
  double energy_estimate = 0.0;
  double step_length = 0.0;
  double residual = 0.0;
  double parabola_minimum = 0.0;
  double descent_slope = 0.0;
};

struct ScfTrace {
  std::vector<ScfIterationRecord> records;
};

struct ScfResult {
  Vector physical_density;
  double ground_energy = 0.0;  // reconstructed E^1[v_ext]
  bool converged = false;
  ScfTrace trace;
};

/// Basic iteration scheme: full steps, no damping, convergence not guaranteed
/// (oscillation is reported through converged = false, never thrown). The
/// two-argument form initializes rho_0 from the noninteracting solve at v_ext;
/// the overload accepts a caller-chosen quasidensity.
ScfResult myks_scf(const LatticeSpec& spec, const Vector& v_ext, const ScfConfig& cfg);
ScfResult myks_scf(const LatticeSpec& spec, const Vector& v_ext, const ScfConfig& cfg,
                   const Vector& rho0);

/// Damped scheme with a step-length policy; rejects StepPolicy::full.
ScfResult myksoda(const LatticeSpec& spec, const Vector& v_ext, const ScfConfig& cfg);

/// Vertex of the regularization parabola along rho + t * delta, with p the
/// proximal density at rho. The returned t makes rho_next - p_* orthogonal to
/// delta, p_* = p - eps * v_ext. Throws ZeroDirection on |delta| = 0.
double optimal_step(const Vector& rho, const Vector& delta, const Vector& p, double eps,
                    const Vector& v_ext);

/// Largest t in {1, 1/2, 1/4, ...} with a nonpositive slope at rho + t*delta.
/// Evaluates the interacting regularized gradient at each trial point. Throws
/// StalledLineSearch after 60 halvings.
double feasible_step(const Vector& rho, const Vector& delta, const LatticeSpec& spec,
                     double eps, const Vector& v_ext, const ScfConfig& cfg);

}  // namespace moyodft
