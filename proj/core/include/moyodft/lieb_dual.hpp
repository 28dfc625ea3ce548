#pragma once

#include <optional>

#include "moyodft/common.hpp"
#include "moyodft/lattice_model.hpp"

namespace moyodft {

/// Controls for the supergradient ascent over potentials.
struct DualAscentConfig {
  double tolerance = 1e-8;       // minimal-norm supergradient residual target
  long max_iterations = 200000;
  enum class StepRule { polyak, diminishing };
  StepRule step_rule = StepRule::polyak;
  int restart_count = 3;         // stall-triggered restarts from the best iterate
};

/// Output of one regularization solve at (eps, rho).
/// Algebraic identities by construction: proximal_density = rho + eps * maximizer
/// and proximal_potential = maximizer; the envelope gradient is -maximizer.
/// The residual is the norm of the minimal-norm supergradient over the convex
/// hull of the degenerate ground densities; strong concavity converts it into
/// |v - exact maximizer| <= 2 residual / eps.
struct RegularizedPoint {
  Vector quasidensity;
  Vector proximal_density;
  Vector proximal_potential;
  double envelope_value = 0.0;
  Vector maximizer;
  double residual = 0.0;
  long iterations = 0;
};

/// Density functionals of one lattice model, built by skew conjugation of the
/// ground-state energy. Pure: all methods are const and safe to call
/// concurrently; warm starts are passed explicitly by the caller.
class LiebFunctional {
 public:
  explicit LiebFunctional(LatticeSpec spec, DualAscentConfig cfg = {});

  const LatticeSpec& model() const { return spec_; }

  /// F[rho] = sup_v { E[v] - <v, rho> } by supergradient ascent with a
  /// target-level step rule. Reports +infinity when the objective exceeds
  /// 1e10 or |v| exceeds 1e6 (rho outside dom F). Throws NonConvergence if
  /// the iteration budget ends with the residual above tolerance.
  ExtendedReal value(const Vector& rho) const;

  /// Regularized functional at rho: maximizes the eps-strongly concave
  /// v -> E[v] - (eps/2)|v|^2 - <v, rho>, unique maximizer v*.
  RegularizedPoint regularize(double eps, const Vector& rho) const;
  RegularizedPoint regularize(double eps, const Vector& rho, const Vector& v_start) const;

  /// E[v] - (eps/2)|v|^2, plain arithmetic on one diagonalization. eps = 0
  /// is accepted here (and only here) and reduces to E[v].
  double regularized_energy(double eps, const Vector& v) const;

  /// Ground solve behind the functionals; one-particle path when the model
  /// is noninteracting.
  GroundStateResult ground(const Vector& v) const;

 private:
  LatticeSpec spec_;
  DualAscentConfig cfg_;
  std::optional<ManyBodySolver> solver_;  // engaged only for interacting models
};

/// Free-function forms of the module operations.
ExtendedReal lieb_F(const LatticeSpec& spec, const Vector& rho,
                    const DualAscentConfig& cfg = {});
RegularizedPoint regularize(const LatticeSpec& spec, double eps, const Vector& rho,
                            const DualAscentConfig& cfg = {});
double regularized_energy(const LatticeSpec& spec, double eps, const Vector& v);

/// Hartree-exchange-correlation gradient at rho: the difference of the
/// regularized-functional gradients of the interacting (lambda forced to 1)
/// and noninteracting (lambda = 0) models, i.e. v*_0 - v*_1.
Vector hxc_gradient(const LatticeSpec& spec, double eps, const Vector& rho,
                    const DualAscentConfig& cfg = {});

}  // namespace moyodft
