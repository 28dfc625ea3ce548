#include "moyodft/scf_solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace moyodft {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

LatticeSpec with_lambda(LatticeSpec spec, double lambda) {
  spec.lambda = lambda;
  return spec;
}

/// Directional slope of the objective at sigma: <grad eF1[sigma] + v_ext, delta>.
double slope_at(const LiebFunctional& F1, double eps, const Vector& sigma,
                const Vector& delta, const Vector& v_ext, Vector& warm) {
  RegularizedPoint point = F1.regularize(eps, sigma, warm);
  warm = point.maximizer;
  return (v_ext - point.maximizer).dot(delta);
}

double backtrack_slope(const LiebFunctional& F1, double eps, const Vector& rho,
                       const Vector& delta, const Vector& v_ext, Vector warm) {
  double t = 1.0;
  for (int halving = 0; halving <= 60; ++halving) {
    if (slope_at(F1, eps, rho + t * delta, delta, v_ext, warm) <= 0.0) return t;
    t *= 0.5;
  }
  throw StalledLineSearch("feasible step: slope stayed positive through 60 halvings");
}

ScfResult run_engine(const LatticeSpec& spec, const Vector& v_ext, const ScfConfig& cfg,
                     const Vector* rho0) {
  cfg.validate();
  if (v_ext.size() != spec.sites)
    throw DimensionMismatch("scf: v_ext length does not match the lattice");
  if (rho0 && rho0->size() != spec.sites)
    throw DimensionMismatch("scf: rho0 length does not match the lattice");

  const double eps = cfg.eps;
  const LiebFunctional F1(with_lambda(spec, 1.0), cfg.dual);
  const LiebFunctional F0(with_lambda(spec, 0.0), cfg.dual);

  Vector v_eff = v_ext;
  Vector rho = rho0 ? *rho0
                    : Vector(noninteracting_solve(F0.model(), v_eff).ensemble_density -
                             eps * v_eff);
  Vector warm1 = v_ext;
  Vector warm0 = v_ext;

  ScfResult result;
  for (int i = 0; i < cfg.max_outer; ++i) {
    RegularizedPoint r1 = F1.regularize(eps, rho, warm1);
    warm1 = r1.maximizer;

    ScfIterationRecord rec;
    rec.quasidensity = rho;
    rec.effective_potential = v_eff;
    rec.energy_estimate = r1.envelope_value + v_ext.dot(rho);
    rec.step_length = kNaN;
    rec.residual = (v_ext - r1.maximizer).norm();
    rec.parabola_minimum = kNaN;
    rec.descent_slope = kNaN;

    if (rec.residual <= cfg.residual_tol) {
      result.converged = true;
      result.trace.records.push_back(std::move(rec));
      break;
    }

    RegularizedPoint r0 = F0.regularize(eps, rho, warm0);
    warm0 = r0.maximizer;
    const Vector v_eff_next = v_ext + (r0.maximizer - r1.maximizer);
    const Vector rho_target =
        noninteracting_solve(F0.model(), v_eff_next).ensemble_density - eps * v_eff_next;
    const Vector delta = rho_target - rho;
    rec.descent_slope = (v_ext - r1.maximizer).dot(delta);

    if (delta.norm() <= 1e-14 * std::max(1.0, rho.norm())) {
      // Update direction vanished while the residual did not: a stalled
      // fixed point, reported through converged = false.
      rec.step_length = 0.0;
      result.trace.records.push_back(std::move(rec));
      break;
    }

    double t = 1.0;
    if (cfg.step_policy == StepPolicy::parabola_optimal) {
      t = optimal_step(rho, delta, r1.proximal_density, eps, v_ext);
      const Vector p_star = r1.proximal_density - eps * v_ext;
      const Vector rho_next = rho + t * delta;
      const double f_at_prox =
          r1.envelope_value -
          (rho - r1.proximal_density).squaredNorm() / (2.0 * eps);
      rec.parabola_minimum = f_at_prox +
                             (rho_next - p_star).squaredNorm() / (2.0 * eps) +
                             v_ext.dot(r1.proximal_density) -
                             0.5 * eps * v_ext.squaredNorm();
    } else if (cfg.step_policy == StepPolicy::damped_feasible) {
      t = backtrack_slope(F1, eps, rho, delta, v_ext, warm1);
    }

    rec.step_length = t;
    result.trace.records.push_back(std::move(rec));
    rho += t * delta;
    v_eff = v_eff_next;
  }

  // The result reflects the last certified evaluation, so the trailing record
  // and the returned density always agree.
  const ScfIterationRecord& last = result.trace.records.back();
  result.physical_density = last.quasidensity + eps * v_ext;
  result.ground_energy = last.energy_estimate + 0.5 * eps * v_ext.squaredNorm();
  return result;
}

}  // namespace

void ScfConfig::validate() const {
  if (!(eps > 0.0)) throw DomainError("ScfConfig: eps must be positive");
  if (!(residual_tol > 0.0)) throw DomainError("ScfConfig: residual_tol must be positive");
  if (max_outer < 1) throw DomainError("ScfConfig: max_outer must be at least 1");
}

ScfResult myks_scf(const LatticeSpec& spec, const Vector& v_ext, const ScfConfig& cfg) {
  if (cfg.step_policy != StepPolicy::full)
    throw std::invalid_argument("myks_scf requires step_policy = full");
  return run_engine(spec, v_ext, cfg, nullptr);
}

ScfResult myks_scf(const LatticeSpec& spec, const Vector& v_ext, const ScfConfig& cfg,
                   const Vector& rho0) {
  if (cfg.step_policy != StepPolicy::full)
    throw std::invalid_argument("myks_scf requires step_policy = full");
  return run_engine(spec, v_ext, cfg, &rho0);
}

ScfResult myksoda(const LatticeSpec& spec, const Vector& v_ext, const ScfConfig& cfg) {
  if (cfg.step_policy == StepPolicy::full)
    throw std::invalid_argument("myksoda requires a damped step policy");
  return run_engine(spec, v_ext, cfg, nullptr);
}

double optimal_step(const Vector& rho, const Vector& delta, const Vector& p, double eps,
                    const Vector& v_ext) {
  const double norm_sq = delta.squaredNorm();
  if (!(norm_sq > 0.0)) throw ZeroDirection("optimal_step: zero search direction");
  const Vector p_star = p - eps * v_ext;
  return -(rho - p_star).dot(delta) / norm_sq;
}

double feasible_step(const Vector& rho, const Vector& delta, const LatticeSpec& spec,
                     double eps, const Vector& v_ext, const ScfConfig& cfg) {
  if (!(delta.norm() > 0.0)) throw ZeroDirection("feasible_step: zero search direction");
  const LiebFunctional F1(with_lambda(spec, 1.0), cfg.dual);
  return backtrack_slope(F1, eps, rho, delta, v_ext, v_ext);
}

}  // namespace moyodft
