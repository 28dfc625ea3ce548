#include "moyodft/lieb_dual.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

namespace moyodft {

namespace {

/// Euclidean projection onto the probability simplex {w >= 0, sum w = 1}.
Vector project_simplex(Vector w) {
  const int n = static_cast<int>(w.size());
  std::vector<double> u(w.data(), w.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0, tau = 0.0;
  for (int j = 0; j < n; ++j) {
    cumsum += u[static_cast<std::size_t>(j)];
    double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - candidate > 0.0) tau = candidate;
  }
  for (int i = 0; i < n; ++i) w[i] = std::max(0.0, w[i] - tau);
  return w;
}

/// Minimal-norm element of conv{densities} + base, by projected gradient on
/// the simplex of convex weights. The density list is short (the ground-level
/// degeneracy), so a fixed small budget reaches machine-level accuracy.
Vector min_norm_supergradient(const std::vector<Vector>& densities, const Vector& base) {
  const int d = static_cast<int>(densities.size());
  if (d == 1) return densities[0] + base;

  double row_norm_max = 0.0;
  for (const Vector& rho : densities) row_norm_max = std::max(row_norm_max, rho.squaredNorm());
  const double step = 1.0 / (2.0 * static_cast<double>(d) * std::max(row_norm_max, 1e-30));

  Vector w = Vector::Constant(d, 1.0 / d);
  Vector r = base;
  for (int j = 0; j < d; ++j) r += w[j] * densities[static_cast<std::size_t>(j)];
  for (int it = 0; it < 400; ++it) {
    Vector grad(d);
    for (int j = 0; j < d; ++j) grad[j] = 2.0 * densities[static_cast<std::size_t>(j)].dot(r);
    Vector w_next = project_simplex(w - step * grad);
    if ((w_next - w).norm() <= 1e-14) {
      w = std::move(w_next);
      break;
    }
    w = std::move(w_next);
    r = base;
    for (int j = 0; j < d; ++j) r += w[j] * densities[static_cast<std::size_t>(j)];
  }
  r = base;
  for (int j = 0; j < d; ++j) r += w[j] * densities[static_cast<std::size_t>(j)];
  return r;
}

std::string budget_message(const char* what, double residual, long iters) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s: residual %.3e after %ld iterations", what,
                residual, iters);
  return buf;
}

}  // namespace

LiebFunctional::LiebFunctional(LatticeSpec spec, DualAscentConfig cfg)
    : spec_(std::move(spec)), cfg_(cfg) {
  spec_.validate();
  if (spec_.interacting()) solver_.emplace(spec_);
}

GroundStateResult LiebFunctional::ground(const Vector& v) const {
  return solver_ ? solver_->solve(v) : noninteracting_solve(spec_, v);
}

double LiebFunctional::regularized_energy(double eps, const Vector& v) const {
  if (eps < 0.0) throw DomainError("regularized_energy: eps must be nonnegative");
  return ground(v).energy - 0.5 * eps * v.squaredNorm();
}

RegularizedPoint LiebFunctional::regularize(double eps, const Vector& rho) const {
  return regularize(eps, rho, Vector::Zero(spec_.sites));
}

RegularizedPoint LiebFunctional::regularize(double eps, const Vector& rho,
                                            const Vector& v_start) const {
  if (!(eps > 0.0)) throw DomainError("regularize: eps must be positive");
  if (rho.size() != spec_.sites)
    throw DimensionMismatch("regularize: density length does not match the lattice");

  Vector v = v_start;
  double upper_bound = kInfinity;  // certified bound on the optimal value
  double best_phi = -kInfinity;
  Vector best_v = v;
  double damping = 1.0;
  int stall = 0;
  int restarts = 0;

  for (long k = 1; k <= cfg_.max_iterations; ++k) {
    GroundStateResult gs = ground(v);
    const double phi = gs.energy - 0.5 * eps * v.squaredNorm() - v.dot(rho);
    Vector base = -(eps * v + rho);
    Vector g = min_norm_supergradient(gs.ground_densities, base);
    const double r = g.norm();

    // Strong concavity: optimum <= phi + |g|^2 / (2 eps) for any supergradient.
    upper_bound = std::min(upper_bound, phi + r * r / (2.0 * eps));

    if (phi > best_phi) {
      best_phi = phi;
      best_v = v;
      stall = 0;
    } else {
      ++stall;
    }

    if (r <= cfg_.tolerance) {
      RegularizedPoint point;
      point.quasidensity = rho;
      point.maximizer = v;
      point.proximal_potential = v;
      point.proximal_density = rho + eps * v;
      point.envelope_value = phi;
      point.residual = r;
      point.iterations = k;
      return point;
    }

    double step;
    const double gap = upper_bound - phi;
    if (cfg_.step_rule == DualAscentConfig::StepRule::polyak && gap > 0.0) {
      step = std::min(damping * gap / (r * r), 2.0 / eps);
    } else {
      step = 2.0 / (eps * static_cast<double>(k + 1));
    }
    v += step * g;

    if (stall > 300) {
      v = best_v;
      stall = 0;
      if (restarts++ < cfg_.restart_count) damping *= 0.5;
    }
  }
  throw NonConvergence(budget_message("regularize", cfg_.tolerance, cfg_.max_iterations));
}

ExtendedReal LiebFunctional::value(const Vector& rho) const {
  if (rho.size() != spec_.sites)
    throw DimensionMismatch("lieb_F: density length does not match the lattice");

  constexpr double kObjectiveCeiling = 1e10;
  constexpr double kPotentialCap = 1e6;

  Vector v = Vector::Zero(spec_.sites);
  double best_psi = -kInfinity;
  Vector best_v = v;
  double best_res = kInfinity;
  double level = 1.0;
  int stall = 0;

  for (long k = 1; k <= cfg_.max_iterations; ++k) {
    GroundStateResult gs = ground(v);
    const double psi = gs.energy - v.dot(rho);
    if (psi > kObjectiveCeiling || v.norm() > kPotentialCap)
      return ExtendedReal::plus_infinity();

    Vector g = min_norm_supergradient(gs.ground_densities, -rho);
    const double r = g.norm();

    if (psi > best_psi) {
      if (best_psi > -kInfinity && psi >= best_psi + 0.5 * level) level *= 2.0;
      best_psi = psi;
      best_v = v;
      best_res = std::min(best_res, r);
      stall = 0;
    } else {
      ++stall;
    }
    best_res = std::min(best_res, r);

    if (r <= cfg_.tolerance) return ExtendedReal::finite(std::max(psi, best_psi));

    if (stall > 50) {
      level *= 0.5;
      stall = 0;
      v = best_v;
      // Level exhausted: the value has stabilized to the search resolution.
      if (level < 1e-12 * std::max(1.0, std::abs(best_psi)))
        return ExtendedReal::finite(best_psi);
      continue;
    }

    const double target = best_psi + level;
    double step = (target - psi) / (r * r);
    // Trust cap: an unattainable target with a small supergradient must not
    // catapult v past the divergence thresholds. Geometric growth per step
    // still reaches the |v| cap quickly when rho is genuinely outside dom F.
    step = std::min(step, (2.0 + 0.1 * v.norm()) / r);
    v += step * g;
  }
  if (best_res > cfg_.tolerance)
    throw NonConvergence(budget_message("lieb_F", best_res, cfg_.max_iterations));
  return ExtendedReal::finite(best_psi);
}

ExtendedReal lieb_F(const LatticeSpec& spec, const Vector& rho, const DualAscentConfig& cfg) {
  return LiebFunctional(spec, cfg).value(rho);
}

RegularizedPoint regularize(const LatticeSpec& spec, double eps, const Vector& rho,
                            const DualAscentConfig& cfg) {
  return LiebFunctional(spec, cfg).regularize(eps, rho);
}

double regularized_energy(const LatticeSpec& spec, double eps, const Vector& v) {
  return LiebFunctional(spec).regularized_energy(eps, v);
}

Vector hxc_gradient(const LatticeSpec& spec, double eps, const Vector& rho,
                    const DualAscentConfig& cfg) {
  LatticeSpec interacting = spec;
  interacting.lambda = 1.0;
  LatticeSpec reference = spec;
  reference.lambda = 0.0;
  RegularizedPoint p1 = LiebFunctional(interacting, cfg).regularize(eps, rho);
  RegularizedPoint p0 = LiebFunctional(reference, cfg).regularize(eps, rho);
  // grad eF1 - grad eF0 = (-v*_1) - (-v*_0).
  return p0.maximizer - p1.maximizer;
}

}  // namespace moyodft
