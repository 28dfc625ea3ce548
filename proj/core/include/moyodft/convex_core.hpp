#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "moyodft/common.hpp"

namespace moyodft {

/// One-dimensional affine parameterization of an effective domain:
/// { origin + s * direction : s in [lo, hi] }. Oracles whose domain is a
/// segment (the dimer simplex) advertise one so the inner prox solver can
/// use exact scalar minimization instead of subgradient descent.
struct LineDomain {
  Vector origin;
  Vector direction;
  double lo = 0.0;
  double hi = 1.0;

  Vector point(double s) const { return origin + s * direction; }
};

/// Black-box proper convex function. `evaluate` is mandatory; out-of-domain
/// points report +infinity through the ExtendedReal flag. The remaining
/// members are optional capabilities the solvers exploit when present:
///   subgradient_hint  one element of the subdifferential, or nullopt
///   exact_prox        closed-form proximal map (eps, x) -> argmin
///   line_domain       1-D parameterization of the effective domain
/// Convexity is trusted and spot-checked by the test suites, never enforced.
struct FunctionOracle {
  std::function<ExtendedReal(const Vector&)> evaluate;
  std::function<std::optional<Vector>(const Vector&)> subgradient_hint;
  double domain_radius = kInfinity;
  std::function<Vector(double, const Vector&)> exact_prox;
  std::optional<LineDomain> line_domain;
};

/// Output of one proximal solve at (f, eps, x).
/// Invariants: envelope_value = f(prox_point) + |x - prox_point|^2 / (2 eps)
/// within the inner tolerance; yosida_gradient = (x - prox_point) / eps as an
/// algebraic identity. The residual certifies |prox_point - exact| <= eps * residual
/// through the 1/eps strong convexity of the inner objective.
struct ProxResult {
  Vector prox_point;
  double envelope_value = 0.0;
  Vector yosida_gradient;
  double residual = 0.0;
  long iterations = 0;
};

/// Inner prox solver controls.
struct ProxConfig {
  double tolerance = 1e-8;
  long max_iterations = 200000;
};

/// Controls for skew conjugation and the losslessness verifier.
struct ConjugateConfig {
  double tolerance = 1e-8;
  long max_outer = 200;       // proximal-point outer steps
  ProxConfig prox{};          // inner prox solves
  double value_floor = -1e12; // values below this report -infinity
  double iterate_cap = 1e8;   // norm cap when domain_radius is unknown
};

/// Per-probe record of the losslessness check. `deviation` is the absolute
/// difference when both sides are finite, 0 when both are infinite, and
/// +infinity when exactly one side is finite (a domain mismatch).
struct LosslessReport {
  struct Entry {
    Vector probe;
    ExtendedReal original = ExtendedReal::plus_infinity();
    ExtendedReal recovered = ExtendedReal::plus_infinity();
    double deviation = 0.0;
  };
  std::vector<Entry> entries;
  double max_deviation = 0.0;
};

/// Moreau envelope and proximal point of f at x with parameter eps > 0:
/// minimizes z -> f(z) + |x - z|^2 / (2 eps). Dispatch order: exact_prox,
/// line_domain (golden-section), subgradient descent with steps 2 eps/(k+1).
/// Throws EmptyDomain if no finite starting probe exists, NonConvergence if
/// the subgradient path exhausts its budget above tolerance. The generic
/// subgradient path converges at the strongly convex O(1/k) rate only; tight
/// tolerances require one of the structured capabilities.
ProxResult moreau_envelope(const FunctionOracle& f, double eps, const Vector& x,
                           const ProxConfig& cfg = {});

/// Proximal point only.
Vector prox(const FunctionOracle& f, double eps, const Vector& x,
            const ProxConfig& cfg = {});

/// Yosida gradient (x - prox) / eps; the Frechet gradient of the envelope and
/// a subgradient of f at the prox point.
Vector yosida_gradient(const FunctionOracle& f, double eps, const Vector& x,
                       const ProxConfig& cfg = {});

/// Skew conjugate f^(y) = inf_x { f(x) + <y, x> }. Computed by scalar
/// minimization on a line_domain, otherwise by proximal-point iteration with
/// a doubling prox parameter. Reports -infinity when the iterates fall below
/// cfg.value_floor or escape the norm cap (a descent ray).
ExtendedReal skew_concave_conjugate(const FunctionOracle& f, const Vector& y,
                                    const ConjugateConfig& cfg = {});

/// Checks the lossless reconstruction f(x) = sup_y { A(y) - <y, x> } with
/// A(y) = (envelope of f)^(y) + (eps/2)|y|^2 at each probe, all pieces
/// computed numerically. Report-valued; never throws on deviations.
LosslessReport verify_lossless(const FunctionOracle& f, double eps,
                               const std::vector<Vector>& probes,
                               const ConjugateConfig& cfg = {});

}  // namespace moyodft
