#include "moyodft/oracles.hpp"

#include <cmath>
#include <utility>

namespace moyodft {

OracleReport make_report(std::string quantity, double reference, double computed,
                         double tolerance) {
  OracleReport r;
  r.quantity = std::move(quantity);
  r.reference = reference;
  r.computed = computed;
  r.abs_error = std::abs(computed - reference);
  r.tolerance = tolerance;
  r.pass = r.abs_error <= tolerance;
  return r;
}

double dimer_F_closed_form(double t, double rho1) {
  if (!(t > 0.0)) throw DomainError("dimer_F_closed_form: hopping must be positive");
  if (!(rho1 >= 0.0 && rho1 <= 1.0))
    throw DomainError("dimer_F_closed_form: rho1 outside [0, 1]");
  return -2.0 * t * std::sqrt(rho1 * (1.0 - rho1));
}

FunctionOracle dimer_lieb_oracle(double t) {
  FunctionOracle f;
  f.evaluate = [t](const Vector& rho) {
    if (rho.size() != 2) throw DimensionMismatch("dimer oracle: expected 2 entries");
    const double s = rho[0];
    if (s < 0.0 || s > 1.0 || std::abs(rho[0] + rho[1] - 1.0) > 1e-9)
      return ExtendedReal::plus_infinity();
    return ExtendedReal::finite(-2.0 * t * std::sqrt(s * (1.0 - s)));
  };
  f.subgradient_hint = [t](const Vector& rho) -> std::optional<Vector> {
    const double a = rho[0], b = rho[1];
    if (a <= 0.0 || b <= 0.0) return std::nullopt;  // slope unbounded at the edges
    Vector g(2);
    g[0] = -t * std::sqrt(b / a);
    g[1] = -t * std::sqrt(a / b);
    return g;
  };
  f.domain_radius = 1.0;
  LineDomain seg;
  seg.origin = Vector::Zero(2);
  seg.origin[1] = 1.0;
  seg.direction = Vector(2);
  seg.direction[0] = 1.0;
  seg.direction[1] = -1.0;
  seg.lo = 0.0;
  seg.hi = 1.0;
  f.line_domain = seg;
  return f;
}

FunctionOracle quadratic_oracle(Vector center, double curvature) {
  if (!(curvature > 0.0)) throw DomainError("quadratic_oracle: curvature must be positive");
  FunctionOracle f;
  f.evaluate = [center, curvature](const Vector& x) {
    return ExtendedReal::finite(0.5 * curvature * (x - center).squaredNorm());
  };
  f.subgradient_hint = [center, curvature](const Vector& x) -> std::optional<Vector> {
    return Vector(curvature * (x - center));
  };
  f.exact_prox = [center, curvature](double eps, const Vector& x) {
    return Vector((x + eps * curvature * center) / (1.0 + eps * curvature));
  };
  return f;
}

FunctionOracle point_indicator_oracle(Vector anchor) {
  FunctionOracle f;
  const double tol = 1e-12 * (1.0 + anchor.norm());
  f.evaluate = [anchor, tol](const Vector& x) {
    if ((x - anchor).norm() <= tol) return ExtendedReal::finite(0.0);
    return ExtendedReal::plus_infinity();
  };
  f.exact_prox = [anchor](double, const Vector&) { return anchor; };
  f.domain_radius = anchor.norm();
  return f;
}

FunctionOracle zero_oracle() {
  FunctionOracle f;
  f.evaluate = [](const Vector&) { return ExtendedReal::finite(0.0); };
  f.subgradient_hint = [](const Vector& x) -> std::optional<Vector> {
    return Vector(Vector::Zero(x.size()));
  };
  f.exact_prox = [](double, const Vector& x) { return x; };
  return f;
}

Vector grid_prox(const FunctionOracle& f, double eps, const Vector& x, int grid_points) {
  if (!f.line_domain)
    throw DomainError("grid_prox: oracle does not advertise a 1-D domain");
  if (grid_points < 3) throw DomainError("grid_prox: need at least 3 grid points");
  const LineDomain& seg = *f.line_domain;

  auto objective = [&](double s) {
    Vector z = seg.point(s);
    ExtendedReal fz = f.evaluate(z);
    if (!fz.is_finite()) return kInfinity;
    return fz.value() + (x - z).squaredNorm() / (2.0 * eps);
  };

  auto scan = [&](double lo, double hi, int n) {
    double best_s = lo, best_v = kInfinity;
    for (int j = 0; j < n; ++j) {
      double s = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1);
      double v = objective(s);
      if (v < best_v) {
        best_v = v;
        best_s = s;
      }
    }
    return best_s;
  };

  const double cell = (seg.hi - seg.lo) / static_cast<double>(grid_points - 1);
  double s0 = scan(seg.lo, seg.hi, grid_points);
  double lo = std::max(seg.lo, s0 - cell);
  double hi = std::min(seg.hi, s0 + cell);
  double s1 = scan(lo, hi, 10 * grid_points);
  return seg.point(s1);
}

Vector fd_gradient(const std::function<double(const Vector&)>& field, const Vector& x,
                   double step) {
  if (!(step > 0.0)) throw DomainError("fd_gradient: step must be positive");
  Vector g(x.size());
  Vector probe = x;
  for (int i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    double fp = field(probe);
    probe[i] = x[i] - step;
    double fm = field(probe);
    probe[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw DomainError("fd_gradient: field not finite at a probe point");
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

}  // namespace moyodft
