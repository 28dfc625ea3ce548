#include "moyodft/convex_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace moyodft {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
constexpr double kHuge = 1e300;  // internal surrogate for +inf in scalar searches

std::string format_residual(const char* what, double residual, long iters) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s: residual %.3e after %ld iterations",
                what, residual, iters);
  return buf;
}

/// Golden-section minimization of a unimodal scalar function on [lo, hi].
/// Returns the midpoint of the final bracket; width_out receives the bracket
/// width and evals the number of function evaluations.
double golden_section(const std::function<double(double)>& h, double lo, double hi,
                      double width_tol, long* evals) {
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  long n = 2;
  while (b - a > width_tol && n < 400) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = h(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = h(x2);
    }
    ++n;
  }
  if (evals) *evals = n;
  return 0.5 * (a + b);
}

ProxResult finish(const FunctionOracle& f, double eps, const Vector& x,
                  Vector p, double residual, long iterations) {
  ProxResult r;
  r.envelope_value = f.evaluate(p).value() + (x - p).squaredNorm() / (2.0 * eps);
  r.yosida_gradient = (x - p) / eps;
  r.prox_point = std::move(p);
  r.residual = residual;
  r.iterations = iterations;
  return r;
}

ProxResult prox_on_segment(const FunctionOracle& f, double eps, const Vector& x,
                           const ProxConfig&) {
  const LineDomain& seg = *f.line_domain;
  auto h = [&](double s) {
    Vector z = seg.point(s);
    ExtendedReal fz = f.evaluate(z);
    if (!fz.is_finite()) return kHuge;
    return fz.value() + (x - z).squaredNorm() / (2.0 * eps);
  };
  const double range = std::max(seg.hi - seg.lo, 1e-300);
  const double width_tol = 1e-13 * std::max(1.0, range);
  long evals = 0;
  double s = golden_section(h, seg.lo, seg.hi, width_tol, &evals);
  Vector p = seg.point(s);
  if (!f.evaluate(p).is_finite())
    throw EmptyDomain("prox: oracle is infinite on its advertised segment");
  // Position accuracy width_tol converts to a gradient-scale residual through
  // the 1/eps strong convexity of the inner objective.
  const double residual = seg.direction.norm() * width_tol / eps;
  return finish(f, eps, x, std::move(p), residual, evals);
}

ProxResult prox_subgradient(const FunctionOracle& f, double eps, const Vector& x,
                            const ProxConfig& cfg) {
  if (!f.subgradient_hint)
    throw Error("prox: oracle offers neither exact_prox, line_domain, nor subgradients");

  Vector z;
  if (f.evaluate(x).is_finite()) {
    z = x;
  } else {
    Vector zero = Vector::Zero(x.size());
    if (!f.evaluate(zero).is_finite())
      throw EmptyDomain("prox: no finite starting probe (tried x and 0)");
    z = zero;
  }

  Vector best_z = z;
  double best_res = kInfinity;
  long k = 0;
  for (k = 1; k <= cfg.max_iterations; ++k) {
    auto g = f.subgradient_hint(z);
    if (!g)
      throw Error("prox: subgradient_hint returned nothing inside the domain");
    Vector grad = *g + (z - x) / eps;
    double res = grad.norm();
    if (res < best_res) {
      best_res = res;
      best_z = z;
    }
    if (best_res <= cfg.tolerance) break;
    double step = 2.0 * eps / static_cast<double>(k + 1);
    Vector znew = z - step * grad;
    // Feasibility backtrack: halve toward the current iterate until finite.
    int guard = 0;
    while (!f.evaluate(znew).is_finite() && guard++ < 60) znew = 0.5 * (znew + z);
    if (guard < 60) z = std::move(znew);
  }
  if (best_res > cfg.tolerance)
    throw NonConvergence(format_residual("prox", best_res, cfg.max_iterations));
  return finish(f, eps, x, std::move(best_z), best_res, k);
}

/// Minimizes g(z) = envelope_f(z) + <y, z> by the averaged fixed-point
/// iteration z <- Prox_{eps f}(z) - eps y (stationarity: Prox(z) = z + eps y).
/// Returns the final iterate; value_out receives g at it.
Vector minimize_shifted_envelope(const FunctionOracle& f, double eps, const Vector& y,
                                 Vector z, const ConjugateConfig& cfg, double* value_out) {
  ProxResult pr;
  for (long k = 0; k < 5000; ++k) {
    pr = moreau_envelope(f, eps, z, cfg.prox);
    Vector znext = pr.prox_point - eps * y;
    double move = (znext - z).norm();
    z = std::move(znext);
    if (move / eps <= std::max(cfg.tolerance, 1e-10)) break;
  }
  pr = moreau_envelope(f, eps, z, cfg.prox);
  if (value_out) *value_out = pr.envelope_value + y.dot(z);
  return z;
}

}  // namespace

ProxResult moreau_envelope(const FunctionOracle& f, double eps, const Vector& x,
                           const ProxConfig& cfg) {
  if (!(eps > 0.0)) throw DomainError("moreau_envelope: eps must be positive");
  if (!f.evaluate) throw Error("moreau_envelope: oracle has no evaluate");

  if (f.exact_prox) {
    Vector p = f.exact_prox(eps, x);
    return finish(f, eps, x, std::move(p), 0.0, 0);
  }
  if (f.line_domain) return prox_on_segment(f, eps, x, cfg);
  return prox_subgradient(f, eps, x, cfg);
}

Vector prox(const FunctionOracle& f, double eps, const Vector& x, const ProxConfig& cfg) {
  return moreau_envelope(f, eps, x, cfg).prox_point;
}

Vector yosida_gradient(const FunctionOracle& f, double eps, const Vector& x,
                       const ProxConfig& cfg) {
  return moreau_envelope(f, eps, x, cfg).yosida_gradient;
}

ExtendedReal skew_concave_conjugate(const FunctionOracle& f, const Vector& y,
                                    const ConjugateConfig& cfg) {
  if (!f.evaluate) throw Error("skew_concave_conjugate: oracle has no evaluate");

  if (f.line_domain) {
    const LineDomain& seg = *f.line_domain;
    auto h = [&](double s) {
      Vector z = seg.point(s);
      ExtendedReal fz = f.evaluate(z);
      if (!fz.is_finite()) return kHuge;
      return fz.value() + y.dot(z);
    };
    const double width_tol = 1e-13 * std::max(1.0, seg.hi - seg.lo);
    double s = golden_section(h, seg.lo, seg.hi, width_tol, nullptr);
    Vector z = seg.point(s);
    ExtendedReal fz = f.evaluate(z);
    if (!fz.is_finite())
      throw EmptyDomain("skew_concave_conjugate: oracle infinite on its segment");
    return ExtendedReal::finite(fz.value() + y.dot(z));
  }

  // Feasible start inside dom f.
  Vector xk;
  Vector zero = Vector::Zero(y.size());
  if (f.exact_prox) {
    xk = f.exact_prox(1.0, zero);
  } else if (f.evaluate(zero).is_finite()) {
    xk = zero;
  } else {
    throw EmptyDomain("skew_concave_conjugate: no finite starting probe");
  }

  const double cap = std::isfinite(f.domain_radius)
                         ? 10.0 * std::max(f.domain_radius, 1.0)
                         : cfg.iterate_cap;
  double value = f.evaluate(xk).value() + y.dot(xk);
  double epsk = 1.0;
  for (long k = 0; k < cfg.max_outer; ++k) {
    // Prox of g = f + <y, .> with parameter epsk, by the translation identity
    // Prox_{eps g}(w) = Prox_{eps f}(w - eps y).
    Vector xn = prox(f, epsk, xk - epsk * y, cfg.prox);
    double vn = f.evaluate(xn).value() + y.dot(xn);
    double move = (xn - xk).norm();
    xk = std::move(xn);
    value = std::min(value, vn);
    if (value < cfg.value_floor) return ExtendedReal::minus_infinity();
    if (xk.norm() > cap) return ExtendedReal::minus_infinity();
    if (move / epsk <= cfg.tolerance) return ExtendedReal::finite(value);
    epsk = std::min(2.0 * epsk, 1e6);
  }
  throw NonConvergence("skew_concave_conjugate: outer budget exhausted");
}

LosslessReport verify_lossless(const FunctionOracle& f, double eps,
                               const std::vector<Vector>& probes,
                               const ConjugateConfig& cfg) {
  LosslessReport report;
  report.max_deviation = 0.0;

  for (const Vector& x : probes) {
    LosslessReport::Entry entry;
    entry.probe = x;
    entry.original = f.evaluate(x);

    // Maximize Q(y) = [inf_z envelope(z) + <y,z>] + (eps/2)|y|^2 - <y,x> by
    // supergradient ascent; the supergradient at y is z(y) + eps y - x.
    ProxResult at_x = moreau_envelope(f, eps, x, cfg.prox);
    Vector y = -at_x.yosida_gradient;  // optimal when x is in dom f
    Vector z = x;
    double q = -kInfinity;
    double best_q = -kInfinity;
    bool diverged = false;
    double level = 1.0;
    int stall = 0;
    const double target = entry.original.is_finite() ? entry.original.value() : kHuge;

    for (long k = 0; k < 2000; ++k) {
      double m = 0.0;
      z = minimize_shifted_envelope(f, eps, y, z, cfg, &m);
      q = m + 0.5 * eps * y.squaredNorm() - y.dot(x);
      if (q > 1e10 || y.norm() > cfg.iterate_cap) {
        diverged = true;
        break;
      }
      const bool first = !(best_q > -kInfinity);
      if (first || q > best_q + 1e-14 * std::max(1.0, std::abs(best_q))) {
        if (!first && q >= best_q + 0.5 * level) level *= 2.0;
        best_q = first ? q : std::max(best_q, q);
        stall = 0;
      } else {
        ++stall;
      }
      Vector g = z + eps * y - x;
      double gn = g.norm();
      if (gn <= cfg.tolerance) break;
      if (entry.original.is_finite() && target - best_q <= 1e-9 * std::max(1.0, std::abs(target)))
        break;
      if (stall > 40) {
        level *= 0.5;
        stall = 0;
        if (level < 1e-10) break;
      }
      double gap = entry.original.is_finite() ? (target - q) : level;
      if (gap <= 0.0) break;
      y += (gap / (gn * gn)) * g;
    }

    if (diverged) {
      entry.recovered = ExtendedReal::plus_infinity();
    } else {
      entry.recovered = ExtendedReal::finite(best_q);
    }

    if (entry.original.is_finite() && entry.recovered.is_finite()) {
      entry.deviation = std::abs(entry.original.value() - entry.recovered.value());
    } else if (entry.original.is_finite() != entry.recovered.is_finite()) {
      entry.deviation = kInfinity;
    } else {
      entry.deviation = 0.0;
    }
    report.max_deviation = std::max(report.max_deviation, entry.deviation);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace moyodft
