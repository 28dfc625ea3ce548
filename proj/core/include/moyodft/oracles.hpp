#pragma once

#include <functional>
#include <string>
#include <vector>

#include "moyodft/common.hpp"
#include "moyodft/convex_core.hpp"

namespace moyodft {

/// One line of the verification battery. pass <=> abs_error <= tolerance.
struct OracleReport {
  std::string quantity;
  double reference = 0.0;
  double computed = 0.0;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

OracleReport make_report(std::string quantity, double reference, double computed,
                         double tolerance);

/// Closed-form two-site Lieb functional at density (rho1, 1 - rho1) for one
/// particle and hopping t: -2 t sqrt(rho1 (1 - rho1)). The minimizing
/// amplitudes at fixed site weights are (sqrt(rho1), sqrt(rho2)).
/// Throws DomainError outside [0, 1].
double dimer_F_closed_form(double t, double rho1);

/// The dimer functional as a convex oracle on R^2: finite exactly on the
/// segment {(s, 1-s) : s in [0,1]}, with the closed form above as its value.
/// Carries a LineDomain so prox solves reduce to scalar minimization.
FunctionOracle dimer_lieb_oracle(double t);

/// f(x) = (curvature/2) |x - center|^2 with analytic prox and gradient.
FunctionOracle quadratic_oracle(Vector center, double curvature);

/// Indicator of the single point {anchor}: 0 there, +infinity elsewhere.
FunctionOracle point_indicator_oracle(Vector anchor);

/// f identically zero; prox is the identity.
FunctionOracle zero_oracle();

/// Brute-force prox reference: argmin of f(z) + |x-z|^2/(2 eps) over a
/// uniform grid on the oracle's line_domain, refined once at 10x resolution
/// around the best cell. Requires a line_domain.
Vector grid_prox(const FunctionOracle& f, double eps, const Vector& x, int grid_points);

/// Central finite differences of a scalar field, one coordinate at a time.
/// Throws DomainError if any probe returns a non-finite value.
Vector fd_gradient(const std::function<double(const Vector&)>& field, const Vector& x,
                   double step);

}  // namespace moyodft
