#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "moyodft/oracles.hpp"
#include "moyodft/rng.hpp"

using namespace moyodft;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("report rows classify against the tolerance") {
  OracleReport ok = make_report("probe", 1.0, 1.0 + 1e-9, 1e-8);
  REQUIRE(ok.pass);
  REQUIRE(ok.abs_error == Catch::Approx(1e-9).epsilon(1e-6));
  OracleReport bad = make_report("probe", 1.0, 1.1, 1e-8);
  REQUIRE_FALSE(bad.pass);
  OracleReport nan_row = make_report("probe", 1.0, std::nan(""), 1e-8);
  REQUIRE_FALSE(nan_row.pass);
}

TEST_CASE("dimer closed form has the expected shape") {
  const double t = 0.5;
  REQUIRE(dimer_F_closed_form(t, 0.5) == Catch::Approx(-2.0 * t * 0.5));
  REQUIRE(dimer_F_closed_form(t, 0.0) == Catch::Approx(0.0));
  REQUIRE(dimer_F_closed_form(t, 1.0) == Catch::Approx(0.0));
  // Symmetric about 1/2 and minimized there.
  REQUIRE(dimer_F_closed_form(t, 0.3) == Catch::Approx(dimer_F_closed_form(t, 0.7)));
  REQUIRE(dimer_F_closed_form(t, 0.3) > dimer_F_closed_form(t, 0.5));
  REQUIRE_THROWS_AS(dimer_F_closed_form(t, -0.1), DomainError);
  REQUIRE_THROWS_AS(dimer_F_closed_form(t, 1.1), DomainError);
}

TEST_CASE("dimer oracle restricts evaluation to the segment") {
  FunctionOracle f = dimer_lieb_oracle(0.5);
  ExtendedReal on = f.evaluate(vec2(0.3, 0.7));
  REQUIRE(on.is_finite());
  REQUIRE(on.value() == Catch::Approx(dimer_F_closed_form(0.5, 0.3)).margin(1e-12));
  REQUIRE(f.evaluate(vec2(0.3, 0.6)).is_plus_infinity());
  REQUIRE(f.evaluate(vec2(1.2, -0.2)).is_plus_infinity());
  REQUIRE(f.line_domain.has_value());
}

TEST_CASE("quadratic oracle round trip") {
  const Vector center = vec2(0.2, -0.4);
  FunctionOracle f = quadratic_oracle(center, 3.0);
  Vector x = vec2(1.0, 1.0);
  REQUIRE(f.evaluate(x).value() ==
          Catch::Approx(1.5 * (x - center).squaredNorm()).margin(1e-14));
  REQUIRE(f.exact_prox);
  Vector p = f.exact_prox(0.1, x);
  REQUIRE((p - (x + 0.3 * center) / 1.3).norm() < 1e-14);
  REQUIRE(f.subgradient_hint);
  Vector g = *f.subgradient_hint(x);
  REQUIRE((g - 3.0 * (x - center)).norm() < 1e-14);
}

TEST_CASE("indicator and zero oracles") {
  const Vector anchor = vec2(0.1, 0.9);
  FunctionOracle ind = point_indicator_oracle(anchor);
  REQUIRE(ind.evaluate(anchor).value() == 0.0);
  REQUIRE(ind.evaluate(vec2(0.0, 0.0)).is_plus_infinity());
  REQUIRE((ind.exact_prox(0.5, vec2(3.0, 3.0)) - anchor).norm() == 0.0);

  FunctionOracle zero = zero_oracle();
  Vector x = vec2(-2.0, 5.0);
  REQUIRE(zero.evaluate(x).value() == 0.0);
  REQUIRE((zero.exact_prox(0.7, x) - x).norm() == 0.0);
}

TEST_CASE("grid prox approaches the analytic segment minimizer") {
  FunctionOracle f = dimer_lieb_oracle(0.5);
  Vector x = vec2(0.55, 0.45);
  // At the symmetric center the prox of any x on the segment stays near the
  // balanced density for small perturbations; compare against the fine grid.
  Vector coarse = grid_prox(f, 0.1, x, 101);
  Vector fine = grid_prox(f, 0.1, x, 10001);
  REQUIRE((coarse - fine).norm() < 1e-2);
  REQUIRE(fine[0] + fine[1] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("finite differences recover an analytic gradient") {
  auto field = [](const Vector& x) {
    return std::sin(x[0]) * std::exp(0.5 * x[1]);
  };
  Vector x = vec2(0.7, -0.3);
  Vector g = fd_gradient(field, x, 1e-5);
  Vector exact(2);
  exact << std::cos(0.7) * std::exp(-0.15), 0.5 * std::sin(0.7) * std::exp(-0.15);
  REQUIRE((g - exact).norm() < 1e-9);

  auto bad = [](const Vector& x) { return x[0] > 0.0 ? 1.0 : kInfinity; };
  REQUIRE_THROWS_AS(fd_gradient(bad, vec2(0.0, 0.0), 1e-5), DomainError);
}

TEST_CASE("deterministic rng replays its stream") {
  DeterministicRng a(42);
  DeterministicRng b(42);
  for (int k = 0; k < 100; ++k) {
    REQUIRE(a.uniform() == b.uniform());
  }
  Vector va = a.vector(5, -1.0, 1.0);
  Vector vb = b.vector(5, -1.0, 1.0);
  REQUIRE((va - vb).norm() == 0.0);
  REQUIRE(va.minCoeff() >= -1.0);
  REQUIRE(va.maxCoeff() <= 1.0);
  DeterministicRng c(43);
  REQUIRE(c.uniform() != DeterministicRng(42).uniform());
}
