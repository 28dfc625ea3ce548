#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "moyodft/convex_core.hpp"
#include "moyodft/lieb_dual.hpp"
#include "moyodft/oracles.hpp"
#include "moyodft/rng.hpp"

using namespace moyodft;

namespace {

LatticeSpec dimer(double u = 1.0, int electrons = 1) {
  LatticeSpec s;
  s.sites = 2;
  s.electrons = electrons;
  s.hopping = 0.5;
  s.interaction_strength = u;
  return s;
}

LatticeSpec trimer() {
  LatticeSpec s;
  s.sites = 3;
  s.electrons = 2;
  s.hopping = 0.5;
  s.interaction_strength = 1.0;
  return s;
}

}  // namespace

TEST_CASE("Lieb functional matches the dimer closed form") {
  LiebFunctional F(dimer(0.0));  // one electron: interaction is inert anyway
  for (double r1 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    Vector rho(2);
    rho << 1.0 - r1, r1;
    ExtendedReal val = F.value(rho);
    REQUIRE(val.is_finite());
    REQUIRE(val.value() ==
            Catch::Approx(dimer_F_closed_form(0.5, r1)).margin(1e-6));
  }
}

TEST_CASE("Lieb functional is plus infinity outside the density domain") {
  LiebFunctional F(dimer());
  Vector off(2);
  off << 0.9, 0.9;  // wrong particle number
  REQUIRE(F.value(off).is_plus_infinity());
  Vector neg(2);
  neg << -0.2, 1.2;  // outside the Pauli box
  REQUIRE(F.value(neg).is_plus_infinity());
}

TEST_CASE("regularize satisfies its algebraic identities") {
  LiebFunctional F(trimer());
  DeterministicRng rng(97);
  const double eps = 0.1;
  for (int k = 0; k < 5; ++k) {
    Vector rho = rng.vector(3, 0.3, 1.0);
    RegularizedPoint p = F.regularize(eps, rho);
    REQUIRE(p.residual <= 1e-8);
    REQUIRE((p.proximal_density - (rho + eps * p.maximizer)).norm() < 1e-14);
    REQUIRE((p.proximal_potential - p.maximizer).norm() == 0.0);
    // Envelope value equals the dual objective at the maximizer.
    double phi = F.regularized_energy(eps, p.maximizer) - p.maximizer.dot(rho);
    REQUIRE(p.envelope_value == Catch::Approx(phi).margin(1e-12));
  }
}

TEST_CASE("regularize agrees with the primal Moreau envelope on the dimer") {
  LatticeSpec spec = dimer();
  LiebFunctional F(spec);
  FunctionOracle oracle = dimer_lieb_oracle(spec.hopping);
  const double eps = 0.1;
  Vector rho(2);
  rho << 0.6, 0.4;

  RegularizedPoint dual = F.regularize(eps, rho);
  ProxResult primal = moreau_envelope(oracle, eps, rho);
  REQUIRE(dual.envelope_value == Catch::Approx(primal.envelope_value).margin(1e-6));
  REQUIRE((dual.proximal_density - primal.prox_point).norm() < 1e-4);
}

TEST_CASE("stationarity: the proximal density is a ground density of v*") {
  LiebFunctional F(trimer());
  Vector rho(3);
  rho << 0.8, 0.5, 0.7;
  const double eps = 0.1;
  RegularizedPoint p = F.regularize(eps, rho);
  GroundStateResult gs = F.ground(p.maximizer);
  // Nondegenerate case: rho + eps v* must be the unique ground density.
  REQUIRE(gs.degeneracy == 1);
  REQUIRE((p.proximal_density - gs.ensemble_density).norm() < 1e-6);
}

TEST_CASE("warm started regularize returns the same point faster") {
  LiebFunctional F(trimer());
  Vector rho(3);
  rho << 0.7, 0.6, 0.7;
  const double eps = 0.2;
  RegularizedPoint cold = F.regularize(eps, rho);
  RegularizedPoint warm = F.regularize(eps, rho, cold.maximizer);
  REQUIRE((warm.maximizer - cold.maximizer).norm() < 1e-6);
  REQUIRE(warm.iterations <= cold.iterations);
}

TEST_CASE("diminishing step rule reaches the same maximizer") {
  DualAscentConfig cfg;
  cfg.step_rule = DualAscentConfig::StepRule::diminishing;
  cfg.tolerance = 1e-6;
  LiebFunctional F(dimer(), cfg);
  Vector rho(2);
  rho << 0.6, 0.4;
  RegularizedPoint slow = F.regularize(0.1, rho);
  RegularizedPoint fast = LiebFunctional(dimer()).regularize(0.1, rho);
  REQUIRE((slow.maximizer - fast.maximizer).norm() < 1e-4);
}

TEST_CASE("regularize input validation") {
  LiebFunctional F(dimer());
  Vector rho(2);
  rho << 0.5, 0.5;
  REQUIRE_THROWS_AS(F.regularize(0.0, rho), DomainError);
  REQUIRE_THROWS_AS(F.regularize(-0.1, rho), DomainError);
  REQUIRE_THROWS_AS(F.regularize(0.1, Vector::Zero(3)), DimensionMismatch);
  REQUIRE_THROWS_AS(F.regularized_energy(-0.1, Vector::Zero(2)), DomainError);
  // eps = 0 is legal for the energy only.
  REQUIRE(F.regularized_energy(0.0, Vector::Zero(2)) ==
          Catch::Approx(-0.5).margin(1e-12));
}

TEST_CASE("tight budget raises NonConvergence") {
  DualAscentConfig cfg;
  cfg.max_iterations = 2;
  cfg.tolerance = 1e-14;
  LiebFunctional F(trimer(), cfg);
  Vector rho(3);
  rho << 0.8, 0.4, 0.8;
  REQUIRE_THROWS_AS(F.regularize(0.1, rho), NonConvergence);
}

TEST_CASE("regularized energy subtracts the Tikhonov term") {
  LiebFunctional F(dimer());
  Vector v(2);
  v << 1.0, -1.0;
  double e = F.ground(v).energy;
  for (double eps : {0.05, 0.1, 0.5}) {
    REQUIRE(F.regularized_energy(eps, v) ==
            Catch::Approx(e - 0.5 * eps * v.squaredNorm()).margin(1e-12));
  }
}

TEST_CASE("duality bridge: conjugate pair at the maximizer") {
  // At the dual maximizer, E[v*] = F[rho_eps] + <v*, rho_eps> with
  // rho_eps = rho + eps v* (the Fenchel equality for the skew pairing).
  LiebFunctional F(trimer());
  DeterministicRng rng(101);
  const double eps = 0.1;
  for (int k = 0; k < 3; ++k) {
    Vector rho = rng.vector(3, 0.4, 0.9);
    RegularizedPoint p = F.regularize(eps, rho);
    double e_at_v = F.ground(p.maximizer).energy;
    ExtendedReal f_at_prox = lieb_F(trimer(), p.proximal_density);
    REQUIRE(f_at_prox.is_finite());
    REQUIRE(e_at_v == Catch::Approx(f_at_prox.value() +
                                    p.maximizer.dot(p.proximal_density))
                          .margin(1e-6));
  }
}

TEST_CASE("hxc gradient differentiates the correlation part") {
  LatticeSpec spec = trimer();
  const double eps = 0.1;
  Vector rho(3);
  rho << 0.7, 0.6, 0.7;

  Vector g = hxc_gradient(spec, eps, rho);
  REQUIRE(g.size() == 3);

  // Finite differences of eF1 - eF0 along coordinate directions.
  auto envelope_diff = [&](const Vector& r) {
    LatticeSpec l1 = spec;
    l1.lambda = 1.0;
    LatticeSpec l0 = spec;
    l0.lambda = 0.0;
    return LiebFunctional(l1).regularize(eps, r).envelope_value -
           LiebFunctional(l0).regularize(eps, r).envelope_value;
  };
  Vector fd = fd_gradient(envelope_diff, rho, 1e-5);
  REQUIRE((g - fd).norm() < 1e-4);

  // U = 0 collapses the gradient to zero.
  LatticeSpec free = spec;
  free.interaction_strength = 0.0;
  REQUIRE(hxc_gradient(free, eps, rho).norm() < 2e-8);
}

TEST_CASE("free functions mirror the member calls") {
  LatticeSpec spec = dimer();
  Vector rho(2);
  rho << 0.55, 0.45;
  const double eps = 0.1;
  RegularizedPoint a = regularize(spec, eps, rho);
  RegularizedPoint b = LiebFunctional(spec).regularize(eps, rho);
  REQUIRE(a.envelope_value == Catch::Approx(b.envelope_value).margin(1e-10));
  REQUIRE(regularized_energy(spec, eps, Vector::Zero(2)) ==
          Catch::Approx(LiebFunctional(spec).regularized_energy(eps, Vector::Zero(2)))
              .margin(1e-14));
}
