#include "verify_battery.hpp"

#include <cmath>

#include "moyodft/convex_core.hpp"
#include "moyodft/lattice_model.hpp"
#include "moyodft/lieb_dual.hpp"
#include "moyodft/scf_solvers.hpp"

namespace moyodft::cli {

std::vector<OracleReport> verify_battery(const RunConfig& config) {
  std::vector<OracleReport> reports;
  const double eps = 0.1;
  const double t = 0.5;

  LatticeSpec dimer;
  dimer.sites = 2;
  dimer.electrons = 1;
  dimer.hopping = t;
  dimer.interaction_strength = 0.0;
  dimer.max_basis_dim = config.model.max_basis_dim;
  LiebFunctional F(dimer);

  Vector v_pm(2);
  v_pm << 1.0, -1.0;

  reports.push_back(make_report("dimer_energy_v_pm1", -std::sqrt(1.25),
                                F.ground(v_pm).energy, 1e-10));
  GroundStateResult at_zero = F.ground(Vector::Zero(2));
  reports.push_back(make_report("dimer_energy_v0", -t, at_zero.energy, 1e-10));
  reports.push_back(make_report(
      "dimer_density_v0_symmetry", 0.0,
      std::abs(at_zero.ensemble_density[0] - at_zero.ensemble_density[1]), 1e-10));

  for (int tenth : {3, 5, 8}) {
    const double rho1 = tenth / 10.0;
    Vector rho(2);
    rho << rho1, 1.0 - rho1;
    reports.push_back(make_report("lieb_F_rho1_0." + std::to_string(tenth),
                                  dimer_F_closed_form(t, rho1), F.value(rho).value(),
                                  1e-6));
  }

  reports.push_back(make_report("regularized_energy_identity",
                                -std::sqrt(1.25) - 0.5 * eps * v_pm.squaredNorm(),
                                F.regularized_energy(eps, v_pm), 1e-12));

  FunctionOracle oracle = dimer_lieb_oracle(t);
  Vector minimizer = Vector::Constant(2, 0.5);
  reports.push_back(make_report(
      "envelope_fixed_point", 0.0,
      (prox(oracle, eps, minimizer) - minimizer).norm(), 1e-6));

  Vector probe(2);
  probe << 0.7, 0.3;
  reports.push_back(make_report(
      "prox_vs_grid", 0.0,
      (prox(oracle, eps, probe) - grid_prox(oracle, eps, probe, 2001)).norm(), 1e-4));

  Vector quasi(2);
  quasi << 0.6, 0.4;
  reports.push_back(make_report(
      "regularize_vs_envelope", moreau_envelope(oracle, eps, quasi).envelope_value,
      F.regularize(eps, quasi).envelope_value, 1e-6));

  std::vector<Vector> probes;
  probes.push_back(probe);
  probes.push_back(quasi);
  Vector off(2);
  off << 0.9, 0.9;
  probes.push_back(off);
  reports.push_back(make_report("lossless_max_deviation", 0.0,
                                verify_lossless(oracle, eps, probes).max_deviation,
                                1e-5));

  ScfConfig scf;
  scf.eps = eps;
  ScfResult free_run = myksoda(dimer, v_pm, scf);
  reports.push_back(make_report("u0_myksoda_records", 1.0,
                                static_cast<double>(free_run.trace.records.size()),
                                1.0));
  reports.push_back(make_report(
      "u0_hxc_norm", 0.0,
      hxc_gradient(dimer, eps, free_run.physical_density, scf.dual).norm(),
      2.0 * scf.dual.tolerance));

  LatticeSpec chain;
  chain.sites = 3;
  chain.electrons = 2;
  chain.hopping = t;
  chain.interaction_strength = 1.0;
  chain.max_basis_dim = config.model.max_basis_dim;
  Vector v3(3);
  v3 << 1.0, -1.0, 1.0;
  ScfResult interacting = myksoda(chain, v3, scf);
  reports.push_back(make_report("scf_vs_ed_energy",
                                LiebFunctional(chain).ground(v3).energy,
                                interacting.ground_energy, 1e-6));
  reports.push_back(make_report("scf_converged", 1.0,
                                interacting.converged ? 1.0 : 0.0, 0.5));
  return reports;
}

}  // namespace moyodft::cli
