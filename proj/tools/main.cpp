#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "moyodft/convex_core.hpp"
#include "moyodft/lieb_dual.hpp"
#include "moyodft/scf_solvers.hpp"
#include "run_config.hpp"
#include "verify_battery.hpp"

namespace {

using namespace moyodft;
using namespace moyodft::cli;

/// The whole output is assembled first and written once, so identical runs
/// are byte-identical regardless of buffering.
void write_output(const RunConfig& config, const std::string& text) {
  if (config.output_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + config.output_path + "'");
  out << text;
}

int cmd_solve(const RunConfig& config) {
  const Vector v_ext = config.external_potential();
  const ScfResult result =
      config.solver.step_policy == StepPolicy::full
          ? myks_scf(config.model, v_ext, config.solver)
          : myksoda(config.model, v_ext, config.solver);

  std::string csv = "iter,e_i,t_i,residual,parabola_gap\n";
  for (std::size_t i = 0; i < result.trace.records.size(); ++i) {
    const ScfIterationRecord& rec = result.trace.records[i];
    csv += std::to_string(i);
    csv += ',' + format_real(rec.energy_estimate);
    csv += ',' + format_real(rec.step_length);
    csv += ',' + format_real(rec.residual);
    csv += ',' + format_real(rec.energy_estimate - rec.parabola_minimum);
    csv += '\n';
  }

  csv += "E1";
  for (int i = 0; i < config.model.sites; ++i) csv += ",rho_eps_" + std::to_string(i);
  csv += '\n' + format_real(result.ground_energy);
  for (int i = 0; i < config.model.sites; ++i)
    csv += ',' + format_real(result.physical_density[i]);
  csv += '\n';

  write_output(config, csv);
  return result.converged ? 0 : 2;
}

int cmd_prox(const RunConfig& config, const std::string& rho_text) {
  const Vector rho = parse_real_list(rho_text);
  if (rho.size() != config.model.sites)
    throw ConfigError("--rho has length " + std::to_string(rho.size()) +
                      ", model.sites is " + std::to_string(config.model.sites));

  LiebFunctional functional(config.model, config.solver.dual);
  const RegularizedPoint point = functional.regularize(config.solver.eps, rho);

  std::string csv;
  for (int i = 0; i < config.model.sites; ++i)
    csv += "rho_eps_" + std::to_string(i) + ',';
  for (int i = 0; i < config.model.sites; ++i)
    csv += "v_eps_" + std::to_string(i) + ',';
  csv += "envelope,residual\n";
  for (int i = 0; i < config.model.sites; ++i)
    csv += format_real(point.proximal_density[i]) + ',';
  for (int i = 0; i < config.model.sites; ++i)
    csv += format_real(point.proximal_potential[i]) + ',';
  csv += format_real(point.envelope_value) + ',' + format_real(point.residual) + '\n';

  write_output(config, csv);
  return 0;
}

int cmd_sweep(const RunConfig& config, const std::string& rho_text,
              const std::string& eps_text, const std::string& lambda_text) {
  if (eps_text.empty() == lambda_text.empty())
    throw ConfigError("sweep needs exactly one of --eps-list or --lambda-list");

  std::string csv;
  if (!eps_text.empty()) {
    if (rho_text.empty()) throw ConfigError("an eps sweep needs --rho");
    const Vector rho = parse_real_list(rho_text);
    const Vector eps_values = parse_real_list(eps_text);
    LiebFunctional functional(config.model, config.solver.dual);
    csv = "eps,envelope,prox_dist_sq_over_eps\n";
    for (long i = 0; i < eps_values.size(); ++i) {
      const double eps = eps_values[i];
      const RegularizedPoint point = functional.regularize(eps, rho);
      csv += format_real(eps);
      csv += ',' + format_real(point.envelope_value);
      csv += ',' + format_real((rho - point.proximal_density).squaredNorm() / eps);
      csv += '\n';
    }
  } else {
    const Vector v_ext = config.external_potential();
    const Vector lambdas = parse_real_list(lambda_text);
    csv = "lambda,energy\n";
    for (long i = 0; i < lambdas.size(); ++i) {
      LatticeSpec model = config.model;
      model.lambda = lambdas[i];
      csv += format_real(lambdas[i]);
      csv += ',' + format_real(LiebFunctional(model).ground(v_ext).energy);
      csv += '\n';
    }
  }
  write_output(config, csv);
  return 0;
}

int cmd_verify(const RunConfig& config) {
  const std::vector<OracleReport> reports = verify_battery(config);

  std::printf("%-32s %16s %16s %11s %10s %s\n", "quantity", "reference", "computed",
              "abs_error", "tolerance", "pass");
  bool all_pass = true;
  for (const OracleReport& r : reports) {
    std::printf("%-32s %16.9g %16.9g %11.3e %10.1e %s\n", r.quantity.c_str(),
                r.reference, r.computed, r.abs_error, r.tolerance,
                r.pass ? "yes" : "NO");
    all_pass = all_pass && r.pass;
  }
  std::printf("%zu checks, %s\n", reports.size(), all_pass ? "all passed" : "FAILURES");

  if (!config.output_path.empty()) {
    std::string csv = "quantity,reference,computed,abs_error,tolerance,pass\n";
    for (const OracleReport& r : reports) {
      csv += r.quantity;
      csv += ',' + format_real(r.reference);
      csv += ',' + format_real(r.computed);
      csv += ',' + format_real(r.abs_error);
      csv += ',' + format_real(r.tolerance);
      csv += r.pass ? ",1\n" : ",0\n";
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + config.output_path + "'");
    out << csv;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moreau-Yosida regularized DFT on finite lattice models"};
  app.require_subcommand(1);

  std::string config_path, out_path, rho_text, eps_text, lambda_text;
  long long seed_override = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value configuration file");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--seed", seed_override, "override the config seed");
  };

  CLI::App* solve = app.add_subcommand("solve", "run the configured SCF iteration");
  add_common(solve);
  CLI::App* prox_cmd =
      app.add_subcommand("prox", "proximal density and potential of a quasidensity");
  add_common(prox_cmd);
  prox_cmd->add_option("--rho", rho_text, "quasidensity, comma separated")->required();
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over eps or lambda");
  add_common(sweep);
  sweep->add_option("--rho", rho_text, "quasidensity for eps sweeps");
  sweep->add_option("--eps-list", eps_text, "comma separated eps values");
  sweep->add_option("--lambda-list", lambda_text, "comma separated lambda values");
  CLI::App* verify = app.add_subcommand("verify", "run the oracle cross-check battery");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig config = config_path.empty() ? default_config() : load_config(config_path);
    if (!out_path.empty()) config.output_path = out_path;
    if (seed_override >= 0) config.seed = static_cast<unsigned long>(seed_override);
    apply_environment(config);
    config.model.validate();

    if (solve->parsed()) return cmd_solve(config);
    if (prox_cmd->parsed()) return cmd_prox(config, rho_text);
    if (sweep->parsed()) return cmd_sweep(config, rho_text, eps_text, lambda_text);
    return cmd_verify(config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
