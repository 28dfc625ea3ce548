// Process-level tests of the command line tool. argv[1] is the binary path.

#include "support.hpp"

using namespace testsupport;

namespace {

std::string g_cli;
std::string g_dir;

int run_cli(const std::string& args, const std::string& stdout_file = "",
            const std::string& stderr_file = "") {
  std::string cmd = g_cli + " " + args;
  if (!stdout_file.empty()) cmd += " > " + stdout_file;
  if (!stderr_file.empty()) cmd += " 2> " + stderr_file;
  return run_command(cmd);
}

void solve_defaults() {
  std::cout << "solve with the built-in dimer model\n";
  std::string out = g_dir + "/solve.csv";
  int rc = run_cli("solve --out " + out);
  CHECK_THAT_HOLDS(rc == 0);
  std::string csv = slurp(out);
  CHECK_THAT_HOLDS(contains(csv, "iter,e_i,t_i,residual,parabola_gap"));
  CHECK_THAT_HOLDS(contains(csv, "E1,rho_eps_0,rho_eps_1"));
}

void solve_respects_config_file() {
  std::cout << "solve reads models from a config file\n";
  std::string conf = g_dir + "/chain.conf";
  spit(conf,
       "# three-site chain\n"
       "model.sites = 3\n"
       "model.electrons = 2\n"
       "model.hopping = 0.5\n"
       "model.interaction_strength = 1.0\n"
       "solver.eps = 0.1\n"
       "solver.step_policy = parabola_optimal\n"
       "v_ext = 1.0, -1.0, 1.0\n");
  std::string out = g_dir + "/chain.csv";
  int rc = run_cli("solve --config " + conf + " --out " + out);
  CHECK_THAT_HOLDS(rc == 0);
  CHECK_THAT_HOLDS(contains(slurp(out), "rho_eps_2"));
}

void solve_nonconverged_exit_code() {
  std::cout << "solve signals a non-converged run through the exit code\n";
  std::string conf = g_dir + "/tight.conf";
  spit(conf,
       "model.sites = 3\n"
       "model.electrons = 2\n"
       "model.interaction_strength = 1.0\n"
       "solver.max_outer = 1\n"
       "v_ext = 1.0, -1.0, 1.0\n");
  CHECK_THAT_HOLDS(run_cli("solve --config " + conf, "/dev/null") == 2);
}

void unknown_config_key() {
  std::cout << "unknown config keys are rejected by name\n";
  std::string conf = g_dir + "/bad.conf";
  spit(conf, "model.stites = 3\n");
  std::string err = g_dir + "/bad.err";
  int rc = run_cli("solve --config " + conf, "/dev/null", err);
  CHECK_THAT_HOLDS(rc == 1);
  CHECK_THAT_HOLDS(contains(slurp(err), "model.stites"));
}

void prox_subcommand() {
  std::cout << "prox reports the regularized pair\n";
  std::string out = g_dir + "/prox.csv";
  int rc = run_cli("prox --rho 0.6,0.4 --out " + out);
  CHECK_THAT_HOLDS(rc == 0);
  std::string csv = slurp(out);
  CHECK_THAT_HOLDS(contains(csv, "rho_eps_0"));
  CHECK_THAT_HOLDS(contains(csv, "v_eps_1"));
  CHECK_THAT_HOLDS(contains(csv, "envelope"));
  CHECK_THAT_HOLDS(contains(csv, "residual"));
  // Two lines: header and one data row.
  int newlines = 0;
  for (char c : csv) newlines += (c == '\n');
  CHECK_THAT_HOLDS(newlines == 2);
}

void prox_requires_rho() {
  std::cout << "prox requires --rho\n";
  CHECK_THAT_HOLDS(run_cli("prox", "/dev/null", "/dev/null") != 0);
}

void sweep_eps() {
  std::cout << "sweep over the regularization strength\n";
  std::string out = g_dir + "/eps.csv";
  int rc = run_cli("sweep --rho 0.6,0.4 --eps-list 0.4,0.2,0.1 --out " + out);
  CHECK_THAT_HOLDS(rc == 0);
  std::string csv = slurp(out);
  CHECK_THAT_HOLDS(contains(csv, "eps,envelope"));
  int rows = 0;
  for (char c : csv) rows += (c == '\n');
  CHECK_THAT_HOLDS(rows == 4);  // header + one row per eps
}

void sweep_lambda() {
  std::cout << "sweep over the interaction scale\n";
  std::string out = g_dir + "/lambda.csv";
  int rc = run_cli("sweep --lambda-list 0,0.5,1 --out " + out);
  CHECK_THAT_HOLDS(rc == 0);
  CHECK_THAT_HOLDS(contains(slurp(out), "lambda,energy"));
}

void sweep_list_arity() {
  std::cout << "sweep demands exactly one list\n";
  CHECK_THAT_HOLDS(run_cli("sweep --rho 0.6,0.4", "/dev/null", "/dev/null") == 1);
  CHECK_THAT_HOLDS(run_cli("sweep --rho 0.6,0.4 --eps-list 0.1 --lambda-list 1",
                           "/dev/null", "/dev/null") == 1);
}

void verify_battery() {
  std::cout << "verify runs the oracle battery\n";
  std::string out = g_dir + "/verify.txt";
  std::string csv = g_dir + "/verify.csv";
  int rc = run_cli("verify --out " + csv, out);
  CHECK_THAT_HOLDS(rc == 0);
  CHECK_THAT_HOLDS(contains(slurp(out), "all passed"));
  CHECK_THAT_HOLDS(contains(slurp(csv), "quantity,reference,computed,abs_error,tolerance,pass"));
}

void deterministic_output() {
  std::cout << "repeated runs emit byte-identical files\n";
  std::string a = g_dir + "/det_a.csv";
  std::string b = g_dir + "/det_b.csv";
  CHECK_THAT_HOLDS(run_cli("solve --out " + a) == 0);
  CHECK_THAT_HOLDS(run_cli("solve --out " + b) == 0);
  std::string sa = slurp(a);
  CHECK_THAT_HOLDS(!sa.empty());
  CHECK_THAT_HOLDS(sa == slurp(b));
}

void basis_cap_env() {
  std::cout << "environment basis cap propagates into the model\n";
  std::string conf = g_dir + "/cap.conf";
  spit(conf,
       "model.sites = 3\n"
       "model.electrons = 2\n"
       "model.interaction_strength = 1.0\n"
       "v_ext = 0.0, 0.0, 0.0\n");
  std::string err = g_dir + "/cap.err";
  int rc = run_command("MOYODFT_MAX_BASIS=2 " + g_cli + " solve --config " + conf +
                       " > /dev/null 2> " + err);
  CHECK_THAT_HOLDS(rc == 1);
  CHECK_THAT_HOLDS(contains(slurp(err), "exceeds the cap"));
}

void rejects_garbage() {
  std::cout << "invalid invocations fail fast\n";
  CHECK_THAT_HOLDS(run_cli("", "/dev/null", "/dev/null") != 0);
  CHECK_THAT_HOLDS(run_cli("frobnicate", "/dev/null", "/dev/null") != 0);
  CHECK_THAT_HOLDS(run_cli("prox --rho not,numbers", "/dev/null", "/dev/null") == 1);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-cli>\n";
    return 2;
  }
  g_cli = argv[1];
  g_dir = make_scratch_dir("moyodft_cli_");

  solve_defaults();
  solve_respects_config_file();
  solve_nonconverged_exit_code();
  unknown_config_key();
  prox_subcommand();
  prox_requires_rho();
  sweep_eps();
  sweep_lambda();
  sweep_list_arity();
  verify_battery();
  deterministic_output();
  basis_cap_env();
  rejects_garbage();

  if (g_failures == 0) {
    std::cout << "all cli checks passed\n";
    return 0;
  }
  std::cout << g_failures << " cli checks failed\n";
  return 1;
}
