#include "run_config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace moyodft::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    double x = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has a malformed number '" + text + "'");
  }
}

long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    long n = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has a malformed integer '" + text + "'");
  }
}

}  // namespace

Vector RunConfig::external_potential() const {
  if (v_ext.size() == 0) {
    Vector v(model.sites);
    for (int i = 0; i < model.sites; ++i) v[i] = (i % 2 == 0) ? 1.0 : -1.0;
    return v;
  }
  if (v_ext.size() != model.sites)
    throw ConfigError("config: key 'v_ext' has length " + std::to_string(v_ext.size()) +
                      ", model.sites is " + std::to_string(model.sites));
  return v_ext;
}

RunConfig default_config() {
  RunConfig config;
  config.model.sites = 2;
  config.model.electrons = 1;
  config.model.hopping = 0.5;
  config.model.interaction_strength = 1.0;
  config.model.lambda = 1.0;
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");

  RunConfig config = default_config();
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_number) +
                        " is not of the form key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "model.sites") {
      config.model.sites = static_cast<int>(parse_integer(key, value));
    } else if (key == "model.electrons") {
      config.model.electrons = static_cast<int>(parse_integer(key, value));
    } else if (key == "model.hopping") {
      config.model.hopping = parse_real(key, value);
    } else if (key == "model.interaction_strength") {
      config.model.interaction_strength = parse_real(key, value);
    } else if (key == "model.lambda") {
      config.model.lambda = parse_real(key, value);
    } else if (key == "solver.eps") {
      config.solver.eps = parse_real(key, value);
    } else if (key == "solver.step_policy") {
      config.solver.step_policy = parse_step_policy(value);
    } else if (key == "solver.residual_tol") {
      config.solver.residual_tol = parse_real(key, value);
    } else if (key == "solver.max_outer") {
      config.solver.max_outer = static_cast<int>(parse_integer(key, value));
    } else if (key == "dual.tolerance") {
      config.solver.dual.tolerance = parse_real(key, value);
    } else if (key == "dual.max_iterations") {
      config.solver.dual.max_iterations = parse_integer(key, value);
    } else if (key == "dual.step_rule") {
      config.solver.dual.step_rule = parse_step_rule(value);
    } else if (key == "dual.restart_count") {
      config.solver.dual.restart_count = static_cast<int>(parse_integer(key, value));
    } else if (key == "v_ext") {
      config.v_ext = parse_real_list(value);
    } else if (key == "output_path") {
      config.output_path = value;
    } else if (key == "seed") {
      config.seed = static_cast<unsigned long>(parse_integer(key, value));
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return config;
}

void apply_environment(RunConfig& config) {
  if (const char* cap = std::getenv("MOYODFT_MAX_BASIS")) {
    config.model.max_basis_dim = static_cast<long>(
        parse_integer("MOYODFT_MAX_BASIS", cap));
  }
}

StepPolicy parse_step_policy(const std::string& name) {
  if (name == "full") return StepPolicy::full;
  if (name == "damped_feasible") return StepPolicy::damped_feasible;
  if (name == "parabola_optimal") return StepPolicy::parabola_optimal;
  throw ConfigError("config: key 'solver.step_policy' has unknown value '" + name +
                    "' (expected full, damped_feasible, or parabola_optimal)");
}

DualAscentConfig::StepRule parse_step_rule(const std::string& name) {
  if (name == "polyak") return DualAscentConfig::StepRule::polyak;
  if (name == "diminishing") return DualAscentConfig::StepRule::diminishing;
  throw ConfigError("config: key 'dual.step_rule' has unknown value '" + name +
                    "' (expected polyak or diminishing)");
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Vector parse_real_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config: empty entry in list '" + text + "'");
    values.push_back(parse_real("list", item));
  }
  if (values.empty()) throw ConfigError("config: empty list");
  Vector v(static_cast<long>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<long>(i)] = values[i];
  return v;
}

}  // namespace moyodft::cli
