// qnls: ground states, mass curves and normalized solutions of the
// quasilinear Schrodinger equation through the dual transform.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qnls/commands.hpp"
#include "qnls/errors.hpp"

namespace {

struct Flags {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  CLI::Option* semilinear = nullptr;
  std::string config_file;
};

void add_shared(CLI::App* app, Flags& f) {
  const std::pair<const char*, const char*> keys[] = {
      {"n", "space dimension N >= 3"},
      {"kappa", "quasilinear coupling > 0"},
      {"nonlinearity", "power | tworegime"},
      {"mu", "power coefficient"},
      {"p", "power exponent (rationals like 10/3 accepted)"},
      {"alpha", "exponent at 0 (tworegime, profiles)"},
      {"beta", "exponent at infinity (tworegime, profiles)"},
      {"lambda", "frequency for solve"},
      {"lambda-min", "sweep lower end"},
      {"lambda-max", "sweep upper end"},
      {"lambda-points", "geometric sweep points"},
      {"mass", "prescribed mass c"},
      {"c1", "figure-k: sup-norm bound (0 = measure)"},
      {"suite", "verify: dual|nonlinearity|shooting|limits|branch|io|all"},
      {"tol-rtol", "integrator relative tolerance"},
      {"tol-bisection", "shooting bisection tolerance"},
      {"tol-pohozaev", "Pohozaev gate"},
      {"tol-mass", "normalized root tolerance |rho-c|/c"},
      {"tol-window", "asymptotic distance tolerance"},
      {"grid-intervals", "quadrature grid intervals"},
      {"out", "output directory"},
      {"tag", "experiment tag"},
  };
  for (const auto& [key, help] : keys) {
    f.options[key] = app->add_option(std::string("--") + key, f.values[key], help);
  }
  f.semilinear = app->add_flag("--semilinear", "semilinear reference mode (g = 1)");
  app->add_option("--config", f.config_file, "flat key = value file; flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalized solutions of the quasilinear Schrodinger equation"};
  app.require_subcommand(1);
  std::map<std::string, Flags> flags_by_command;
  const char* const names[][2] = {
      {"solve", "ground state at fixed lambda"},
      {"branch", "sweep lambda and write the mass curve"},
      {"normalized", "solutions with prescribed mass"},
      {"profiles", "limit profiles U, V and thresholds c_*, c^*"},
      {"verify", "run the invariant suites"},
      {"figure-k", "kappa bound plot data"},
  };
  for (const auto& n : names) add_shared(app.add_subcommand(n[0], n[1]), flags_by_command[n[0]]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qnls::kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Flags& flags = flags_by_command[name];
  qnls::ConfigMap flag_map;
  for (const auto& [key, opt] : flags.options)
    if (opt->count() > 0) flag_map[key] = flags.values[key];
  if (flags.semilinear->count() > 0) flag_map["semilinear"] = "1";

  qnls::RunConfig config;
  try {
    const qnls::ConfigMap file = flags.config_file.empty() ? qnls::ConfigMap{} : qnls::read_config_file(flags.config_file);
    config = qnls::resolve_config(file, flag_map);
  } catch (const qnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return qnls::kExitConfig;
  }
  return qnls::run_command(name, config, std::cout, std::cerr);
}
