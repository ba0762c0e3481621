#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaitopt/commands.hpp"
#include "gaitopt/csv.hpp"

namespace {

gaitopt::Genome parse_params(const std::string& spec) {
  const auto parts = gaitopt::csv::split(spec);
  if (parts.size() != 5)
    throw CLI::ValidationError("--params",
                               "expected 5 comma-separated values: alpha,r_ds,t_step,z0,h_ankle");
  gaitopt::Genome g;
  for (std::size_t i = 0; i < 5; ++i) g[i] = gaitopt::csv::to_double(parts[i]);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gait parameter toolkit: DCM/LIPM trajectory planning, full-model cost "
               "evaluation and evolutionary optimization"};
  app.require_subcommand(1);

  std::string config_path;
  std::string params_spec;
  std::string objective_name = "zmp";
  std::string mode_name = "multi";
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = -1;
  bool dump_dynamics = false;
  bool sweep_speeds = false;

  app.add_option("--config", config_path, "Path to the JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option_function<std::uint64_t>(
         "--seed", [&](std::uint64_t s) { seed = s; seed_given = true; },
         "Override the RNG seed from the config");
  app.add_option("--out", out_dir, "Override the output directory");
  app.add_option("--workers", workers, "Worker threads for population evaluation (0 = all cores)");

  CLI::App* plan = app.add_subcommand("plan", "Generate and export one gait trajectory");
  plan->add_option("--params", params_spec, "alpha,r_ds,t_step,z0,h_ankle")->required();

  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate the cost functions for one "
                                                      "parameter vector");
  evaluate->add_option("--params", params_spec, "alpha,r_ds,t_step,z0,h_ankle")->required();
  evaluate->add_flag("--dump-dynamics", dump_dynamics,
                     "Also write the per-sample dynamics CSV");

  CLI::App* optimize = app.add_subcommand("optimize", "Search the parameter space");
  optimize->add_option("--mode", mode_name, "single or multi")
      ->check(CLI::IsMember({"single", "multi"}));
  optimize->add_option("--objective", objective_name,
                       "Objective for single mode: energy, torque, vel or zmp")
      ->check(CLI::IsMember({"energy", "torque", "vel", "zmp"}));
  optimize->add_flag("--sweep-speeds", sweep_speeds,
                     "Multi mode: run the 0.4, 0.6 and 0.8 km/h survey");

  CLI11_PARSE(app, argc, argv);

  try {
    gaitopt::RunConfig config = gaitopt::load_run_config(config_path);
    if (seed_given) {
      config.seed = seed;
      config.has_seed = true;
    }
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (workers >= 0) config.workers = workers;
    config.validate();

    if (plan->parsed()) return gaitopt::cmd_plan(config, parse_params(params_spec));
    if (evaluate->parsed())
      return gaitopt::cmd_evaluate(config, parse_params(params_spec), dump_dynamics);
    const auto mode = mode_name == "single" ? gaitopt::OptimizeMode::Single
                                            : gaitopt::OptimizeMode::Multi;
    return gaitopt::cmd_optimize(config, mode,
                                 gaitopt::objective_from_string(objective_name), sweep_speeds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
