#include "gaitopt/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "gaitopt/csv.hpp"

namespace gaitopt {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void check_bounds(const SearchSpace& bounds, const Genome& g) {
  const auto ranges = bounds.ranges();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < ranges[i].min || g[i] > ranges[i].max) {
      std::ostringstream msg;
      msg << "parameter " << SearchSpace::names()[i] << " = " << g[i]
          << " is outside the configured bounds [" << ranges[i].min << ", " << ranges[i].max
          << "]";
      throw std::invalid_argument(msg.str());
    }
  }
}

json params_json(const Genome& g) {
  json j;
  for (std::size_t i = 0; i < g.size(); ++i) j[SearchSpace::names()[i]] = g[i];
  return j;
}

json costs_json(const CostVector& c) {
  json j;
  j["j_energy"] = c.j_energy;
  j["j_torque"] = c.j_torque;
  j["j_vel"] = c.j_vel;
  j["j_zmp"] = c.j_zmp;
  return j;
}

json violations_json(const std::vector<Violation>& violations) {
  json arr = json::array();
  for (const auto& v : violations) {
    json j;
    j["constraint"] = to_string(v.constraint);
    j["worst"] = v.worst;
    j["sample"] = v.sample;
    j["detail"] = v.detail;
    arr.push_back(j);
  }
  return arr;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_front_csv(const fs::path& path, const ParetoFront& front) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "alpha,r_ds,t_step,z0,h_ankle,j_zmp,j_energy,j_torque,j_vel,rank,crowding,knee\n";
  for (std::size_t i = 0; i < front.members.size(); ++i) {
    const Individual& m = front.members[i];
    csv::Row row(out);
    for (double g : m.genome) row.num(g);
    row.num(m.costs.j_zmp).num(m.costs.j_energy).num(m.costs.j_torque).num(m.costs.j_vel);
    row.integer(m.rank);
    row.num(m.crowding);
    row.integer(static_cast<int>(i) == front.knee ? 1 : 0);
    row.end();
  }
}

int run_multi_at_speed(const RunConfig& config, const RobotModel& model, double speed_kmh,
                       const fs::path& dir) {
  fs::create_directories(dir);
  const double speed = speed_kmh / 3.6;
  Evaluator evaluate = [&](const Genome& g) {
    return evaluate_gait(model, to_params(g, speed), config.duration, config.sample_rate,
                         config.step_width);
  };

  std::ofstream history(dir / "nsga2_history.jsonl");
  Nsga2Config nsga2 = config.nsga2;
  Nsga2Result result = run_nsga2(config.bounds, evaluate, nsga2, config.seed, config.workers);
  for (const auto& rec : result.history) {
    json j;
    j["generation"] = rec.generation;
    j["front_size"] = rec.front_size;
    j["hypervolume"] = rec.hypervolume;
    j["best_j_zmp"] = rec.best[0];
    j["best_j_energy"] = rec.best[1];
    j["feasible_count"] = rec.feasible_count;
    history << j.dump() << "\n";
  }

  write_front_csv(dir / "front.csv", result.front);

  json knee;
  knee["speed_kmh"] = speed_kmh;
  knee["front_size"] = static_cast<int>(result.front.members.size());
  knee["utopia"] = {result.front.utopia[0], result.front.utopia[1]};
  if (result.front.knee >= 0) {
    const Individual& k = result.front.members[result.front.knee];
    knee["params"] = params_json(k.genome);
    knee["costs"] = costs_json(k.costs);
  }
  write_text(dir / "knee.json", knee.dump(2) + "\n");

  std::cout << "nsga2 @ " << speed_kmh << " km/h: front size "
            << result.front.members.size() << ", outputs in " << dir.string() << "\n";
  return 0;
}

}  // namespace

int cmd_plan(const RunConfig& config, const Genome& genome) {
  check_bounds(config.bounds, genome);
  const GaitParams params = to_params(genome, config.speed_mps());
  const GaitTrajectory traj =
      generate_gait(params, config.duration, config.step_width, config.sample_rate);

  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);
  {
    std::ofstream out(dir / "trajectory.csv");
    if (!out) throw std::runtime_error("cannot write trajectory.csv");
    write_trajectory_csv(out, traj);
  }

  double total_distance = 0.0;
  for (const auto& s : traj.plan.steps) total_distance = std::max(total_distance, s.position.x());

  json summary;
  summary["params"] = params_json(genome);
  summary["speed_kmh"] = config.speed_kmh;
  summary["duration"] = config.duration;
  summary["sample_rate"] = config.sample_rate;
  summary["step_width"] = config.step_width;
  summary["samples"] = static_cast<int>(traj.samples.size());
  summary["step_count"] = static_cast<int>(traj.plan.steps.size());
  summary["step_length"] = traj.plan.step_length;
  summary["total_distance"] = total_distance;
  write_text(dir / "plan_summary.json", summary.dump(2) + "\n");

  std::cout << "wrote " << (dir / "trajectory.csv").string() << " (" << traj.samples.size()
            << " samples) and plan_summary.json\n";
  return 0;
}

int cmd_evaluate(const RunConfig& config, const Genome& genome, bool dump_dynamics) {
  check_bounds(config.bounds, genome);
  const RobotModel model = load_model_file(config.model_path);
  const GaitParams params = to_params(genome, config.speed_mps());

  DynamicsTrace trace;
  const CostVector costs =
      evaluate_gait(model, params, config.duration, config.sample_rate, config.step_width,
                    dump_dynamics ? &trace : nullptr);

  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);

  json report;
  report["params"] = params_json(genome);
  report["speed_kmh"] = config.speed_kmh;
  report["duration"] = config.duration;
  report["sample_rate"] = config.sample_rate;
  report["step_width"] = config.step_width;
  report["model"] = model.name;
  report["costs"] = costs_json(costs);
  report["feasible"] = costs.feasible;
  report["violations"] = violations_json(costs.violations);
  write_text(dir / "evaluation.json", report.dump(2) + "\n");

  if (dump_dynamics) {
    std::ofstream out(dir / "dynamics.csv");
    if (!out) throw std::runtime_error("cannot write dynamics.csv");
    write_dynamics_csv(out, trace);
  }

  std::cout << "evaluation: feasible=" << (costs.feasible ? "true" : "false")
            << " j_energy=" << costs.j_energy << " j_torque=" << costs.j_torque
            << " j_vel=" << costs.j_vel << " j_zmp=" << costs.j_zmp << "\n"
            << "wrote " << (dir / "evaluation.json").string() << "\n";
  return 0;
}

int cmd_optimize(const RunConfig& config, OptimizeMode mode, ObjectiveKind objective,
                 bool sweep_speeds) {
  const RobotModel model = load_model_file(config.model_path);
  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);

  if (mode == OptimizeMode::Single) {
    Evaluator evaluate = [&](const Genome& g) {
      return evaluate_gait(model, to_params(g, config.speed_mps()), config.duration,
                           config.sample_rate, config.step_width);
    };
    GaResult result;
    try {
      result = run_ga(config.bounds, objective, evaluate, config.ga, config.seed,
                      config.workers);
    } catch (const InitializationError& e) {
      std::cerr << "error: " << e.what() << " (retries: " << e.retries << ")\n";
      for (const auto& v : e.last_violations)
        std::cerr << "  last violation: " << to_string(v.constraint) << " at sample "
                  << v.sample << " (" << v.detail << ")\n";
      return 1;
    }

    std::ofstream history(dir / "ga_history.jsonl");
    for (const auto& rec : result.history) {
      json j;
      j["generation"] = rec.generation;
      j["best"] = rec.best;
      j["mean_feasible"] = rec.mean_feasible;
      j["feasible_count"] = rec.feasible_count;
      j["best_params"] = params_json(rec.best_genome);
      history << j.dump() << "\n";
    }

    json best;
    best["objective"] = to_string(objective);
    best["speed_kmh"] = config.speed_kmh;
    best["params"] = params_json(result.best.genome);
    best["costs"] = costs_json(result.best.costs);
    best["feasible"] = result.best.costs.feasible;
    write_text(dir / "ga_best.json", best.dump(2) + "\n");

    std::cout << "ga (" << to_string(objective)
              << "): best = " << objective_value(result.best.costs, objective)
              << ", outputs in " << dir.string() << "\n";
    return 0;
  }

  try {
    if (sweep_speeds) {
      for (double speed : {0.4, 0.6, 0.8}) {
        std::ostringstream name;
        name << "speed_" << speed;
        if (int rc = run_multi_at_speed(config, model, speed, dir / name.str()); rc != 0)
          return rc;
      }
      return 0;
    }
    return run_multi_at_speed(config, model, config.speed_kmh, dir);
  } catch (const InitializationError& e) {
    std::cerr << "error: " << e.what() << " (retries: " << e.retries << ")\n";
    for (const auto& v : e.last_violations)
      std::cerr << "  last violation: " << to_string(v.constraint) << " at sample " << v.sample
                << " (" << v.detail << ")\n";
    return 1;
  }
}

}  // namespace gaitopt
