#include "gaitopt/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gaitopt {

namespace {

using nlohmann::json;

ParamRange parse_range(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument(std::string("config bounds.") + name + " must be [min, max]");
  return ParamRange{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

void RunConfig::validate() const {
  if (model_path.empty()) throw std::invalid_argument("config: model_path is required");
  if (!(speed_kmh >= 0.0)) throw std::invalid_argument("config: speed must be non-negative");
  if (!(duration > 0.0)) throw std::invalid_argument("config: duration must be positive");
  if (!(sample_rate > 0.0)) throw std::invalid_argument("config: sample_rate must be positive");
  if (!(step_width > 0.0)) throw std::invalid_argument("config: step_width must be positive");
  bounds.validate();
  if (!has_seed)
    throw std::invalid_argument("config: seed is required (set it in the config file or "
                                "pass --seed); there is no time-based default");
}

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  cfg.model_path = doc.value("model_path", cfg.model_path);
  cfg.speed_kmh = doc.value("speed_kmh", cfg.speed_kmh);
  cfg.duration = doc.value("duration", cfg.duration);
  cfg.sample_rate = doc.value("sample_rate", cfg.sample_rate);
  cfg.step_width = doc.value("step_width", cfg.step_width);
  cfg.out_dir = doc.value("out_dir", cfg.out_dir);
  cfg.workers = doc.value("workers", cfg.workers);
  if (doc.contains("seed")) {
    cfg.seed = doc["seed"].get<std::uint64_t>();
    cfg.has_seed = true;
  }

  if (doc.contains("bounds")) {
    const auto& b = doc["bounds"];
    if (b.contains("alpha")) cfg.bounds.alpha = parse_range(b["alpha"], "alpha");
    if (b.contains("r_ds")) cfg.bounds.r_ds = parse_range(b["r_ds"], "r_ds");
    if (b.contains("t_step")) cfg.bounds.t_step = parse_range(b["t_step"], "t_step");
    if (b.contains("z0")) cfg.bounds.z0 = parse_range(b["z0"], "z0");
    if (b.contains("h_ankle")) cfg.bounds.h_ankle = parse_range(b["h_ankle"], "h_ankle");
  }

  if (doc.contains("ga")) {
    const auto& g = doc["ga"];
    cfg.ga.population = g.value("population", cfg.ga.population);
    cfg.ga.generations = g.value("generations", cfg.ga.generations);
    cfg.ga.crossover_prob = g.value("crossover_prob", cfg.ga.crossover_prob);
    cfg.ga.mutation_prob = g.value("mutation_prob", cfg.ga.mutation_prob);
    cfg.ga.elitism = g.value("elitism", cfg.ga.elitism);
    cfg.ga.init_retries = g.value("init_retries", cfg.ga.init_retries);
  }
  if (doc.contains("nsga2")) {
    const auto& g = doc["nsga2"];
    cfg.nsga2.population = g.value("population", cfg.nsga2.population);
    cfg.nsga2.generations = g.value("generations", cfg.nsga2.generations);
    cfg.nsga2.crossover_prob = g.value("crossover_prob", cfg.nsga2.crossover_prob);
    cfg.nsga2.eta_c = g.value("eta_c", cfg.nsga2.eta_c);
    cfg.nsga2.eta_m = g.value("eta_m", cfg.nsga2.eta_m);
    cfg.nsga2.mutation_prob = g.value("mutation_prob", cfg.nsga2.mutation_prob);
    cfg.nsga2.init_retries = g.value("init_retries", cfg.nsga2.init_retries);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace gaitopt
