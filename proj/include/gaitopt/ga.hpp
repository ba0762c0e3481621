#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "gaitopt/costs.hpp"
#include "gaitopt/search_space.hpp"

namespace gaitopt {

enum class ObjectiveKind { Energy, Torque, Vel, Zmp };

const char* to_string(ObjectiveKind o);
ObjectiveKind objective_from_string(const std::string& s);

/// Scalar fitness under one objective; infeasible candidates get +inf
/// (death penalty).
double objective_value(const CostVector& c, ObjectiveKind o);

struct Individual {
  Genome genome{};
  CostVector costs;
  int rank = 0;
  double crowding = 0.0;
};

using Evaluator = std::function<CostVector(const Genome&)>;

/// Raised when no feasible individual can be sampled at initialization.
class InitializationError : public std::runtime_error {
 public:
  InitializationError(const std::string& msg, int retries, std::vector<Violation> last)
      : std::runtime_error(msg), retries(retries), last_violations(std::move(last)) {}
  int retries = 0;
  std::vector<Violation> last_violations;
};

struct GaConfig {
  int population = 100;
  int generations = 100;
  double crossover_prob = 0.8;   // per pair, uniform crossover
  double mutation_prob = 0.08;   // per gene, uniform reset
  double elitism = 0.03;         // fraction copied unchanged, ceil(elitism * N)
  int init_retries = 10;
  std::function<void(int, std::span<const Individual>)> on_generation;  // optional
};

struct GaRecord {
  int generation = 0;
  double best = 0.0;
  double mean_feasible = 0.0;
  int feasible_count = 0;
  Genome best_genome{};
};

struct GaResult {
  Individual best;
  std::vector<GaRecord> history;
  int elite_count = 0;
};

/// Generational GA: binary tournament selection, uniform crossover,
/// per-gene uniform-reset mutation, elitism. Fully reproducible from the
/// seed for any worker count.
GaResult run_ga(const SearchSpace& space, ObjectiveKind objective, const Evaluator& evaluate,
                const GaConfig& config, std::uint64_t seed, int workers = 1);

/// Evaluates genomes [0, n) with a bounded worker pool; results are indexed,
/// so scheduling cannot affect them.
std::vector<CostVector> evaluate_population(std::span<const Genome> genomes,
                                            const Evaluator& evaluate, int workers);

}  // namespace gaitopt
