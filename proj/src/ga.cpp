#include "gaitopt/ga.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "gaitopt/rng.hpp"

namespace gaitopt {

const char* to_string(ObjectiveKind o) {
  switch (o) {
    case ObjectiveKind::Energy: return "energy";
    case ObjectiveKind::Torque: return "torque";
    case ObjectiveKind::Vel: return "vel";
    default: return "zmp";
  }
}

ObjectiveKind objective_from_string(const std::string& s) {
  if (s == "energy") return ObjectiveKind::Energy;
  if (s == "torque") return ObjectiveKind::Torque;
  if (s == "vel") return ObjectiveKind::Vel;
  if (s == "zmp") return ObjectiveKind::Zmp;
  throw std::invalid_argument("unknown objective: " + s);
}

double objective_value(const CostVector& c, ObjectiveKind o) {
  if (!c.feasible) return std::numeric_limits<double>::infinity();
  switch (o) {
    case ObjectiveKind::Energy: return c.j_energy;
    case ObjectiveKind::Torque: return c.j_torque;
    case ObjectiveKind::Vel: return c.j_vel;
    default: return c.j_zmp;
  }
}

std::vector<CostVector> evaluate_population(std::span<const Genome> genomes,
                                            const Evaluator& evaluate, int workers) {
  std::vector<CostVector> out(genomes.size());
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(genomes.size())));

  if (workers == 1) {
    for (std::size_t i = 0; i < genomes.size(); ++i) out[i] = evaluate(genomes[i]);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= genomes.size()) return;
      try {
        out[i] = evaluate(genomes[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

namespace {

Genome random_genome(const SearchSpace& space, Rng& rng) {
  const auto ranges = space.ranges();
  Genome g;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = rng.uniform(ranges[i].min, ranges[i].max);
  return g;
}

// Samples and evaluates initial populations until at least one member is
// feasible, up to the configured retry count.
std::vector<Individual> initialize_population(const SearchSpace& space, int population,
                                              int retries, const Evaluator& evaluate,
                                              std::uint64_t seed, int workers) {
  std::vector<Violation> last;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    std::vector<Genome> genomes(population);
    for (int i = 0; i < population; ++i) {
      Rng rng = Rng::stream(seed, 0, static_cast<std::uint64_t>(attempt) * 1000003u + i);
      genomes[i] = random_genome(space, rng);
    }
    auto costs = evaluate_population(genomes, evaluate, workers);
    const bool any_feasible =
        std::any_of(costs.begin(), costs.end(), [](const CostVector& c) { return c.feasible; });
    if (any_feasible) {
      std::vector<Individual> pop(population);
      for (int i = 0; i < population; ++i) pop[i] = {genomes[i], std::move(costs[i]), 0, 0.0};
      return pop;
    }
    last = costs.back().violations;
  }
  throw InitializationError("optimizer initialization failed: every sampled candidate was "
                            "infeasible after " + std::to_string(retries + 1) + " attempts",
                            retries, std::move(last));
}

int tournament(const std::vector<double>& fitness, Rng& rng) {
  const int a = rng.uniform_int(0, static_cast<int>(fitness.size()) - 1);
  const int b = rng.uniform_int(0, static_cast<int>(fitness.size()) - 1);
  return fitness[b] < fitness[a] ? b : a;
}

}  // namespace

GaResult run_ga(const SearchSpace& space, ObjectiveKind objective, const Evaluator& evaluate,
                const GaConfig& config, std::uint64_t seed, int workers) {
  space.validate();
  if (config.population < 2) throw std::invalid_argument("run_ga: population must be >= 2");
  if (config.generations < 1) throw std::invalid_argument("run_ga: generations must be >= 1");

  const int n = config.population;
  const int elites = static_cast<int>(std::ceil(config.elitism * n));
  const auto ranges = space.ranges();

  std::vector<Individual> pop =
      initialize_population(space, n, config.init_retries, evaluate, seed, workers);

  GaResult result;
  result.elite_count = elites;
  result.best.costs.feasible = false;

  for (int gen = 0; gen < config.generations; ++gen) {
    std::vector<double> fitness(n);
    for (int i = 0; i < n; ++i) fitness[i] = objective_value(pop[i].costs, objective);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fitness[a] < fitness[b]; });

    // Track the best-so-far individual (elitism makes it monotone).
    const Individual& gen_best = pop[order[0]];
    if (!result.best.costs.feasible ||
        fitness[order[0]] < objective_value(result.best.costs, objective)) {
      result.best = gen_best;
    }

    GaRecord rec;
    rec.generation = gen;
    rec.best = fitness[order[0]];
    rec.best_genome = gen_best.genome;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (pop[i].costs.feasible) {
        sum += fitness[i];
        ++rec.feasible_count;
      }
    }
    rec.mean_feasible = rec.feasible_count > 0 ? sum / rec.feasible_count : 0.0;
    result.history.push_back(rec);
    if (config.on_generation) config.on_generation(gen, pop);

    if (gen + 1 == config.generations) break;

    // Offspring: elites pass unchanged, the rest come from tournament
    // selection, uniform crossover, and uniform-reset mutation.
    std::vector<Individual> next;
    next.reserve(n);
    for (int e = 0; e < elites && e < n; ++e) next.push_back(pop[order[e]]);

    std::vector<Genome> pending;
    pending.reserve(n);
    int pair_index = 0;
    while (static_cast<int>(next.size() + pending.size()) < n) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(gen) + 1, pair_index++);
      const Genome& p1 = pop[tournament(fitness, rng)].genome;
      const Genome& p2 = pop[tournament(fitness, rng)].genome;
      Genome c1 = p1, c2 = p2;
      if (rng.uniform() < config.crossover_prob) {
        for (std::size_t g = 0; g < c1.size(); ++g)
          if (rng.uniform() < 0.5) std::swap(c1[g], c2[g]);
      }
      for (Genome* child : {&c1, &c2}) {
        for (std::size_t g = 0; g < child->size(); ++g)
          if (rng.uniform() < config.mutation_prob)
            (*child)[g] = rng.uniform(ranges[g].min, ranges[g].max);
        *child = space.clamp(*child);
      }
      pending.push_back(c1);
      if (static_cast<int>(next.size() + pending.size()) < n) pending.push_back(c2);
    }

    auto costs = evaluate_population(pending, evaluate, workers);
    for (std::size_t i = 0; i < pending.size(); ++i)
      next.push_back({pending[i], std::move(costs[i]), 0, 0.0});
    pop = std::move(next);
  }
  return result;
}

}  // namespace gaitopt
