#pragma once

#include "gaitopt/ga.hpp"
#include "gaitopt/rng.hpp"

namespace gaitopt {

using Objectives = std::array<double, 2>;

/// a dominates b (minimization): a <= b in both objectives, < in at least one.
bool dominates(const Objectives& a, const Objectives& b);

/// Deb's fast non-dominated sort; returns member indices grouped by front.
std::vector<std::vector<int>> fast_nondominated_sort(std::span<const Objectives> objs);

/// Crowding distance of one front: boundary members get infinity, interior
/// members the normalized neighbour gap per objective. A degenerate objective
/// (zero range) contributes 0.
std::vector<double> crowding_distance(std::span<const Objectives> front);

/// Simulated binary crossover, fired per pair with the given probability;
/// each participating gene preserves the parent mean before clamping.
std::pair<Genome, Genome> sbx_crossover(const Genome& p1, const Genome& p2,
                                        const SearchSpace& space, double eta_c,
                                        double prob, Rng& rng);

/// Bounded polynomial mutation, applied per gene with probability
/// per_gene_prob.
Genome polynomial_mutation(Genome g, const SearchSpace& space, double eta_m,
                           double per_gene_prob, Rng& rng);

/// knee member: min-max normalize each objective over the front and pick the
/// member nearest the normalized utopia point (0, 0); ties break toward the
/// lower index.
int knee_point(std::span<const Objectives> front);

/// Dominated hypervolume of a 2D front against a fixed reference point;
/// members not dominating the reference contribute nothing.
double hypervolume_2d(std::span<const Objectives> front, const Objectives& ref);

struct Nsga2Config {
  int population = 150;
  int generations = 150;
  double crossover_prob = 0.9;
  double eta_c = 15.0;
  double eta_m = 20.0;
  double mutation_prob = 0.2;  // per gene, 1/n for the 5 genes
  int init_retries = 10;
  std::function<void(int, std::span<const Individual>)> on_generation;  // optional
};

struct ParetoFront {
  std::vector<Individual> members;  // mutually non-dominated
  Objectives utopia{};              // per-objective minima over the front
  int knee = -1;                    // index into members
};

struct Nsga2Record {
  int generation = 0;
  int front_size = 0;
  double hypervolume = 0.0;
  Objectives best{};  // per-objective minima of the feasible population
  int feasible_count = 0;
};

struct Nsga2Result {
  ParetoFront front;
  std::vector<Nsga2Record> history;
};

/// Objectives extracted for the bi-objective problem: (j_zmp, j_energy);
/// infeasible members map to +inf in both.
Objectives biobjective(const CostVector& c);

/// Standard elitist NSGA-II over the five-parameter space.
Nsga2Result run_nsga2(const SearchSpace& space, const Evaluator& evaluate,
                      const Nsga2Config& config, std::uint64_t seed, int workers = 1);

}  // namespace gaitopt
