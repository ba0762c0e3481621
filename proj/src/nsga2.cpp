#include "gaitopt/nsga2.hpp"

#include <algorithm>
#include <numeric>

namespace gaitopt {

bool dominates(const Objectives& a, const Objectives& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

std::vector<std::vector<int>> fast_nondominated_sort(std::span<const Objectives> objs) {
  const int n = static_cast<int>(objs.size());
  std::vector<std::vector<int>> dominated(n);
  std::vector<int> count(n, 0);
  std::vector<std::vector<int>> fronts(1);

  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(objs[p], objs[q])) dominated[p].push_back(q);
      else if (dominates(objs[q], objs[p])) ++count[p];
    }
    if (count[p] == 0) fronts[0].push_back(p);
  }

  int i = 0;
  while (!fronts[i].empty()) {
    std::vector<int> next;
    for (int p : fronts[i]) {
      for (int q : dominated[p]) {
        if (--count[q] == 0) next.push_back(q);
      }
    }
    ++i;
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> front) {
  const int n = static_cast<int>(front.size());
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), inf);
    return dist;
  }
  std::vector<int> order(n);
  for (int m = 0; m < 2; ++m) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return front[a][m] < front[b][m]; });
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    const double range = front[order.back()][m] - front[order.front()][m];
    if (!(range > 0.0) || !std::isfinite(range)) continue;  // degenerate objective
    for (int k = 1; k + 1 < n; ++k) {
      if (dist[order[k]] == inf) continue;
      dist[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / range;
    }
  }
  return dist;
}

std::pair<Genome, Genome> sbx_crossover(const Genome& p1, const Genome& p2,
                                        const SearchSpace& space, double eta_c,
                                        double prob, Rng& rng) {
  Genome c1 = p1, c2 = p2;
  if (rng.uniform() <= prob) {
    for (std::size_t g = 0; g < c1.size(); ++g) {
      if (rng.uniform() > 0.5) continue;  // gene does not participate
      if (std::abs(p1[g] - p2[g]) < 1e-14) continue;
      const double u = rng.uniform();
      const double exponent = 1.0 / (eta_c + 1.0);
      const double beta = u <= 0.5 ? std::pow(2.0 * u, exponent)
                                   : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
      c1[g] = 0.5 * ((1.0 + beta) * p1[g] + (1.0 - beta) * p2[g]);
      c2[g] = 0.5 * ((1.0 - beta) * p1[g] + (1.0 + beta) * p2[g]);
    }
  }
  return {space.clamp(c1), space.clamp(c2)};
}

Genome polynomial_mutation(Genome g, const SearchSpace& space, double eta_m,
                           double per_gene_prob, Rng& rng) {
  const auto ranges = space.ranges();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (rng.uniform() > per_gene_prob) continue;
    const double lo = ranges[i].min, hi = ranges[i].max;
    const double span = hi - lo;
    const double d1 = (g[i] - lo) / span;
    const double d2 = (hi - g[i]) / span;
    const double u = rng.uniform();
    const double mut_pow = 1.0 / (eta_m + 1.0);
    double deltaq;
    if (u <= 0.5) {
      const double xy = 1.0 - d1;
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta_m + 1.0);
      deltaq = std::pow(val, mut_pow) - 1.0;
    } else {
      const double xy = 1.0 - d2;
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta_m + 1.0);
      deltaq = 1.0 - std::pow(val, mut_pow);
    }
    g[i] += deltaq * span;
  }
  return space.clamp(g);
}

int knee_point(std::span<const Objectives> front) {
  if (front.empty()) throw std::invalid_argument("knee_point: empty front");
  Objectives lo = front[0], hi = front[0];
  for (const auto& f : front) {
    for (int m = 0; m < 2; ++m) {
      lo[m] = std::min(lo[m], f[m]);
      hi[m] = std::max(hi[m], f[m]);
    }
  }
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < front.size(); ++i) {
    double d2 = 0.0;
    for (int m = 0; m < 2; ++m) {
      const double range = hi[m] - lo[m];
      const double v = range > 0.0 ? (front[i][m] - lo[m]) / range : 0.0;
      d2 += v * v;
    }
    if (d2 < best_dist) {
      best_dist = d2;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double hypervolume_2d(std::span<const Objectives> front, const Objectives& ref) {
  std::vector<Objectives> pts;
  for (const auto& f : front)
    if (f[0] < ref[0] && f[1] < ref[1]) pts.push_back(f);
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const Objectives& a, const Objectives& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  // staircase of sweep-non-dominated points
  std::vector<Objectives> stair;
  for (const auto& p : pts)
    if (stair.empty() || p[1] < stair.back()[1]) stair.push_back(p);
  double hv = 0.0;
  for (std::size_t i = 0; i < stair.size(); ++i) {
    const double next_x = i + 1 < stair.size() ? stair[i + 1][0] : ref[0];
    hv += (next_x - stair[i][0]) * (ref[1] - stair[i][1]);
  }
  return hv;
}

Objectives biobjective(const CostVector& c) {
  if (!c.feasible) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  return {c.j_zmp, c.j_energy};
}

namespace {

// Crowded-comparison: lower rank first, then larger crowding.
bool crowded_less(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

void assign_rank_and_crowding(std::vector<Individual>& pop) {
  std::vector<Objectives> objs(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) objs[i] = biobjective(pop[i].costs);
  const auto fronts = fast_nondominated_sort(objs);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    std::vector<Objectives> front_objs;
    front_objs.reserve(fronts[f].size());
    for (int idx : fronts[f]) front_objs.push_back(objs[idx]);
    const auto crowd = crowding_distance(front_objs);
    for (std::size_t k = 0; k < fronts[f].size(); ++k) {
      pop[fronts[f][k]].rank = static_cast<int>(f);
      pop[fronts[f][k]].crowding = crowd[k];
    }
  }
}

}  // namespace

Nsga2Result run_nsga2(const SearchSpace& space, const Evaluator& evaluate,
                      const Nsga2Config& config, std::uint64_t seed, int workers) {
  space.validate();
  if (config.population < 4) throw std::invalid_argument("run_nsga2: population must be >= 4");
  if (config.generations < 1)
    throw std::invalid_argument("run_nsga2: generations must be >= 1");

  const int n = config.population;

  // Reuse the GA initializer through a tiny local copy of its logic: sample
  // uniformly, retry until at least one feasible member exists.
  std::vector<Individual> pop;
  {
    std::vector<Violation> last;
    bool done = false;
    for (int attempt = 0; attempt <= config.init_retries && !done; ++attempt) {
      std::vector<Genome> genomes(n);
      for (int i = 0; i < n; ++i) {
        Rng rng = Rng::stream(seed, 0, static_cast<std::uint64_t>(attempt) * 1000003u + i);
        const auto ranges = space.ranges();
        for (std::size_t g = 0; g < genomes[i].size(); ++g)
          genomes[i][g] = rng.uniform(ranges[g].min, ranges[g].max);
      }
      auto costs = evaluate_population(genomes, evaluate, workers);
      if (std::any_of(costs.begin(), costs.end(),
                      [](const CostVector& c) { return c.feasible; })) {
        pop.resize(n);
        for (int i = 0; i < n; ++i) pop[i] = {genomes[i], std::move(costs[i]), 0, 0.0};
        done = true;
      } else {
        last = costs.back().violations;
      }
    }
    if (!done)
      throw InitializationError("optimizer initialization failed: every sampled candidate was "
                                "infeasible after " + std::to_string(config.init_retries + 1) +
                                " attempts",
                                config.init_retries, std::move(last));
  }
  assign_rank_and_crowding(pop);

  // Fixed hypervolume reference from the initial feasible spread.
  Objectives hv_ref{1.0, 1.0};
  {
    bool any = false;
    Objectives worst{-std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
    for (const auto& ind : pop) {
      const Objectives o = biobjective(ind.costs);
      if (!std::isfinite(o[0]) || !std::isfinite(o[1])) continue;
      worst[0] = std::max(worst[0], o[0]);
      worst[1] = std::max(worst[1], o[1]);
      any = true;
    }
    if (any) {
      for (int m = 0; m < 2; ++m) hv_ref[m] = worst[m] + 0.1 * std::max(1.0, std::abs(worst[m]));
    }
  }

  Nsga2Result result;
  auto record_generation = [&](int gen, const std::vector<Individual>& p) {
    Nsga2Record rec;
    rec.generation = gen;
    std::vector<Objectives> front_objs;
    rec.best = {std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    for (const auto& ind : p) {
      const Objectives o = biobjective(ind.costs);
      if (std::isfinite(o[0])) {
        ++rec.feasible_count;
        rec.best[0] = std::min(rec.best[0], o[0]);
        rec.best[1] = std::min(rec.best[1], o[1]);
      }
      if (ind.rank == 0 && std::isfinite(o[0])) front_objs.push_back(o);
    }
    rec.front_size = static_cast<int>(front_objs.size());
    rec.hypervolume = hypervolume_2d(front_objs, hv_ref);
    result.history.push_back(rec);
    if (config.on_generation) config.on_generation(gen, p);
  };
  record_generation(0, pop);

  for (int gen = 1; gen <= config.generations; ++gen) {
    // Variation: tournament on the crowded comparison, SBX, polynomial
    // mutation. One deterministic stream per pair.
    std::vector<Genome> offspring;
    offspring.reserve(n);
    int pair_index = 0;
    while (static_cast<int>(offspring.size()) < n) {
      Rng rng = Rng::stream(seed, gen, pair_index++);
      auto pick = [&]() -> const Individual& {
        const int a = rng.uniform_int(0, n - 1);
        const int b = rng.uniform_int(0, n - 1);
        return crowded_less(pop[b], pop[a]) ? pop[b] : pop[a];
      };
      const Individual& p1 = pick();
      const Individual& p2 = pick();
      auto [c1, c2] = sbx_crossover(p1.genome, p2.genome, space, config.eta_c,
                                    config.crossover_prob, rng);
      c1 = polynomial_mutation(c1, space, config.eta_m, config.mutation_prob, rng);
      c2 = polynomial_mutation(c2, space, config.eta_m, config.mutation_prob, rng);
      offspring.push_back(c1);
      if (static_cast<int>(offspring.size()) < n) offspring.push_back(c2);
    }

    auto costs = evaluate_population(offspring, evaluate, workers);
    std::vector<Individual> combined = pop;
    combined.reserve(2 * n);
    for (std::size_t i = 0; i < offspring.size(); ++i)
      combined.push_back({offspring[i], std::move(costs[i]), 0, 0.0});

    // Elitist survivor selection: fill by front, truncate by crowding.
    std::vector<Objectives> objs(combined.size());
    for (std::size_t i = 0; i < combined.size(); ++i) objs[i] = biobjective(combined[i].costs);
    const auto fronts = fast_nondominated_sort(objs);

    std::vector<Individual> next;
    next.reserve(n);
    for (std::size_t f = 0; f < fronts.size() && static_cast<int>(next.size()) < n; ++f) {
      std::vector<Objectives> front_objs;
      front_objs.reserve(fronts[f].size());
      for (int idx : fronts[f]) front_objs.push_back(objs[idx]);
      const auto crowd = crowding_distance(front_objs);

      std::vector<int> order(fronts[f].size());
      std::iota(order.begin(), order.end(), 0);
      if (fronts[f].size() > static_cast<std::size_t>(n) - next.size()) {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return crowd[a] > crowd[b]; });
      }
      for (int k : order) {
        if (static_cast<int>(next.size()) == n) break;
        Individual ind = combined[fronts[f][k]];
        ind.rank = static_cast<int>(f);
        ind.crowding = crowd[k];
        next.push_back(std::move(ind));
      }
    }
    pop = std::move(next);
    assign_rank_and_crowding(pop);
    record_generation(gen, pop);
  }

  // Final front: rank-0 members with the knee selection applied.
  ParetoFront front;
  for (const auto& ind : pop)
    if (ind.rank == 0 && ind.costs.feasible) front.members.push_back(ind);
  if (front.members.empty()) {
    for (const auto& ind : pop)
      if (ind.rank == 0) front.members.push_back(ind);
  }
  std::vector<Objectives> front_objs(front.members.size());
  for (std::size_t i = 0; i < front.members.size(); ++i)
    front_objs[i] = biobjective(front.members[i].costs);
  front.utopia = front_objs.empty() ? Objectives{0.0, 0.0} : front_objs[0];
  for (const auto& o : front_objs) {
    front.utopia[0] = std::min(front.utopia[0], o[0]);
    front.utopia[1] = std::min(front.utopia[1], o[1]);
  }
  if (!front.members.empty()) front.knee = knee_point(front_objs);
  result.front = std::move(front);
  return result;
}

}  // namespace gaitopt
