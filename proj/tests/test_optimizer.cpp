#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "gaitopt/ga.hpp"
#include "gaitopt/nsga2.hpp"
#include "gaitopt/rng.hpp"

using namespace gaitopt;

namespace {

CostVector scalar_cost(double v) {
  CostVector c;
  c.j_energy = c.j_torque = c.j_vel = c.j_zmp = v;
  return c;
}

// Sphere benchmark centered in the box.
Evaluator sphere_evaluator(const SearchSpace& space) {
  return [space](const Genome& g) {
    const auto r = space.ranges();
    double v = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double c = 0.5 * (r[i].min + r[i].max);
      v += (g[i] - c) * (g[i] - c);
    }
    return scalar_cost(v);
  };
}

// Peeling oracle for non-dominated sorting: front 0 is the set of points not
// dominated by any other; remove it and repeat.
std::vector<int> brute_force_front_index(const std::vector<Objectives>& objs) {
  std::vector<int> front(objs.size(), -1);
  std::vector<bool> removed(objs.size(), false);
  int level = 0;
  std::size_t assigned = 0;
  while (assigned < objs.size()) {
    std::vector<int> current;
    for (std::size_t p = 0; p < objs.size(); ++p) {
      if (removed[p]) continue;
      bool dominated = false;
      for (std::size_t q = 0; q < objs.size() && !dominated; ++q) {
        if (q == p || removed[q]) continue;
        dominated = dominates(objs[q], objs[p]);
      }
      if (!dominated) current.push_back(static_cast<int>(p));
    }
    for (int p : current) {
      front[p] = level;
      removed[p] = true;
    }
    assigned += current.size();
    ++level;
  }
  return front;
}

}  // namespace

TEST_CASE("objective_value: selector and death penalty") {
  CostVector c;
  c.j_energy = 1.0;
  c.j_torque = 2.0;
  c.j_vel = 3.0;
  c.j_zmp = -4.0;
  CHECK(objective_value(c, ObjectiveKind::Energy) == 1.0);
  CHECK(objective_value(c, ObjectiveKind::Torque) == 2.0);
  CHECK(objective_value(c, ObjectiveKind::Vel) == 3.0);
  CHECK(objective_value(c, ObjectiveKind::Zmp) == -4.0);
  c.feasible = false;
  CHECK(std::isinf(objective_value(c, ObjectiveKind::Energy)));
}

TEST_CASE("run_ga: converges on the sphere benchmark") {
  SearchSpace space;
  GaConfig config;
  config.population = 100;
  config.generations = 100;
  const GaResult result = run_ga(space, ObjectiveKind::Energy, sphere_evaluator(space),
                                 config, /*seed=*/42);
  CHECK(objective_value(result.best.costs, ObjectiveKind::Energy) < 1e-4);
}

TEST_CASE("run_ga: elite preservation and monotone best") {
  SearchSpace space;
  GaConfig config;
  config.population = 100;
  config.generations = 30;
  std::map<int, std::vector<Genome>> populations;
  config.on_generation = [&](int gen, std::span<const Individual> pop) {
    std::vector<Genome> genomes;
    for (const auto& ind : pop) genomes.push_back(ind.genome);
    populations[gen] = genomes;
  };
  const GaResult result = run_ga(space, ObjectiveKind::Energy, sphere_evaluator(space),
                                 config, 7);
  CHECK(result.elite_count == 3);  // ceil(0.03 * 100)

  // best-so-far never worsens
  double best = std::numeric_limits<double>::infinity();
  for (const auto& rec : result.history) {
    CHECK(rec.best <= best + 1e-15);
    best = std::min(best, rec.best);
  }

  // the top elite_count genomes of each generation appear unchanged in the next
  const auto eval = sphere_evaluator(space);
  for (int gen = 0; gen + 1 < 30; ++gen) {
    const auto& cur = populations[gen];
    const auto& next = populations[gen + 1];
    std::vector<std::pair<double, Genome>> scored;
    for (const auto& g : cur) scored.emplace_back(eval(g).j_energy, g);
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int e = 0; e < result.elite_count; ++e) {
      const Genome& elite = scored[e].second;
      const bool found = std::any_of(next.begin(), next.end(), [&](const Genome& g) {
        return g == elite;
      });
      CHECK(found);
    }
  }

  // every genome stays in bounds in every generation
  for (const auto& [gen, pop] : populations)
    for (const auto& g : pop) CHECK(space.contains(g));
}

TEST_CASE("run_ga: bit-identical reruns regardless of worker count") {
  SearchSpace space;
  GaConfig config;
  config.population = 40;
  config.generations = 20;
  const auto eval = sphere_evaluator(space);
  const GaResult one = run_ga(space, ObjectiveKind::Energy, eval, config, 123, /*workers=*/1);
  const GaResult four = run_ga(space, ObjectiveKind::Energy, eval, config, 123, /*workers=*/4);
  REQUIRE(one.history.size() == four.history.size());
  for (std::size_t g = 0; g < one.history.size(); ++g) {
    CHECK(one.history[g].best == four.history[g].best);
    CHECK(one.history[g].mean_feasible == four.history[g].mean_feasible);
    CHECK(one.history[g].best_genome == four.history[g].best_genome);
  }
  CHECK(one.best.genome == four.best.genome);
}

TEST_CASE("run_ga: all-infeasible initialization fails with context") {
  SearchSpace space;
  GaConfig config;
  config.population = 10;
  config.generations = 5;
  config.init_retries = 3;
  const Evaluator never = [](const Genome&) {
    CostVector c;
    c.feasible = false;
    c.violations.push_back({Constraint::KinematicReach, 0.0, 0, "unreachable"});
    return c;
  };
  CHECK_THROWS_AS(run_ga(space, ObjectiveKind::Energy, never, config, 5),
                  InitializationError);
  try {
    run_ga(space, ObjectiveKind::Energy, never, config, 5);
  } catch (const InitializationError& e) {
    CHECK(e.retries == 3);
    REQUIRE(!e.last_violations.empty());
    CHECK(e.last_violations[0].constraint == Constraint::KinematicReach);
  }
}

TEST_CASE("fast_nondominated_sort: hand-checkable fronts") {
  const std::vector<Objectives> pts = {{1, 2}, {2, 1}, {3, 3}};
  const auto fronts = fast_nondominated_sort(pts);
  REQUIRE(fronts.size() == 2);
  CHECK(std::set<int>(fronts[0].begin(), fronts[0].end()) == std::set<int>{0, 1});
  CHECK(fronts[1] == std::vector<int>{2});
}

TEST_CASE("fast_nondominated_sort: identical points share front zero") {
  const std::vector<Objectives> pts(7, Objectives{1.5, 2.5});
  const auto fronts = fast_nondominated_sort(pts);
  REQUIRE(fronts.size() == 1);
  CHECK(fronts[0].size() == 7);
}

TEST_CASE("fast_nondominated_sort: matches the brute-force oracle on 500 points") {
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Objectives> pts(500);
  for (auto& p : pts) p = {u(gen), u(gen)};
  const auto fronts = fast_nondominated_sort(pts);
  const auto oracle = brute_force_front_index(pts);
  std::vector<int> mine(pts.size(), -1);
  for (std::size_t f = 0; f < fronts.size(); ++f)
    for (int idx : fronts[f]) mine[idx] = static_cast<int>(f);
  CHECK(mine == oracle);
  // the fronts partition the population
  std::size_t total = 0;
  for (const auto& f : fronts) total += f.size();
  CHECK(total == pts.size());
}

TEST_CASE("crowding_distance: boundaries, interior gap, degenerate ranges") {
  SUBCASE("two members are both boundary") {
    const std::vector<Objectives> f = {{0, 1}, {1, 0}};
    const auto d = crowding_distance(f);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[1]));
  }
  SUBCASE("evenly spaced line gives the middle member 2.0") {
    const std::vector<Objectives> f = {{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
    const auto d = crowding_distance(f);
    CHECK(std::isinf(d[0]));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isinf(d[2]));
  }
  SUBCASE("degenerate objective contributes zero, never NaN") {
    const std::vector<Objectives> f = {{5.0, 1.0}, {5.0, 2.0}, {5.0, 3.0}};
    const auto d = crowding_distance(f);
    CHECK(std::isinf(d[0]));
    CHECK(std::isfinite(d[1]));
    CHECK(d[1] == doctest::Approx(1.0));  // only the second objective contributes
    CHECK(std::isinf(d[2]));
  }
}

TEST_CASE("sbx_crossover: identical parents and mean preservation") {
  SearchSpace space;
  space.alpha = {-100.0, 100.0};
  space.r_ds = {-100.0, 100.0};
  space.t_step = {-100.0, 100.0};
  space.z0 = {-100.0, 100.0};
  space.h_ankle = {-100.0, 100.0};

  Rng rng(99);
  const Genome p{0.5, 1.0, -2.0, 3.0, 0.25};
  SUBCASE("identical parents pass through exactly") {
    for (int i = 0; i < 50; ++i) {
      const auto [c1, c2] = sbx_crossover(p, p, space, 15.0, 1.0, rng);
      CHECK(c1 == p);
      CHECK(c2 == p);
    }
  }
  SUBCASE("children preserve the parent mean") {
    const Genome q{1.5, -1.0, 2.0, 5.0, 0.5};
    for (int i = 0; i < 200; ++i) {
      const auto [c1, c2] = sbx_crossover(p, q, space, 15.0, 1.0, rng);
      for (std::size_t g = 0; g < 5; ++g)
        CHECK(0.5 * (c1[g] + c2[g]) ==
              doctest::Approx(0.5 * (p[g] + q[g])).epsilon(1e-12));
    }
  }
  SUBCASE("larger eta concentrates the children") {
    auto spread = [&](double eta, std::uint64_t seed) {
      Rng local(seed);
      const Genome q{1.5, -1.0, 2.0, 5.0, 0.5};
      double var = 0.0;
      int n = 0;
      for (int i = 0; i < 10000; ++i) {
        const auto [c1, c2] = sbx_crossover(p, q, space, eta, 1.0, local);
        for (std::size_t g = 0; g < 5; ++g) {
          const double d = c1[g] - p[g];
          var += d * d;
          ++n;
        }
      }
      return var / n;
    };
    CHECK(spread(100.0, 5) < spread(2.0, 5));
  }
}

TEST_CASE("polynomial_mutation: bounds and symmetry") {
  SearchSpace space;  // reference bounds
  SUBCASE("zero probability is a no-op") {
    Rng rng(1);
    const Genome g{0.3, 0.2, 0.8, 0.67, 0.05};
    CHECK(polynomial_mutation(g, space, 20.0, 0.0, rng) == g);
  }
  SUBCASE("gene at the lower bound can only move up") {
    Rng rng(2);
    bool moved = false;
    for (int i = 0; i < 100000; ++i) {
      Genome g{0.2, 0.1, 0.5, 0.65, 0.025};  // all at lower bounds
      const Genome m = polynomial_mutation(g, space, 20.0, 1.0, rng);
      for (std::size_t k = 0; k < 5; ++k) {
        CHECK(m[k] >= g[k]);
        if (m[k] > g[k]) moved = true;
      }
    }
    CHECK(moved);
  }
  SUBCASE("mid-range perturbations are symmetric") {
    Rng rng(3);
    double mean_offset = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
      Genome g{0.45, 0.3, 0.9, 0.675, 0.05};  // centers of the reference box
      const Genome m = polynomial_mutation(g, space, 20.0, 1.0, rng);
      mean_offset += (m[2] - 0.9) / (1.3 - 0.5);
    }
    CHECK(std::abs(mean_offset / trials) < 1e-3);
  }
}

TEST_CASE("knee_point: selection and scale invariance") {
  SUBCASE("singleton front") {
    const std::vector<Objectives> f = {{3.0, 7.0}};
    CHECK(knee_point(f) == 0);
  }
  SUBCASE("symmetric front picks the diagonal member") {
    const std::vector<Objectives> f = {{0.0, 1.0}, {1.0, 0.0}, {0.4, 0.4}};
    CHECK(knee_point(f) == 2);
  }
  SUBCASE("per-objective scaling does not change the selection") {
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Objectives> f;
      for (int i = 0; i < 12; ++i) f.push_back({u(gen), u(gen)});
      const int base = knee_point(f);
      std::vector<Objectives> scaled = f;
      for (auto& p : scaled) p[1] *= 1000.0;
      CHECK(knee_point(scaled) == base);
    }
  }
  SUBCASE("empty front throws") {
    CHECK_THROWS_AS(knee_point({}), std::invalid_argument);
  }
}

TEST_CASE("hypervolume_2d: hand-checkable rectangles") {
  const Objectives ref{1.0, 1.0};
  CHECK(hypervolume_2d(std::vector<Objectives>{{0.0, 0.0}}, ref) == doctest::Approx(1.0));
  CHECK(hypervolume_2d(std::vector<Objectives>{{0.0, 0.5}, {0.5, 0.0}}, ref) ==
        doctest::Approx(0.75));
  // dominated and out-of-reference points add nothing
  CHECK(hypervolume_2d(std::vector<Objectives>{{0.0, 0.5}, {0.5, 0.0}, {0.6, 0.6}, {2.0, 0.1}},
                       ref) == doctest::Approx(0.75));
  CHECK(hypervolume_2d({}, ref) == 0.0);
}

TEST_CASE("run_nsga2: convex one-parameter tradeoff") {
  // objectives (x^2, (x-2)^2) on the first gene scaled into [0, 2]
  SearchSpace space;
  space.alpha = {0.0, 2.0};
  const Evaluator eval = [](const Genome& g) {
    CostVector c;
    const double x = g[0];
    c.j_zmp = x * x;                  // first objective slot
    c.j_energy = (x - 2.0) * (x - 2.0);  // second objective slot
    return c;
  };
  Nsga2Config config;
  config.population = 60;
  config.generations = 60;
  const Nsga2Result result = run_nsga2(space, eval, config, 11);

  REQUIRE(result.front.members.size() >= 20);
  // spans the whole tradeoff and stays mutually non-dominated
  double lo = 2.0, hi = 0.0;
  std::vector<Objectives> objs;
  for (const auto& m : result.front.members) {
    lo = std::min(lo, m.genome[0]);
    hi = std::max(hi, m.genome[0]);
    objs.push_back(biobjective(m.costs));
  }
  CHECK(lo < 0.1);
  CHECK(hi > 1.9);
  const auto oracle = brute_force_front_index(objs);
  for (int f : oracle) CHECK(f == 0);

  // the knee of the symmetric tradeoff sits near x = 1
  CHECK(result.front.members[result.front.knee].genome[0] ==
        doctest::Approx(1.0).epsilon(0.1));

  // hypervolume of the tracked front never collapses
  CHECK(result.history.back().hypervolume > result.history.front().hypervolume * 0.99);
  double prev = 0.0;
  for (const auto& rec : result.history) {
    CHECK(rec.hypervolume >= prev - 0.02 * std::abs(prev));
    prev = rec.hypervolume;
  }
}

TEST_CASE("run_nsga2: deterministic across worker counts") {
  SearchSpace space;
  const Evaluator eval = [](const Genome& g) {
    CostVector c;
    c.j_zmp = g[0] + g[1];
    c.j_energy = g[2] * g[3] + g[4];
    return c;
  };
  Nsga2Config config;
  config.population = 32;
  config.generations = 15;
  const auto a = run_nsga2(space, eval, config, 77, 1);
  const auto b = run_nsga2(space, eval, config, 77, 3);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t g = 0; g < a.history.size(); ++g) {
    CHECK(a.history[g].front_size == b.history[g].front_size);
    CHECK(a.history[g].hypervolume == b.history[g].hypervolume);
  }
  REQUIRE(a.front.members.size() == b.front.members.size());
  for (std::size_t i = 0; i < a.front.members.size(); ++i)
    CHECK(a.front.members[i].genome == b.front.members[i].genome);
  CHECK(a.front.knee == b.front.knee);
}
