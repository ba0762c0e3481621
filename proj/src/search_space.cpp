#include "gaitopt/search_space.hpp"

#include <algorithm>

namespace gaitopt {

const std::array<const char*, 5>& SearchSpace::names() {
  static const std::array<const char*, 5> n = {"alpha", "r_ds", "t_step", "z0", "h_ankle"};
  return n;
}

void SearchSpace::validate() const {
  const auto r = ranges();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i].min < r[i].max))
      throw std::invalid_argument(std::string("SearchSpace: ") + names()[i] +
                                  " bounds must satisfy min < max");
  }
}

bool SearchSpace::contains(const Genome& g) const {
  const auto r = ranges();
  for (std::size_t i = 0; i < r.size(); ++i)
    if (g[i] < r[i].min || g[i] > r[i].max) return false;
  return true;
}

Genome SearchSpace::clamp(Genome g) const {
  const auto r = ranges();
  for (std::size_t i = 0; i < r.size(); ++i) g[i] = std::clamp(g[i], r[i].min, r[i].max);
  return g;
}

GaitParams to_params(const Genome& g, double speed) {
  GaitParams p;
  p.alpha = g[0];
  p.r_ds = g[1];
  p.t_step = g[2];
  p.z0 = g[3];
  p.h_ankle = g[4];
  p.speed = speed;
  return p;
}

Genome to_genome(const GaitParams& p) { return {p.alpha, p.r_ds, p.t_step, p.z0, p.h_ankle}; }

}  // namespace gaitopt
