#pragma once

#include "gaitopt/run_config.hpp"

namespace gaitopt {

enum class OptimizeMode { Single, Multi };

/// Generates the trajectory for one parameter vector and writes the
/// trajectory CSV plus a summary report into the output directory.
int cmd_plan(const RunConfig& config, const Genome& genome);

/// Evaluates one parameter vector and writes the cost report (and, when
/// requested, the per-sample dynamics CSV).
int cmd_evaluate(const RunConfig& config, const Genome& genome, bool dump_dynamics);

/// Runs the single-objective GA or the bi-objective NSGA-II and writes the
/// history log, front CSV and knee report. In multi mode, sweep_speeds runs
/// the three survey speeds 0.4/0.6/0.8 km/h.
int cmd_optimize(const RunConfig& config, OptimizeMode mode, ObjectiveKind objective,
                 bool sweep_speeds);

}  // namespace gaitopt
