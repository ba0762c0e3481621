#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>

#include "gaitopt/costs.hpp"
#include "gaitopt/ga.hpp"
#include "gaitopt/nsga2.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace gaitopt;

namespace {

Side side_from_string(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw std::invalid_argument("side must be 'left' or 'right'");
}

Evaluator gait_evaluator(const RobotModel& model, double speed_mps, double duration,
                         double sample_rate, double step_width) {
  return [&model, speed_mps, duration, sample_rate, step_width](const Genome& g) {
    return evaluate_gait(model, to_params(g, speed_mps), duration, sample_rate, step_width);
  };
}

py::dict cost_dict(const CostVector& c) {
  py::list violations;
  for (const auto& v : c.violations) {
    violations.append(py::dict("constraint"_a = to_string(v.constraint), "worst"_a = v.worst,
                               "sample"_a = v.sample, "detail"_a = v.detail));
  }
  return py::dict("j_energy"_a = c.j_energy, "j_torque"_a = c.j_torque, "j_vel"_a = c.j_vel,
                  "j_zmp"_a = c.j_zmp, "feasible"_a = c.feasible,
                  "violations"_a = violations);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "DCM/LIPM gait parameter toolkit: trajectory planning, full-model cost "
            "evaluation and evolutionary search";

  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<ReachError>(m, "ReachError", PyExc_ValueError);
  py::register_exception<InitializationError>(m, "InitializationError", PyExc_RuntimeError);

  py::class_<GaitParams>(m, "GaitParams")
      .def(py::init([](double alpha, double r_ds, double t_step, double z0, double h_ankle,
                       double speed) {
             GaitParams p{alpha, r_ds, t_step, z0, h_ankle, speed};
             p.validate();
             return p;
           }),
           "alpha"_a, "r_ds"_a, "t_step"_a, "z0"_a, "h_ankle"_a, "speed"_a = 0.0)
      .def_readwrite("alpha", &GaitParams::alpha)
      .def_readwrite("r_ds", &GaitParams::r_ds)
      .def_readwrite("t_step", &GaitParams::t_step)
      .def_readwrite("z0", &GaitParams::z0)
      .def_readwrite("h_ankle", &GaitParams::h_ankle)
      .def_readwrite("speed", &GaitParams::speed)
      .def("omega", &GaitParams::omega)
      .def("t_ds", &GaitParams::t_ds)
      .def("t_ss", &GaitParams::t_ss);

  py::class_<Footstep>(m, "Footstep")
      .def_readonly("position", &Footstep::position)
      .def_readonly("zmp_ref", &Footstep::zmp_ref)
      .def_property_readonly("side", [](const Footstep& f) { return to_string(f.side); });

  py::class_<FootstepPlan>(m, "FootstepPlan")
      .def_readonly("steps", &FootstepPlan::steps)
      .def_readonly("step_width", &FootstepPlan::step_width)
      .def_readonly("step_length", &FootstepPlan::step_length);

  m.def("plan_footsteps", &plan_footsteps, "speed"_a, "t_step"_a, "step_width"_a,
        "duration"_a);
  m.def("dcm_at", &dcm_at, "t"_a, "zmp"_a, "xi_init"_a, "omega"_a);

  py::class_<GaitSample>(m, "GaitSample")
      .def_readonly("t", &GaitSample::t)
      .def_readonly("dcm", &GaitSample::dcm)
      .def_readonly("dcm_vel", &GaitSample::dcm_vel)
      .def_readonly("com", &GaitSample::com)
      .def_readonly("com_vel", &GaitSample::com_vel)
      .def_readonly("left_ankle", &GaitSample::left_ankle)
      .def_readonly("right_ankle", &GaitSample::right_ankle)
      .def_readonly("left_grf_share", &GaitSample::left_grf_share)
      .def_property_readonly("phase", [](const GaitSample& s) { return to_string(s.phase); })
      .def_property_readonly("stance",
                             [](const GaitSample& s) { return to_string(s.stance); });

  py::class_<GaitTrajectory>(m, "GaitTrajectory")
      .def_readonly("sample_rate", &GaitTrajectory::sample_rate)
      .def_readonly("samples", &GaitTrajectory::samples)
      .def_readonly("plan", &GaitTrajectory::plan)
      .def("to_csv", [](const GaitTrajectory& traj, const std::string& path) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        write_trajectory_csv(out, traj);
      });

  m.def("generate_gait", &generate_gait, "params"_a, "duration"_a = 5.0,
        "step_width"_a = 0.2, "sample_rate"_a = 240.0);

  py::class_<RobotModel>(m, "RobotModel")
      .def_property_readonly("name", [](const RobotModel& mod) { return mod.name; })
      .def("total_mass", &RobotModel::total_mass)
      .def_property_readonly("joint_names", [](const RobotModel& mod) {
        std::vector<std::string> names;
        for (const auto& j : mod.joints) names.push_back(j.name);
        return names;
      });

  m.def("load_model", &load_model, "json_text"_a);
  m.def("load_model_file", &load_model_file, "path"_a);

  m.def(
      "forward_kinematics",
      [](const RobotModel& model, const Vec3& pelvis_pos, const std::vector<double>& q) {
        if (q.size() != RobotModel::kNumJoints)
          throw std::invalid_argument("q must have 12 entries");
        std::array<double, RobotModel::kNumJoints> qa{};
        std::copy(q.begin(), q.end(), qa.begin());
        const FkResult fk = forward_kinematics(model, Pose{Mat3::Identity(), pelvis_pos}, qa);
        py::dict out;
        py::list positions;
        for (const auto& pose : fk.link_pose) positions.append(pose.p);
        out["link_positions"] = positions;
        out["whole_body_com"] = fk.whole_body_com;
        return out;
      },
      "model"_a, "pelvis_position"_a, "q"_a);

  m.def(
      "leg_ik",
      [](const RobotModel& model, const Vec3& pelvis_pos, const Vec3& foot_sole_pos,
         const std::string& side) {
        return leg_ik(model, Pose{Mat3::Identity(), pelvis_pos},
                      Pose{Mat3::Identity(), foot_sole_pos}, side_from_string(side));
      },
      "model"_a, "pelvis_position"_a, "foot_sole_position"_a, "side"_a);

  m.def(
      "evaluate_gait",
      [](const RobotModel& model, const GaitParams& params, double duration,
         double sample_rate, double step_width) {
        return cost_dict(evaluate_gait(model, params, duration, sample_rate, step_width));
      },
      "model"_a, "params"_a, "duration"_a = 5.0, "sample_rate"_a = 240.0,
      "step_width"_a = 0.2);

  m.def(
      "point_in_polygon",
      [](const Vec2& p, const std::vector<Vec2>& vertices) {
        return point_in_polygon(p, SupportPolygon{vertices});
      },
      "point"_a, "vertices"_a);
  m.def(
      "distance_to_polygon",
      [](const Vec2& p, const std::vector<Vec2>& vertices) {
        return distance_to_polygon(p, SupportPolygon{vertices});
      },
      "point"_a, "vertices"_a);

  py::class_<SearchSpace>(m, "SearchSpace")
      .def(py::init<>())
      .def("ranges",
           [](const SearchSpace& s) {
             py::dict out;
             const auto r = s.ranges();
             for (std::size_t i = 0; i < r.size(); ++i)
               out[SearchSpace::names()[i]] = py::make_tuple(r[i].min, r[i].max);
             return out;
           })
      .def("set_range", [](SearchSpace& s, const std::string& name, double lo, double hi) {
        ParamRange range{lo, hi};
        if (name == "alpha") s.alpha = range;
        else if (name == "r_ds") s.r_ds = range;
        else if (name == "t_step") s.t_step = range;
        else if (name == "z0") s.z0 = range;
        else if (name == "h_ankle") s.h_ankle = range;
        else throw std::invalid_argument("unknown parameter: " + name);
        s.validate();
      });

  m.def(
      "fast_nondominated_sort",
      [](const std::vector<Objectives>& objs) { return fast_nondominated_sort(objs); },
      "objectives"_a);
  m.def(
      "crowding_distance",
      [](const std::vector<Objectives>& front) { return crowding_distance(front); },
      "front"_a);
  m.def(
      "knee_point", [](const std::vector<Objectives>& front) { return knee_point(front); },
      "front"_a);
  m.def(
      "hypervolume_2d",
      [](const std::vector<Objectives>& front, const Objectives& ref) {
        return hypervolume_2d(front, ref);
      },
      "front"_a, "reference"_a);

  m.def(
      "run_ga",
      [](const RobotModel& model, const SearchSpace& space, const std::string& objective,
         std::uint64_t seed, double speed_kmh, double duration, double sample_rate,
         double step_width, int population, int generations, int workers) {
        GaConfig config;
        config.population = population;
        config.generations = generations;
        const Evaluator eval =
            gait_evaluator(model, speed_kmh / 3.6, duration, sample_rate, step_width);
        GaResult result;
        {
          py::gil_scoped_release release;
          result = run_ga(space, objective_from_string(objective), eval, config, seed,
                          workers);
        }
        py::list history;
        for (const auto& rec : result.history) {
          history.append(py::dict("generation"_a = rec.generation, "best"_a = rec.best,
                                  "mean_feasible"_a = rec.mean_feasible,
                                  "best_genome"_a = rec.best_genome));
        }
        return py::dict("best_genome"_a = result.best.genome,
                        "best_costs"_a = cost_dict(result.best.costs),
                        "history"_a = history);
      },
      "model"_a, "space"_a, "objective"_a, "seed"_a, "speed_kmh"_a = 0.5,
      "duration"_a = 5.0, "sample_rate"_a = 240.0, "step_width"_a = 0.2,
      "population"_a = 100, "generations"_a = 100, "workers"_a = 1);

  m.def(
      "run_nsga2",
      [](const RobotModel& model, const SearchSpace& space, std::uint64_t seed,
         double speed_kmh, double duration, double sample_rate, double step_width,
         int population, int generations, int workers) {
        Nsga2Config config;
        config.population = population;
        config.generations = generations;
        const Evaluator eval =
            gait_evaluator(model, speed_kmh / 3.6, duration, sample_rate, step_width);
        Nsga2Result result;
        {
          py::gil_scoped_release release;
          result = run_nsga2(space, eval, config, seed, workers);
        }
        py::list members;
        for (const auto& ind : result.front.members) {
          members.append(py::dict("genome"_a = ind.genome,
                                  "costs"_a = cost_dict(ind.costs), "rank"_a = ind.rank,
                                  "crowding"_a = ind.crowding));
        }
        py::list history;
        for (const auto& rec : result.history) {
          history.append(py::dict("generation"_a = rec.generation,
                                  "front_size"_a = rec.front_size,
                                  "hypervolume"_a = rec.hypervolume,
                                  "feasible_count"_a = rec.feasible_count));
        }
        return py::dict("front"_a = members, "knee"_a = result.front.knee,
                        "utopia"_a = result.front.utopia, "history"_a = history);
      },
      "model"_a, "space"_a, "seed"_a, "speed_kmh"_a = 0.5, "duration"_a = 5.0,
      "sample_rate"_a = 240.0, "step_width"_a = 0.2, "population"_a = 150,
      "generations"_a = 150, "workers"_a = 1);
}
