"""DCM/LIPM gait parameter toolkit.

Thin Python layer over the C++ core: trajectory planning from the five gait
parameters, full rigid-body cost evaluation, and GA / NSGA-II search.
"""

from gaitopt._core import (  # noqa: F401
    FootstepPlan,
    Footstep,
    GaitParams,
    GaitSample,
    GaitTrajectory,
    InitializationError,
    ModelError,
    ReachError,
    RobotModel,
    SearchSpace,
    crowding_distance,
    dcm_at,
    distance_to_polygon,
    evaluate_gait,
    fast_nondominated_sort,
    forward_kinematics,
    generate_gait,
    hypervolume_2d,
    knee_point,
    leg_ik,
    load_model,
    load_model_file,
    plan_footsteps,
    point_in_polygon,
    run_ga,
    run_nsga2,
)

__all__ = [
    "FootstepPlan",
    "Footstep",
    "GaitParams",
    "GaitSample",
    "GaitTrajectory",
    "InitializationError",
    "ModelError",
    "ReachError",
    "RobotModel",
    "SearchSpace",
    "crowding_distance",
    "dcm_at",
    "distance_to_polygon",
    "evaluate_gait",
    "fast_nondominated_sort",
    "forward_kinematics",
    "generate_gait",
    "hypervolume_2d",
    "knee_point",
    "leg_ik",
    "load_model",
    "load_model_file",
    "plan_footsteps",
    "point_in_polygon",
    "run_ga",
    "run_nsga2",
]
