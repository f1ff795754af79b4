"""Design and teleoperation toolkit for cable-driven soft continuum robots."""

from ._softcr import (
    Simulator,
    bend_angle,
    design,
    evaluate,
    forward_kinematics,
    fringe_count,
    grey_relational_analysis,
    optimal_thickness,
    snake_pose,
    workspace,
)

__all__ = [
    "Simulator",
    "bend_angle",
    "design",
    "evaluate",
    "forward_kinematics",
    "fringe_count",
    "grey_relational_analysis",
    "optimal_thickness",
    "snake_pose",
    "workspace",
]
