from ._core import (
    Discretization,
    GeometryError,
    SolverError,
    evaluate,
    gradients,
    optimize,
    preset_params,
    prolate_drag,
    shape,
)

__all__ = [
    "Discretization",
    "GeometryError",
    "SolverError",
    "evaluate",
    "gradients",
    "optimize",
    "preset_params",
    "prolate_drag",
    "shape",
]
