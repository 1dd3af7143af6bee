"""Weighted Fermat-Torricelli trees on constant-curvature surfaces.

The library solves the forward and inverse weighted Fermat-Torricelli
problems for geodesic triangles on the plane, the sphere, the hyperbolic
plane, the unit cylinder and the right circular cone, and builds the
epsilon family of weights that degenerates onto the two-arc tree at a
vertex.
"""

from .epsilon import (
    ApexTriangle,
    EpsilonConfig,
    EpsilonResult,
    conical_point_fan,
    cone_epsilon_fan,
    cylinder_epsilon_fan,
    epsilon_fan,
    epsilon_limit,
    epsilon_sweep,
    epsilon_weights,
    kplane_epsilon_fan,
    plane_epsilon_fan,
)
from .errors import *  # noqa: F401,F403
from .fermat import (
    FermatSolution,
    Topology,
    WeightTriple,
    absorbed_threshold,
    classify,
    inequality_margins,
    objective,
    solve_forward,
)
from .inverse import AngleFan, angle_fan_at, inverse_weights
from .kernels import BACKEND
from .surfaces import (
    ConeTriangle,
    CylinderTriangle,
    Kind,
    PlanarTriangle,
    SideTriangle,
    SurfaceSpec,
    cone_slant_chord,
    cone_unrolled_angle,
    cylinder_angle_at_A1,
    cylinder_side_length,
    geodesic_distance,
    unit_tangent,
    unroll,
    vertices,
)

__version__ = "0.1.0"
