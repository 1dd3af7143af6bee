"""Inverse weighted Fermat-Torricelli problem.

Given an interior point ``A0``, the weights that make it the minimizer are
unique once their sum ``C`` is fixed, and depend only on the three angles
the branches make at ``A0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidFanError
from .fermat import WeightTriple
from .surfaces import check_point, geodesic_distance, unit_tangent, vertices

FAN_TOL = 1e-10
# an angle this close to pi means A0 sits on a side
STRAIGHT_TOL = 1e-12
VERTEX_TOL = 1e-9


@dataclass(frozen=True)
class AngleFan:
    """Angles at ``A0``: ``angle_12 = <A1 A0 A2``, ``angle_23``, ``angle_31``."""

    angle_12: float
    angle_23: float
    angle_31: float

    def __iter__(self):
        return iter((self.angle_12, self.angle_23, self.angle_31))

    @property
    def total(self):
        return self.angle_12 + self.angle_23 + self.angle_31

    def normalized(self, tol=FAN_TOL):
        """Check the fan and rescale it so the angles sum to exactly ``2*pi``."""
        angles = tuple(self)
        if not all(math.isfinite(a) and a > 0.0 for a in angles):
            raise InvalidFanError(f"fan angles must be positive, got {angles}")
        total = sum(angles)
        if abs(total - 2.0 * math.pi) > tol:
            raise InvalidFanError(f"fan angles sum to {total!r}, not 2*pi")
        scale = 2.0 * math.pi / total
        angles = tuple(a * scale for a in angles)
        if max(angles) >= math.pi - STRAIGHT_TOL:
            raise InvalidFanError(f"fan angle {max(angles)!r} is not below pi")
        return AngleFan(*angles)


def inverse_weights(fan, C=1.0):
    """Unique weights with sum ``C`` that balance the unit branches of ``fan``.

    For ``{i, j, k} = {1, 2, 3}``::

        B_i = C / (1 + sin<A_i A0 A_j> / sin<A_j A0 A_k> + sin<A_i A0 A_k> / sin<A_j A0 A_k>)
    """
    if not (math.isfinite(C) and C > 0.0):
        raise DomainError(f"normalization C must be positive, got {C}")
    fan = fan.normalized()
    s12, s23, s31 = (math.sin(a) for a in fan)
    B1 = C / (1.0 + s12 / s23 + s31 / s23)
    B2 = C / (1.0 + s23 / s31 + s12 / s31)
    B3 = C / (1.0 + s31 / s12 + s23 / s12)
    return WeightTriple(B1, B2, B3, C)


def _angle_between(u, v):
    return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])


def angle_fan_at(surface, tri, a0):
    """Measure the fan of branch angles at an interior point ``a0``."""
    a0 = check_point(surface, a0)
    A = vertices(surface, tri)
    scale = max(geodesic_distance(surface, A[i], A[j]) for i, j in ((0, 1), (0, 2), (1, 2)))
    for i, a in enumerate(A):
        if geodesic_distance(surface, a, a0) <= VERTEX_TOL * scale:
            raise DomainError(f"A0 is within {VERTEX_TOL:g} of vertex A{i + 1}")
    U = [unit_tangent(surface, a0, a) for a in A]
    fan = AngleFan(_angle_between(U[0], U[1]), _angle_between(U[1], U[2]), _angle_between(U[2], U[0]))
    try:
        return fan.normalized()
    except InvalidFanError as exc:
        raise InvalidFanError(f"A0 is not strictly inside the triangle: {exc}") from None


def balance_residual(weights, fan):
    """``||sum B_i U_0i||`` for unit vectors realizing ``fan`` in the plane."""
    t = [0.0, fan.angle_12, fan.angle_12 + fan.angle_23]
    U = np.array([[math.cos(a), math.sin(a)] for a in t])
    v = weights.as_array() @ U
    return math.hypot(v[0], v[1])
