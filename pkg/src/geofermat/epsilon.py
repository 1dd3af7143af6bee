"""Epsilon characterization of a triangle vertex.

A virtual interior point ``A0`` is placed near ``A1`` so that

* ``<A1 A2 A0 = |eps|``,
* ``<A2 A0 A3 = <A2 A1 A3 + 2 eps``,
* ``<A0 A3 A1 = k |eps|`` with ``k = 1`` in flat geometry (plane, and the
  cylinder and cone through unrolling) and ``k = 1/2`` on a K-plane.

The law of sines in ``A0 A2 A1`` and ``A0 A3 A1`` fixes ``<A1 A0 A2`` and the
fan closes to ``2*pi``.  Feeding the fan to :func:`inverse_weights` yields
weights ``B_i(eps)``; as ``eps -> 0`` they approach the absorbed threshold
at ``A1``, i.e. the degenerate tree ``{A2 A1, A1 A3}``.

On a K-plane the perturbation takes the sign of the curvature: ``eps`` is
``+|eps|`` for ``K > 0`` and ``-|eps|`` for ``K < 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    DomainError,
    EpsilonRangeError,
    GeofermatError,
    InvalidApexAngleError,
    UnsupportedSurfaceError,
)
from .fermat import WeightTriple, absorbed_threshold
from .inverse import AngleFan, inverse_weights
from .surfaces import (
    ConeTriangle,
    CylinderTriangle,
    Kind,
    PlanarTriangle,
    SideTriangle,
    SurfaceSpec,
    check_triangle,
    cone_angle_at_A1,
    cone_slant_chord,
    cone_unrolled_angle,
    cylinder_angle_at_A1,
    cylinder_side_length,
    vertex_angle,
    cone_chord_between,
)


@dataclass(frozen=True)
class ApexTriangle:
    """Cone triangle with ``A1`` at the apex.

    ``s2``, ``s3`` are the slant distances ``AA2``, ``AA3`` and ``angle`` the
    unrolled angle between the generators through ``A2`` and ``A3``.
    """

    s2: float
    s3: float
    angle: float


@dataclass(frozen=True)
class EpsilonConfig:
    surface: SurfaceSpec
    triangle: Union[SideTriangle, PlanarTriangle, CylinderTriangle, ConeTriangle, ApexTriangle]
    eps: float
    C: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.C) and self.C > 0.0):
            raise DomainError(f"normalization C must be positive, got {self.C}")
        if not math.isfinite(self.eps):
            raise EpsilonRangeError(f"eps must be finite, got {self.eps}")


@dataclass(frozen=True)
class EpsilonResult:
    eps: float
    fan: AngleFan
    weights: WeightTriple
    alpha: float
    limit_weight: float
    deviation: float


@dataclass(frozen=True)
class _Construction:
    """Side measures entering the law of sines, and the angles bounding eps."""

    s12: float
    s13: float
    alpha: float
    angle_at_2: float
    angle_at_3: float
    half_ratio: bool
    sign: float


def signed_epsilon(surface, eps):
    """Apply the sign rule: negative on hyperbolic K-planes, positive elsewhere."""
    mag = abs(eps)
    if surface.kind is Kind.KPLANE and surface.K < 0.0:
        return -mag
    return mag


def _epsilon_limit(c):
    bound = min(c.angle_at_2, c.angle_at_3, (math.pi - c.alpha) / 2.0)
    if c.sign < 0.0:
        bound = min(bound, c.alpha / 2.0)
    return bound / 4.0


def _arccot(x):
    # branch onto (0, pi), continuous and decreasing
    return math.pi / 2.0 - math.atan(x)


def _build_fan(c, eps):
    mag = abs(eps)
    limit = _epsilon_limit(c)
    if not mag < limit:
        raise EpsilonRangeError(f"|eps| = {mag!r} is not below the admissible bound {limit!r}")
    e = c.sign * mag
    beta = c.alpha + 2.0 * e
    m = 2.0 * math.cos(mag / 2.0) if c.half_ratio else 1.0
    x = -(c.s13 + m * c.s12 * math.cos(beta)) / (m * c.s12 * math.sin(beta))
    a12 = _arccot(x)
    a31 = 2.0 * math.pi - beta - a12
    fan = AngleFan(a12, beta, a31)
    if not all(0.0 < a < math.pi for a in fan):
        raise EpsilonRangeError(f"eps = {e!r} drives the fan {tuple(fan)} out of (0, pi)")
    return fan


def _planar_construction(t, half_ratio=False, sign=1.0):
    _, at2, at3 = t.angles
    return _Construction(t.a12, t.a13, t.angle, at2, at3, half_ratio, sign)


def plane_epsilon_fan(t, eps):
    """Fan at the virtual point for a planar triangle (``k = 1``)."""
    return _build_fan(_planar_construction(t), eps)


def plane_half_ratio_fan(t, eps, sign=1.0):
    """Planar construction with ``<A0 A3 A1 = |eps|/2`` and signed ``eps``.

    This is what the K-plane construction tends to as ``K -> 0``; it differs
    from :func:`plane_epsilon_fan` because the latter is forced to ``k = 1``.
    """
    return _build_fan(_planar_construction(t, True, math.copysign(1.0, sign)), eps)


def _kplane_construction(t, K):
    if K == 0.0:
        raise UnsupportedSurfaceError("K = 0 is the plane; use plane_epsilon_fan")
    surface = SurfaceSpec.kplane(K)
    check_triangle(surface, t)
    kappa = math.sqrt(abs(K))
    sn = math.sin if K > 0.0 else math.sinh
    alpha = vertex_angle(K, t.a23, t.a12, t.a13)
    at2 = vertex_angle(K, t.a13, t.a12, t.a23)
    at3 = vertex_angle(K, t.a12, t.a13, t.a23)
    sign = 1.0 if K > 0.0 else -1.0
    return _Construction(sn(kappa * t.a12), sn(kappa * t.a13), alpha, at2, at3, True, sign)


def kplane_epsilon_fan(t, K, eps):
    """Fan at the virtual point on the K-plane (``k = 1/2``, signed ``eps``)."""
    return _build_fan(_kplane_construction(t, K), eps)


def _cylinder_construction(t):
    alpha = cylinder_angle_at_A1(t)
    a12 = cylinder_side_length(t.b12, t.phi2)
    a13 = cylinder_side_length(t.b13, t.phi3)
    a23 = math.sqrt(1.0 + t.b23 ** 2) * abs(t.phi2 - t.phi3)
    at2 = vertex_angle(0.0, a13, a12, a23)
    at3 = vertex_angle(0.0, a12, a13, a23)
    return _Construction(a12, a13, alpha, at2, at3, False, 1.0)


def cylinder_epsilon_fan(t, eps):
    """Fan for a helix triangle, from helix lengths and the cylindrical angle."""
    return _build_fan(_cylinder_construction(t), eps)


def _cone_construction(t, H):
    surface = SurfaceSpec.cone(H)
    check_triangle(surface, t)
    a12 = cone_slant_chord(t.s2, t.phi2, H)
    a13 = cone_slant_chord(t.s3, t.phi3, H)
    a23 = cone_chord_between(t.s2, t.s3, t.phi2 - t.phi3, H)
    alpha = cone_angle_at_A1(surface, t)
    at2 = vertex_angle(0.0, a13, a12, a23)
    at3 = vertex_angle(0.0, a12, a13, a23)
    return _Construction(a12, a13, alpha, at2, at3, False, 1.0)


def cone_epsilon_fan(t, H, eps):
    """Fan for a cone triangle, from the chord lengths of the cut-open cone."""
    return _build_fan(_cone_construction(t, H), eps)


def _apex_construction(AA2, AA3, alpha, H=None):
    if not (AA2 > 0.0 and AA3 > 0.0):
        raise DomainError(f"slant distances must be positive, got {AA2}, {AA3}")
    if H is not None:
        sector = cone_unrolled_angle(2.0 * math.pi, H)
        if alpha > sector:
            raise InvalidApexAngleError(f"apex angle {alpha!r} exceeds the unrolled sector angle {sector!r}")
        L = math.sqrt(1.0 + H * H)
        if max(AA2, AA3) > L:
            raise DomainError(f"slant distances must not exceed {L}")
    if not 0.0 < alpha < math.pi:
        raise InvalidApexAngleError(f"apex angle must lie in (0, pi), got {alpha!r}")
    return _planar_construction(PlanarTriangle(AA2, AA3, alpha))


def conical_point_fan(AA2, AA3, alpha, eps, H=None):
    """Fan for the conical vertex: ``A1`` is the apex and the generators are sides.

    When ``H`` is given, ``alpha`` is checked against the sector angle
    ``2*pi / sqrt(1 + H^2)``.
    """
    return _build_fan(_apex_construction(AA2, AA3, alpha, H), eps)


def _construction(surface, tri):
    kind = surface.kind
    if kind is Kind.PLANE:
        if isinstance(tri, SideTriangle):
            check_triangle(surface, tri)
            tri = PlanarTriangle(tri.a12, tri.a13, vertex_angle(0.0, tri.a23, tri.a12, tri.a13))
        if not isinstance(tri, PlanarTriangle):
            raise DomainError(f"plane triangles are given by side lengths, got {type(tri).__name__}")
        return _planar_construction(tri)
    if kind is Kind.KPLANE:
        return _kplane_construction(tri, surface.K)
    if kind is Kind.CYLINDER:
        if not isinstance(tri, CylinderTriangle):
            raise DomainError(f"expected a CylinderTriangle, got {type(tri).__name__}")
        return _cylinder_construction(tri)
    if isinstance(tri, ApexTriangle):
        return _apex_construction(tri.s2, tri.s3, tri.angle, surface.H)
    if not isinstance(tri, ConeTriangle):
        raise DomainError(f"expected a ConeTriangle or ApexTriangle, got {type(tri).__name__}")
    return _cone_construction(tri, surface.H)


def epsilon_limit(surface, tri):
    """Largest admissible ``|eps|`` (exclusive) for this triangle."""
    return _epsilon_limit(_construction(surface, tri))


def epsilon_fan(surface, tri, eps):
    """Dispatch to the surface-specific fan construction."""
    return _build_fan(_construction(surface, tri), eps)


def epsilon_weights(cfg):
    """Weights ``B_i(eps)`` and their distance from the absorbed threshold at A1."""
    c = _construction(cfg.surface, cfg.triangle)
    fan = _build_fan(c, cfg.eps)
    w = inverse_weights(fan, cfg.C)
    limit = absorbed_threshold(w.B2, w.B3, c.alpha)
    return EpsilonResult(
        eps=c.sign * abs(cfg.eps),
        fan=fan,
        weights=w,
        alpha=c.alpha,
        limit_weight=limit,
        deviation=abs(w.B1 - limit),
    )


@dataclass(frozen=True)
class SweepRow:
    eps: float
    result: Optional[EpsilonResult]
    status: str = "ok"


def epsilon_sweep(cfg, eps_values):
    """Evaluate :func:`epsilon_weights` over a grid; failures are flagged per row."""
    rows = []
    for e in eps_values:
        try:
            res = epsilon_weights(EpsilonConfig(cfg.surface, cfg.triangle, float(e), cfg.C))
        except GeofermatError as exc:
            rows.append(SweepRow(float(e), None, f"error: {exc}"))
        else:
            rows.append(SweepRow(res.eps, res))
    return rows
