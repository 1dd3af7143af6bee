"""Constant-curvature surfaces, geodesic triangles on them, and unrolling.

Four surfaces are supported:

* ``plane``: the Euclidean plane, chart points ``(x, y)``.
* ``kplane``: the sphere of curvature ``K > 0`` or the hyperbolic plane of
  curvature ``K < 0``.  Points are 3-vectors in the embedded model (sphere of
  radius ``1/sqrt(K)`` or upper hyperboloid sheet ``x^2 + y^2 - z^2 = -R^2``).
* ``cylinder``: the unit-radius right circular cylinder, chart ``(phi, z)``.
* ``cone``: the right circular cone of height ``H`` over the unit circle,
  chart ``(s, phi)`` with ``s`` the slant distance from the apex and ``phi``
  the azimuth of the base circle.

Triangles on the plane and the K-plane are described by their side lengths.
Cylinder triangles pin ``A1`` at ``(phi, z) = (0, 0)``; cone triangles pin
``A1`` on the base circle at azimuth 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .errors import (
    AmbiguityError,
    DegenerateTriangleError,
    DomainError,
    UnsupportedSurfaceError,
)

# cosines this far outside [-1, 1] are rounding noise, farther out is an error
CLAMP_TOL = 1e-12
# relative tolerance for a 3-vector to count as lying on the K-plane model
MODEL_TOL = 1e-9


class Kind(str, Enum):
    PLANE = "plane"
    KPLANE = "kplane"
    CYLINDER = "cylinder"
    CONE = "cone"


@dataclass(frozen=True)
class SurfaceSpec:
    """Which surface, plus its curvature ``K`` or cone height ``H``."""

    kind: Kind
    K: float = 0.0
    H: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.KPLANE:
            if not math.isfinite(self.K) or self.K == 0.0:
                raise DomainError("kplane needs a finite nonzero curvature K; use the plane for K = 0")
        elif self.K != 0.0:
            raise DomainError(f"curvature K is only meaningful on the kplane, got K={self.K} for {self.kind.value}")
        if self.kind is Kind.CONE:
            if not (math.isfinite(self.H) and self.H > 0.0):
                raise DomainError(f"cone height H must be positive, got {self.H}")
        elif self.H != 0.0:
            raise DomainError(f"height H is only meaningful on the cone, got H={self.H} for {self.kind.value}")

    @classmethod
    def plane(cls):
        return cls(Kind.PLANE)

    @classmethod
    def kplane(cls, K):
        return cls(Kind.KPLANE, K=float(K))

    @classmethod
    def cylinder(cls):
        return cls(Kind.CYLINDER)

    @classmethod
    def cone(cls, H):
        return cls(Kind.CONE, H=float(H))

    @property
    def radius(self):
        """Model radius ``1/sqrt(|K|)`` of a K-plane."""
        if self.kind is not Kind.KPLANE:
            raise UnsupportedSurfaceError("radius is defined for the kplane only")
        return 1.0 / math.sqrt(abs(self.K))

    @property
    def slant(self):
        """Generator length ``sqrt(1 + H^2)`` from apex to base circle."""
        if self.kind is not Kind.CONE:
            raise UnsupportedSurfaceError("slant is defined for the cone only")
        return math.sqrt(1.0 + self.H * self.H)

    @property
    def sector_angle(self):
        """Opening angle of the unrolled cone sector."""
        return cone_unrolled_angle(2.0 * math.pi, self.H)

    @property
    def dim(self):
        """Number of coordinates of a chart point."""
        return 3 if self.kind is Kind.KPLANE else 2


# -- triangle descriptions ---------------------------------------------------

@dataclass(frozen=True)
class SideTriangle:
    """Geodesic triangle on the plane or a K-plane, given by its three sides."""

    a12: float
    a13: float
    a23: float

    @classmethod
    def from_sas(cls, a12, a13, angle, K=0.0):
        """Build from two sides and the included angle at ``A1``."""
        if not 0.0 < angle < math.pi:
            raise DomainError(f"included angle must lie in (0, pi), got {angle}")
        return cls(float(a12), float(a13), law_of_cosines_side(K, a12, a13, angle))


@dataclass(frozen=True)
class CylinderTriangle:
    """Helix triangle on the unit cylinder with ``A1 = (1, 0, 0)``."""

    phi2: float
    z2: float
    phi3: float
    z3: float

    @property
    def b12(self):
        return self.z2 / self.phi2

    @property
    def b13(self):
        return self.z3 / self.phi3

    @property
    def b23(self):
        return (self.z2 - self.z3) / (self.phi2 - self.phi3)


@dataclass(frozen=True)
class ConeTriangle:
    """Triangle on the cone with ``A1`` on the base circle at azimuth 0.

    ``s2``, ``s3`` are the slant distances ``A2A``, ``A3A`` to the apex and
    ``phi2``, ``phi3`` the base azimuths of the generators through them.
    """

    s2: float
    phi2: float
    s3: float
    phi3: float


TrianglePatch = Union[SideTriangle, CylinderTriangle, ConeTriangle]


@dataclass(frozen=True)
class PlanarTriangle:
    """Euclidean triangle given by ``(a12)_0``, ``(a13)_0`` and the angle at A1."""

    a12: float
    a13: float
    angle: float

    def __post_init__(self):
        if not (self.a12 > 0.0 and self.a13 > 0.0):
            raise DegenerateTriangleError(f"side lengths must be positive, got {self.a12}, {self.a13}")
        if not 0.0 < self.angle < math.pi:
            raise DegenerateTriangleError(f"angle at A1 must lie in (0, pi), got {self.angle}")

    @property
    def a23(self):
        return law_of_cosines_side(0.0, self.a12, self.a13, self.angle)

    @property
    def angles(self):
        """Interior angles at ``(A1, A2, A3)``."""
        a23 = self.a23
        at2 = vertex_angle(0.0, self.a13, self.a12, a23)
        return self.angle, at2, math.pi - self.angle - at2

    def vertices(self):
        """Canonical placement: A1 at the origin, A2 on the +x axis, A3 above."""
        return np.array([
            [0.0, 0.0],
            [self.a12, 0.0],
            [self.a13 * math.cos(self.angle), self.a13 * math.sin(self.angle)],
        ])


# -- trigonometry ------------------------------------------------------------

def clamp_cos(c, what="cosine"):
    """Clamp rounding noise into [-1, 1]; reject anything farther out."""
    if not math.isfinite(c) or abs(c) > 1.0 + CLAMP_TOL:
        raise DegenerateTriangleError(f"{what} {c!r} lies outside [-1, 1]")
    return min(1.0, max(-1.0, c))


def _interior_angle(c, what):
    alpha = math.acos(clamp_cos(c, what))
    if not 0.0 < alpha < math.pi:
        raise DegenerateTriangleError(f"{what} gives a degenerate angle {alpha!r}")
    return alpha


def _scaled_sine(K):
    """``x -> sin(kx)/k`` (``sinh`` for ``K < 0``), the identity when flat."""
    if K == 0.0:
        return lambda x: x
    kappa = math.sqrt(abs(K))
    if K > 0.0:
        return lambda x: math.sin(kappa * x) / kappa
    return lambda x: math.sinh(kappa * x) / kappa


def law_of_cosines_side(K, b, c, angle):
    """Side opposite ``angle`` in a triangle with adjacent sides ``b``, ``c``.

    Evaluated in haversine form, which stays accurate for thin triangles and
    for ``|K|`` so small that the cosine form cancels catastrophically.
    """
    h = math.sin(angle / 2.0) ** 2
    if K == 0.0:
        return math.sqrt((b - c) ** 2 + 4.0 * b * c * h)
    R = 1.0 / math.sqrt(abs(K))
    x, y = b / R, c / R
    if K > 0.0:
        hav = math.sin((x - y) / 2.0) ** 2 + math.sin(x) * math.sin(y) * h
        return 2.0 * R * math.asin(math.sqrt(min(max(hav, 0.0), 1.0)))
    hav = math.sinh((x - y) / 2.0) ** 2 + math.sinh(x) * math.sinh(y) * h
    return 2.0 * R * math.asinh(math.sqrt(max(hav, 0.0)))


def vertex_angle(K, opposite, b, c):
    """Angle between sides ``b`` and ``c`` opposite the side ``opposite``.

    Half-angle form ``tan^2(A/2) = sn(s-b) sn(s-c) / (sn(s) sn(s-a))`` with
    ``s`` the half perimeter; flat, spherical and hyperbolic alike.
    """
    sn = _scaled_sine(K)
    s = (opposite + b + c) / 2.0
    f = [sn(s), sn(s - opposite), sn(s - b), sn(s - c)]
    if not all(math.isfinite(v) for v in f) or min(f) < 0.0 or f[0] * f[1] == 0.0:
        raise DegenerateTriangleError(
            f"sides ({opposite!r}, {b!r}, {c!r}) do not form a triangle for K={K!r}")
    alpha = 2.0 * math.atan2(math.sqrt(f[2] * f[3]), math.sqrt(f[0] * f[1]))
    if not 0.0 < alpha < math.pi:
        raise DegenerateTriangleError(f"vertex angle {alpha!r} is degenerate")
    return alpha


# -- developable surfaces ----------------------------------------------------

def cylinder_side_length(b, phi):
    """Length ``sqrt(1 + b^2) * phi`` of a helix of step ``b`` over azimuth ``phi``."""
    if not phi > 0.0:
        raise DomainError(f"helix azimuth must be positive, got {phi}")
    return math.sqrt(1.0 + b * b) * phi


def cylinder_angle_at_A1(tri):
    """Angle at ``A1`` of a helix triangle from the cylindrical law of cosines."""
    _check_cylinder(tri)
    b12, b13, b23 = tri.b12, tri.b13, tri.b23
    lhs = (1.0 + b23 * b23) * (tri.phi2 - tri.phi3) ** 2
    p12 = (1.0 + b12 * b12) * tri.phi2 ** 2
    p13 = (1.0 + b13 * b13) * tri.phi3 ** 2
    denom = 2.0 * math.sqrt((1.0 + b12 * b12) * (1.0 + b13 * b13)) * tri.phi2 * tri.phi3
    return _interior_angle((p12 + p13 - lhs) / denom, "cylinder angle cosine")


def cone_unrolled_angle(phi, H):
    """Base azimuth ``phi`` scaled to the unrolled sector: ``phi / sqrt(1 + H^2)``."""
    if not phi >= 0.0:
        raise DomainError(f"azimuth must be nonnegative, got {phi}")
    if not H > 0.0:
        raise DomainError(f"cone height must be positive, got {H}")
    return phi / math.sqrt(1.0 + H * H)


def cone_slant_chord(s, phi, H):
    """Unrolled distance from ``A1`` (on the base circle) to a point ``(s, phi)``."""
    L2 = 1.0 + H * H
    L = math.sqrt(L2)
    if not 0.0 < s <= L * (1.0 + CLAMP_TOL):
        raise DomainError(f"slant distance must lie in (0, {L}], got {s}")
    d2 = L2 + s * s - 2.0 * L * s * math.cos(cone_unrolled_angle(phi, H))
    return math.sqrt(max(d2, 0.0))


def cone_chord_between(s, t, dphi, H):
    """Unrolled distance between two cone points with azimuth gap ``dphi``."""
    u = cone_unrolled_angle(abs(dphi), H)
    return math.sqrt(max(s * s + t * t - 2.0 * s * t * math.cos(u), 0.0))


def cone_angle_at_A1(surface, tri):
    """Angle at ``A1`` of a cone triangle from its three unrolled chords."""
    H = surface.H
    a12 = cone_slant_chord(tri.s2, tri.phi2, H)
    a13 = cone_slant_chord(tri.s3, tri.phi3, H)
    a23 = cone_chord_between(tri.s2, tri.s3, tri.phi2 - tri.phi3, H)
    if min(a12, a13, a23) <= 0.0:
        raise DegenerateTriangleError("cone triangle has coincident vertices")
    return vertex_angle(0.0, a23, a12, a13)


def unrolled_points(surface, tri):
    """Vertices of a cylinder or cone triangle in the unrolled plane.

    The cylinder unrolls onto its ``(phi, z)`` chart.  The cone is cut along
    the generator through ``A1`` and laid out with the apex at the origin
    and ``A1`` on the positive x axis.
    """
    check_triangle(surface, tri)
    if surface.kind is Kind.CYLINDER:
        return np.array([[0.0, 0.0], [tri.phi2, tri.z2], [tri.phi3, tri.z3]])
    if surface.kind is Kind.CONE:
        return np.array([
            to_unrolled(surface, (surface.slant, 0.0)),
            to_unrolled(surface, (tri.s2, tri.phi2)),
            to_unrolled(surface, (tri.s3, tri.phi3)),
        ])
    raise UnsupportedSurfaceError(f"{surface.kind.value} is not unrolled; only the cylinder and cone are")


def to_unrolled(surface, p):
    """Map a cylinder or cone chart point into the unrolled plane."""
    if surface.kind is Kind.CYLINDER:
        return np.array([float(p[0]), float(p[1])])
    if surface.kind is Kind.CONE:
        s, phi = float(p[0]), float(p[1])
        u = phi / surface.slant
        return np.array([s * math.cos(u), s * math.sin(u)])
    if surface.kind is Kind.PLANE:
        return np.asarray(p, dtype=float)
    raise UnsupportedSurfaceError(f"{surface.kind.value} has no unrolled image")


def from_unrolled(surface, xy):
    """Inverse of :func:`to_unrolled` on the working sheet."""
    x, y = float(xy[0]), float(xy[1])
    if surface.kind is Kind.CONE:
        return np.array([math.hypot(x, y), math.atan2(y, x) * surface.slant])
    if surface.kind in (Kind.CYLINDER, Kind.PLANE):
        return np.array([x, y])
    raise UnsupportedSurfaceError(f"{surface.kind.value} has no unrolled image")


def unroll(surface, tri):
    """Flatten a cylinder or cone triangle isometrically into the plane."""
    if surface.kind not in (Kind.CYLINDER, Kind.CONE):
        raise UnsupportedSurfaceError(f"cannot unroll a {surface.kind.value} triangle")
    P = unrolled_points(surface, tri)
    u, v = P[1] - P[0], P[2] - P[0]
    cross = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1]
    angle = abs(math.atan2(cross, dot))
    return PlanarTriangle(math.hypot(*u), math.hypot(*v), angle)


# -- validation --------------------------------------------------------------

def _check_cylinder(tri):
    if not isinstance(tri, CylinderTriangle):
        raise DomainError(f"expected a CylinderTriangle, got {type(tri).__name__}")
    for name in ("phi2", "phi3"):
        phi = getattr(tri, name)
        if not 0.0 < phi < math.pi:
            raise DomainError(f"{name} must lie in (0, pi), got {phi}")
    if not (math.isfinite(tri.z2) and math.isfinite(tri.z3)):
        raise DomainError("cylinder heights must be finite")
    if tri.phi2 == tri.phi3:
        raise DegenerateTriangleError("phi2 == phi3 makes the helix A2A3 vertical (b23 infinite)")


def check_triangle(surface, tri):
    """Raise if ``tri`` is not a valid geodesic triangle on ``surface``."""
    kind = surface.kind
    if kind in (Kind.PLANE, Kind.KPLANE):
        if not isinstance(tri, SideTriangle):
            raise DomainError(f"{kind.value} triangles are given by side lengths, got {type(tri).__name__}")
        sides = sorted((tri.a12, tri.a13, tri.a23))
        if not all(math.isfinite(a) for a in sides) or sides[0] <= 0.0:
            raise DegenerateTriangleError(f"side lengths must be positive, got {sides}")
        if sides[0] + sides[1] <= sides[2]:
            raise DegenerateTriangleError(f"sides {sides} violate the strict triangle inequality")
        if kind is Kind.KPLANE and surface.K > 0.0:
            limit = math.pi * surface.radius
            if sides[2] >= limit:
                raise DomainError(f"side {sides[2]} is not shorter than pi/sqrt(K) = {limit}")
            if sum(sides) >= 2.0 * limit:
                raise DegenerateTriangleError("perimeter reaches a great circle")
        # rejects collinear configurations that survive the inequality test
        triangle_angles(surface, tri, checked=True)
    elif kind is Kind.CYLINDER:
        _check_cylinder(tri)
        cylinder_angle_at_A1(tri)
    elif kind is Kind.CONE:
        if not isinstance(tri, ConeTriangle):
            raise DomainError(f"expected a ConeTriangle, got {type(tri).__name__}")
        L = surface.slant
        for name in ("s2", "s3"):
            s = getattr(tri, name)
            if not 0.0 < s <= L * (1.0 + CLAMP_TOL):
                raise DomainError(f"{name} must lie in (0, {L}], got {s}")
        for name in ("phi2", "phi3"):
            phi = getattr(tri, name)
            if not 0.0 <= phi <= math.pi:
                raise DomainError(f"{name} must lie in [0, pi], got {phi}")
        cone_angle_at_A1(surface, tri)


def triangle_angles(surface, tri, checked=False):
    """Interior angles at ``(A1, A2, A3)``."""
    if not checked:
        check_triangle(surface, tri)
    if surface.kind in (Kind.PLANE, Kind.KPLANE):
        K = surface.K
        return (
            vertex_angle(K, tri.a23, tri.a12, tri.a13),
            vertex_angle(K, tri.a13, tri.a12, tri.a23),
            vertex_angle(K, tri.a12, tri.a13, tri.a23),
        )
    return unroll(surface, tri).angles


def side_lengths(surface, tri):
    """Geodesic side lengths ``(a12, a13, a23)``."""
    check_triangle(surface, tri)
    if isinstance(tri, SideTriangle):
        return tri.a12, tri.a13, tri.a23
    if surface.kind is Kind.CYLINDER:
        return (
            cylinder_side_length(tri.b12, tri.phi2),
            cylinder_side_length(tri.b13, tri.phi3),
            math.sqrt(1.0 + tri.b23 ** 2) * abs(tri.phi2 - tri.phi3),
        )
    H = surface.H
    return (
        cone_slant_chord(tri.s2, tri.phi2, H),
        cone_slant_chord(tri.s3, tri.phi3, H),
        cone_chord_between(tri.s2, tri.s3, tri.phi2 - tri.phi3, H),
    )


def check_point(surface, p):
    """Return ``p`` as a float array after checking it lies in the chart."""
    p = np.asarray(p, dtype=float)
    if p.shape != (surface.dim,) or not np.all(np.isfinite(p)):
        raise DomainError(f"{surface.kind.value} chart points have {surface.dim} finite coordinates, got {p!r}")
    if surface.kind is Kind.KPLANE:
        R = surface.radius
        if abs(_model_dot(surface.K, p, p) - math.copysign(R * R, surface.K)) > MODEL_TOL * R * R:
            raise DomainError(f"{p!r} does not lie on the curvature {surface.K} model")
        if surface.K < 0.0 and p[2] <= 0.0:
            raise DomainError("hyperboloid points must lie on the upper sheet")
    elif surface.kind is Kind.CONE:
        L = surface.slant
        if not 0.0 <= p[0] <= L * (1.0 + CLAMP_TOL):
            raise DomainError(f"slant coordinate must lie in [0, {L}], got {p[0]}")
    return p


# -- K-plane model -----------------------------------------------------------

def _model_dot(K, u, v):
    """Euclidean dot product for K > 0, Minkowski product for K < 0."""
    if K > 0.0:
        return float(u[0] * v[0] + u[1] * v[1] + u[2] * v[2])
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


def kplane_point(K, r, theta):
    """Model point at geodesic distance ``r`` from the pole, heading ``theta``."""
    R = 1.0 / math.sqrt(abs(K))
    if K > 0.0:
        rho, h = R * math.sin(r / R), R * math.cos(r / R)
    else:
        rho, h = R * math.sinh(r / R), R * math.cosh(r / R)
    return np.array([rho * math.cos(theta), rho * math.sin(theta), h])


def kplane_project(K, p):
    """Radially rescale a vector onto the model surface."""
    R = 1.0 / math.sqrt(abs(K))
    n2 = _model_dot(K, p, p)
    if K > 0.0:
        if n2 <= 0.0:
            raise DomainError("cannot project the zero vector onto the sphere")
        return p * (R / math.sqrt(n2))
    if n2 >= 0.0 or p[2] <= 0.0:
        raise DomainError("vector is not future timelike; it has no hyperboloid image")
    return p * (R / math.sqrt(-n2))


def tangent_frame(surface, p):
    """Orthonormal tangent frame ``(e1, e2)`` at a K-plane model point."""
    K = surface.K
    R = surface.radius
    sign = 1.0 if K > 0.0 else -1.0
    basis = np.eye(3)
    if K > 0.0:
        order = np.argsort(np.abs(p))
    else:
        order = [0, 1]
    frame = []
    for idx in order:
        v = basis[idx].copy()
        # project out the normal, then the already chosen directions
        v = v - sign * _model_dot(K, v, p) / (R * R) * p
        for e in frame:
            v = v - _model_dot(K, v, e) * e
        n2 = _model_dot(K, v, v)
        if n2 > 1e-12:
            frame.append(v / math.sqrt(n2))
        if len(frame) == 2:
            break
    return frame[0], frame[1]


def kplane_exp(surface, p, v):
    """Exponential map at ``p`` of the frame-coordinate tangent vector ``v``."""
    e1, e2 = tangent_frame(surface, p)
    t = v[0] * e1 + v[1] * e2
    n = math.hypot(v[0], v[1])
    if n == 0.0:
        return np.array(p, dtype=float)
    R = surface.radius
    if surface.K > 0.0:
        q = p * math.cos(n / R) + t * (R * math.sin(n / R) / n)
    else:
        q = p * math.cosh(n / R) + t * (R * math.sinh(n / R) / n)
    return kplane_project(surface.K, q)


def vertices(surface, tri):
    """Chart coordinates of ``(A1, A2, A3)`` in the canonical placement.

    Plane: A1 at the origin, A2 on the +x axis, A3 in the upper half plane.
    K-plane: A1 at the pole ``(0, 0, R)``, A2 at heading 0, A3 at heading
    equal to the angle at A1.  Cylinder and cone: the pinned chart
    coordinates of the triangle.
    """
    check_triangle(surface, tri)
    kind = surface.kind
    if kind is Kind.PLANE:
        alpha = vertex_angle(0.0, tri.a23, tri.a12, tri.a13)
        return PlanarTriangle(tri.a12, tri.a13, alpha).vertices()
    if kind is Kind.KPLANE:
        K = surface.K
        alpha = vertex_angle(K, tri.a23, tri.a12, tri.a13)
        return np.array([kplane_point(K, 0.0, 0.0), kplane_point(K, tri.a12, 0.0), kplane_point(K, tri.a13, alpha)])
    if kind is Kind.CYLINDER:
        return np.array([[0.0, 0.0], [tri.phi2, tri.z2], [tri.phi3, tri.z3]])
    return np.array([[surface.slant, 0.0], [tri.s2, tri.phi2], [tri.s3, tri.phi3]])


# -- distances and tangents --------------------------------------------------

def _wrap(dphi):
    """Azimuth difference reduced to [-pi, pi]."""
    return math.remainder(dphi, 2.0 * math.pi)


def geodesic_distance(surface, p, q):
    """Length of the minimizing geodesic between two chart points."""
    p = check_point(surface, p)
    q = check_point(surface, q)
    kind = surface.kind
    if kind is Kind.PLANE:
        return math.hypot(q[0] - p[0], q[1] - p[1])
    if kind is Kind.CYLINDER:
        return math.hypot(_wrap(q[0] - p[0]), q[1] - p[1])
    if kind is Kind.CONE:
        return cone_chord_between(p[0], q[0], _wrap(q[1] - p[1]), surface.H)
    K, R = surface.K, surface.radius
    if K > 0.0:
        cross = np.cross(p, q)
        dot = float(p @ q)
        if dot <= -(1.0 - CLAMP_TOL) * R * R:
            raise AmbiguityError("antipodal points on the sphere have no unique geodesic")
        return R * math.atan2(float(np.linalg.norm(cross)), dot)
    d = p - q
    chord2 = max(_model_dot(K, d, d), 0.0)
    return 2.0 * R * math.asinh(math.sqrt(chord2) / (2.0 * R))


def unit_tangent(surface, frm, to):
    """Initial unit direction of the geodesic ``frm -> to`` in a frame at ``frm``.

    The frame is ``(d/dx, d/dy)`` on the plane, ``(d/dphi, d/dz)`` on the
    cylinder, (radial, angular) in the unrolled cone and
    :func:`tangent_frame` on a K-plane.
    """
    frm = check_point(surface, frm)
    to = check_point(surface, to)
    kind = surface.kind
    if kind is Kind.PLANE:
        d = to - frm
    elif kind is Kind.CYLINDER:
        d = np.array([_wrap(to[0] - frm[0]), to[1] - frm[1]])
    elif kind is Kind.CONE:
        if frm[0] <= 0.0:
            raise DomainError("the cone apex has no tangent plane")
        u = cone_unrolled_angle(abs(_wrap(to[1] - frm[1])), surface.H)
        u = math.copysign(u, _wrap(to[1] - frm[1]))
        d = np.array([to[0] * math.cos(u) - frm[0], to[0] * math.sin(u)])
    else:
        K, R = surface.K, surface.radius
        sign = 1.0 if K > 0.0 else -1.0
        t = to - sign * _model_dot(K, to, frm) / (R * R) * frm
        e1, e2 = tangent_frame(surface, frm)
        d = np.array([_model_dot(K, t, e1), _model_dot(K, t, e2)])
    n = math.hypot(d[0], d[1])
    if n == 0.0 or geodesic_distance(surface, frm, to) == 0.0:
        raise DomainError("unit tangent between coincident points is undefined")
    return d / n


def distance_hessian_scale(surface, d):
    """Transverse second derivative of the distance function at distance ``d``.

    Equals ``1/d`` in flat geometry, ``sqrt(K) cot(sqrt(K) d)`` on the sphere
    and ``sqrt(-K) coth(sqrt(-K) d)`` on the hyperbolic plane.
    """
    if surface.kind is not Kind.KPLANE:
        return 1.0 / d
    R = surface.radius
    if surface.K > 0.0:
        return 1.0 / (R * math.tan(d / R))
    return 1.0 / (R * math.tanh(d / R))
