"""Weighted Fermat-Torricelli trees: objective, classification and solver.

The solver is an oracle: it does not use any closed form, only the
objective and its first-order conditions.  A coarse barycentric grid picks
a starting point, Nelder-Mead refines it, and a few Newton steps on the
weighted tangent sum drive the stationarity residual below the requested
tolerance (function values alone cannot resolve a residual of 1e-9 in
double precision).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .errors import ConvergenceError, DomainError
from .surfaces import (
    Kind,
    check_triangle,
    distance_hessian_scale,
    from_unrolled,
    geodesic_distance,
    kplane_exp,
    kplane_project,
    unit_tangent,
    unrolled_points,
    vertices,
)

DEFAULT_TOL = 1e-9
MAX_REFINE_STEPS = 100_000
GRID_SIZE = 64
# equality in the absorbed inequalities counts as absorbed
TIE_TOL = 1e-12
DEFAULT_SEED = 42


@dataclass(frozen=True)
class WeightTriple:
    """Positive weights ``(B1, B2, B3)`` and their normalization ``C``."""

    B1: float
    B2: float
    B3: float
    C: Optional[float] = None

    def __post_init__(self):
        for name in ("B1", "B2", "B3"):
            b = getattr(self, name)
            if not (math.isfinite(b) and b > 0.0):
                raise DomainError(f"weight {name} must be positive and finite, got {b}")
        if self.C is None:
            object.__setattr__(self, "C", self.B1 + self.B2 + self.B3)
        elif not (math.isfinite(self.C) and self.C > 0.0):
            raise DomainError(f"normalization C must be positive, got {self.C}")

    def __iter__(self):
        return iter((self.B1, self.B2, self.B3))

    def __getitem__(self, i):
        return (self.B1, self.B2, self.B3)[i]

    def as_array(self):
        return np.array([self.B1, self.B2, self.B3])

    @property
    def total(self):
        return self.B1 + self.B2 + self.B3


@dataclass(frozen=True)
class Topology:
    """Tree shape: floating (``absorbed_at is None``) or absorbed at a vertex."""

    absorbed_at: Optional[int] = None

    @property
    def is_floating(self):
        return self.absorbed_at is None

    def __str__(self):
        return "Floating" if self.absorbed_at is None else f"AbsorbedAt({self.absorbed_at})"


FLOATING = Topology()


@dataclass(frozen=True)
class FermatSolution:
    topology: Topology
    location: np.ndarray
    branches: tuple
    objective: float
    residual: float = 0.0
    iterations: int = 0
    unrolled: Optional[np.ndarray] = field(default=None, repr=False)


def probe_seed():
    """Seed for probe sampling, from ``GEOFERMAT_SEED`` (default 42)."""
    return int(os.environ.get("GEOFERMAT_SEED", DEFAULT_SEED))


def _as_weights(w):
    return w if isinstance(w, WeightTriple) else WeightTriple(*w)


def objective(w, tri, surface, p):
    """Weighted sum of geodesic distances from ``p`` to the three vertices."""
    w = _as_weights(w)
    A = vertices(surface, tri)
    return sum(b * geodesic_distance(surface, a, p) for b, a in zip(w, A))


def absorbed_threshold(B2, B3, alpha):
    """Smallest ``B1`` that absorbs the tree at a vertex of angle ``alpha``.

    This is the length of ``B2*U12 + B3*U13`` for unit vectors meeting at
    ``alpha``.
    """
    if not (B2 > 0.0 and B3 > 0.0):
        raise DomainError(f"weights must be positive, got {B2}, {B3}")
    if not 0.0 < alpha <= math.pi:
        raise DomainError(f"vertex angle must lie in (0, pi), got {alpha}")
    return math.sqrt(max(B2 * B2 + B3 * B3 + 2.0 * B2 * B3 * math.cos(alpha), 0.0))


def inequality_margins(w, tri, surface):
    """``||B_j U_ij + B_k U_ik|| - B_i`` at each vertex ``i``.

    All three positive means the floating case; a margin ``<= 0`` means the
    minimum is attained at that vertex.
    """
    w = _as_weights(w)
    A = vertices(surface, tri)
    out = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        v = w[j] * unit_tangent(surface, A[i], A[j]) + w[k] * unit_tangent(surface, A[i], A[k])
        out.append(math.hypot(v[0], v[1]) - w[i])
    return tuple(out)


def classify(w, tri, surface):
    """Floating or absorbed at the vertex violating the floating inequalities."""
    w = _as_weights(w)
    margins = inequality_margins(w, tri, surface)
    tie = TIE_TOL * w.total
    absorbed = [i for i, m in enumerate(margins) if m <= tie]
    if not absorbed:
        return FLOATING
    if len(absorbed) > 1:
        # only possible on the sphere; the cheaper vertex wins
        A = vertices(surface, tri)
        absorbed.sort(key=lambda i: objective(w, tri, surface, A[i]))
    return Topology(absorbed[0] + 1)


# -- solver ------------------------------------------------------------------

class _Workspace:
    """Where the minimization runs: the (unrolled) plane or the K-plane model."""

    def __init__(self, surface, tri, w):
        self.surface = surface
        self.w = w.as_array()
        self.curved = surface.kind is Kind.KPLANE
        if surface.kind in (Kind.CYLINDER, Kind.CONE):
            self.verts = unrolled_points(surface, tri)
        else:
            self.verts = vertices(surface, tri)
        if self.curved:
            R = surface.radius
            normal = np.cross(self.verts[1] - self.verts[0], self.verts[2] - self.verts[0])
            if abs(normal @ self.verts[0]) <= 1e-9 * np.linalg.norm(normal) * R:
                raise DomainError("triangle is not contained in an open hemisphere")
            if surface.K > 0.0:
                self._obj = lambda pts: kernels.sphere_objective(pts, self.verts, self.w, R)
            else:
                self._obj = lambda pts: kernels.hyperboloid_objective(pts, self.verts, self.w, R)
        else:
            self._obj = lambda pts: kernels.planar_objective(pts, self.verts, self.w)

    def objective(self, pts):
        return self._obj(pts)

    def grid(self, n=GRID_SIZE):
        u = (np.arange(n) + 0.5) / n
        S, T = np.meshgrid(u, u)
        mask = S + T < 1.0
        lam = np.column_stack([1.0 - S[mask] - T[mask], S[mask], T[mask]])
        pts = lam @ self.verts
        if self.curved:
            pts = self._project_rows(pts)
        return pts

    def _project_rows(self, pts):
        K = self.surface.K
        R = self.surface.radius
        if K > 0.0:
            n2 = (pts * pts).sum(axis=1)
        else:
            n2 = -(pts[:, 0] ** 2 + pts[:, 1] ** 2 - pts[:, 2] ** 2)
        return pts * (R / np.sqrt(n2))[:, None]

    def move(self, p, v):
        if self.curved:
            return kplane_exp(self.surface, p, v)
        return p + v

    def local(self, p):
        """Distances to the vertices and unit directions toward them at ``p``."""
        if self.curved:
            d = np.array([geodesic_distance(self.surface, p, a) for a in self.verts])
            if d.min() == 0.0:
                return d, None
            U = np.array([unit_tangent(self.surface, p, a) for a in self.verts])
        else:
            diff = self.verts - p
            d = np.hypot(diff[:, 0], diff[:, 1])
            if d.min() == 0.0:
                return d, None
            U = diff / d[:, None]
        return d, U

    def residual(self, p):
        d, U = self.local(p)
        if U is None:
            return math.inf
        g = self.w @ U
        return math.hypot(g[0], g[1])

    def newton_step(self, p):
        d, U = self.local(p)
        g = self.w @ U
        Hm = np.zeros((2, 2))
        for b, di, u in zip(self.w, d, U):
            Hm += b * distance_hessian_scale(self.surface, di) * (np.eye(2) - np.outer(u, u))
        return np.linalg.solve(Hm, g)

    def diameter(self):
        return max(
            float(self.objective_distance(self.verts[i], self.verts[j]))
            for i, j in ((0, 1), (0, 2), (1, 2))
        )

    def objective_distance(self, p, q):
        if self.curved:
            return geodesic_distance(self.surface, p, q)
        return math.hypot(*(q - p))

    def to_chart(self, p):
        if self.curved:
            return np.array(p, dtype=float)
        if self.surface.kind is Kind.PLANE:
            return np.array(p, dtype=float)
        return from_unrolled(self.surface, p)


def _polish(ws, p, target, budget):
    """Damped Newton on the weighted tangent sum; returns ``(p, residual, steps)``."""
    res = ws.residual(p)
    f = float(ws.objective(p)[0])
    steps = 0
    while res > target and steps < budget:
        steps += 1
        try:
            v = ws.newton_step(p)
        except np.linalg.LinAlgError:
            break
        accepted = False
        for _ in range(60):
            q = ws.move(p, v)
            rq = ws.residual(q)
            fq = float(ws.objective(q)[0])
            if fq < f or rq < res:
                accepted = True
                break
            v = 0.5 * v
        if not accepted:
            break
        p, res, f = q, rq, fq
    return p, res, steps


def solve_forward(w, tri, surface, tol=DEFAULT_TOL, max_steps=MAX_REFINE_STEPS):
    """Minimize the weighted sum of geodesic distances over the triangle.

    Absorbed instances return the absorbing vertex exactly.  Floating
    instances are refined until ``||sum B_i U_0i|| <= tol * (B1 + B2 + B3)``.
    Cylinder and cone triangles are solved in the unrolled plane and mapped
    back to their charts.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    w = _as_weights(w)
    check_triangle(surface, tri)
    A = vertices(surface, tri)
    topo = classify(w, tri, surface)
    if not topo.is_floating:
        i = topo.absorbed_at - 1
        branches = tuple(0.0 if j == i else geodesic_distance(surface, A[j], A[i]) for j in range(3))
        return FermatSolution(
            topology=topo,
            location=np.array(A[i], dtype=float),
            branches=branches,
            objective=sum(b * l for b, l in zip(w, branches)),
        )

    ws = _Workspace(surface, tri, w)
    pts = ws.grid()
    vals = ws.objective(pts)
    p0 = pts[int(np.argmin(vals))]
    diam = ws.diameter()

    def local_obj(v):
        return float(ws.objective(ws.move(p0, v))[0])

    h = diam / GRID_SIZE
    simplex = np.array([[0.0, 0.0], [h, 0.0], [0.0, h]])
    nm = minimize(
        local_obj,
        np.zeros(2),
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": 1e-10 * diam,
            "fatol": 1e-15 * max(float(vals.min()), 1e-300),
            "maxiter": min(5000, max_steps),
        },
    )
    p = ws.move(p0, nm.x)
    used = int(nm.nit)
    target = tol * w.total
    p, res, steps = _polish(ws, p, target, max(max_steps - used, 0))
    used += steps
    if not res <= target:
        best = ws.to_chart(p)
        raise ConvergenceError(
            f"residual {res:.3e} above {target:.3e} after {used} refinement steps",
            best=best,
            residual=res,
        )
    loc = ws.to_chart(p)
    if surface.kind is Kind.KPLANE:
        loc = kplane_project(surface.K, loc)
    branches = tuple(geodesic_distance(surface, a, loc) for a in A)
    return FermatSolution(
        topology=FLOATING,
        location=loc,
        branches=branches,
        objective=sum(b * l for b, l in zip(w, branches)),
        residual=res,
        iterations=used,
        unrolled=None if ws.curved else np.array(p, dtype=float),
    )


def random_interior_points(surface, tri, n, rng, margin=0.0):
    """Uniform barycentric samples inside the triangle, in chart coordinates.

    ``margin`` bounds every barycentric coordinate from below, which keeps
    the samples away from the sides.
    """
    lam = rng.dirichlet(np.ones(3), size=n)
    lam = margin + (1.0 - 3.0 * margin) * lam
    if surface.kind in (Kind.CYLINDER, Kind.CONE):
        xy = lam @ unrolled_points(surface, tri)
        return np.array([from_unrolled(surface, q) for q in xy])
    pts = lam @ vertices(surface, tri)
    if surface.kind is Kind.KPLANE:
        pts = np.array([kplane_project(surface.K, q) for q in pts])
    return pts


def probe_check(solution, w, tri, surface, n=1000, seed=None):
    """Compare the solution against ``n`` random interior probes.

    Returns ``(ok, best_probe)`` where ``ok`` is true when no probe has a
    smaller objective (up to rounding).
    """
    w = _as_weights(w)
    rng = np.random.default_rng(probe_seed() if seed is None else seed)
    ws = _Workspace(surface, tri, w)
    if surface.kind in (Kind.CYLINDER, Kind.CONE):
        lam = rng.dirichlet(np.ones(3), size=n)
        pts = lam @ ws.verts
    else:
        pts = random_interior_points(surface, tri, n, rng)
    best = float(ws.objective(pts).min())
    return solution.objective <= best + 1e-12 * max(abs(best), 1.0), best


__all__ = [
    "DEFAULT_TOL",
    "FLOATING",
    "FermatSolution",
    "Topology",
    "WeightTriple",
    "absorbed_threshold",
    "classify",
    "inequality_margins",
    "objective",
    "probe_check",
    "random_interior_points",
    "solve_forward",
]
