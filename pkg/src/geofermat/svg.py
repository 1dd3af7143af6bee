"""SVG picture of a triangle and the virtual point A0(eps) of an epsilon sweep.

Cylinder and cone triangles are drawn unrolled, K-plane triangles in the
azimuthal equidistant projection about ``A1``.  ``A1`` is at the origin
and ``A2`` on the positive x axis in every case.
"""

import math
import xml.etree.ElementTree as ET

import numpy as np

from .epsilon import ApexTriangle
from .surfaces import (
    Kind,
    PlanarTriangle,
    geodesic_distance,
    kplane_project,
    unroll,
    vertex_angle,
    vertices,
)

SIZE = 480
PAD = 24


def display_triangle(surface, tri):
    """Planar triangle used for drawing (exact for flat and developable cases)."""
    if isinstance(tri, ApexTriangle):
        return PlanarTriangle(tri.s2, tri.s3, tri.angle)
    if surface.kind in (Kind.CYLINDER, Kind.CONE):
        return unroll(surface, tri)
    return PlanarTriangle(tri.a12, tri.a13, vertex_angle(surface.K, tri.a23, tri.a12, tri.a13))


def _kplane_outline(surface, tri, n=48):
    """Projected outline, sampling the curved side A2A3."""
    A = vertices(surface, tri)
    pts = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        for t in np.linspace(0.0, 1.0, n, endpoint=False):
            q = kplane_project(surface.K, (1.0 - t) * A[i] + t * A[j])
            r = geodesic_distance(surface, A[0], q)
            heading = math.atan2(q[1], q[0])
            pts.append((r * math.cos(heading), r * math.sin(heading)))
    return pts


def virtual_a0(surface, tri, result):
    """Display position of the virtual point for one sweep row, or None.

    ``A0`` sees ``A1A2`` under the fan angle ``<A1 A0 A2`` and ``A2`` sees
    ``A1A0`` under ``|eps|``; the remaining angle at ``A1`` and the distance
    ``A1A0`` follow from the (spherical, hyperbolic or flat) triangle rules.
    """
    e = abs(result.eps)
    t12 = result.fan.angle_12
    base = display_triangle(surface, tri)
    if surface.kind is not Kind.KPLANE:
        r = base.a12 * math.sin(e) / math.sin(t12)
        gamma = math.pi - e - t12
    else:
        kappa = math.sqrt(abs(surface.K))
        cs = math.cos if surface.K > 0.0 else math.cosh
        cg = -math.cos(e) * math.cos(t12) + math.sin(e) * math.sin(t12) * cs(kappa * base.a12)
        if abs(cg) > 1.0:
            return None
        gamma = math.acos(cg)
        if gamma == 0.0:
            return None
        c = (math.cos(e) + math.cos(t12) * cg) / (math.sin(t12) * math.sin(gamma))
        if surface.K > 0.0:
            r = math.acos(max(-1.0, min(1.0, c))) / kappa
        else:
            r = math.acosh(max(1.0, c)) / kappa
    return r * math.cos(gamma), r * math.sin(gamma)


def _fmt(x):
    return f"{x:.6f}"


def render_epsilon_svg(surface, tri, rows, path):
    """Write the triangle and the trajectory of ``A0(eps)`` to ``path``."""
    base = display_triangle(surface, tri)
    if surface.kind is Kind.KPLANE:
        outline = _kplane_outline(surface, tri)
    else:
        outline = [tuple(v) for v in base.vertices()]
    track = []
    for row in rows:
        if row.result is not None:
            p = virtual_a0(surface, tri, row.result)
            if p is not None:
                track.append(p)

    xs = [p[0] for p in outline + track]
    ys = [p[1] for p in outline + track]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    scale = (SIZE - 2 * PAD) / max(hi_x - lo_x, hi_y - lo_y, 1e-12)

    def to_px(p):
        return _fmt(PAD + (p[0] - lo_x) * scale), _fmt(SIZE - PAD - (p[1] - lo_y) * scale)

    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(SIZE), height=str(SIZE),
                      viewBox=f"0 0 {SIZE} {SIZE}")
    ET.SubElement(root, "polygon", points=" ".join(",".join(to_px(p)) for p in outline),
                  fill="none", stroke="black")
    labels = base.vertices()
    for i, v in enumerate(labels):
        x, y = to_px(v)
        ET.SubElement(root, "circle", cx=x, cy=y, r="3", fill="black")
        ET.SubElement(root, "text", x=x, y=y, dx="5", dy="-5").text = f"A{i + 1}"
    if track:
        ET.SubElement(root, "polyline", points=" ".join(",".join(to_px(p)) for p in track),
                      fill="none", stroke="red")
        for p in track:
            x, y = to_px(p)
            ET.SubElement(root, "circle", cx=x, cy=y, r="2", fill="red")
    ET.ElementTree(root).write(path, encoding="unicode", xml_declaration=False)
