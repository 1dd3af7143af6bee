"""Scene files: JSON descriptions of a surface, a triangle and optional data.

A scene looks like::

    {
      "surface": {"kind": "cone", "H": 1.7320508075688772},
      "triangle": {"s2": 2.0, "phi2": 1.0, "s3": 1.5, "phi3": 2.0},
      "weights": [1.0, 1.0, 1.0],
      "a0": [1.8, 1.2],
      "epsilon_grid": [1e-6, 1e-4, 1e-2],
      "C": 1.0
    }

Triangle keys depend on the surface:

* plane / kplane: ``a12, a13, a23`` or ``a12, a13, angle``
* cylinder: ``phi2, z2, phi3, z3``
* cone: ``s2, phi2, s3, phi3``, or ``apex: true`` with ``s2, s3, angle`` to
  put ``A1`` at the apex (epsilon command only)

Angles are radians, lengths are surface units.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .epsilon import ApexTriangle
from .errors import GeofermatError, SceneError
from .fermat import WeightTriple
from .surfaces import (
    ConeTriangle,
    CylinderTriangle,
    Kind,
    SideTriangle,
    SurfaceSpec,
    check_point,
    check_triangle,
)

TOP_LEVEL = {"surface", "triangle", "weights", "a0", "epsilon_grid", "C"}

_SURFACE_KEYS = {
    Kind.PLANE: set(),
    Kind.KPLANE: {"K"},
    Kind.CYLINDER: set(),
    Kind.CONE: {"H"},
}


@dataclass(frozen=True)
class Scene:
    surface: SurfaceSpec
    triangle: object
    weights: Optional[WeightTriple] = None
    a0: Optional[np.ndarray] = None
    epsilon_grid: Optional[tuple] = None
    C: float = 1.0

    def require(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise SceneError(f"scene is missing required field(s): {', '.join(missing)}")


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SceneError(f"{where} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise SceneError(f"{where} must be finite, got {value!r}")
    return value


def _exact_keys(obj, required, where, optional=()):
    if not isinstance(obj, dict):
        raise SceneError(f"{where} must be a JSON object")
    keys = set(obj)
    missing = sorted(set(required) - keys)
    extra = sorted(keys - set(required) - set(optional))
    if missing:
        raise SceneError(f"{where} is missing field(s): {', '.join(missing)}")
    if extra:
        raise SceneError(f"{where} has unexpected field(s): {', '.join(extra)}")


def parse_surface(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SceneError("surface must be an object with a 'kind' field")
    try:
        kind = Kind(obj["kind"])
    except ValueError:
        raise SceneError(f"unknown surface kind {obj['kind']!r}; expected one of "
                         f"{', '.join(k.value for k in Kind)}") from None
    _exact_keys(obj, {"kind"} | _SURFACE_KEYS[kind], "surface")
    if kind is Kind.KPLANE:
        return SurfaceSpec.kplane(_number(obj["K"], "surface.K"))
    if kind is Kind.CONE:
        return SurfaceSpec.cone(_number(obj["H"], "surface.H"))
    return SurfaceSpec(kind)


def parse_triangle(surface, obj):
    if not isinstance(obj, dict):
        raise SceneError("triangle must be a JSON object")

    def num(key):
        return _number(obj[key], f"triangle.{key}")

    kind = surface.kind
    if kind in (Kind.PLANE, Kind.KPLANE):
        if "angle" in obj:
            _exact_keys(obj, {"a12", "a13", "angle"}, "triangle")
            return SideTriangle.from_sas(num("a12"), num("a13"), num("angle"), surface.K)
        _exact_keys(obj, {"a12", "a13", "a23"}, "triangle")
        return SideTriangle(num("a12"), num("a13"), num("a23"))
    if kind is Kind.CYLINDER:
        _exact_keys(obj, {"phi2", "z2", "phi3", "z3"}, "triangle")
        return CylinderTriangle(num("phi2"), num("z2"), num("phi3"), num("z3"))
    if obj.get("apex", False) is True:
        _exact_keys(obj, {"apex", "s2", "s3", "angle"}, "triangle")
        return ApexTriangle(num("s2"), num("s3"), num("angle"))
    _exact_keys(obj, {"s2", "phi2", "s3", "phi3"}, "triangle", optional={"apex"})
    if obj.get("apex", False) is not False:
        raise SceneError("triangle.apex must be true or false")
    return ConeTriangle(num("s2"), num("phi2"), num("s3"), num("phi3"))


def _number_list(value, where, length=None):
    if not isinstance(value, list):
        raise SceneError(f"{where} must be a list")
    if length is not None and len(value) != length:
        raise SceneError(f"{where} must have {length} entries, got {len(value)}")
    return [_number(v, f"{where}[{i}]") for i, v in enumerate(value)]


def parse_scene(data):
    """Validate a decoded JSON scene and build the library objects."""
    if not isinstance(data, dict):
        raise SceneError("scene must be a JSON object")
    extra = sorted(set(data) - TOP_LEVEL)
    if extra:
        raise SceneError(f"scene has unexpected field(s): {', '.join(extra)}")
    for key in ("surface", "triangle"):
        if key not in data:
            raise SceneError(f"scene is missing required field: {key}")
    try:
        surface = parse_surface(data["surface"])
        triangle = parse_triangle(surface, data["triangle"])
        if not isinstance(triangle, ApexTriangle):
            check_triangle(surface, triangle)
        weights = a0 = grid = None
        if "weights" in data:
            weights = WeightTriple(*_number_list(data["weights"], "weights", 3))
        if "a0" in data:
            a0 = check_point(surface, _number_list(data["a0"], "a0", surface.dim))
        if "epsilon_grid" in data:
            grid = tuple(_number_list(data["epsilon_grid"], "epsilon_grid"))
        C = _number(data.get("C", 1.0), "C")
        if C <= 0.0:
            raise SceneError(f"C must be positive, got {C}")
    except SceneError:
        raise
    except GeofermatError as exc:
        raise SceneError(str(exc)) from exc
    return Scene(surface, triangle, weights, a0, grid, C)


def load_scene(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SceneError(f"cannot read scene {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SceneError(f"scene {path} is not valid JSON: {exc}") from None
    return parse_scene(data)
