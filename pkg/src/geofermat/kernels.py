"""Backend selection for the weighted-distance kernels.

The compiled extension is used when it was built; otherwise the numpy
implementation is loaded.  Setting ``GEOFERMAT_PURE_PYTHON=1`` forces the
fallback, which the benchmark and the backend-agreement tests rely on.
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("GEOFERMAT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"


def _prep(pts, verts, w):
    pts = np.ascontiguousarray(np.atleast_2d(pts), dtype=float)
    verts = np.ascontiguousarray(verts, dtype=float)
    w = np.ascontiguousarray(w, dtype=float)
    return pts, verts, w


def planar_objective(pts, verts, w, impl=None):
    """Weighted sum of Euclidean distances from each row of ``pts``."""
    return (impl or _impl).planar_objective(*_prep(pts, verts, w))


def sphere_objective(pts, verts, w, R, impl=None):
    """Weighted sum of great-circle distances on the sphere of radius ``R``."""
    return (impl or _impl).sphere_objective(*_prep(pts, verts, w), float(R))


def hyperboloid_objective(pts, verts, w, R, impl=None):
    """Weighted sum of hyperbolic distances on the hyperboloid of radius ``R``."""
    return (impl or _impl).hyperboloid_objective(*_prep(pts, verts, w), float(R))
