"""Pure numpy weighted-distance kernels (fallback for the compiled core)."""

import numpy as np


def planar_objective(pts, verts, w):
    d = pts[:, None, :] - verts[None, :, :]
    return np.sqrt((d * d).sum(axis=2)) @ w


def sphere_objective(pts, verts, w, R):
    cross = np.cross(pts[:, None, :], verts[None, :, :])
    dot = pts @ verts.T
    return (R * np.arctan2(np.linalg.norm(cross, axis=2), dot)) @ w


def hyperboloid_objective(pts, verts, w, R):
    d = pts[:, None, :] - verts[None, :, :]
    c2 = d[..., 0] ** 2 + d[..., 1] ** 2 - d[..., 2] ** 2
    return (2.0 * R * np.arcsinh(np.sqrt(np.maximum(c2, 0.0)) / (2.0 * R))) @ w
