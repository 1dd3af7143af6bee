"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--points N] [--repeat R]

Also times a full forward solve under each backend, since the kernels are
what the grid search and the probe check spend their time in.
"""

import argparse
import timeit

import numpy as np

from geofermat import _kernels_py, kernels
from geofermat.fermat import probe_check, solve_forward
from geofermat.surfaces import SideTriangle, SurfaceSpec

try:
    from geofermat import _kernels as _compiled
except ImportError:
    _compiled = None


def _points(rng, n):
    sphere = rng.normal(size=(n, 3))
    sphere[:, 2] = np.abs(sphere[:, 2]) + 1.0
    sphere /= np.linalg.norm(sphere, axis=1)[:, None]
    xy = rng.normal(size=(n, 2))
    hyper = np.column_stack([xy, np.sqrt(1.0 + (xy ** 2).sum(axis=1))])
    return rng.normal(size=(n, 2)), sphere, hyper


def bench_kernels(n, repeat):
    rng = np.random.default_rng(0)
    plane, sphere, hyper = _points(rng, n)
    w = np.array([1.0, 1.3, 0.7])
    cases = {
        "planar": lambda impl: kernels.planar_objective(plane, plane[:3], w, impl=impl),
        "sphere": lambda impl: kernels.sphere_objective(sphere, sphere[:3], w, 1.0, impl=impl),
        "hyperboloid": lambda impl: kernels.hyperboloid_objective(hyper, hyper[:3], w, 1.0, impl=impl),
    }
    impls = [("python", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    print(f"kernel timings, {n} points, best of {repeat}")
    for name, fn in cases.items():
        times = {label: min(timeit.repeat(lambda: fn(impl), number=10, repeat=repeat)) / 10
                 for label, impl in impls}
        line = "  ".join(f"{label} {t * 1e3:8.3f} ms" for label, t in times.items())
        if len(times) == 2:
            line += f"  speedup {times['python'] / times['cython']:.1f}x"
        print(f"  {name:12s} {line}")


def bench_solve(repeat):
    surfaces = [SurfaceSpec.plane(), SurfaceSpec.kplane(1.0), SurfaceSpec.kplane(-1.0)]
    tri = SideTriangle(0.8, 0.9, 1.0)
    w = (1.0, 1.2, 0.9)
    original = kernels._impl
    impls = [("python", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    print("solve_forward + probe_check")
    try:
        for S in surfaces:
            parts = []
            for label, impl in impls:
                kernels._impl = impl

                def run():
                    sol = solve_forward(w, tri, S)
                    probe_check(sol, w, tri, S)

                parts.append(f"{label} {min(timeit.repeat(run, number=1, repeat=repeat)) * 1e3:8.2f} ms")
            name = S.kind.value if S.K == 0.0 else f"kplane K={S.K:+g}"
            print(f"  {name:12s} " + "  ".join(parts))
    finally:
        kernels._impl = original


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _compiled is None:
        print("compiled extension not built; timing the fallback only")
    bench_kernels(args.points, args.repeat)
    bench_solve(args.repeat)


if __name__ == "__main__":
    main()
