import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geofermat.errors import (
    AmbiguityError,
    DegenerateTriangleError,
    DomainError,
    UnsupportedSurfaceError,
)
from geofermat.surfaces import (
    ConeTriangle,
    CylinderTriangle,
    PlanarTriangle,
    SideTriangle,
    SurfaceSpec,
    cone_slant_chord,
    cone_unrolled_angle,
    cylinder_angle_at_A1,
    cylinder_side_length,
    geodesic_distance,
    kplane_point,
    side_lengths,
    to_unrolled,
    unit_tangent,
    unroll,
    unrolled_points,
    vertices,
)

from . import instances

PLANE = SurfaceSpec.plane()
CYL = SurfaceSpec.cylinder()


# -- surfaces ----------------------------------------------------------------

def test_surface_invariants():
    with pytest.raises(DomainError):
        SurfaceSpec.kplane(0.0)
    with pytest.raises(DomainError):
        SurfaceSpec.cone(0.0)
    with pytest.raises(DomainError):
        SurfaceSpec("plane", K=1.0)
    assert SurfaceSpec.cone(math.sqrt(3)).slant == pytest.approx(2.0)
    assert SurfaceSpec.kplane(4.0).radius == pytest.approx(0.5)


# -- geodesic_distance -------------------------------------------------------

def test_plane_distance_hypotenuse():
    assert geodesic_distance(PLANE, (0, 0), (3, 4)) == 5.0


def test_unit_sphere_quarter_arc():
    S = SurfaceSpec.kplane(1.0)
    d = geodesic_distance(S, (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    assert d == pytest.approx(math.pi / 2, rel=1e-15)


def test_cylinder_helix_distance():
    d = geodesic_distance(CYL, (0.0, 0.0), (math.pi / 2, math.pi / 2))
    # helix step b = 1
    assert d == pytest.approx(math.pi / 2 * math.sqrt(2), rel=1e-15)


def test_antipodal_points_are_ambiguous():
    S = SurfaceSpec.kplane(1.0)
    with pytest.raises(AmbiguityError):
        geodesic_distance(S, (0.0, 0.0, 1.0), (0.0, 0.0, -1.0))


def test_off_model_points_are_rejected():
    with pytest.raises(DomainError):
        geodesic_distance(SurfaceSpec.kplane(1.0), (0.0, 0.0, 2.0), (0.0, 0.0, 1.0))
    with pytest.raises(DomainError):
        geodesic_distance(SurfaceSpec.kplane(-1.0), (0.0, 0.0, -1.0), (0.0, 0.0, -1.0))
    with pytest.raises(DomainError):
        geodesic_distance(SurfaceSpec.cone(1.0), (2.0, 0.0), (1.0, 0.0))


@pytest.mark.parametrize("K", [2.0, -0.5])
def test_kplane_distance_from_pole_is_radius(K):
    S = SurfaceSpec.kplane(K)
    p = kplane_point(K, 0.0, 0.0)
    q = kplane_point(K, 0.9, 1.3)
    assert geodesic_distance(S, p, q) == pytest.approx(0.9, rel=1e-13)


coords = st.floats(-3.0, 3.0, allow_nan=False)


@given(coords, coords, coords, coords)
def test_distance_symmetry_plane_and_cylinder(a, b, c, d):
    assert geodesic_distance(PLANE, (a, b), (c, d)) == geodesic_distance(PLANE, (c, d), (a, b))
    assert geodesic_distance(CYL, (a, b), (c, d)) == geodesic_distance(CYL, (c, d), (a, b))


@settings(max_examples=50)
@given(st.floats(0.0, 1.5), st.floats(0.0, 6.0), st.floats(0.0, 1.5), st.floats(0.0, 6.0),
       st.sampled_from([1.0, -1.0, 0.3]))
def test_distance_symmetry_kplane(r1, t1, r2, t2, K):
    S = SurfaceSpec.kplane(K)
    p, q = kplane_point(K, r1, t1), kplane_point(K, r2, t2)
    assert geodesic_distance(S, p, q) == geodesic_distance(S, q, p)


@pytest.mark.parametrize("sign", [1.0, -1.0])
def test_flat_limit_of_kplane_distance(sign):
    K = sign * 1e-10
    S = SurfaceSpec.kplane(K)
    rng = np.random.default_rng(5)
    for _ in range(50):
        r1, r2 = rng.uniform(0.1, 1.0, size=2)
        t1, t2 = rng.uniform(0.0, 2 * math.pi, size=2)
        flat = math.hypot(r1 * math.cos(t1) - r2 * math.cos(t2), r1 * math.sin(t1) - r2 * math.sin(t2))
        d = geodesic_distance(S, kplane_point(K, r1, t1), kplane_point(K, r2, t2))
        assert d == pytest.approx(flat, rel=1e-6)


# -- cylinder ----------------------------------------------------------------

@pytest.mark.parametrize("b, phi, expected", [
    (0.0, math.pi / 2, math.pi / 2),
    (1.0, math.pi, math.pi * math.sqrt(2)),
    (2.0, 1.0, math.sqrt(5)),
])
def test_cylinder_side_length(b, phi, expected):
    assert cylinder_side_length(b, phi) == pytest.approx(expected, rel=1e-15)


def test_cylinder_side_length_rejects_nonpositive_azimuth():
    with pytest.raises(DomainError):
        cylinder_side_length(1.0, 0.0)


def test_cylinder_angle_requires_distinct_azimuths():
    with pytest.raises(DegenerateTriangleError):
        cylinder_angle_at_A1(CylinderTriangle(1.0, 0.0, 1.0, 0.0))


def test_cylinder_angle_flat_strip_is_degenerate():
    # collinear on the strip z = 0
    with pytest.raises(DegenerateTriangleError):
        cylinder_angle_at_A1(CylinderTriangle(1.0, 0.0, 2.0, 0.0))


def test_cylinder_angle_worked_example():
    tri = CylinderTriangle(1.0, 1.0, 2.0, 0.0)
    # oracle: angle between the unrolled vectors (1, 1) and (2, 0)
    oracle = math.acos((1 * 2 + 1 * 0) / (math.sqrt(2) * 2))
    assert oracle == pytest.approx(math.pi / 4, abs=1e-15)
    assert cylinder_angle_at_A1(tri) == pytest.approx(math.pi / 4, abs=1e-14)


def test_cylinder_angle_matches_unrolled_angle():
    rng = np.random.default_rng(11)
    for _ in range(100):
        S, tri = instances.cylinder(rng)
        a = cylinder_angle_at_A1(tri)
        assert 0.0 < a < math.pi
        assert abs(a - unroll(S, tri).angle) <= 1e-10


# -- cone --------------------------------------------------------------------

@pytest.mark.parametrize("phi, H, expected", [
    (2 * math.pi, math.sqrt(3), math.pi),
    (0.0, 0.7, 0.0),
    (math.pi, 1.0, math.pi / math.sqrt(2)),
])
def test_cone_unrolled_angle(phi, H, expected):
    assert cone_unrolled_angle(phi, H) == pytest.approx(expected, rel=1e-15, abs=0)


def test_cone_slant_chord_examples():
    H = math.sqrt(3)
    assert cone_slant_chord(2.0, 0.0, H) == pytest.approx(0.0, abs=1e-7)
    # oracle: unrolled points (2, 0) and 2 * (cos pi/3, sin pi/3)
    oracle = math.hypot(2.0 - 2.0 * math.cos(math.pi / 3), 2.0 * math.sin(math.pi / 3))
    assert oracle == pytest.approx(2.0, rel=1e-15)
    assert cone_slant_chord(2.0, 2 * math.pi / 3, H) == pytest.approx(2.0, rel=1e-14)
    assert cone_slant_chord(math.sqrt(2), 0.0, 1.0) == pytest.approx(0.0, abs=1e-7)


def test_cone_slant_chord_range():
    with pytest.raises(DomainError):
        cone_slant_chord(2.5, 1.0, math.sqrt(3))
    with pytest.raises(DomainError):
        cone_slant_chord(0.0, 1.0, math.sqrt(3))


# -- unroll ------------------------------------------------------------------

def test_unroll_flat_strip():
    t = unroll(CYL, CylinderTriangle(1.0, 0.0, 2.5, 0.5))
    assert t.a12 == pytest.approx(1.0)
    assert unroll(CYL, CylinderTriangle(1.2, 0.0, 2.0, 0.0001)).a13 == pytest.approx(math.hypot(2.0, 0.0001))


def test_unroll_helix_side():
    t = unroll(CYL, CylinderTriangle(1.0, 1.0, 2.0, 0.0))
    assert t.a12 == pytest.approx(math.sqrt(2), rel=1e-15)


def test_unroll_cone_uses_chords():
    S = SurfaceSpec.cone(math.sqrt(3))
    tri = ConeTriangle(2.0, 1.0, 2.0, 2.5)
    t = unroll(S, tri)
    assert t.a12 == pytest.approx(cone_slant_chord(2.0, 1.0, S.H), rel=1e-13)
    assert t.a13 == pytest.approx(cone_slant_chord(2.0, 2.5, S.H), rel=1e-13)


def test_unroll_rejects_curved_surfaces():
    with pytest.raises(UnsupportedSurfaceError):
        unroll(PLANE, SideTriangle(1, 1, 1))
    with pytest.raises(UnsupportedSurfaceError):
        unroll(SurfaceSpec.kplane(1.0), SideTriangle(1, 1, 1))


@pytest.mark.parametrize("maker", [instances.cylinder, instances.cone])
def test_unroll_is_an_isometry(maker):
    rng = np.random.default_rng(3)
    for _ in range(100):
        S, tri = maker(rng)
        planar = unroll(S, tri)
        a12, a13, a23 = side_lengths(S, tri)
        assert planar.a12 == pytest.approx(a12, rel=1e-12)
        assert planar.a13 == pytest.approx(a13, rel=1e-12)
        assert planar.a23 == pytest.approx(a23, rel=1e-12)
        # chart distances agree with the unrolled picture
        A = vertices(S, tri)
        P = unrolled_points(S, tri)
        assert geodesic_distance(S, A[1], A[2]) == pytest.approx(np.linalg.norm(P[1] - P[2]), rel=1e-12)


def test_to_unrolled_places_cone_vertex_on_axis():
    S = SurfaceSpec.cone(2.0)
    assert to_unrolled(S, (S.slant, 0.0)) == pytest.approx([S.slant, 0.0])


# -- triangles ---------------------------------------------------------------

def test_side_triangle_from_sas_plane():
    t = SideTriangle.from_sas(1.0, 1.0, math.pi / 3)
    assert t.a23 == pytest.approx(1.0, rel=1e-15)


def test_planar_triangle_angles_sum_to_pi():
    t = PlanarTriangle(1.0, 2.0, 1.1)
    assert sum(t.angles) == pytest.approx(math.pi, rel=1e-15)


def test_sphere_side_bound():
    S = SurfaceSpec.kplane(1.0)
    from geofermat.surfaces import check_triangle
    with pytest.raises(DomainError):
        check_triangle(S, SideTriangle(3.2, 1.0, 2.5))


def test_collinear_plane_triangle_rejected():
    from geofermat.surfaces import check_triangle
    with pytest.raises(DegenerateTriangleError):
        check_triangle(PLANE, SideTriangle(1.0, 2.0, 3.0))


# -- unit_tangent ------------------------------------------------------------

def test_unit_tangent_plane():
    assert unit_tangent(PLANE, (0, 0), (1, 0)) == pytest.approx([1.0, 0.0])
    assert unit_tangent(PLANE, (0, 0), (1, 1)) == pytest.approx([1 / math.sqrt(2)] * 2)
    with pytest.raises(DomainError):
        unit_tangent(PLANE, (1, 1), (1, 1))


def test_unit_tangent_cylinder_is_unrolled_direction():
    u = unit_tangent(CYL, (0.0, 0.0), (1.0, 1.0))
    assert u == pytest.approx([1 / math.sqrt(2)] * 2)


@pytest.mark.parametrize("K", [1.0, -1.0])
def test_unit_tangent_kplane_angle_at_pole(K):
    S = SurfaceSpec.kplane(K)
    p = kplane_point(K, 0.0, 0.0)
    u = unit_tangent(S, p, kplane_point(K, 0.5, 0.3))
    v = unit_tangent(S, p, kplane_point(K, 0.8, 1.4))
    assert np.linalg.norm(u) == pytest.approx(1.0, abs=1e-12)
    assert math.acos(u @ v) == pytest.approx(1.1, abs=1e-12)
