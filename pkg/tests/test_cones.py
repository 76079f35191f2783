import math

import numpy as np
import pytest

import helpers
from orbitpoly.cones import (
    cone_contains,
    cone_equal,
    cone_from_halfspaces,
    dual_cone,
    in_orbit_cone,
    local_peak_failures,
    orbit_cone,
    voronoi_consistency,
)
from orbitpoly.errors import ZeroVectorError
from orbitpoly.group import close_generators, find_regular, orbit
from orbitpoly.numerics import unit
from orbitpoly.polytope import hull, support

R2 = 1.0 / math.sqrt(2.0)


@pytest.fixture(scope="module")
def c4():
    return close_generators([helpers.rot2(math.pi / 2)], name="c4")


@pytest.fixture(scope="module")
def b2():
    return close_generators([helpers.rot2(math.pi / 2), np.diag([1.0, -1.0])], name="b2")


def test_orbit_cone_c4_reduction(c4):
    # Raw difference normals are (1,-1), (2,0), (1,1); the axis one is
    # redundant and the cone is {x >= |y|}.
    C = orbit_cone(c4, [1.0, 0.0])
    assert helpers.match_point_sets(C.halfspace_normals, [[R2, -R2], [R2, R2]])
    assert helpers.match_point_sets(C.rays, [[R2, R2], [R2, -R2]])
    assert C.lineality_dim == 0


def test_orbit_cone_trivial_group():
    G = close_generators([np.eye(2)])
    C = orbit_cone(G, [1.0, 0.0])
    assert C.is_whole_space
    assert C.lineality_dim == 2
    assert len(C.rays) == 0


def test_orbit_cone_b2_chamber(b2):
    # Seven difference normals reduce to the chamber {x >= y >= 0}.
    C = orbit_cone(b2, [2.0, 1.0])
    assert helpers.match_point_sets(C.halfspace_normals, [[0, 1], [R2, -R2]])
    assert helpers.match_point_sets(C.rays, [[1, 0], [R2, R2]])


def test_orbit_cone_rejects_zero(b2):
    with pytest.raises(ZeroVectorError):
        orbit_cone(b2, [0.0, 0.0])


def test_orbit_cone_contains_base(groups):
    for G in groups.values():
        v = find_regular(G, 13)
        C = orbit_cone(G, v)
        assert cone_contains(C, v)


def test_dual_swaps_normals_and_rays(c4):
    C = orbit_cone(c4, [1.0, 0.0])
    D = dual_cone(C)
    assert helpers.match_point_sets(D.rays, C.halfspace_normals)
    assert helpers.match_point_sets(D.halfspace_normals, C.rays)


def test_dual_of_whole_space():
    G = close_generators([np.eye(2)])
    C = orbit_cone(G, [1.0, 0.0])
    D = dual_cone(C)
    assert D.lineality_dim == 0
    assert len(D.rays) == 0  # the zero cone has no extreme rays
    assert not cone_contains(D, [1e-3, 0.0])


def test_dual_involution(groups):
    for G in groups.values():
        v = find_regular(G, 19)
        C = orbit_cone(G, v)
        assert cone_equal(dual_cone(dual_cone(C)), C)


def test_cone_contains_examples(c4):
    C = orbit_cone(c4, [1.0, 0.0])  # {x >= |y|}
    assert cone_contains(C, [5.0, 1.0])
    assert not cone_contains(C, [0.0, 1.0])
    assert cone_contains(C, [1.0, 1.0])  # boundary of the closed cone


def test_cone_equal_examples(c4):
    C = orbit_cone(c4, [1.0, 0.0])
    assert cone_equal(C, C)
    D = cone_from_halfspaces([[-R2, R2], [R2, R2]])  # {y >= |x|}
    assert not cone_equal(C, D)


def test_cone_equal_same_chamber_interior(b2):
    # Two regular points interior to the same chamber share one cone.
    assert cone_equal(orbit_cone(b2, [2.0, 1.0]), orbit_cone(b2, [3.0, 0.5]))
    assert not cone_equal(orbit_cone(b2, [2.0, 1.0]), orbit_cone(b2, [1.0, 2.0]))


def test_only_base_point_in_own_cone(groups):
    rng = np.random.default_rng(29)
    for G in groups.values():
        for v in (find_regular(G, 31), rng.standard_normal(G.dim)):
            orb = orbit(G, v)
            C = orbit_cone(G, v)
            inside = [p for p in orb.points if cone_contains(C, p)]
            assert len(inside) == 1
            assert np.allclose(inside[0], orb.points[0], atol=1e-9)


def test_membership_symmetry(groups):
    rng = np.random.default_rng(37)
    for G in groups.values():
        for _ in range(100):
            u = rng.standard_normal(G.dim)
            v = rng.standard_normal(G.dim)
            assert in_orbit_cone(G, v, u) == in_orbit_cone(G, u, v)


def test_membership_iff_peak(groups):
    # u in the cone of v exactly when v maximizes u's functional on its orbit.
    rng = np.random.default_rng(41)
    for G in groups.values():
        for _ in range(60):
            u = rng.standard_normal(G.dim)
            v = rng.standard_normal(G.dim)
            pts = orbit(G, v).points
            vals = pts @ u
            v_peaks = vals[0] >= vals.max() - 1e-9
            assert in_orbit_cone(G, v, u) == v_peaks


def test_peak_set_is_cone_slice(groups):
    # Vertices of the support peak of hull(O_u) in direction v are exactly
    # the orbit points inside the cone of v.
    rng = np.random.default_rng(43)
    for G in groups.values():
        v = find_regular(G, 47)
        C = orbit_cone(G, v)
        for _ in range(25):
            u = rng.standard_normal(G.dim)
            orb = orbit(G, u)
            peak = support(hull(orb.points), v).peak
            slice_pts = np.array([p for p in orb.points if cone_contains(C, p)])
            assert helpers.match_point_sets(peak.vertices, slice_pts)


def test_every_orbit_meets_cone(groups):
    rng = np.random.default_rng(53)
    for G in groups.values():
        v = find_regular(G, 59)
        C = orbit_cone(G, v)
        for _ in range(25):
            orb = orbit(G, rng.standard_normal(G.dim))
            assert any(cone_contains(C, p) for p in orb.points)


def test_regular_cone_full_dimensional(groups):
    for G in groups.values():
        C = orbit_cone(G, find_regular(G, 61))
        assert C.lineality_dim == 0
        stacked = np.vstack([C.rays, C.lineality_basis]) if C.lineality_dim else C.rays
        assert np.linalg.matrix_rank(stacked) == G.dim


def test_cone_orbit_simply_transitive(groups):
    # For regular v the map g -> cone(gv) is injective: |G| distinct cones.
    from orbitpoly.numerics import DEFAULT_TOL, round_key

    for G in groups.values():
        v = find_regular(G, 67)
        base = orbit_cone(G, v).halfspace_normals
        keys = set()
        for g in G.elements:
            transformed = base @ g.T
            canon = tuple(sorted(round_key(row, DEFAULT_TOL) for row in transformed))
            keys.add(canon)
        assert len(keys) == G.order


def test_shared_wall_orthogonal_to_difference(groups):
    # Points common to the cones of two orbit points are orthogonal to their
    # difference; sample the intersection cone through its rays.
    for name in ("b2", "g2", "a3"):
        G = groups[name]
        v = find_regular(G, 71)
        orb = orbit(G, v)
        C_v = orbit_cone(G, v)
        rng = np.random.default_rng(73)
        for p, w in list(zip(orb.points, orb.point_to_element))[1:6]:
            C_p_normals = C_v.halfspace_normals @ G.elements[w].T
            inter = cone_from_halfspaces(np.vstack([C_v.halfspace_normals, C_p_normals]))
            samples = list(inter.rays) + list(inter.lineality_basis)
            for _ in range(5):
                if len(inter.rays):
                    coeffs = rng.uniform(0, 1, len(inter.rays))
                    samples.append(coeffs @ inter.rays)
            for x in samples:
                assert abs(float(np.dot(x, p - v))) <= 1e-8


def test_local_peak_neighborhood(groups):
    # With the base at the center of its cone, every direction within a
    # tenth of the radius keeps the base as unique maximizer.
    for G in groups.values():
        v0 = find_regular(G, 79)
        C = orbit_cone(G, v0)
        v = unit(np.sum(C.rays, axis=0)) if len(C.rays) else v0
        if len(orbit(G, v)) != G.order:
            v = v0  # fall back when the ray sum is non-regular
        failures = local_peak_failures(G, v, radius_factor=0.1, n_samples=50, seed=83)
        assert failures == []


def test_voronoi_consistency_catalog(groups):
    for G in groups.values():
        report = voronoi_consistency(G, find_regular(G, 89), n_samples=200, seed=97)
        assert report.passed, report.violations[:3]


def test_voronoi_tie_on_wall(c4):
    # A sample on the diagonal wall is equidistant from (1,0) and (0,1) and
    # must be a member of both cones.
    report = voronoi_consistency(
        c4, np.array([1.0, 0.0]), n_samples=10, seed=1, extra_points=[[2.0, 2.0]]
    )
    assert report.passed
    orb = orbit(c4, np.array([1.0, 0.0]))
    wall = np.array([2.0, 2.0])
    d = np.linalg.norm(wall - orb.points, axis=1)
    assert np.sum(d <= d.min() + 1e-9) == 2


def test_voronoi_trivial_group():
    G = close_generators([np.eye(2)])
    report = voronoi_consistency(G, np.array([1.0, 0.0]), n_samples=50, seed=3)
    assert report.passed
