import math

import numpy as np
import pytest

import helpers
from orbitpoly.errors import OrderExceededError, RegularNotFoundError
from orbitpoly.group import (
    close_generators,
    find_regular,
    group_from_json_dict,
    is_regular,
    orbit,
    stabilizer,
)
from orbitpoly.numerics import round_key


def _element_keys(G):
    return {round_key(g, G.tol) for g in G.elements}


def test_closure_c4_order():
    G = close_generators([helpers.rot2(math.pi / 2)])
    assert G.order == 4


def test_closure_b2_matches_bruteforce():
    # Oracle: the 8 dihedral matrices of the square, written in closed form.
    G = close_generators([helpers.rot2(math.pi / 2), np.diag([1.0, -1.0])])
    oracle = helpers.dihedral_matrices(4)
    assert G.order == 8
    assert _element_keys(G) == {round_key(m, G.tol) for m in oracle}


def test_closure_i25_matches_bruteforce():
    G = close_generators([helpers.rot2(2 * math.pi / 5), np.diag([1.0, -1.0])])
    oracle = helpers.dihedral_matrices(5)
    assert G.order == 10
    assert _element_keys(G) == {round_key(m, G.tol) for m in oracle}


def test_closure_identity_first():
    G = close_generators([helpers.rot2(2 * math.pi / 3)])
    assert np.allclose(G.elements[0], np.eye(2))


def test_closure_order_cap():
    # An irrational rotation angle never closes up.
    with pytest.raises(OrderExceededError):
        close_generators([helpers.rot2(1.0)], max_order=500)


def test_orbit_c4_square():
    G = close_generators([helpers.rot2(math.pi / 2)])
    orb = orbit(G, [1.0, 0.0])
    assert helpers.match_point_sets(orb.points, [[1, 0], [0, 1], [-1, 0], [0, -1]])
    assert np.allclose(orb.points[0], [1.0, 0.0])


def test_orbit_trivial_group():
    G = close_generators([np.eye(3)])
    orb = orbit(G, [1.0, 2.0, 3.0])
    assert len(orb) == 1


def test_orbit_b2_of_generic_point():
    G = close_generators([helpers.rot2(math.pi / 2), np.diag([1.0, -1.0])])
    # Oracle: apply all 8 closed-form matrices directly.
    expected = np.unique(
        np.round([m @ np.array([2.0, 1.0]) for m in helpers.dihedral_matrices(4)], 9), axis=0
    )
    orb = orbit(G, [2.0, 1.0])
    assert len(orb) == 8
    assert helpers.match_point_sets(orb.points, expected)


def test_orbit_witnesses(groups):
    for G in groups.values():
        v = find_regular(G, 11)
        orb = orbit(G, v)
        for p, w in zip(orb.points, orb.point_to_element):
            assert np.allclose(G.elements[w] @ v, p, atol=1e-9)


def test_stabilizer_b2_axis_point():
    G = close_generators([helpers.rot2(math.pi / 2), np.diag([1.0, -1.0])])
    stab = stabilizer(G, [1.0, 0.0])
    assert stab.order == 2
    keys = _element_keys(stab)
    assert round_key(np.eye(2), stab.tol) in keys
    assert round_key(np.diag([1.0, -1.0]), stab.tol) in keys


def test_stabilizer_generic_point_trivial():
    G = close_generators([helpers.rot2(math.pi / 2), np.diag([1.0, -1.0])])
    assert stabilizer(G, [2.0, 1.0]).order == 1


def test_stabilizer_origin_is_whole_group(groups):
    for G in groups.values():
        assert stabilizer(G, np.zeros(G.dim)).order == G.order


def test_is_regular_examples():
    G = close_generators([helpers.rot2(math.pi / 2), np.diag([1.0, -1.0])])
    assert is_regular(G, [2.0, 1.0])
    assert not is_regular(G, [1.0, 0.0])
    C4 = close_generators([helpers.rot2(math.pi / 2)])
    assert is_regular(C4, [1.0, 0.0])


def test_find_regular_deterministic(groups):
    for G in groups.values():
        v1 = find_regular(G, 5)
        v2 = find_regular(G, 5)
        assert np.array_equal(v1, v2)
        assert is_regular(G, v1)
        assert np.linalg.norm(v1) == pytest.approx(1.0)


def test_find_regular_fails_on_nonfaithful():
    # A non-faithful action shows up as duplicate element matrices, which a
    # generator closure would collapse; build the degenerate group directly.
    # Every stabilizer then has size two and no draw can succeed.
    from orbitpoly.group import FiniteGroup

    fake = FiniteGroup(
        dim=2,
        elements=(np.eye(2), np.eye(2)),
        generator_indices=(0,),
        name="nonfaithful",
    )
    with pytest.raises(RegularNotFoundError):
        find_regular(fake, 0)


def test_orbit_stabilizer_theorem(groups):
    rng = np.random.default_rng(17)
    for G in groups.values():
        for _ in range(100):
            v = rng.standard_normal(G.dim)
            assert len(orbit(G, v)) * stabilizer(G, v).order == G.order


def test_orbit_norm_preserved(groups):
    rng = np.random.default_rng(23)
    for G in groups.values():
        v = rng.standard_normal(G.dim) * 3.0
        r = np.linalg.norm(v)
        for p in orbit(G, v).points:
            assert np.linalg.norm(p) == pytest.approx(r, abs=1e-9)


def test_minimal_stabilizer_characterization(groups):
    # For faithful finite actions, v is regular iff its stabilizer sits
    # inside the stabilizer of every sampled vector.
    rng = np.random.default_rng(3)
    for name in ("b2", "a3"):
        G = groups[name]
        v_reg = find_regular(G, 9)
        stab_keys = _element_keys(stabilizer(G, v_reg))
        for _ in range(20):
            u = rng.standard_normal(G.dim)
            assert stab_keys <= _element_keys(stabilizer(G, u))
        # a wall point has a strictly larger stabilizer than some regular u
        wall = np.zeros(G.dim)
        wall[0] = 1.0
        if not is_regular(G, wall):
            u = find_regular(G, 10)
            assert not _element_keys(stabilizer(G, wall)) <= _element_keys(stabilizer(G, u))


def test_group_from_json_roundtrip():
    data = {
        "name": "square",
        "dim": 2,
        "generators": [
            [["0.0", "-1.0"], ["1.0", "0.0"]],
            [[1.0, 0.0], [0.0, -1.0]],
        ],
    }
    G, tol = group_from_json_dict(data)
    assert G.order == 8
    assert G.name == "square"
