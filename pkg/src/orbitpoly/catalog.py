"""Built-in finite matrix groups: rotation-only controls and reflection groups.

These back the CLI ``catalog`` command (as generator JSON fixtures) and the
test suite.  Matrix entries in fixtures are written as decimal strings so
the files round-trip at full precision.
"""

from __future__ import annotations

import math
from functools import lru_cache
from pathlib import Path

import numpy as np

from .group import FiniteGroup, close_generators
from .numerics import DEFAULT_TOL, Tolerance

CATALOG_NAMES = ("c3", "c4", "a2", "b2", "g2", "i2_5", "a3", "b3")

_DESCRIPTIONS = {
    "c3": "cyclic rotations by 120 degrees in the plane (order 3)",
    "c4": "cyclic rotations by 90 degrees in the plane (order 4)",
    "a2": "dihedral symmetry of the triangle (order 6)",
    "b2": "dihedral symmetry of the square (order 8)",
    "g2": "dihedral symmetry of the hexagon (order 12)",
    "i2_5": "dihedral symmetry of the pentagon (order 10)",
    "a3": "symmetries of the regular tetrahedron (order 24)",
    "b3": "signed coordinate permutations of 3-space (order 48)",
}


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


_MIRROR_X = np.array([[1.0, 0.0], [0.0, -1.0]])


def _sum_zero_basis() -> np.ndarray:
    # Orthonormal rows spanning the sum-zero hyperplane of R^4.
    rows = np.array(
        [
            [1.0, -1.0, 0.0, 0.0],
            [1.0, 1.0, -2.0, 0.0],
            [1.0, 1.0, 1.0, -3.0],
        ]
    )
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def _transposition_rep(i: int, j: int) -> np.ndarray:
    """3x3 action of swapping coordinates i, j of R^4 on the sum-zero plane."""
    b = _sum_zero_basis()
    perm = np.eye(4)
    perm[[i, j]] = perm[[j, i]]
    return b @ perm @ b.T


def generator_matrices(name: str) -> list[np.ndarray]:
    if name == "c3":
        return [_rotation(2 * math.pi / 3)]
    if name == "c4":
        return [_rotation(math.pi / 2)]
    if name == "a2":
        return [_rotation(2 * math.pi / 3), _MIRROR_X]
    if name == "b2":
        return [_rotation(math.pi / 2), _MIRROR_X]
    if name == "g2":
        return [_rotation(math.pi / 3), _MIRROR_X]
    if name == "i2_5":
        return [_rotation(2 * math.pi / 5), _MIRROR_X]
    if name == "a3":
        return [_transposition_rep(0, 1), _transposition_rep(1, 2), _transposition_rep(2, 3)]
    if name == "b3":
        swap01 = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        swap12 = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        flip = np.diag([1.0, 1.0, -1.0])
        return [swap01, swap12, flip]
    raise KeyError(f"unknown catalog group {name!r}; choose from {CATALOG_NAMES}")


@lru_cache(maxsize=None)
def build_group(name: str, tol: Tolerance = DEFAULT_TOL) -> FiniteGroup:
    return close_generators(generator_matrices(name), tol=tol, name=name)


def fixture_dict(name: str) -> dict:
    """JSON-ready group definition with decimal-string matrix entries."""
    gens = generator_matrices(name)
    return {
        "name": name,
        "dim": int(gens[0].shape[0]),
        "generators": [[[repr(float(x)) for x in row] for row in g] for g in gens],
        "description": _DESCRIPTIONS[name],
    }


def write_fixtures(directory) -> list[str]:
    """Write one generator file per catalog group; returns the paths written."""
    import json

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in CATALOG_NAMES:
        path = directory / f"{name}.json"
        path.write_text(json.dumps(fixture_dict(name), indent=2, sort_keys=True) + "\n")
        written.append(str(path))
    return written
