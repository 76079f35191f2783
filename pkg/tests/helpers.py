"""Independent oracles used to derive expected values.

Nothing here touches the production hull/cone code paths: extreme points
come from support sweeps, dihedral groups from the closed-form matrices,
and permutohedron membership from partial-sum majorization.
"""

import math

import numpy as np


def rot2(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def refl2(theta):
    """Reflection across the line at angle theta/2."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [s, -c]])


def dihedral_matrices(k):
    """All 2k elements of the dihedral group of the regular k-gon."""
    mats = [rot2(2 * math.pi * j / k) for j in range(k)]
    mats += [refl2(2 * math.pi * j / k) for j in range(k)]
    return mats


def cyclic_matrices(k):
    return [rot2(2 * math.pi * j / k) for j in range(k)]


def extreme_points_2d(points, n_dirs=3600):
    """Extreme points of a planar point set by support sweep.

    A point is recorded when it is the unique maximizer in some swept
    direction; for the small generic polygons used in tests a fine sweep
    recovers exactly the vertex set.
    """
    points = np.asarray(points, dtype=float)
    found = {}
    for j in range(n_dirs):
        theta = 2 * math.pi * j / n_dirs
        d = np.array([math.cos(theta), math.sin(theta)])
        vals = points @ d
        top = vals.max()
        winners = np.where(vals >= top - 1e-12)[0]
        if len(winners) == 1:
            found[int(winners[0])] = True
    return points[sorted(found)]


def match_point_sets(A, B, eps=1e-8):
    """Do two point stacks coincide as sets within eps?"""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if len(A) != len(B):
        return False
    used = np.zeros(len(B), dtype=bool)
    for a in A:
        dists = np.where(used, np.inf, np.linalg.norm(B - a, axis=1))
        j = int(np.argmin(dists))
        if dists[j] > eps:
            return False
        used[j] = True
    return bool(used.all())


def in_permutohedron(point, base, eps=1e-8):
    """Majorization test: point lies in the hull of all permutations of base.

    Requires equal coordinate sums and every descending partial sum of the
    point bounded by the corresponding partial sum of the sorted base.
    """
    point = np.sort(np.asarray(point, dtype=float))[::-1]
    base = np.sort(np.asarray(base, dtype=float))[::-1]
    if abs(point.sum() - base.sum()) > eps:
        return False
    return bool(np.all(np.cumsum(point) <= np.cumsum(base) + eps))


def sorted_pairing(a, d):
    """Largest inner product between coordinate rearrangements of a and d."""
    return float(np.sort(np.asarray(a)) @ np.sort(np.asarray(d)))
