"""Reflection detection, chambers, and the semigroup-property verdict.

A finite orthogonal group satisfies the semigroup property (SP: Minkowski
sums of orbit hulls are again orbit hulls) exactly when it is generated by
reflections.  This module implements that verdict four ways - direct SP
sampling, the peak criterion, reflection generation, and local cone
stability - and cross-checks that they agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .cones import PolyhedralCone, cone_contains, cone_equal, orbit_cone
from .errors import (
    InconsistentCriteriaError,
    NotCoxeterError,
    NotInChamberError,
    NotRegularError,
)
from .group import FiniteGroup, close_generators, find_regular, is_regular, orbit
from .numerics import DEFAULT_TOL, Tolerance, ToleranceBuckets, as_vector, matrix_rank, unit
from .polytope import Polytope, hull, minkowski_sum, polytope_equal, polytope_from_halfspaces


@dataclass(frozen=True, eq=False)
class Reflection:
    """An orthogonal involution fixing a hyperplane pointwise.

    ``element_index`` points into the owning group's element list and is -1
    when the reflection was detected from a bare matrix.
    """

    element_index: int
    normal: np.ndarray


@dataclass(frozen=True, eq=False)
class ChamberData:
    """Simple inward facet normals and the dual fundamental rays of a chamber.

    In the reflection-generated, full-rank case the chamber is simplicial:
    ``<ray_j, normal_k>`` is zero for j != k and positive for j == k.
    """

    simple_normals: np.ndarray    # (m, n) unit inward facet normals
    fundamental_rays: np.ndarray  # (m, n) unit rays, ordered dual to the normals
    base_regular: np.ndarray


@dataclass(frozen=True, eq=False)
class SPReport:
    """Verdict plus the four criterion outcomes and failure witnesses.

    The four verdicts must agree; a disagreement raises during construction
    and is never silently resolved.
    """

    group: str
    verdict: bool
    criterion_results: dict[str, tuple[bool, Any]]
    witnesses: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "verdict": self.verdict,
            "criteria": {
                key: {"passed": passed, "witness": _jsonable(witness)}
                for key, (passed, witness) in self.criterion_results.items()
            },
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
        }


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def detect_reflection(g, tol: Tolerance = DEFAULT_TOL, element_index: int = -1) -> Reflection | None:
    """Detect whether an orthogonal matrix is a hyperplane reflection.

    Returns the unit normal of the fixed hyperplane (sign fixed so the first
    coordinate above tolerance is positive) when ``I - g`` has rank one,
    else None.
    """
    g = np.asarray(g, dtype=float)
    defect = np.eye(g.shape[0]) - g
    if matrix_rank(defect, tol) != 1:
        return None
    u_mat, _, _ = np.linalg.svd(defect)
    normal = u_mat[:, 0]
    for x in normal:
        if abs(x) > tol.eps_eq:
            if x < 0:
                normal = -normal
            break
    return Reflection(element_index=element_index, normal=normal)


def group_reflections(G: FiniteGroup, tol: Tolerance = DEFAULT_TOL) -> list[Reflection]:
    """All reflections in the group, indexed into its element list."""
    found = []
    for i, g in enumerate(G.elements):
        r = detect_reflection(g, tol, element_index=i)
        if r is not None:
            found.append(r)
    return found


def is_reflection_generated(G: FiniteGroup, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the subgroup generated by the group's reflections is the whole group.

    The trivial group is generated by the empty set of reflections.
    """
    if G.order == 1:
        return True
    mirrors = [G.elements[r.element_index] for r in group_reflections(G, tol)]
    if not mirrors:
        return False
    closure = close_generators(mirrors, tol=tol, max_order=G.order)
    return closure.order == G.order


def chamber(G: FiniteGroup, v_reg, tol: Tolerance = DEFAULT_TOL) -> ChamberData:
    """Chamber of a reflection-generated group, anchored at a regular vector.

    The chamber is the orbit cone of ``v_reg``; its irredundant inward facet
    normals are the simple normals and its extreme rays, reordered so ray k
    pairs positively with normal k and annihilates the others, are the
    fundamental rays.
    """
    v_reg = as_vector(v_reg, G.dim)
    if not is_reflection_generated(G, tol):
        raise NotCoxeterError(f"group {G.name or ''} is not generated by reflections")
    if not is_regular(G, v_reg, tol):
        raise NotRegularError("chamber base vector must have a trivial stabilizer")

    cone = orbit_cone(G, v_reg, tol)
    normals = cone.halfspace_normals
    rays = cone.rays
    if len(rays) != len(normals):
        raise NotCoxeterError(
            f"chamber of {G.name or 'group'} is not simplicial: "
            f"{len(normals)} facets vs {len(rays)} rays"
        )
    pairing = rays @ normals.T
    ordered = np.zeros_like(rays)
    used = set()
    for k in range(len(normals)):
        candidates = [
            j
            for j in range(len(rays))
            if j not in used
            and pairing[j, k] > 1e-7
            and np.all(np.abs(np.delete(pairing[j], k)) <= 1e-7)
        ]
        if len(candidates) != 1:
            raise NotCoxeterError("chamber rays do not pair dually with its facet normals")
        ordered[k] = rays[candidates[0]]
        used.add(candidates[0])
    return ChamberData(simple_normals=normals, fundamental_rays=ordered, base_regular=v_reg)


def hull_from_dual_cones(
    G: FiniteGroup, v, ch: ChamberData, tol: Tolerance = DEFAULT_TOL
) -> Polytope:
    """Reconstruct the orbit hull of a chamber point from halfspaces alone.

    The hull is the intersection over all group elements g of the shifted
    dual chamber cone ``g(v - C*)``, i.e. the region
    ``<y, g ray_k> <= <v, ray_k>`` for every g and every fundamental ray,
    pinned to the affine slice ``<y, g l> = <v, l>`` for the chamber's
    lineality directions.  This path never looks at the orbit points, so it
    can be cross-checked against the direct orbit hull.
    """
    v = as_vector(v, G.dim)
    margins = ch.simple_normals @ v
    if len(margins) and np.min(margins) < -tol.eps_eq:
        raise NotInChamberError("vector lies outside the closed chamber")

    rows = []
    offs = []
    for g in G.elements:
        rows.append(ch.fundamental_rays @ g.T)
        offs.append(ch.fundamental_rays @ v)
    # Non-essential actions leave a lineality subspace; pin its coordinates.
    _, svals, vt = np.linalg.svd(ch.simple_normals, full_matrices=True)
    rank = int(np.sum(svals > tol.eps_rank))
    for l in vt[rank:]:
        for g in G.elements:
            gl = g @ l
            rows.append(np.array([gl, -gl]))
            offs.append(np.array([l @ v, -(l @ v)]))

    A = np.vstack(rows)
    b = np.concatenate(offs)
    keyed = ToleranceBuckets(tol)
    keep = []
    for i in range(len(A)):
        _, inserted = keyed.insert(np.r_[A[i], b[i]])
        if inserted:
            keep.append(i)
    box = 2.0 * float(np.linalg.norm(v)) + 1.0
    return polytope_from_halfspaces(A[keep], b[keep], tol, box=box)


def criterion_peak(
    G: FiniteGroup, v_reg, test_points, tol: Tolerance = DEFAULT_TOL
) -> tuple[bool, np.ndarray | None]:
    """Peak criterion: the functional of a regular vector peaks on each sampled orbit.

    A peak means a unique maximizing orbit point; the hull's peak set is a
    single point exactly when the orbit's maximizer set is.  Returns the
    first orbit base with a tied maximum as witness.  This is a
    falsification-only sample of a statement about all orbits.
    """
    v_reg = as_vector(v_reg, G.dim)
    if not is_regular(G, v_reg, tol):
        raise NotRegularError("the peak criterion requires a regular base vector")
    for u in test_points:
        u = as_vector(u, G.dim)
        pts = orbit(G, u, tol).points
        values = pts @ v_reg
        tied = int(np.sum(values >= values.max() - tol.eps_eq))
        if tied > 1:
            return False, u
    return True, None


def criterion_local_cone(
    G: FiniteGroup,
    v_reg,
    radius: float | None = None,
    n_samples: int = 25,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[bool, np.ndarray | None]:
    """Local cone stability: orbit cones are constant near a regular vector.

    The default radius is a quarter of the distance from ``v_reg`` to the
    nearest wall of its own cone, which keeps the probe scale-free.
    """
    v_reg = as_vector(v_reg, G.dim)
    if not is_regular(G, v_reg, tol):
        raise NotRegularError("local cone criterion requires a regular base vector")
    base = orbit_cone(G, v_reg, tol)
    if radius is None:
        if len(base.halfspace_normals):
            radius = 0.25 * float(np.min(base.halfspace_normals @ v_reg))
        else:
            radius = 0.25 * float(np.linalg.norm(v_reg))
    rng = np.random.default_rng(seed)
    for _ in range(n_samples):
        x = rng.standard_normal(G.dim)
        x /= np.linalg.norm(x)
        u = v_reg + x * radius * rng.uniform() ** (1.0 / G.dim)
        if not cone_equal(orbit_cone(G, u, tol), base, tol):
            return False, u
    return True, None


def sp_check_pair(
    G: FiniteGroup, u, v, tol: Tolerance = DEFAULT_TOL
) -> tuple[bool, np.ndarray | None]:
    """Is hull(O_u) + hull(O_v) itself an orbit hull?

    Scans orbit representatives v' of v for one with
    ``hull(O_u) + hull(O_v) = hull(O_(u+v'))``.  Scanning v' with u fixed
    suffices: every vertex of the sum is a sum of orbit points and the sum
    is group-invariant, so if it equals an orbit hull the base is u + v' up
    to the action.  Candidates are ordered by decreasing ``<u, v'>`` since a
    successful representative maximizes that pairing; first hit wins.
    """
    u = as_vector(u, G.dim)
    v = as_vector(v, G.dim)
    total = minkowski_sum(hull(orbit(G, u, tol).points, tol), hull(orbit(G, v, tol).points, tol), tol)
    candidates = orbit(G, v, tol).points
    order = np.argsort(-(candidates @ u), kind="stable")
    for idx in order:
        v_prime = candidates[idx]
        candidate_hull = hull(orbit(G, u + v_prime, tol).points, tol)
        if polytope_equal(total, candidate_hull, tol):
            return True, v_prime
    return False, None


def chamber_representative(G: FiniteGroup, cone: PolyhedralCone, x, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orbit point of x lying in the given closed cone (first found)."""
    for p in orbit(G, x, tol).points:
        if cone_contains(cone, p, tol):
            return p
    raise NotInChamberError("no orbit representative found in the cone")


def _wall_midpoints(cone: PolyhedralCone, tol: Tolerance) -> list[np.ndarray]:
    """One relative-interior point per facet of the cone.

    The sum of the extreme rays lying on a facet sits in its relative
    interior; facets carried entirely by the lineality space fall back to a
    lineality direction.
    """
    points = ToleranceBuckets(tol)
    for normal in cone.halfspace_normals:
        on_wall = [r for r in cone.rays if abs(float(r @ normal)) <= 1e-9]
        if on_wall:
            points.insert(unit(np.sum(on_wall, axis=0)))
        elif cone.lineality_dim:
            points.insert(cone.lineality_basis[0])
    return list(points.items)


def sp_equivalence_report(
    G: FiniteGroup,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOL,
    n_random_pairs: int = 25,
    n_local_samples: int = 25,
) -> SPReport:
    """Run the SP check and its three equivalent criteria; demand agreement.

    The SP sample is structured around the places where the property can
    break: wall midpoints of the regular base's cone, its extreme rays, the
    base itself, plus seeded random pairs.  A disagreement among the four
    verdicts raises InconsistentCriteriaError.
    """
    rng = np.random.default_rng(seed)
    v_reg = find_regular(G, seed, tol)
    base_cone = orbit_cone(G, v_reg, tol)

    structured = ToleranceBuckets(tol)
    structured.insert(unit(v_reg))
    for ray in base_cone.rays:
        structured.insert(ray)
    for w in _wall_midpoints(base_cone, tol):
        structured.insert(w)
    probes = list(structured.items)

    pairs = [(a, b) for i, a in enumerate(probes) for b in probes[i:]]
    for _ in range(n_random_pairs):
        pairs.append((rng.standard_normal(G.dim), rng.standard_normal(G.dim)))

    sp_failures = []
    for a, b in pairs:
        ok, _ = sp_check_pair(G, a, b, tol)
        if not ok:
            sp_failures.append({"u": np.asarray(a).tolist(), "v": np.asarray(b).tolist()})
    sp_ok = not sp_failures

    peak_points = probes + [rng.standard_normal(G.dim) for _ in range(n_random_pairs)]
    peak_ok, peak_witness = criterion_peak(G, v_reg, peak_points, tol)

    coxeter_ok = is_reflection_generated(G, tol)

    local_ok, local_witness = criterion_local_cone(
        G, v_reg, n_samples=n_local_samples, seed=seed + 1, tol=tol
    )

    results = {
        "sp": (sp_ok, sp_failures[0] if sp_failures else f"no counterexample found ({len(pairs)} pairs)"),
        "peak_i": (
            peak_ok,
            peak_witness if peak_witness is not None else f"no counterexample found ({len(peak_points)} test points)",
        ),
        "coxeter_ii": (coxeter_ok, None),
        "local_cone_iii": (local_ok, local_witness),
    }
    verdicts = {key: passed for key, (passed, _) in results.items()}
    if len(set(verdicts.values())) != 1:
        raise InconsistentCriteriaError(
            f"criteria disagree for {G.name or 'group'}: {verdicts}"
        )
    witnesses = {
        key: witness for key, (passed, witness) in results.items() if not passed and witness is not None
    }
    return SPReport(
        group=G.name,
        verdict=verdicts["sp"],
        criterion_results=results,
        witnesses=witnesses,
        seed=seed,
    )
