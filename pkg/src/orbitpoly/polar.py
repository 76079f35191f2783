"""Sampled compact-group models and numeric polar-structure checks.

Continuous groups are represented only through seeded samplers plus
analytic Cartan/Weyl data supplied per model; there is no general
Lie-theory engine.  Checks that quantify over a whole group are sampled
and labelled falsification-only: a pass corroborates, a fail refutes.
Where a stated tolerance is unreachable by uniform sampling (meeting a
codimension >= 2 subspace, exact support values), models carry analytic
witness procedures - an aligning rotation, eigen-decomposition, the Weyl
realizations - and the sampled estimate is combined with those witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations
from typing import Callable, Optional

import numpy as np
from scipy.stats import special_ortho_group

from . import coxeter
from .errors import NoCartanDataError
from .group import close_generators
from .numerics import DEFAULT_TOL, Tolerance
from .polytope import hull


@dataclass(frozen=True, eq=False)
class GroupModel:
    """A sampled compact-group action with candidate Cartan data.

    sampler(seed, count) yields orthogonal matrices acting on the ambient
    space; tangent_basis_at(v) spans the orbit tangent space at v.
    cartan_basis rows are an orthonormal basis of the candidate subspace;
    weyl_elements act on its coordinates and weyl_witnesses are ambient
    group elements realizing them.  align_to_cartan(v), when present,
    returns a group element moving v into the candidate subspace.
    """

    name: str
    ambient_dim: int
    sampler: Callable[[int, int], np.ndarray]
    tangent_basis_at: Callable[[np.ndarray], np.ndarray]
    cartan_basis: Optional[np.ndarray]
    weyl_elements: Optional[np.ndarray] = None
    weyl_witnesses: Optional[np.ndarray] = None
    align_to_cartan: Optional[Callable[[np.ndarray], np.ndarray]] = None
    is_polar_expected: bool = True
    falsify_pair: Optional[tuple] = None

    def chart(self, x) -> np.ndarray:
        """Coordinates of (the projection of) an ambient vector in the Cartan chart."""
        return self.cartan_basis @ np.asarray(x, dtype=float)

    def ambient(self, c) -> np.ndarray:
        return np.asarray(c, dtype=float) @ self.cartan_basis

    def cartan_point(self, seed: int) -> np.ndarray:
        """Seeded generic point of the candidate Cartan subspace."""
        if self.cartan_basis is None:
            raise NoCartanDataError(f"model {self.name} has no Cartan data")
        rng = np.random.default_rng(seed)
        return self.ambient(rng.standard_normal(len(self.cartan_basis)))


@dataclass(frozen=True, eq=False)
class PolarCheckReport:
    check: str
    model: str
    passed: bool
    max_violation: float
    threshold: float
    n_samples: int
    seed: int
    details: dict

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "model": self.model,
            "passed": self.passed,
            "max_violation": self.max_violation,
            "threshold": self.threshold,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# Rotation-group plumbing

_SKEW_BASIS = np.array(
    [
        [[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]],
        [[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
        [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
    ]
)


def _sample_rotations(seed: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    mats = special_ortho_group.rvs(3, size=count, random_state=rng)
    return np.asarray(mats).reshape(count, 3, 3)


def _rotation_onto_e1(v: np.ndarray) -> np.ndarray:
    """Rotation carrying v/|v| onto the first coordinate axis (Rodrigues)."""
    n = float(np.linalg.norm(v))
    if n < 1e-14:
        return np.eye(3)
    u = v / n
    c = float(u[0])
    if c > 1.0 - 1e-14:
        return np.eye(3)
    if c < -1.0 + 1e-14:
        return np.diag([-1.0, 1.0, -1.0])
    axis = np.cross(u, np.array([1.0, 0.0, 0.0]))
    k = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    s2 = float(axis @ axis)
    return np.eye(3) + k + k @ k * ((1.0 - c) / s2)


# ---------------------------------------------------------------------------
# Symmetric traceless 3x3 matrices as a 5-dim orthogonal representation

def _sym_basis() -> np.ndarray:
    e = np.zeros((5, 3, 3))
    e[0] = np.diag([1.0, -1.0, 0.0]) / np.sqrt(2.0)
    e[1] = np.diag([1.0, 1.0, -2.0]) / np.sqrt(6.0)
    r2 = 1.0 / np.sqrt(2.0)
    e[2][0, 1] = e[2][1, 0] = r2
    e[3][0, 2] = e[3][2, 0] = r2
    e[4][1, 2] = e[4][2, 1] = r2
    return e


_SYM_BASIS = _sym_basis()


def sym_vec(matrix) -> np.ndarray:
    """Coordinates of a symmetric traceless 3x3 matrix in the orthonormal basis."""
    return np.einsum("iab,ab->i", _SYM_BASIS, np.asarray(matrix, dtype=float))


def sym_mat(coords) -> np.ndarray:
    return np.einsum("i,iab->ab", np.asarray(coords, dtype=float), _SYM_BASIS)


def conjugation_action(rotations: np.ndarray) -> np.ndarray:
    """5x5 matrices of A -> R A R^T on the symmetric traceless space, batched."""
    rotations = np.asarray(rotations, dtype=float).reshape(-1, 3, 3)
    transformed = np.einsum("sac,jcd,sbd->sjab", rotations, _SYM_BASIS, rotations)
    return np.einsum("iab,sjab->sij", _SYM_BASIS, transformed)


# ---------------------------------------------------------------------------
# Built-in models

def so3_standard() -> GroupModel:
    """Rotations of 3-space; candidate subspace is the first coordinate axis.

    The residual Weyl action on the axis is the sign flip, realized by the
    half-turn about the middle axis.  Alignment witness: the rotation
    carrying v onto the axis.
    """
    e1 = np.array([[1.0, 0.0, 0.0]])

    def tangent(v):
        return _SKEW_BASIS @ np.asarray(v, dtype=float)

    return GroupModel(
        name="so3_standard",
        ambient_dim=3,
        sampler=_sample_rotations,
        tangent_basis_at=tangent,
        cartan_basis=e1,
        weyl_elements=np.array([[[1.0]], [[-1.0]]]),
        weyl_witnesses=np.array([np.eye(3), np.diag([-1.0, 1.0, -1.0])]),
        align_to_cartan=_rotation_onto_e1,
        is_polar_expected=True,
    )


def _sym3_sampler(seed: int, count: int) -> np.ndarray:
    return conjugation_action(_sample_rotations(seed, count))


def _sym3_tangent(v) -> np.ndarray:
    a = sym_mat(v)
    return np.array([sym_vec(x @ a - a @ x) for x in _SKEW_BASIS])


def _sym3_align(v) -> np.ndarray:
    # Eigen-decomposition supplies the exact diagonalizing rotation.
    a = sym_mat(v)
    _, q = np.linalg.eigh(a)
    r = q.T
    if np.linalg.det(r) < 0:
        r = r * np.array([[-1.0], [1.0], [1.0]])
    return conjugation_action(r[None])[0]


def _sym3_weyl() -> tuple[np.ndarray, np.ndarray]:
    diag_vecs = np.array([np.diag(_SYM_BASIS[0]), np.diag(_SYM_BASIS[1])])  # (2, 3)
    elements = []
    witnesses = []
    for p in permutations((0, 1, 2)):
        p = list(p)
        permuted = diag_vecs[:, p]  # entry k of row i becomes diag_vecs[i][p[k]]
        w = diag_vecs @ permuted.T  # w[i, j] = <diag_i, permuted diag_j>
        elements.append(w)
        pm = np.eye(3)[p]
        sign = float(np.linalg.det(pm))
        witnesses.append(conjugation_action((pm @ np.diag([sign, 1.0, 1.0]))[None])[0])
    return np.array(elements), np.array(witnesses)


def sym3_traceless() -> GroupModel:
    """Rotations acting by conjugation on symmetric traceless 3x3 matrices.

    The candidate subspace is the diagonal matrices; the residual Weyl
    action permutes the three diagonal entries and is realized by signed
    permutation rotations.  Alignment witness: eigen-decomposition.
    """
    elements, witnesses = _sym3_weyl()
    return GroupModel(
        name="sym3_traceless",
        ambient_dim=5,
        sampler=_sym3_sampler,
        tangent_basis_at=_sym3_tangent,
        cartan_basis=np.array([sym_vec(_SYM_BASIS[0]), sym_vec(_SYM_BASIS[1])]),
        weyl_elements=elements,
        weyl_witnesses=witnesses,
        align_to_cartan=_sym3_align,
        is_polar_expected=True,
    )


def _hopf_sampler(seed: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, count)
    c, s = np.cos(theta), np.sin(theta)
    out = np.zeros((count, 4, 4))
    out[:, 0, 0] = c
    out[:, 0, 1] = -s
    out[:, 1, 0] = s
    out[:, 1, 1] = c
    out[:, 2, 2] = c
    out[:, 2, 3] = -s
    out[:, 3, 2] = s
    out[:, 3, 3] = c
    return out


_HOPF_J = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)


def _hopf_align(v) -> np.ndarray:
    # Rotate the first complex coordinate onto the real axis; if it vanishes
    # the whole orbit already lies in the candidate subspace.
    v = np.asarray(v, dtype=float)
    theta = -np.arctan2(v[1], v[0]) if np.hypot(v[0], v[1]) > 1e-14 else 0.0
    return _hopf_sampler_theta(theta)


def _hopf_sampler_theta(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    block = np.array([[c, -s], [s, c]])
    out = np.zeros((4, 4))
    out[:2, :2] = block
    out[2:, 2:] = block
    return out


def hopf_circle() -> GroupModel:
    """Simultaneous plane rotations of R^4 (one circle acting on two planes).

    The documented candidate subspace spans coordinates (x1, x2, y2) with
    coordinate order (x1, y1, x2, y2).  Every orbit does meet it, but the
    orbit tangents are not orthogonal to it, and no valid Weyl data exists:
    this is the non-polar negative control.
    """
    basis = np.zeros((3, 4))
    basis[0, 0] = 1.0
    basis[1, 2] = 1.0
    basis[2, 3] = 1.0

    def tangent(v):
        return np.array([_HOPF_J @ np.asarray(v, dtype=float)])

    return GroupModel(
        name="hopf_circle",
        ambient_dim=4,
        sampler=_hopf_sampler,
        tangent_basis_at=tangent,
        cartan_basis=basis,
        weyl_elements=None,
        weyl_witnesses=None,
        align_to_cartan=_hopf_align,
        is_polar_expected=False,
        falsify_pair=(np.array([1.0, 0.0, 0.0, 0.0]), np.array([0.0, 0.0, 1.0, 0.0])),
    )


MODEL_BUILDERS = {
    "so3_standard": so3_standard,
    "sym3_traceless": sym3_traceless,
    "hopf_circle": hopf_circle,
}


def get_model(name: str) -> GroupModel:
    try:
        return MODEL_BUILDERS[name]()
    except KeyError:
        raise KeyError(
            f"unknown model {name!r}; choose from {sorted(MODEL_BUILDERS)}"
        ) from None


def with_candidate_basis(model: GroupModel, basis) -> GroupModel:
    """Model with a replacement candidate subspace (drops witness data)."""
    basis = np.atleast_2d(np.asarray(basis, dtype=float))
    return replace(
        model,
        cartan_basis=basis,
        weyl_elements=None,
        weyl_witnesses=None,
        align_to_cartan=None,
    )


# ---------------------------------------------------------------------------
# Checks

def _require_cartan(model: GroupModel):
    if model.cartan_basis is None:
        raise NoCartanDataError(f"model {model.name} has no Cartan data")


def _require_weyl(model: GroupModel):
    _require_cartan(model)
    if model.weyl_elements is None or model.weyl_witnesses is None:
        raise NoCartanDataError(f"model {model.name} has no Weyl data")


def check_cartan_orthogonality(
    model: GroupModel, n_samples: int = 200, seed: int = 0, threshold: float = 1e-8
) -> PolarCheckReport:
    """Orbit tangents at candidate-subspace points must be orthogonal to it.

    Reports the worst normalized inner product between a tangent direction
    and a basis direction over seeded subspace points.
    """
    _require_cartan(model)
    rng = np.random.default_rng(seed)
    basis = model.cartan_basis
    worst = 0.0
    for _ in range(n_samples):
        u = model.ambient(rng.standard_normal(len(basis)))
        tangents = np.atleast_2d(model.tangent_basis_at(u))
        norms = np.linalg.norm(tangents, axis=1)
        keep = norms > 1e-12
        if not np.any(keep):
            continue
        overlaps = np.abs(tangents[keep] @ basis.T) / norms[keep, None]
        worst = max(worst, float(overlaps.max()))
    return PolarCheckReport(
        check="cartan_orthogonality",
        model=model.name,
        passed=worst < threshold,
        max_violation=worst,
        threshold=threshold,
        n_samples=n_samples,
        seed=seed,
        details={},
    )


def check_orbits_meet_cartan(
    model: GroupModel,
    n_vectors: int = 25,
    seed: int = 0,
    n_group_samples: int = 2000,
    threshold: float = 1e-3,
) -> PolarCheckReport:
    """Every sampled orbit must come within ``threshold`` of the candidate subspace.

    Falsification-only when driven by sampling alone; models with an
    alignment witness contribute an exact meeting point as well.
    """
    _require_cartan(model)
    basis = model.cartan_basis
    mats = model.sampler(seed, n_group_samples)
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for _ in range(n_vectors):
        v = rng.standard_normal(model.ambient_dim)
        images = mats @ v
        if model.align_to_cartan is not None:
            images = np.vstack([images, (model.align_to_cartan(v) @ v)[None, :]])
        off = images - (images @ basis.T) @ basis
        best = float(np.linalg.norm(off, axis=1).min())
        worst = max(worst, best)
    return PolarCheckReport(
        check="orbits_meet_cartan",
        model=model.name,
        passed=worst < threshold,
        max_violation=worst,
        threshold=threshold,
        n_samples=n_vectors * n_group_samples,
        seed=seed,
        details={"used_witness": model.align_to_cartan is not None},
    )


def check_projection_matches_weyl_hull(
    model: GroupModel,
    a=None,
    n_samples: int = 1000,
    seed: int = 0,
    threshold: float = 1e-8,
    tol: Tolerance = DEFAULT_TOL,
) -> PolarCheckReport:
    """Projected orbit points land inside the hull of the Weyl orbit.

    Containment one way is sampled (projections of group images of a); the
    reverse containment is exact: each Weyl vertex is realized as the
    projection of its own witness image.
    """
    _require_weyl(model)
    if a is None:
        a = model.cartan_point(seed)
    a = np.asarray(a, dtype=float)
    a_chart = model.chart(a)
    weyl_points = np.array([w @ a_chart for w in model.weyl_elements])
    weyl_hull = hull(weyl_points, tol)

    mats = model.sampler(seed + 1, n_samples)
    chart_pts = (mats @ a) @ model.cartan_basis.T

    centered = chart_pts - weyl_hull.affine_origin
    if weyl_hull.affine_dim < len(a_chart):
        if weyl_hull.affine_dim == 0:
            off = centered
        else:
            off = centered - (centered @ weyl_hull.affine_basis.T) @ weyl_hull.affine_basis
        aff_res = np.abs(off).max(axis=1) if len(off) else np.zeros(0)
    else:
        aff_res = np.zeros(len(chart_pts))
    if len(weyl_hull.facet_normals):
        facet_res = (chart_pts @ weyl_hull.facet_normals.T - weyl_hull.facet_offsets).max(axis=1)
    else:
        facet_res = np.zeros(len(chart_pts))
    violation = float(np.maximum(aff_res, np.maximum(facet_res, 0.0)).max())

    realization = 0.0
    for w, witness in zip(model.weyl_elements, model.weyl_witnesses):
        realized = model.chart(witness @ a)
        realization = max(realization, float(np.max(np.abs(realized - w @ a_chart))))

    return PolarCheckReport(
        check="projection_matches_weyl_hull",
        model=model.name,
        passed=(violation <= threshold) and (realization <= 1e-10),
        max_violation=violation,
        threshold=threshold,
        n_samples=n_samples,
        seed=seed,
        details={
            "hull_vertices": int(weyl_hull.n_vertices),
            "vertex_realization_error": realization,
        },
    )


def check_cartan_slice_is_weyl_orbit(
    model: GroupModel,
    a=None,
    n_group_samples: int = 2000,
    seed: int = 0,
    near_tol: float = 1e-6,
    match_tol: float = 1e-5,
) -> PolarCheckReport:
    """Orbit points found inside the candidate subspace must be Weyl images.

    Sampled side is falsification-only (random images rarely land in the
    slice); the Weyl witnesses are added to the sample so the slice is
    populated, and each Weyl image must be realized exactly.
    """
    _require_weyl(model)
    if a is None:
        a = model.cartan_point(seed)
    a = np.asarray(a, dtype=float)
    a_chart = model.chart(a)
    weyl_points = np.array([w @ a_chart for w in model.weyl_elements])

    mats = np.concatenate([model.sampler(seed + 1, n_group_samples), model.weyl_witnesses])
    images = mats @ a
    off = images - (images @ model.cartan_basis.T) @ model.cartan_basis
    near = np.linalg.norm(off, axis=1) <= near_tol

    worst = 0.0
    n_violations = 0
    chart_pts = images[near] @ model.cartan_basis.T
    for p in chart_pts:
        gap = float(np.linalg.norm(weyl_points - p, axis=1).min())
        worst = max(worst, gap)
        if gap > match_tol:
            n_violations += 1

    return PolarCheckReport(
        check="cartan_slice_is_weyl_orbit",
        model=model.name,
        passed=n_violations == 0,
        max_violation=worst,
        threshold=match_tol,
        n_samples=len(mats),
        seed=seed,
        details={"n_points_in_slice": int(near.sum())},
    )


def check_slice_support_match(
    model: GroupModel,
    a=None,
    b=None,
    n_dirs: int = 200,
    seed: int = 0,
    threshold: float = 1e-6,
    n_group_samples: int = 500,
) -> PolarCheckReport:
    """Support functions: slice of the orbit-hull sum vs sum of Weyl hulls.

    The left side is the sampled support of the two orbits in directions of
    the candidate subspace (support of a Minkowski sum is the sum of
    supports); the Weyl witnesses make the sampled maximum exact.  The
    right side is computed independently from the finite Weyl action.
    """
    _require_weyl(model)
    if a is None:
        a = model.cartan_point(seed)
    if b is None:
        b = model.cartan_point(seed + 7)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)

    rng = np.random.default_rng(seed + 3)
    dirs = rng.standard_normal((n_dirs, len(model.cartan_basis)))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    ambient_dirs = dirs @ model.cartan_basis

    mats = np.concatenate([model.sampler(seed + 4, n_group_samples), model.weyl_witnesses])
    worst = 0.0
    lhs_total = np.zeros(n_dirs)
    rhs_total = np.zeros(n_dirs)
    for point in (a, b):
        images = mats @ point
        lhs_total += (images @ ambient_dirs.T).max(axis=0)
        weyl_images = np.array([w @ model.chart(point) for w in model.weyl_elements])
        rhs_total += (weyl_images @ dirs.T).max(axis=0)
    worst = float(np.max(np.abs(lhs_total - rhs_total)))

    return PolarCheckReport(
        check="slice_support_match",
        model=model.name,
        passed=worst < threshold,
        max_violation=worst,
        threshold=threshold,
        n_samples=n_dirs,
        seed=seed,
        details={"n_group_samples": n_group_samples},
    )


def _affine_rank(points: np.ndarray, tol: Tolerance) -> int:
    centered = points - points.mean(axis=0)
    svals = np.linalg.svd(centered, compute_uv=False)
    return int(np.sum(svals > tol.eps_rank))


def sp_falsify_nonpolar(
    model: GroupModel,
    u=None,
    v=None,
    n_group_samples: int = 64,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> PolarCheckReport:
    """Dimension obstruction to the semigroup property.

    If the Minkowski sum of two sampled orbit hulls has a strictly larger
    affine dimension than every sampled orbit hull, the sum cannot be an
    orbit hull and the semigroup property fails.
    """
    if u is None or v is None:
        if model.falsify_pair is not None:
            u, v = model.falsify_pair
        else:
            rng = np.random.default_rng(seed + 9)
            u = rng.standard_normal(model.ambient_dim)
            v = rng.standard_normal(model.ambient_dim)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)

    mats = np.concatenate([model.sampler(seed, n_group_samples), np.eye(model.ambient_dim)[None]])
    orbit_u = mats @ u
    orbit_v = mats @ v
    sums = (orbit_u[:, None, :] + orbit_v[None, :, :]).reshape(-1, model.ambient_dim)
    sum_dim = _affine_rank(sums, tol)

    rng = np.random.default_rng(seed + 10)
    orbit_dims = [_affine_rank(orbit_u, tol), _affine_rank(orbit_v, tol)]
    for _ in range(4):
        w = rng.standard_normal(model.ambient_dim)
        orbit_dims.append(_affine_rank(mats @ w, tol))
    max_orbit_dim = max(orbit_dims)
    sp_impossible = sum_dim > max_orbit_dim

    return PolarCheckReport(
        check="minkowski_dimension_obstruction",
        model=model.name,
        passed=not sp_impossible,
        max_violation=float(sum_dim - max_orbit_dim),
        threshold=0.0,
        n_samples=n_group_samples,
        seed=seed,
        details={
            "sum_affine_dim": sum_dim,
            "max_orbit_affine_dim": max_orbit_dim,
            "orbit_affine_dims": orbit_dims,
            "sp_impossible": sp_impossible,
        },
    )


def weyl_is_coxeter(model: GroupModel, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Close the Weyl elements into a finite group and test reflection generation."""
    _require_weyl(model)
    weyl_group = close_generators(
        list(model.weyl_elements), tol=tol, name=f"weyl({model.name})"
    )
    return coxeter.is_reflection_generated(weyl_group, tol)


def run_battery(
    model: GroupModel, samples: int = 1000, seed: int = 42, tol: Tolerance = DEFAULT_TOL
) -> tuple[bool, dict]:
    """Full check battery for one model; returns (verdict, reports).

    The verdict is True when nothing contradicts the model being polar with
    a reflection-generated Weyl group (the hypothesis under which orbit
    hulls form a Minkowski semigroup).
    """
    reports: dict[str, object] = {}
    reports["cartan_orthogonality"] = check_cartan_orthogonality(model, 200, seed)
    reports["orbits_meet_cartan"] = check_orbits_meet_cartan(
        model, 25, seed, n_group_samples=min(samples, 2000)
    )
    reports["minkowski_dimension_obstruction"] = sp_falsify_nonpolar(model, seed=seed, tol=tol)

    has_weyl = model.weyl_elements is not None and model.weyl_witnesses is not None
    if has_weyl:
        reports["projection_matches_weyl_hull"] = check_projection_matches_weyl_hull(
            model, n_samples=samples, seed=seed, tol=tol
        )
        reports["cartan_slice_is_weyl_orbit"] = check_cartan_slice_is_weyl_orbit(
            model, n_group_samples=2000, seed=seed
        )
        reports["slice_support_match"] = check_slice_support_match(model, seed=seed)
        reports["weyl_is_coxeter"] = weyl_is_coxeter(model, tol)
    else:
        for key in ("projection_matches_weyl_hull", "cartan_slice_is_weyl_orbit", "slice_support_match"):
            reports[key] = {"skipped": "no Weyl data"}
        reports["weyl_is_coxeter"] = None

    verdict = (
        reports["cartan_orthogonality"].passed
        and reports["orbits_meet_cartan"].passed
        and reports["minkowski_dimension_obstruction"].passed
        and has_weyl
        and bool(reports["weyl_is_coxeter"])
        and reports["projection_matches_weyl_hull"].passed
        and reports["cartan_slice_is_weyl_orbit"].passed
        and reports["slice_support_match"].passed
    )
    return verdict, reports
