"""Adiabatic entangling power of Hamiltonian families and of single unitaries.

Suprema over continuous parameter manifolds are estimated by a dense grid
followed by multi-start Nelder-Mead refinement; every reported value is a
lower bound on the true supremum and carries the witness attaining it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from . import entanglement, linalg
from .errors import DegeneracyError, DimensionMismatchError, NotUnitaryError
from .linalg import BipartiteSplit

DEFAULT_CLUSTER_TOL = 1e-8
DEFAULT_GRID = 41
DEFAULT_STARTS = 8


@dataclass(frozen=True)
class IsoSpectralForm:
    """Realization H(lam) = U(lam) H0 U(lam)^dag of an iso-spectral family."""

    base_energies: np.ndarray            # ascending, distinct
    base_vectors: np.ndarray             # orthonormal columns, one per level
    unitary: Callable[[np.ndarray], np.ndarray]
    base_point: np.ndarray               # parameter point whose eigenvectors are products


@dataclass(frozen=True)
class HamiltonianFamily:
    """Parametric family of Hermitian operators on a bipartite space."""

    parameter_dim: int
    bounds: np.ndarray                   # (n, 2) box, bounds[:,0] <= bounds[:,1]
    evaluate: Callable[[np.ndarray], np.ndarray]
    split: BipartiteSplit
    iso_spectral_form: IsoSpectralForm | None = None

    @property
    def dim(self) -> int:
        return self.split.dim

    def eigensystem(self, lam, cluster_tol: float = DEFAULT_CLUSTER_TOL):
        """(energies ascending, eigenvector columns) at a parameter point.

        Iso-spectral families use the exact form U(lam) V0; generic families
        diagonalize evaluate(lam) and enforce nondegeneracy.
        """
        lam = np.asarray(lam, dtype=float)
        if self.iso_spectral_form is not None:
            iso = self.iso_spectral_form
            return iso.base_energies, iso.unitary(lam) @ iso.base_vectors
        vals, vecs = linalg.eig_hermitian(self.evaluate(lam))
        _check_gaps(vals, cluster_tol, lam)
        return vals, vecs


def _check_gaps(vals, cluster_tol, point):
    scale = max(1.0, float(np.max(np.abs(vals))))
    if len(vals) > 1 and np.min(np.diff(vals)) < cluster_tol * scale:
        raise DegeneracyError(f"eigenvalue gap collapsed at {point}", point=point)


def grid_points(bounds, per_axis: int) -> np.ndarray:
    """Cartesian grid over a box; zero-width axes contribute a single point."""
    axes = []
    for lo, hi in np.asarray(bounds, dtype=float):
        if hi - lo < 1e-15:
            axes.append(np.array([lo]))
        else:
            axes.append(np.linspace(lo, hi, per_axis))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _entropies_many(states: np.ndarray, split: BipartiteSplit) -> np.ndarray:
    """Entanglement entropy of each row of a (n, D) array of pure states."""
    if split.dim_a == 2 and split.dim_b == 2:
        c = 2.0 * np.abs(states[:, 0] * states[:, 3] - states[:, 1] * states[:, 2])
        c = np.minimum(c, 1.0)
        lam = 0.5 * (1.0 + np.sqrt(np.maximum(0.0, 1.0 - c * c)))
        out = np.zeros(len(states))
        mask = (lam > 0) & (lam < 1)
        l1, l2 = lam[mask], 1.0 - lam[mask]
        out[mask] = -(l1 * np.log2(l1) + l2 * np.log2(l2))
        return out
    return np.array([entanglement.entropy(s, split) for s in states])


def eigenstate_track(fam: HamiltonianFamily, level: int, path,
                     cluster_tol: float = DEFAULT_CLUSTER_TOL) -> list:
    """Gauge-aligned eigenvectors of one energy level along a parameter path.

    Each vector's global phase is fixed so its overlap with the previous one
    is real positive.
    """
    out = []
    prev = None
    for lam in path:
        _, vecs = fam.eigensystem(lam, cluster_tol)
        v = vecs[:, level]
        if prev is not None:
            ov = np.vdot(prev, v)
            if abs(ov) > 0:
                v = v * (ov.conjugate() / abs(ov))
        out.append(v)
        prev = v
    return out


@dataclass(frozen=True)
class SweepResult:
    points: np.ndarray                   # (n, parameter_dim)
    entropies: np.ndarray                # (n, D) per-level eigenstate entropies
    argmax_level: int
    argmax_point: np.ndarray
    argmax_value: float


def entropy_sweep(fam: HamiltonianFamily, grid_per_axis: int = DEFAULT_GRID,
                  cluster_tol: float = DEFAULT_CLUSTER_TOL,
                  sample_points=None) -> SweepResult:
    """Per-level eigenstate entanglement entropy over a parameter grid."""
    pts = grid_points(fam.bounds, grid_per_axis) if sample_points is None \
        else np.asarray(sample_points, dtype=float)
    ent = np.empty((len(pts), fam.dim))
    for k, lam in enumerate(pts):
        _, vecs = fam.eigensystem(lam, cluster_tol)
        ent[k] = _entropies_many(vecs.T, fam.split)
    flat = np.argmax(ent)
    i, j = np.unravel_index(flat, ent.shape)
    return SweepResult(pts, ent, int(j), pts[i], float(ent[i, j]))


@dataclass(frozen=True)
class PowerEstimate:
    value: float
    level: int
    point_hi: np.ndarray                 # parameter point of the high-entropy witness
    point_lo: np.ndarray                 # baseline point (lam' of the two-point difference)
    method: str                          # "grid" or "grid+refine"
    grid_resolution: int
    product_base: bool                   # True when the baseline has certified product eigenvectors


def _level_entropy_objective(fam, level, cluster_tol, sign=1.0):
    lo = fam.bounds[:, 0]
    hi = fam.bounds[:, 1]

    def objective(x):
        lam = np.clip(x, lo, hi)
        _, vecs = fam.eigensystem(lam, cluster_tol)
        return sign * float(_entropies_many(vecs[:, [level]].T, fam.split)[0])

    return objective, lambda x: np.clip(x, lo, hi)


def _refine(objective, clip, x0, xatol=1e-6):
    res = minimize(objective, np.asarray(x0, dtype=float), method="Nelder-Mead",
                   options={"xatol": xatol, "fatol": 1e-12, "maxiter": 2000,
                            "maxfev": 4000})
    return clip(res.x), float(res.fun)


def _top_points(points, scores, count):
    order = np.argsort(scores)[::-1]
    return [points[i] for i in order[:count]]


def has_product_base(fam: HamiltonianFamily, tol: float = 1e-9) -> bool:
    """Certify that eigenvectors at the iso-form base point are product states."""
    iso = fam.iso_spectral_form
    if iso is None:
        return False
    _, vecs = fam.eigensystem(iso.base_point)
    return float(np.max(_entropies_many(vecs.T, fam.split))) <= tol


def adiabatic_entangling_power(fam: HamiltonianFamily,
                               grid_per_axis: int = DEFAULT_GRID,
                               refine: bool = False,
                               cluster_tol: float = DEFAULT_CLUSTER_TOL,
                               starts: int = DEFAULT_STARTS,
                               sample_points=None) -> PowerEstimate:
    """Largest entanglement variation within one eigenstate track.

    When the family is iso-spectral with certified product eigenvectors at
    its base point, the value is the plain maximum of eigenstate entropy
    over the grid (the baseline entropy is zero).  Otherwise the two-point
    difference max - min is taken per level.  ``refine`` polishes the grid
    optimum with multi-start Nelder-Mead.
    """
    sweep = entropy_sweep(fam, grid_per_axis, cluster_tol, sample_points)
    product_base = has_product_base(fam)
    method = "grid+refine" if refine else "grid"

    if product_base:
        level = sweep.argmax_level
        value = sweep.argmax_value
        point_hi = sweep.argmax_point
        point_lo = np.asarray(fam.iso_spectral_form.base_point, dtype=float)
        if refine:
            objective, clip = _level_entropy_objective(fam, level, cluster_tol, sign=-1.0)
            for x0 in _top_points(sweep.points, sweep.entropies[:, level], starts):
                x, f = _refine(objective, clip, x0)
                if -f > value:
                    value, point_hi = -f, x
        return PowerEstimate(float(value), level, point_hi, point_lo,
                             method, grid_per_axis, True)

    spans = sweep.entropies.max(axis=0) - sweep.entropies.min(axis=0)
    level = int(np.argmax(spans))
    col = sweep.entropies[:, level]
    hi_val, lo_val = float(col.max()), float(col.min())
    point_hi = sweep.points[int(np.argmax(col))]
    point_lo = sweep.points[int(np.argmin(col))]
    if refine:
        obj_max, clip = _level_entropy_objective(fam, level, cluster_tol, sign=-1.0)
        for x0 in _top_points(sweep.points, col, starts):
            x, f = _refine(obj_max, clip, x0)
            if -f > hi_val:
                hi_val, point_hi = -f, x
        obj_min, clip = _level_entropy_objective(fam, level, cluster_tol, sign=1.0)
        for x0 in _top_points(sweep.points, -col, starts):
            x, f = _refine(obj_min, clip, x0)
            if f < lo_val:
                lo_val, point_lo = f, x
    return PowerEstimate(float(hi_val - lo_val), level, point_hi, point_lo,
                         method, grid_per_axis, False)


# ---------------------------------------------------------------------------
# Entangling power of a single unitary over product inputs.

def _factor_param_count(d: int) -> int:
    return 2 if d == 2 else 2 * d - 2


def _factor_state(params, d: int) -> np.ndarray:
    if d == 2:
        theta, phi = params
        return np.array([np.cos(theta / 2.0),
                         np.exp(1j * phi) * np.sin(theta / 2.0)])
    amps = np.empty(d, dtype=complex)
    amps[0] = 1.0
    amps[1:] = params[0::2] + 1j * params[1::2]
    return amps / np.linalg.norm(amps)


def _factor_params(state, d: int):
    """Invert the factor chart; returns None when the state is near a chart pole."""
    if d == 2:
        a0, a1 = state
        theta = 2.0 * np.arctan2(abs(a1), abs(a0))
        phi = float(np.angle(a1) - np.angle(a0)) if abs(a1) > 0 else 0.0
        return np.array([theta, phi])
    if abs(state[0]) < 0.05:
        return None
    z = state[1:] / state[0]
    out = np.empty(2 * d - 2)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def product_state(params, split: BipartiteSplit) -> np.ndarray:
    na = _factor_param_count(split.dim_a)
    a = _factor_state(params[:na], split.dim_a)
    b = _factor_state(params[na:], split.dim_b)
    return np.kron(a, b)


def _random_product_bank(rng, split: BipartiteSplit, count: int) -> np.ndarray:
    a = rng.standard_normal((count, split.dim_a)) + 1j * rng.standard_normal((count, split.dim_a))
    b = rng.standard_normal((count, split.dim_b)) + 1j * rng.standard_normal((count, split.dim_b))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    return np.einsum("ni,nj->nij", a, b).reshape(count, split.dim), a, b


@dataclass(frozen=True)
class UnitaryPowerResult:
    value: float                          # max entanglement entropy reached (lower bound)
    concurrence: float | None             # witness concurrence, two-qubit case only
    input_state: np.ndarray               # witness product input
    output_state: np.ndarray

    def __float__(self):
        return self.value


def unitary_entangling_power(u, split: BipartiteSplit,
                             starts: int = DEFAULT_STARTS,
                             seed: int = 0,
                             coarse: int = 512,
                             tol: float = 1e-10) -> UnitaryPowerResult:
    """Maximum entanglement entropy of U applied to product states.

    Coarse random product sampling seeds multi-start Nelder-Mead over the
    product-state chart (two Bloch angles per qubit factor).  The result is
    a lower bound on the supremum, returned with its witness.
    """
    u = np.asarray(u, dtype=complex)
    if not linalg.is_unitary(u, tol):
        raise NotUnitaryError("input is not unitary")
    split.check(u.shape[0])
    rng = np.random.default_rng(seed)
    two_qubit = split.dim_a == 2 and split.dim_b == 2

    bank, fa, fb = _random_product_bank(rng, split, coarse)
    outs = bank @ u.T
    scores = _entropies_many(outs, split)
    best_idx = int(np.argmax(scores))
    best_val = float(scores[best_idx])
    best_in = bank[best_idx]

    def objective(x):
        p = product_state(x, split)
        out = u @ p
        if two_qubit:
            return -entanglement.concurrence_coefficients(out)
        return -float(_entropies_many(out[None, :], split)[0])

    seeds = []
    for i in np.argsort(scores)[::-1][:starts]:
        pa = _factor_params(fa[i], split.dim_a)
        pb = _factor_params(fb[i], split.dim_b)
        if pa is not None and pb is not None:
            seeds.append(np.concatenate([pa, pb]))
    nparams = _factor_param_count(split.dim_a) + _factor_param_count(split.dim_b)
    while len(seeds) < starts:
        seeds.append(rng.uniform(-np.pi, np.pi, nparams))

    best_obj = -np.inf
    best_x = None
    for x0 in seeds:
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"xatol": 1e-7, "fatol": 1e-12,
                                "maxiter": 2000, "maxfev": 3000})
        if -res.fun > best_obj:
            best_obj, best_x = -res.fun, res.x
    if best_x is not None:
        cand_in = product_state(best_x, split)
        cand_val = float(_entropies_many((u @ cand_in)[None, :], split)[0])
        if cand_val > best_val:
            best_val, best_in = cand_val, cand_in

    out = u @ best_in
    conc = entanglement.concurrence_2q(out) if two_qubit else None
    return UnitaryPowerResult(best_val, conc, best_in, out)


@dataclass(frozen=True)
class BoundReport:
    lhs: float                            # adiabatic entangling power of the family
    rhs: float                            # max over the grid of per-unitary entangling power
    holds: bool
    rhs_point: np.ndarray


def family_unitaries(fam: HamiltonianFamily, points,
                     cluster_tol: float = DEFAULT_CLUSTER_TOL):
    """Unitaries U(lam) mapping the base-point eigenbasis to the one at lam.

    Iso-spectral families supply U(lam) directly; for generic families the
    eigenbasis-alignment unitary V(lam) V(lam0)^dag relative to the first
    point is used.
    """
    points = np.asarray(points, dtype=float)
    if fam.iso_spectral_form is not None:
        for lam in points:
            yield lam, fam.iso_spectral_form.unitary(lam)
        return
    _, v0 = fam.eigensystem(points[0], cluster_tol)
    v0d = v0.conj().T
    for lam in points:
        _, v = fam.eigensystem(lam, cluster_tol)
        yield lam, v @ v0d


def bound_check(fam: HamiltonianFamily,
                grid_per_axis: int = DEFAULT_GRID,
                cluster_tol: float = DEFAULT_CLUSTER_TOL,
                seed: int = 0,
                coarse: int = 256,
                polish_top: int = 3,
                starts: int = 4,
                slack: float = 1e-6) -> BoundReport:
    """Check family power <= sup over the grid of per-unitary power.

    The right-hand side is screened with a shared random product-state bank
    at every grid point, then the most promising points get the full
    multi-start optimization.
    """
    lhs = adiabatic_entangling_power(fam, grid_per_axis, refine=True,
                                     cluster_tol=cluster_tol).value
    rng = np.random.default_rng(seed)
    bank, _, _ = _random_product_bank(rng, fam.split, coarse)
    pts = grid_points(fam.bounds, grid_per_axis)
    quick = np.empty(len(pts))
    for k, (lam, u) in enumerate(family_unitaries(fam, pts, cluster_tol)):
        quick[k] = float(np.max(_entropies_many(bank @ u.T, fam.split)))
    rhs = float(np.max(quick))
    rhs_point = pts[int(np.argmax(quick))]
    top = np.argsort(quick)[::-1][:polish_top]
    pts_arr = np.asarray(pts, dtype=float)
    for k, (lam, u) in enumerate(family_unitaries(fam, pts_arr[top], cluster_tol)):
        res = unitary_entangling_power(u, fam.split, starts=starts, seed=seed,
                                       coarse=coarse)
        if res.value > rhs:
            rhs, rhs_point = res.value, lam
    return BoundReport(lhs, rhs, lhs <= rhs + slack, rhs_point)
