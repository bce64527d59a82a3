"""Spectral resolutions, degeneracy vectors and the connectibility decision.

Two Hermitian operators can be joined by a continuous crossing-free family
exactly when their degeneracy vectors (eigenspace dimensions ordered by
ascending eigenvalue) coincide.  ``build_connecting_family`` realizes the
constructive version: linear eigenvalue interpolation plus a geodesic
unitary rotation of the eigenprojectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DegeneracyMismatchError,
    DimensionMismatchError,
    NotConnectibleError,
)

DEFAULT_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class SpectralResolution:
    """Distinct eigenvalues with projectors, ascending order."""

    energies: np.ndarray          # (R,) distinct cluster eigenvalues
    projectors: list              # R projector matrices
    multiplicities: tuple         # R ranks
    vectors: np.ndarray           # (D, D) eigenvector columns grouped by level

    @property
    def num_levels(self) -> int:
        return len(self.multiplicities)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class ConnectibilityDecision:
    connectible: bool
    reason: str | None
    d0: tuple
    d1: tuple


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Make each column's largest-magnitude entry real positive (deterministic gauge)."""
    out = vecs.copy()
    for j in range(out.shape[1]):
        k = np.argmax(np.abs(out[:, j]))
        ph = out[k, j]
        if np.abs(ph) > 0:
            out[:, j] *= np.abs(ph) / ph
    return out


def spectral_resolution(h, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> SpectralResolution:
    """Cluster the spectrum of Hermitian h into distinct levels.

    Consecutive eigenvalues whose gap is below cluster_tol * max(1, ||h||)
    are merged into one degenerate level.
    """
    vals, vecs = linalg.eig_hermitian(h)
    vecs = _fix_phases(vecs)
    scale = max(1.0, np.max(np.abs(vals)) if len(vals) else 1.0)
    thresh = cluster_tol * scale
    boundaries = [0]
    for i in range(1, len(vals)):
        if vals[i] - vals[i - 1] >= thresh:
            boundaries.append(i)
    boundaries.append(len(vals))
    energies, projectors, mults = [], [], []
    for a, b in zip(boundaries[:-1], boundaries[1:]):
        block = vecs[:, a:b]
        energies.append(float(np.mean(vals[a:b])))
        projectors.append(block @ block.conj().T)
        mults.append(b - a)
    return SpectralResolution(
        energies=np.array(energies),
        projectors=projectors,
        multiplicities=tuple(mults),
        vectors=vecs,
    )


def degeneracy_vector(res: SpectralResolution) -> tuple:
    """Projector ranks ordered by ascending eigenvalue."""
    return res.multiplicities


def is_adiabatically_connectible(h0, h1,
                                 cluster_tol: float = DEFAULT_CLUSTER_TOL) -> ConnectibilityDecision:
    h0 = np.asarray(h0)
    h1 = np.asarray(h1)
    if h0.shape != h1.shape:
        raise DimensionMismatchError("operators have different dimensions")
    d0 = degeneracy_vector(spectral_resolution(h0, cluster_tol))
    d1 = degeneracy_vector(spectral_resolution(h1, cluster_tol))
    if d0 == d1:
        return ConnectibilityDecision(True, None, d0, d1)
    if sorted(d0) == sorted(d1):
        return ConnectibilityDecision(False, "degeneracy order mismatch", d0, d1)
    return ConnectibilityDecision(False, "degeneracy multiset mismatch", d0, d1)


def aligning_unitary(s0: SpectralResolution, s1: SpectralResolution) -> np.ndarray:
    """Unitary W with W P0_i W^dag = P1_i for every level i."""
    if s0.multiplicities != s1.multiplicities:
        raise DegeneracyMismatchError(
            f"degeneracy vectors differ: {s0.multiplicities} vs {s1.multiplicities}"
        )
    return s1.vectors @ s0.vectors.conj().T


@dataclass(frozen=True)
class ConnectingFamily:
    """Crossing-free family H(t) joining two iso-degenerate endpoints.

    H(t) = sum_i eps_i(t) U_t P0_i U_t^dag with linear eps_i(t) and the
    geodesic path U_t = exp(i t G), G the principal log of the aligning
    unitary.
    """

    base: SpectralResolution
    energies0: np.ndarray
    energies1: np.ndarray
    aligner: np.ndarray                      # W = U_1
    generator: np.ndarray                    # Hermitian G with exp(iG) = W
    _gen_phases: np.ndarray = field(repr=False, default=None)
    _gen_vecs: np.ndarray = field(repr=False, default=None)

    def eigenvalues_at(self, t: float) -> np.ndarray:
        return (1.0 - t) * self.energies0 + t * self.energies1

    def unitary_at(self, t: float) -> np.ndarray:
        return (self._gen_vecs * np.exp(1j * t * self._gen_phases)) @ self._gen_vecs.conj().T

    def sample(self, t: float) -> np.ndarray:
        u = self.unitary_at(t)
        eps = self.eigenvalues_at(t)
        h = np.zeros_like(self.aligner)
        for e, p in zip(eps, self.base.projectors):
            h += e * (u @ p @ u.conj().T)
        return 0.5 * (h + h.conj().T)


def _dodge_branch_cut(w: np.ndarray) -> np.ndarray:
    """Rotate w by a global phase so no eigenphase sits near the log branch cut.

    A global phase leaves every conjugation w P w^dag unchanged, so the
    rotated matrix aligns the same projectors.
    """
    phases = np.sort(np.angle(np.linalg.eigvals(w)))
    gaps = np.diff(np.concatenate([phases, [phases[0] + 2.0 * np.pi]]))
    k = int(np.argmax(gaps))
    cut = phases[k] + gaps[k] / 2.0
    return np.exp(-1j * (cut - np.pi)) * w


def build_connecting_family(h0, h1,
                            cluster_tol: float = DEFAULT_CLUSTER_TOL) -> ConnectingFamily:
    decision = is_adiabatically_connectible(h0, h1, cluster_tol)
    if not decision.connectible:
        raise NotConnectibleError(decision.reason)
    s0 = spectral_resolution(h0, cluster_tol)
    s1 = spectral_resolution(h1, cluster_tol)
    w = _dodge_branch_cut(aligning_unitary(s0, s1))
    g = linalg.logm_unitary(w)
    phases, gvecs = linalg.eig_hermitian(g)
    return ConnectingFamily(
        base=s0,
        energies0=s0.energies,
        energies1=s1.energies,
        aligner=w,
        generator=g,
        _gen_phases=phases,
        _gen_vecs=gvecs,
    )


def min_gap_along(fam, samples: int = 101) -> float:
    """Minimum gap between consecutive distinct levels of H(t) over a t grid.

    ``fam`` is a ConnectingFamily or any callable t -> Hermitian matrix.
    For a ConnectingFamily the eigenvalues of each sample are grouped by the
    family's level multiplicities, so degenerate levels do not report a
    spurious zero gap.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if isinstance(fam, ConnectingFamily):
        sample = fam.sample
        mults = fam.base.multiplicities
    else:
        sample = fam
        mults = None
    gap = np.inf
    for t in np.linspace(0.0, 1.0, samples):
        vals = np.linalg.eigvalsh(sample(t))
        if mults is not None:
            edges = np.cumsum((0,) + mults)
            vals = np.array([np.mean(vals[a:b]) for a, b in zip(edges[:-1], edges[1:])])
        if len(vals) > 1:
            gap = min(gap, float(np.min(np.diff(vals))))
    return gap
