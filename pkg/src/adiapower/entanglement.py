"""Bipartite pure-state entanglement: Schmidt spectra, entropy, concurrence.

Concurrence convention: ``concurrence_2q`` returns the standard spin-flip
concurrence in [0, 1] (1 for Bell states).  The largest reduced-density
eigenvalue of a two-qubit pure state is then lam = (1 + sqrt(1 - C^2)) / 2.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError
from .linalg import SIGMA_Y, BipartiteSplit, tensor

_CLAMP = -1e-12
_SPIN_FLIP = tensor(SIGMA_Y, SIGMA_Y)


def schmidt_spectrum(psi, split: BipartiteSplit) -> np.ndarray:
    """Eigenvalues of the reduced density matrix, descending, clamped to [0, 1]."""
    psi = np.asarray(psi, dtype=complex)
    split.check(psi.shape[0])
    m = psi.reshape(split.dim_a, split.dim_b)
    s = np.linalg.svd(m, compute_uv=False)
    lam = np.sort(s ** 2)[::-1]
    if np.any(lam < _CLAMP):
        raise ValueError("reduced density eigenvalue significantly negative")
    lam = np.clip(lam, 0.0, 1.0)
    return lam / lam.sum()


def entropy_of_spectrum(lam) -> float:
    """Shannon entropy in bits with 0*log(0) := 0."""
    lam = np.asarray(lam, dtype=float)
    nz = lam[lam > 0]
    return float(-np.sum(nz * np.log2(nz)) + 0.0)


def entropy(psi, split: BipartiteSplit) -> float:
    """Entanglement entropy (base 2) of a normalized pure state."""
    return entropy_of_spectrum(schmidt_spectrum(psi, split))


def concurrence_2q(psi) -> float:
    """Spin-flip concurrence |<psi*| sigma_y x sigma_y |psi>| of a two-qubit state."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise DimensionMismatchError("concurrence_2q needs a 4-dimensional state")
    c = abs(psi @ (_SPIN_FLIP @ psi))
    return float(min(c, 1.0))


def concurrence_coefficients(psi) -> float:
    """Two-qubit concurrence from amplitudes: 2|a00*a11 - a01*a10|.

    Equivalent to concurrence_2q under the row-major A-then-B ordering; kept
    as an independent cross-check of the basis convention.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise DimensionMismatchError("needs a 4-dimensional state")
    return float(min(2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2]), 1.0))


def entropy_from_concurrence(c: float) -> float:
    """Two-qubit entanglement entropy as a function of the concurrence."""
    c = min(max(float(c), 0.0), 1.0)
    lam = 0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - c * c)))
    return entropy_of_spectrum(np.array([lam, 1.0 - lam]))


def max_entangled_check(psi, split: BipartiteSplit, tol: float = 1e-9) -> bool:
    """True iff all Schmidt coefficients equal 1/min(d_a, d_b) within tol."""
    lam = schmidt_spectrum(psi, split)
    target = 1.0 / min(split.dim_a, split.dim_b)
    return bool(np.all(np.abs(lam - target) <= tol))
