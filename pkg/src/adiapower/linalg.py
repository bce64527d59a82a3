"""Dense complex linear algebra primitives.

Index convention (used everywhere in the package): a bipartite system with
local dimensions (dim_a, dim_b) is flattened row-major, subsystem A first,
i.e. composite index = i_a * dim_b + i_b.  ``tensor`` realizes exactly this
ordering via the Kronecker product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    BranchAmbiguityError,
    DimensionMismatchError,
    NotHermitianError,
    NotUnitaryError,
)

DEFAULT_TOL = 1e-10

# Pauli matrices and ladder operators.  Note sigma_plus/minus here are
# sigma_x +/- i*sigma_y, i.e. twice the usual raising/lowering operators;
# the transverse-coupling family below depends on this normalization.
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = SIGMA_X + 1j * SIGMA_Y
SIGMA_MINUS = SIGMA_X - 1j * SIGMA_Y
ID2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class BipartiteSplit:
    """Local dimensions of a bipartite state space, A-factor first."""

    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatchError("local dimensions must be positive")

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def check(self, total_dim: int) -> None:
        if self.dim != total_dim:
            raise DimensionMismatchError(
                f"split ({self.dim_a}, {self.dim_b}) does not match dimension {total_dim}"
            )


def _as_complex(a) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError("non-finite entries")
    return arr


def is_hermitian(h, tol: float = DEFAULT_TOL) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and np.max(np.abs(h - h.conj().T)) <= tol


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol


def is_projector(p, tol: float = DEFAULT_TOL) -> bool:
    p = np.asarray(p)
    return is_hermitian(p, tol) and np.max(np.abs(p @ p - p)) <= tol


def tensor(*factors) -> np.ndarray:
    """Kronecker product of operators or state vectors, A-then-B ordering."""
    out = _as_complex(factors[0])
    for f in factors[1:]:
        out = np.kron(out, _as_complex(f))
    return out


def normalize(psi) -> np.ndarray:
    psi = _as_complex(psi)
    n = np.linalg.norm(psi)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return psi / n


def eig_hermitian(h, tol: float = DEFAULT_TOL):
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian h."""
    h = _as_complex(h)
    if not is_hermitian(h, tol):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh(h)
    return vals, vecs


def expm_skew(k, tol: float = DEFAULT_TOL) -> np.ndarray:
    """exp(i*k) for Hermitian k, computed through the eigendecomposition."""
    vals, vecs = eig_hermitian(k, tol)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def logm_unitary(u, tol: float = DEFAULT_TOL, branch_tol: float = 1e-12) -> np.ndarray:
    """Hermitian G with exp(i*G) = u, eigenphases in (-pi, pi].

    Raises BranchAmbiguityError when an eigenphase sits within branch_tol of
    pi, where the principal branch is ill-defined.
    """
    u = _as_complex(u)
    if not is_unitary(u, tol):
        raise NotUnitaryError("matrix is not unitary within tolerance")
    # u is normal, so its complex Schur form is diagonal with orthonormal q.
    t, q = scipy.linalg.schur(u, output="complex")
    phases = np.angle(np.diagonal(t))
    if np.any(phases > np.pi - branch_tol):
        raise BranchAmbiguityError("eigenphase within tolerance of pi; perturb the input")
    g = (q * phases) @ q.conj().T
    return 0.5 * (g + g.conj().T)


def partial_trace(rho, split: BipartiteSplit, keep: str = "A",
                  tol: float = DEFAULT_TOL) -> np.ndarray:
    """Reduced density matrix of the kept factor ("A" or "B")."""
    rho = _as_complex(rho)
    split.check(rho.shape[0])
    if not is_hermitian(rho, max(tol, 1e-8)):
        raise NotHermitianError("density matrix is not Hermitian")
    r = rho.reshape(split.dim_a, split.dim_b, split.dim_a, split.dim_b)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise ValueError("keep must be 'A' or 'B'")


def basis_state(index: int, dim: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[index] = 1.0
    return e


def ket(bits: str) -> np.ndarray:
    """Computational-basis state of n qubits from a bit string, e.g. '01'."""
    index = int(bits, 2)
    return basis_state(index, 2 ** len(bits))
