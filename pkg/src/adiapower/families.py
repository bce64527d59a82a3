"""Built-in two-qubit Hamiltonian families and their closed-form solutions.

Conventions:
  * the ladder operators entering the transverse-coupling generator are
    sigma_pm = sigma_x +/- i*sigma_y (no factor 1/2); the closed-form
    coefficients a, b below hold only with this normalization,
  * family parameters are real vectors; the complex coupling mu is carried
    as (Re mu, Im mu).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ZeroCouplingError
from .linalg import (
    ID2,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BipartiteSplit,
    tensor,
)
from .power import HamiltonianFamily, IsoSpectralForm

SPLIT_2Q = BipartiteSplit(2, 2)

# Default parameter boxes.  The Bell-diagonal family box is chosen so the
# four eigenvalue curves stay separated by at least 1.2 everywhere inside.
EXAMPLE0_BOUNDS = np.array([[1.0, 1.4], [0.1, 0.3], [2.0, 2.4]])
# Transverse-coupling sweep domain (Re mu, Im mu, mu_z); figure sweeps use
# the Im mu = 0 slice.
EXAMPLE1_BOUNDS = np.array([[0.0, 1.2], [0.0, 0.0], [0.0, 2.4]])
FIG1_BOUNDS = np.array([[0.01, 1.2], [0.0, 0.0], [0.0, 2.4]])
EXAMPLE2_BOUNDS = np.array([[0.0, np.pi], [0.0, np.pi]])

PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def example0_family(bounds=EXAMPLE0_BOUNDS) -> HamiltonianFamily:
    """Commuting family sum_a lam_a sigma_a x sigma_a (Bell eigenbasis)."""

    def evaluate(lam):
        lam = np.asarray(lam, dtype=float)
        h = np.zeros((4, 4), dtype=complex)
        for c, s in zip(lam, PAULIS):
            h += c * tensor(s, s)
        return h

    return HamiltonianFamily(3, np.asarray(bounds, dtype=float), evaluate, SPLIT_2Q)


# ---------------------------------------------------------------------------
# Transverse-coupling iso-spectral family ("example 1").

@dataclass(frozen=True)
class Example1Params:
    """Base splittings lam1 != lam2 of H_base = lam1 sz x 1 + lam2 1 x sz."""

    lam1: float = 1.0
    lam2: float = 0.5

    def __post_init__(self):
        if abs(self.lam1 - self.lam2) <= 1e-9:
            raise ValueError("base Hamiltonian must be nondegenerate: lam1 != lam2")

    def base_hamiltonian(self) -> np.ndarray:
        return self.lam1 * tensor(SIGMA_Z, ID2) + self.lam2 * tensor(ID2, SIGMA_Z)


def example1_generator(mu: complex, mu_z: float) -> np.ndarray:
    """Hermitian generator K(mu, mu_z) of the coupling unitary exp(iK)."""
    k = mu * tensor(SIGMA_PLUS, SIGMA_MINUS) + np.conj(mu) * tensor(SIGMA_MINUS, SIGMA_PLUS)
    k += mu_z * (tensor(SIGMA_Z, ID2) - tensor(ID2, SIGMA_Z))
    return k


def example1_unitary(mu: complex, mu_z: float) -> np.ndarray:
    return linalg.expm_skew(example1_generator(mu, mu_z))


@dataclass(frozen=True)
class Example1ClosedForm:
    """Closed-form action of exp(iK) on span{|01>, |10>}.

    exp(iK)|01> = a|01> + b|10>, exp(iK)|10> = -conj(b)|01> + conj(a)|10>,
    and exp(iK) is the identity on span{|00>, |11>}.
    """

    theta_vec: np.ndarray
    theta: float
    a: complex
    b: complex


def example1_closed_form(mu: complex, mu_z: float) -> Example1ClosedForm:
    mu = complex(mu)
    theta_vec = np.array([4.0 * mu.real, -4.0 * mu.imag, 2.0 * mu_z])
    theta = float(np.linalg.norm(theta_vec))
    if theta == 0.0:
        return Example1ClosedForm(theta_vec, 0.0, 1.0 + 0.0j, 0.0j)
    sinc = np.sin(theta) / theta
    a = np.cos(theta) + 2j * sinc * mu_z
    b = 4j * sinc * np.conj(mu)
    return Example1ClosedForm(theta_vec, theta, complex(a), complex(b))


def example1_family(p: Example1Params = Example1Params(),
                    bounds=EXAMPLE1_BOUNDS) -> HamiltonianFamily:
    """Iso-spectral family U(mu, mu_z) H_base U^dag, parameters (Re mu, Im mu, mu_z)."""
    h_base = p.base_hamiltonian()
    energies, vectors = linalg.eig_hermitian(h_base)

    def unitary(lam):
        mu = complex(lam[0], lam[1])
        return example1_unitary(mu, lam[2])

    def evaluate(lam):
        u = unitary(lam)
        return u @ h_base @ u.conj().T

    iso = IsoSpectralForm(
        base_energies=energies,
        base_vectors=vectors,
        unitary=unitary,
        base_point=np.zeros(3),
    )
    return HamiltonianFamily(3, np.asarray(bounds, dtype=float), evaluate, SPLIT_2Q, iso)


@dataclass(frozen=True)
class MaxEntanglementCondition:
    solvable: bool
    sin2_theta_required: float


def example1_max_condition(mu: complex, mu_z: float) -> MaxEntanglementCondition:
    """Condition |a|^2 = 1/2 for maximal entanglement from |01> or |10>.

    Requires sin^2(theta) = (1 + (mu_z / 2|mu|)^2) / 2, solvable iff
    |mu_z| <= 2|mu|.
    """
    amu = abs(complex(mu))
    if amu == 0.0:
        raise ZeroCouplingError("mu must be nonzero")
    required = 0.5 * (1.0 + (mu_z / (2.0 * amu)) ** 2)
    return MaxEntanglementCondition(required <= 1.0, float(required))


# ---------------------------------------------------------------------------
# Magic-basis-diagonal family ("example 2").

def magic_basis() -> np.ndarray:
    """Columns are the phase-adjusted Bell states Psi_1..Psi_4."""
    s = 1.0 / np.sqrt(2.0)
    psi1 = s * np.array([1, 0, 0, 1], dtype=complex)
    psi2 = -1j * s * np.array([1, 0, 0, -1], dtype=complex)
    psi3 = s * np.array([0, 1, -1, 0], dtype=complex)
    psi4 = -1j * s * np.array([0, 1, 1, 0], dtype=complex)
    return np.stack([psi1, psi2, psi3, psi4], axis=1)


@dataclass(frozen=True)
class Example2Params:
    """Phase parameters of U = exp(i(lam1 sz x sz + lam2 sy x sy + lam3 sx x sx)).

    The index convention (sigma_1, sigma_2, sigma_3) = (sz, sy, sx) is the
    one under which the input |00> = (Psi_1 + i Psi_2)/sqrt(2) reaches a
    maximally entangled output exactly when lam3 - lam2 = pi/4.
    """

    lam1: float
    lam2: float
    lam3: float

    @property
    def h(self) -> np.ndarray:
        """The four eigenphase values of the unitary."""
        l1, l2, l3 = self.lam1, self.lam2, self.lam3
        return np.array([l1 - l2 + l3, l1 + l2 - l3, -l1 + l2 + l3, -l1 - l2 - l3])

    @property
    def magic_phases(self) -> np.ndarray:
        """Eigenphases ordered by the magic-basis columns Psi_1..Psi_4.

        (h1, h2, h4, h3): Psi_3 = (|01> - |10>)/sqrt(2) carries the phase
        -lam1 - lam2 - lam3.
        """
        h = self.h
        return h[[0, 1, 3, 2]]


def example2_unitary(p: Example2Params) -> np.ndarray:
    k = p.lam1 * tensor(SIGMA_Z, SIGMA_Z) + p.lam2 * tensor(SIGMA_Y, SIGMA_Y) \
        + p.lam3 * tensor(SIGMA_X, SIGMA_X)
    return linalg.expm_skew(k)


def example2_family(lam1_fixed: float = 1.0,
                    bounds=EXAMPLE2_BOUNDS,
                    base: Example1Params = Example1Params(2.0, 1.0)) -> HamiltonianFamily:
    """Iso-spectral family over (lam2, lam3) with lam1 fixed.

    The base Hamiltonian 2 sz x 1 + 1 x sz is nondegenerate with a product
    eigenbasis; the designated base point (pi/4, pi/4) is where the family
    unitary maps the product basis to product states.
    """
    h_base = base.base_hamiltonian()
    energies, vectors = linalg.eig_hermitian(h_base)

    def unitary(lam):
        return example2_unitary(Example2Params(lam1_fixed, lam[0], lam[1]))

    def evaluate(lam):
        u = unitary(lam)
        return u @ h_base @ u.conj().T

    iso = IsoSpectralForm(
        base_energies=energies,
        base_vectors=vectors,
        unitary=unitary,
        base_point=np.array([np.pi / 4.0, np.pi / 4.0]),
    )
    return HamiltonianFamily(2, np.asarray(bounds, dtype=float), evaluate, SPLIT_2Q, iso)


@dataclass(frozen=True)
class Example2Maximum:
    concurrence: float
    best_pair: tuple
    best_input: np.ndarray               # product input in the computational basis


def example2_max_concurrence(p: Example2Params) -> Example2Maximum:
    """Closed-form max reachable concurrence max_{k,l} |sin(h_k - h_l)|.

    The optimal product input is (Psi_k + i Psi_l)/sqrt(2) expressed in the
    computational basis; (k, l) index the magic-basis columns.
    """
    h = p.magic_phases
    best = (0.0, (0, 0))
    for k in range(4):
        for l in range(k + 1, 4):
            c = abs(np.sin(h[k] - h[l]))
            if c > best[0]:
                best = (float(c), (k, l))
    k, l = best[1]
    m = magic_basis()
    state = (m[:, k] + 1j * m[:, l]) / np.sqrt(2.0)
    return Example2Maximum(best[0], (k, l), state)


def _min_enclosing_radius(pts) -> float:
    """Radius of the smallest circle covering a handful of complex points."""
    pts = [complex(p) for p in pts]

    def covers(c, r):
        return all(abs(p - c) <= r + 1e-12 for p in pts)

    best = np.inf
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            c = (pts[i] + pts[j]) / 2
            r = abs(pts[i] - c)
            if r < best and covers(c, r):
                best = r
            for k in range(j + 1, n):
                a, b, d3 = pts[i], pts[j], pts[k]
                det = 2 * (a.real * (b.imag - d3.imag) + b.real * (d3.imag - a.imag)
                           + d3.real * (a.imag - b.imag))
                if abs(det) < 1e-14:
                    continue
                cx = (abs(a) ** 2 * (b.imag - d3.imag) + abs(b) ** 2 * (d3.imag - a.imag)
                      + abs(d3) ** 2 * (a.imag - b.imag)) / det
                cy = (abs(a) ** 2 * (d3.real - b.real) + abs(b) ** 2 * (a.real - d3.real)
                      + abs(d3) ** 2 * (b.real - a.real)) / det
                c = complex(cx, cy)
                r = abs(a - c)
                if r < best and covers(c, r):
                    best = r
    return float(best)


def example2_product_sup_concurrence(p: Example2Params) -> float:
    """Supremum of output concurrence over ALL product inputs.

    A product state has magic-basis amplitudes w with sum w_k^2 = 0, and the
    output concurrence is |sum z_k exp(2i h_k)| with z_k = w_k^2, so the
    supremum over {sum z_k = 0, sum |z_k| = 1} is the radius of the smallest
    circle enclosing the four points exp(2i h_k) (capped at 1).  This can
    strictly exceed the best two-component input max_{k,l} |sin(h_k - h_l)|
    whenever the smallest enclosing circle is supported on three points.
    """
    return min(_min_enclosing_radius(np.exp(2j * p.magic_phases)), 1.0)


def example2_output_concurrence(p: Example2Params, w) -> float:
    """Concurrence of the evolved state from magic-basis input amplitudes w."""
    w = np.asarray(w, dtype=complex)
    return float(abs(np.sum((w * np.exp(1j * p.magic_phases)) ** 2)))


def spin_half_field_family(bounds=None) -> HamiltonianFamily:
    """Two-level family H(B) = B . sigma, parameters (Bx, By, Bz).

    Used as the analytic oracle for geometric phases: a loop of B at polar
    angle theta0 gives the lower level a phase of magnitude pi(1 - cos theta0).
    """
    if bounds is None:
        bounds = np.array([[-2.0, 2.0]] * 3)

    def evaluate(lam):
        lam = np.asarray(lam, dtype=float)
        return lam[0] * SIGMA_X + lam[1] * SIGMA_Y + lam[2] * SIGMA_Z

    return HamiltonianFamily(3, np.asarray(bounds, dtype=float), evaluate,
                             BipartiteSplit(1, 2))
