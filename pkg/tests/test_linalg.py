import numpy as np
import pytest

from adiapower import linalg
from adiapower.errors import (
    BranchAmbiguityError,
    DimensionMismatchError,
    NotHermitianError,
    NotUnitaryError,
)
from adiapower.linalg import (
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BipartiteSplit,
    basis_state,
    eig_hermitian,
    expm_skew,
    ket,
    logm_unitary,
    partial_trace,
    tensor,
)


def random_hermitian(rng, d):
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (x + x.conj().T) / 2


def test_tensor_identities():
    assert np.array_equal(tensor(ID2, ID2), np.eye(4))
    assert np.array_equal(tensor(SIGMA_Z, ID2), np.diag([1, 1, -1, -1]).astype(complex))


def test_tensor_basis_ordering():
    # index convention: i_A * dim_b + i_B
    v = tensor(basis_state(0, 2), basis_state(1, 2))
    assert np.array_equal(v, basis_state(1, 4))
    assert np.array_equal(ket("01"), basis_state(1, 4))
    assert np.array_equal(ket("10"), basis_state(2, 4))


def test_tensor_associative():
    rng = np.random.default_rng(0)
    a, b, c = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
               for _ in range(3))
    assert np.allclose(tensor(tensor(a, b), c), tensor(a, tensor(b, c)), atol=0)


def test_eig_hermitian_pauli():
    vals, _ = eig_hermitian(SIGMA_Z)
    assert np.allclose(vals, [-1, 1])
    vals, _ = eig_hermitian(2 * tensor(SIGMA_Z, ID2) + tensor(ID2, SIGMA_Z))
    assert np.allclose(vals, [-3, -1, 1, 3])


def test_eig_hermitian_reconstruction():
    rng = np.random.default_rng(1)
    for _ in range(20):
        h = random_hermitian(rng, 6)
        vals, vecs = eig_hermitian(h)
        assert np.all(np.diff(vals) >= 0)
        recon = (vecs * vals) @ vecs.conj().T
        assert np.linalg.norm(recon - h) < 1e-9 * max(1.0, np.linalg.norm(h))
        assert np.linalg.norm(vecs @ vecs.conj().T - np.eye(6)) < 1e-9


def test_eig_hermitian_rejects_nonhermitian():
    with pytest.raises(NotHermitianError):
        eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


def test_expm_skew_basics():
    assert np.allclose(expm_skew(np.zeros((3, 3))), np.eye(3), atol=1e-14)
    assert np.allclose(expm_skew((np.pi / 2) * SIGMA_X), 1j * SIGMA_X, atol=1e-14)


def test_expm_skew_unitary():
    rng = np.random.default_rng(2)
    for _ in range(20):
        u = expm_skew(random_hermitian(rng, 5))
        assert np.linalg.norm(u @ u.conj().T - np.eye(5)) < 1e-10


def test_logm_unitary_roundtrip():
    assert np.allclose(logm_unitary(np.eye(3)), np.zeros((3, 3)), atol=1e-12)
    assert np.allclose(logm_unitary(1j * SIGMA_X), (np.pi / 2) * SIGMA_X, atol=1e-12)
    rng = np.random.default_rng(3)
    for _ in range(20):
        g0 = random_hermitian(rng, 4)
        g0 *= 0.9 * np.pi / max(np.abs(np.linalg.eigvalsh(g0)))
        u = expm_skew(g0)
        g = logm_unitary(u)
        assert linalg.is_hermitian(g)
        assert np.linalg.norm(expm_skew(g) - u) < 1e-8


def test_logm_unitary_branch_and_input_checks():
    with pytest.raises(BranchAmbiguityError):
        logm_unitary(-np.eye(2))
    with pytest.raises(NotUnitaryError):
        logm_unitary(2 * np.eye(2))


def test_partial_trace_product_and_bell():
    split = BipartiteSplit(2, 2)
    rho = np.outer(ket("00"), ket("00").conj())
    assert np.allclose(partial_trace(rho, split, "A"), np.diag([1, 0]), atol=1e-12)
    bell = (ket("00") + ket("11")) / np.sqrt(2)
    rho = np.outer(bell, bell.conj())
    assert np.allclose(partial_trace(rho, split, "A"), np.eye(2) / 2, atol=1e-12)
    assert np.allclose(partial_trace(rho, split, "B"), np.eye(2) / 2, atol=1e-12)


def test_partial_trace_coherent_superposition():
    # a|01> + b|10> reduces to diag(|a|^2, |b|^2) on A
    split = BipartiteSplit(2, 2)
    a, b = 0.6, 0.8j
    psi = a * ket("01") + b * ket("10")
    rho = np.outer(psi, psi.conj())
    assert np.allclose(partial_trace(rho, split, "A"),
                       np.diag([0.36, 0.64]), atol=1e-12)


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(4)
    split = BipartiteSplit(2, 3)
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    rho = x @ x.conj().T
    rho /= np.trace(rho).real
    for keep in ("A", "B"):
        red = partial_trace(rho, split, keep)
        assert abs(np.trace(red) - 1.0) < 1e-10
        assert np.min(np.linalg.eigvalsh(red)) > -1e-10


def test_partial_trace_dimension_check():
    with pytest.raises(DimensionMismatchError):
        partial_trace(np.eye(5) / 5, BipartiteSplit(2, 2), "A")


def test_structural_predicates():
    assert linalg.is_hermitian(SIGMA_Y)
    assert not linalg.is_hermitian(SIGMA_Y + 1e-6 * np.array([[0, 1], [0, 0]]))
    assert linalg.is_unitary(expm_skew(SIGMA_X))
    assert linalg.is_projector(np.diag([1.0, 0.0]))
    assert not linalg.is_projector(np.diag([0.5, 0.5]))
