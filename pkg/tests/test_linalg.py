import numpy as np
import pytest

from dimwit.errors import PreconditionError
from dimwit.linalg import (
    I2,
    anticomm,
    herm_eig,
    is_dichotomic,
    kron,
    matrix_sign,
    max_entangled,
    op_norm,
    partial_trace,
    pauli,
)

X, Y, Z = pauli("x"), pauli("y"), pauli("z")


def rand_herm(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def test_pauli_algebra():
    assert np.array_equal(Z, np.diag([1, -1]))
    assert np.allclose(anticomm(X, Y), 0)
    assert np.allclose(X @ Y, 1j * Z)
    for p in (X, Y, Z):
        assert is_dichotomic(p) and abs(np.trace(p)) == 0


def test_pauli_bad_axis():
    with pytest.raises(ValueError):
        pauli("w")


def test_pauli_returns_copy():
    p = pauli("x")
    p[0, 0] = 7
    assert pauli("x")[0, 0] == 0


def test_kron():
    assert np.array_equal(kron(I2, I2), np.eye(4))
    assert np.allclose(np.linalg.eigvalsh(kron(X, X)), [-1, -1, 1, 1])
    assert np.array_equal(kron(Z, Z), np.diag([1, -1, -1, 1]))


def test_kron_index_rule(rng):
    a, b = rand_herm(2, rng), rand_herm(3, rng)
    k = kron(a, b)
    for i1, j1, i2, j2 in [(0, 1, 2, 0), (1, 1, 1, 2), (1, 0, 0, 0)]:
        assert k[i1 * 3 + i2, j1 * 3 + j2] == a[i1, j1] * b[i2, j2]


def test_anticomm():
    m = (X + Z) / np.sqrt(2)
    assert np.allclose(anticomm(m, m), 2 * np.eye(2))
    assert np.allclose(anticomm(X, m), np.sqrt(2) * np.eye(2))
    with pytest.raises(ValueError):
        anticomm(X, np.eye(4))


def test_herm_eig_examples():
    assert np.allclose(herm_eig(Z)[0], [1, -1])
    assert np.allclose(herm_eig(X + Z)[0], [np.sqrt(2), -np.sqrt(2)])
    assert np.allclose(herm_eig(np.eye(4))[0], np.ones(4))


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(PreconditionError):
        herm_eig(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize("d", [2, 4, 8, 16, 64])
def test_herm_eig_reconstruction(d, rng):
    for _ in range(500 if d <= 16 else 100):
        m = rand_herm(d, rng)
        w, v = herm_eig(m)
        assert np.all(np.diff(w) <= 0)
        assert np.max(np.abs(m - (v * w) @ v.conj().T)) <= 1e-9
        assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-9


def test_op_norm_examples():
    assert op_norm(X + Y + Z) == pytest.approx(np.sqrt(3), abs=1e-12)
    assert op_norm(np.zeros((2, 2))) == 0
    assert op_norm(X + Z) == pytest.approx(np.sqrt(2), abs=1e-12)


@pytest.mark.parametrize("d", [2, 4, 8])
def test_op_norm_is_a_norm(d, rng):
    for _ in range(100):
        a, b = rand_herm(d, rng), rand_herm(d, rng)
        t = rng.normal()
        assert op_norm(a + b) <= op_norm(a) + op_norm(b) + 1e-9
        assert op_norm(t * a) == pytest.approx(abs(t) * op_norm(a), abs=1e-9)


def test_matrix_sign_examples():
    assert np.allclose(matrix_sign(3 * Z), Z)
    assert np.allclose(matrix_sign(X + Z), (X + Z) / np.sqrt(2))
    assert np.array_equal(matrix_sign(np.zeros((2, 2))), np.eye(2))


@pytest.mark.parametrize("d", [2, 4, 8, 16])
def test_matrix_sign_is_involution(d, rng):
    for _ in range(100):
        s = matrix_sign(rand_herm(d, rng))
        assert np.max(np.abs(s @ s - np.eye(d))) <= 1e-9
        assert is_dichotomic(s, 1e-9)


def test_partial_trace_product(rng):
    for da, db in [(2, 2), (2, 4), (4, 2), (3, 5)]:
        a, b = rand_herm(da, rng), rand_herm(db, rng)
        assert np.max(np.abs(partial_trace(kron(a, b), (da, db), "A") - a * np.trace(b))) <= 1e-10
        assert np.max(np.abs(partial_trace(kron(a, b), (da, db), "B") - b * np.trace(a))) <= 1e-10


def test_partial_trace_max_entangled():
    phi = max_entangled(2)
    rho = np.outer(phi, phi.conj())
    assert np.allclose(partial_trace(rho, (2, 2), "B"), np.eye(2) / 2)
    proj = (np.eye(2) + Z) / 2
    cond = partial_trace(kron(proj, np.eye(2)) @ rho, (2, 2), "B")
    assert np.allclose(cond, np.diag([0.5, 0]))


def test_partial_trace_trace_preserving(rng):
    m = rand_herm(8, rng)
    assert np.trace(partial_trace(m, (2, 4), "A")) == pytest.approx(np.trace(m))


def test_partial_trace_bad_dims():
    with pytest.raises(ValueError):
        partial_trace(np.eye(6), (2, 2))
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), (2, 2), keep="C")
