"""Dense complex-matrix kernel for small Hermitian operators."""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError

__all__ = [
    "HERM_TOL",
    "EIG_TOL",
    "I2",
    "pauli",
    "kron",
    "kron_all",
    "anticomm",
    "is_hermitian",
    "is_dichotomic",
    "check_hermitian",
    "herm_eig",
    "op_norm",
    "matrix_sign",
    "psd_sqrt",
    "partial_trace",
    "max_entangled",
    "is_density_matrix",
]

HERM_TOL = 1e-10
EIG_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
for _m in _PAULI.values():
    _m.flags.writeable = False


def pauli(axis: str) -> np.ndarray:
    """Pauli matrix for ``axis`` in {"x", "y", "z"} (a fresh copy)."""
    try:
        return _PAULI[axis.lower()].copy()
    except (KeyError, AttributeError):
        raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}") from None


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(*ops) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for op in ops:
        out = kron(out, op)
    return out


def anticomm(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"anticommutator needs equal shapes, got {a.shape} and {b.shape}")
    return a @ b + b @ a


def _square(m):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(m, tol: float = HERM_TOL) -> bool:
    m = _square(m)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def is_dichotomic(m, tol: float = HERM_TOL) -> bool:
    """Hermitian with m @ m = I, i.e. a +-1 valued observable."""
    m = _square(m)
    eye = np.eye(m.shape[0])
    return is_hermitian(m, tol) and bool(np.max(np.abs(m @ m - eye)) <= tol)


def check_hermitian(m, tol: float = HERM_TOL) -> np.ndarray:
    m = _square(m)
    if not is_hermitian(m, tol):
        dev = np.max(np.abs(m - m.conj().T))
        raise PreconditionError(f"matrix is not Hermitian (max |M - M^dag| = {dev:.3g})")
    return m


def herm_eig(m):
    """Eigenvalues (descending) and orthonormal eigenvectors (columns) of a Hermitian matrix."""
    m = check_hermitian(m)
    # symmetrize so round-off in the input cannot leak into the eigenvectors
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w[::-1], v[:, ::-1]


def op_norm(m) -> float:
    w, _ = herm_eig(m)
    return float(np.max(np.abs(w), initial=0.0))


def matrix_sign(m) -> np.ndarray:
    """Hermitian sign function with sign(0) := +1; the result squares to identity."""
    w, v = herm_eig(m)
    return (v * np.where(w >= 0, 1.0, -1.0)) @ v.conj().T


def psd_sqrt(m) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix (tiny negative eigenvalues clipped)."""
    w, v = herm_eig(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def partial_trace(rho, dims, keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite operator on C^dA (x) C^dB."""
    rho = _square(rho)
    d_a, d_b = dims
    if d_a * d_b != rho.shape[0]:
        raise ValueError(f"dims {dims} do not factor a {rho.shape[0]}-dimensional operator")
    t = rho.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ajbj->ab", t)
    if keep == "B":
        return np.einsum("iaib->ab", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def max_entangled(d: int) -> np.ndarray:
    """(1/sqrt d) sum_k |k>|k> as a vector of length d**2."""
    return np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)


def is_density_matrix(rho, tol: float = EIG_TOL) -> bool:
    rho = _square(rho)
    if not is_hermitian(rho, tol):
        return False
    if abs(np.trace(rho) - 1) > tol:
        return False
    return bool(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] >= -tol)
