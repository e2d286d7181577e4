"""The Bell operator of the parity-oblivious random access code and its bounds.

For n bits Alice has 2**(n-1) observables A_i and Bob has n observables
B_y. The Bell operator is

    B_n = sum_i A_i (x) C_i,    C_i = sum_y sign(i, y) B_y,

and the success probability of the game is 1/2 + <B_n> / (n 2**n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import combinatorics as comb
from .errors import ConsistencyError, DegenerateSettingError, InfeasibleValueError, PreconditionError
from .linalg import (
    EIG_TOL,
    HERM_TOL,
    herm_eig,
    is_density_matrix,
    matrix_sign,
    op_norm,
    partial_trace,
)
from .observables import ObservableSet, anticomm_table

__all__ = [
    "local_bound",
    "pnc_bound",
    "optimal_bound",
    "algebraic_bound",
    "BellInstance",
    "correlators",
    "build_operator",
    "quantum_value",
    "success_probability",
    "omega",
    "omegas",
    "sos_upper_bound",
    "derive_alice",
    "parity_residuals",
    "alice_parity_residual",
    "EncodedStates",
    "alice_states",
    "state_parity_residual",
    "Certificate",
    "certify_dimension",
    "WitnessReport",
    "witness_report",
]


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")


def local_bound(n: int) -> int:
    """Maximum over deterministic local strategies: n * C(n-1, floor((n-1)/2))."""
    _check_n(n)
    return n * math.comb(n - 1, (n - 1) // 2)


def pnc_bound(n: int) -> int:
    """Bound for preparation noncontextual (parity-oblivious) strategies."""
    _check_n(n)
    return 2 ** (n - 1)


def optimal_bound(n: int) -> float:
    """Quantum optimum 2**(n-1) sqrt(n), reached with n anticommuting Bob observables."""
    _check_n(n)
    return 2 ** (n - 1) * math.sqrt(n)


def algebraic_bound(n: int) -> int:
    _check_n(n)
    return n * 2 ** (n - 1)


@dataclass(frozen=True, eq=False)
class BellInstance:
    n: int
    dim: int
    bob: ObservableSet
    alice: ObservableSet | None = None
    operator: np.ndarray | None = None
    order: str = "binary"


def correlators(n: int, bob: ObservableSet, order: str = "binary") -> np.ndarray:
    """The operators C_i = sum_y sign(i, y) B_y stacked as (2**(n-1), d, d)."""
    if len(bob) != n:
        raise ValueError(f"need {n} Bob observables, got {len(bob)}")
    return np.einsum("iy,yab->iab", comb.sign_table(n, order), bob.stack())


def build_operator(n: int, alice: ObservableSet, bob: ObservableSet, order: str = "binary") -> BellInstance:
    _check_n(n)
    if len(alice) != 2 ** (n - 1):
        raise ValueError(f"need {2 ** (n - 1)} Alice observables, got {len(alice)}")
    if len(bob) != n:
        raise ValueError(f"need {n} Bob observables, got {len(bob)}")
    if alice.dim != bob.dim:
        raise ValueError(f"Alice acts on dimension {alice.dim}, Bob on {bob.dim}")
    d = bob.dim
    c = correlators(n, bob, order)
    op = np.einsum("iab,icd->acbd", alice.stack(), c).reshape(d * d, d * d)
    return BellInstance(n=n, dim=d, bob=bob, alice=alice, operator=op, order=order)


def quantum_value(instance: BellInstance, state) -> float:
    """<psi| B_n |psi> for a unit vector psi on C^d (x) C^d."""
    if instance.operator is None:
        raise ValueError("Bell operator has not been assembled")
    psi = np.asarray(state, dtype=complex).ravel()
    if psi.shape[0] != instance.operator.shape[0]:
        raise ValueError(f"state has length {psi.shape[0]}, operator is {instance.operator.shape[0]}-dimensional")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1) > HERM_TOL:
        raise PreconditionError(f"state is not normalized (<psi|psi> = {norm!r})")
    value = np.vdot(psi, instance.operator @ psi)
    if abs(value.imag) > HERM_TOL * max(1.0, abs(value.real)):
        raise PreconditionError("Bell operator expectation is not real; operator is not Hermitian")
    return float(value.real)


def success_probability(value: float, n: int) -> float:
    """Winning probability of the n-bit game given the Bell value."""
    bound = algebraic_bound(n)
    if abs(value) > bound * (1 + 1e-12):
        raise ValueError(f"|value| = {abs(value)} exceeds the algebraic maximum {bound}")
    return 0.5 + value / (2**n * n)


def omegas(bob: ObservableSet, order: str = "binary") -> np.ndarray:
    """Operator norms of every C_i."""
    n = len(bob)
    return np.array([op_norm(c) for c in correlators(n, bob, order)])


def omega(i: int, bob: ObservableSet, order: str = "binary") -> float:
    """||C_i||, cross-checked against the anticommutator expansion when that is scalar.

    If every {B_y, B_y'} is a multiple c_yy' of the identity then
    C_i^2 = (n + sum_{y<y'} sign_y sign_y' c_yy') I and the norm follows
    from the coefficients alone.
    """
    n = len(bob)
    if not 1 <= i <= 2 ** (n - 1):
        raise ValueError(f"i must lie in [1, {2 ** (n - 1)}], got {i}")
    c = correlators(n, bob, order)[i - 1]
    norm = op_norm(c)
    table = anticomm_table(bob)
    if not np.isnan(table).any():
        s = comb.sign_table(n, order)[i - 1]
        radicand = n + sum(s[a] * s[b] * table[a, b] for a in range(n) for b in range(a + 1, n))
        closed = math.sqrt(max(radicand, 0.0))
        if abs(closed - norm) > 1e-8:
            raise ConsistencyError(f"omega_{i}: norm {norm!r} vs anticommutator form {closed!r}")
    return norm


def sos_upper_bound(n: int, bob: ObservableSet, order: str = "binary") -> float:
    """sum_i ||C_i||: no choice of Alice observables or state does better with this Bob."""
    if len(bob) != n:
        raise ValueError(f"need {n} Bob observables, got {len(bob)}")
    return float(sum(omega(i, bob, order) for i in range(1, 2 ** (n - 1) + 1)))


def derive_alice(n: int, bob: ObservableSet, order: str = "binary", conjugate: bool = True) -> ObservableSet:
    """Alice's observables aligned with Bob's: A_i = sign(C_i).

    With ``conjugate=True`` the complex conjugate is returned, which is what
    the maximally entangled state sum_k |kk> needs, since
    (A (x) I)|phi> = (I (x) A^T)|phi>. With real Bob observables the two
    agree.
    """
    c = correlators(n, bob, order)
    members = []
    for i, ci in enumerate(c, start=1):
        if op_norm(ci) <= 1e-12:
            raise DegenerateSettingError(f"C_{i} vanishes; A_{i} is not determined")
        a = matrix_sign(ci)
        members.append(a.conj() if conjugate else a)
    return ObservableSet(tuple(members), label=f"derived from {bob.label}".strip())


def parity_residuals(n: int, alice: ObservableSet, order: str = "binary") -> dict[str, float]:
    """||sum_i (-1)^(s.x^i) A_i|| for every non-trivial parity string s."""
    if len(alice) != 2 ** (n - 1):
        raise ValueError(f"need {2 ** (n - 1)} Alice observables, got {len(alice)}")
    elements, table = comb.parity_sign_table(n, order)
    sums = np.einsum("si,iab->sab", table, alice.stack())
    return {str(e): op_norm(m) for e, m in zip(elements, sums)}


def alice_parity_residual(n: int, alice: ObservableSet, order: str = "binary") -> float:
    res = parity_residuals(n, alice, order)
    return max(res.values(), default=0.0)


class EncodedStates(NamedTuple):
    states: list  # indexed by the integer value of the encoded bit string
    probabilities: np.ndarray


def _as_density(state, dim):
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        if abs(np.vdot(arr, arr).real - 1) > HERM_TOL:
            raise PreconditionError("state vector is not normalized")
        arr = np.outer(arr, arr.conj())
    if arr.shape != (dim * dim, dim * dim):
        raise ValueError(f"state has shape {arr.shape}, expected ({dim * dim}, {dim * dim})")
    if not is_density_matrix(arr):
        raise PreconditionError("state is not a density matrix")
    return arr


def alice_states(n: int, state, alice: ObservableSet, order: str = "binary") -> EncodedStates:
    """Bob's conditional states after Alice measures A_i on the shared state.

    Outcome + of A_i prepares x^i, outcome - prepares its complement. Each
    conditional state is normalized by its outcome probability (which is
    1/2 for traceless A_i on a maximally entangled state).
    """
    d = alice.dim
    rho = _as_density(state, d)
    eye = np.eye(d)
    states = [None] * 2**n
    probs = np.zeros(2**n)
    for pair, a in zip(comb.gen_domain(n, order), alice):
        for x, proj in ((pair.x_i, (eye + a) / 2), (pair.x_j, (eye - a) / 2)):
            cond = partial_trace(np.kron(proj, eye) @ rho, (d, d), keep="B")
            p = np.trace(cond).real
            if p <= 1e-12:
                raise DegenerateSettingError(
                    f"outcome for x={comb.bits(x, n)} has probability {p:.3g}; encoding is degenerate"
                )
            states[x] = cond / p
            probs[x] = p
    return EncodedStates(states, probs)


def state_parity_residual(n: int, rho_list, s) -> float:
    """||(1/2**(n-1)) (sum_{x.s=0} rho_x - sum_{x.s=1} rho_x)||, rho_list indexed by bit-string value."""
    if len(rho_list) != 2**n:
        raise ValueError(f"need {2 ** n} states, got {len(rho_list)}")
    s = s.s if isinstance(s, comb.ParityElement) else int(s)
    total = None
    for x, rho in enumerate(rho_list):
        rho = np.asarray(rho, dtype=complex)
        if not is_density_matrix(rho, EIG_TOL):
            raise PreconditionError(f"rho for x={comb.bits(x, n)} is not a density matrix")
        term = rho if comb.popcount(s & x) % 2 == 0 else -rho
        total = term if total is None else total + term
    return op_norm(total / 2 ** (n - 1))


@dataclass(frozen=True)
class Certificate:
    m: int
    contextual: bool

    @property
    def dim(self) -> int:
        return 2**self.m


def certify_dimension(n: int, observed_value: float, max_table: dict, tol: float = 1e-6) -> Certificate:
    """Smallest m such that local dimension 2**m can produce ``observed_value``."""
    if observed_value > optimal_bound(n) + tol:
        raise InfeasibleValueError(
            f"value {observed_value} exceeds the quantum optimum {optimal_bound(n)} for n={n}"
        )
    needed = range(1, n // 2 + 1)
    missing = [m for m in needed if m not in max_table]
    if missing:
        raise ValueError(f"max_table lacks entries for m = {missing}")
    contextual = observed_value > pnc_bound(n)
    for m in sorted(max_table):
        if observed_value <= max_table[m] + tol:
            return Certificate(m=m, contextual=contextual)
    raise InfeasibleValueError(f"value {observed_value} exceeds every entry of max_table {max_table}")


@dataclass(frozen=True)
class WitnessReport:
    n: int
    dim: int
    local_bound: int
    pnc_bound: int
    optimal_bound: float
    sos_bound: float
    achieved_value: float
    success_probability: float
    parity_residual: float
    certified_min_dim: int | None


def witness_report(n: int, bob: ObservableSet, max_table: dict | None = None) -> WitnessReport:
    """Derive Alice, maximize over the state, and collect every bound for this Bob set."""
    alice = derive_alice(n, bob)
    inst = build_operator(n, alice, bob)
    w, v = herm_eig(inst.operator)
    value = quantum_value(inst, v[:, 0])
    cert = certify_dimension(n, value, max_table).dim if max_table is not None else None
    return WitnessReport(
        n=n,
        dim=bob.dim,
        local_bound=local_bound(n),
        pnc_bound=pnc_bound(n),
        optimal_bound=optimal_bound(n),
        sos_bound=sos_upper_bound(n, bob),
        achieved_value=value,
        success_probability=success_probability(value, n),
        parity_residual=alice_parity_residual(n, alice),
        certified_min_dim=cert,
    )
