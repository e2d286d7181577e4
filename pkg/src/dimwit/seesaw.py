"""Seesaw maximization of the Bell value at a fixed local dimension.

Each sweep maximizes exactly over Alice's observables, then Bob's, then
the shared pure state, so the value never decreases within a restart.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import combinatorics as comb
from .linalg import herm_eig, max_entangled
from .observables import ObservableSet, random_observable_set
from .witness import BellInstance, build_operator, correlators, quantum_value

__all__ = [
    "SeesawConfig",
    "SeesawResult",
    "alice_step",
    "bob_step",
    "state_step",
    "seesaw",
    "max_table",
    "thread_count",
]


@dataclass(frozen=True)
class SeesawConfig:
    restarts: int = 50
    max_iterations: int = 500
    convergence_tol: float = 1e-9
    rng_seed: int = 0
    threads: int | None = None

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be positive")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")


@dataclass(frozen=True, eq=False)
class SeesawResult:
    n: int
    dim: int
    best_value: float
    alice: ObservableSet
    bob: ObservableSet
    state: np.ndarray
    iterations_used: int
    converged: bool
    per_restart_values: list
    histories: list = field(default_factory=list, repr=False)


def thread_count(config: SeesawConfig | None = None) -> int:
    if config is not None and config.threads:
        return config.threads
    env = os.environ.get("DIMWIT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _sign_stack(h):
    # batched Hermitian sign with sign(0) = +1
    h = 0.5 * (h + np.conj(np.swapaxes(h, -1, -2)))
    w, v = np.linalg.eigh(h)
    return (v * np.where(w >= 0, 1.0, -1.0)[:, None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def _assemble(alice, c):
    # sum_i A_i (x) C_i as one matrix product
    k, d, _ = alice.shape
    m = alice.reshape(k, d * d).T @ c.reshape(k, d * d)
    op = m.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    return 0.5 * (op + op.conj().T)


def _rho_tensor(rho, d):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    return rho.reshape(d, d, d, d)


def alice_step(n: int, bob: ObservableSet, rho, order: str = "binary") -> ObservableSet:
    """Best Alice observables for fixed Bob and state: A_i = sign(Tr_B[(I (x) C_i) rho])."""
    d = bob.dim
    c = correlators(n, bob, order)
    r = np.einsum("kqb,abpq->kap", c, _rho_tensor(rho, d))
    return ObservableSet(tuple(_sign_stack(r)))


def bob_step(n: int, alice: ObservableSet, rho, order: str = "binary") -> ObservableSet:
    """Best Bob observables for fixed Alice and state: B_y = sign(Tr_A[(D_y (x) I) rho])."""
    d = alice.dim
    dy = np.einsum("iy,iab->yab", comb.sign_table(n, order), alice.stack())
    q = np.einsum("ypa,abpq->ybq", dy, _rho_tensor(rho, d))
    return ObservableSet(tuple(_sign_stack(q)))


def state_step(instance: BellInstance) -> np.ndarray:
    """Eigenvector of the largest eigenvalue of the assembled operator."""
    _, v = herm_eig(instance.operator)
    return v[:, 0].copy()


def _run_restart(n, dim, config, seed_seq, order):
    # array-only inner loop; rho = |psi><psi| so both steps reduce to d x d products
    rng = np.random.default_rng(seed_seq)
    signs = comb.sign_table(n, order).astype(float)
    bob = random_observable_set(n, dim, rng).stack()
    psi = max_entangled(dim)
    top = dim * dim - 1
    history = []
    converged = False
    for _ in range(config.max_iterations):
        mat = psi.reshape(dim, dim)
        c = np.einsum("iy,yab->iab", signs, bob)
        alice = _sign_stack(mat @ np.swapaxes(c, 1, 2) @ mat.conj().T)
        dy = np.einsum("iy,iab->yab", signs, alice)
        bob = _sign_stack(mat.T @ np.swapaxes(dy, 1, 2) @ mat.conj())
        c = np.einsum("iy,yab->iab", signs, bob)
        op = _assemble(alice, c)
        w, v = scipy.linalg.eigh(op, subset_by_index=[top, top], driver="evr")
        psi = v[:, 0]
        history.append(float(w[0]))
        if len(history) > 1 and history[-1] - history[-2] < config.convergence_tol:
            converged = True
            break
    return history, ObservableSet(tuple(alice)), ObservableSet(tuple(bob)), psi, converged


def seesaw(n: int, dim: int, config: SeesawConfig | None = None, order: str = "binary") -> SeesawResult:
    """Best value over ``config.restarts`` independent seesaw runs.

    Every restart draws its own child seed from ``config.rng_seed``, so the
    outcome does not depend on how many threads execute the restarts.
    """
    config = config or SeesawConfig()
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    seeds = np.random.SeedSequence(config.rng_seed).spawn(config.restarts)
    workers = min(thread_count(config), config.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(lambda s: _run_restart(n, dim, config, s, order), seeds))
    else:
        runs = [_run_restart(n, dim, config, s, order) for s in seeds]
    finals = [h[-1] for h, *_ in runs]
    best = int(np.argmax(finals))
    history, alice, bob, psi, converged = runs[best]
    value = quantum_value(build_operator(n, alice, bob, order), psi)
    return SeesawResult(
        n=n,
        dim=dim,
        best_value=value,
        alice=alice,
        bob=bob,
        state=psi,
        iterations_used=len(history),
        converged=converged,
        per_restart_values=finals,
        histories=[h for h, *_ in runs],
    )


def max_table(n: int, config: SeesawConfig | None = None) -> dict[int, float]:
    """Seesaw maximum for local dimension 2**m, m = 1..floor(n/2)."""
    return {m: seesaw(n, 2**m, config).best_value for m in range(1, n // 2 + 1)}
