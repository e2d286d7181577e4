"""Sharing of preparation contextuality among sequential Bobs.

One Alice measures sharply; Bobs 1..k act in sequence on the same half of
a maximally entangled pair, each measuring one of his n observables
(uniformly at random) with the unsharp effects (I +- lam B)/2 and passing
on the post-measurement state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, PreconditionError
from .linalg import is_density_matrix, max_entangled, psd_sqrt
from .observables import ObservableSet
from .witness import build_operator, pnc_bound

__all__ = [
    "UnsharpMeasurement",
    "SharingTrace",
    "unsharp_effects",
    "post_measurement_state",
    "degradation_factor",
    "degraded_value",
    "thresholds",
    "simulate_sequence",
    "sharing_report",
    "PRINTED_MAX_BOBS",
]

# counts stated alongside the sharing figures, kept for side-by-side reporting only
PRINTED_MAX_BOBS = {(5, 2): 7}


def _check_lambda(lam):
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"unsharpness must lie in [0, 1], got {lam}")


def unsharp_effects(observable, lam: float):
    """The two effects (I + lam B)/2 and (I - lam B)/2."""
    _check_lambda(lam)
    b = np.asarray(observable, dtype=complex)
    eye = np.eye(b.shape[0])
    return (eye + lam * b) / 2, (eye - lam * b) / 2


@dataclass(frozen=True)
class UnsharpMeasurement:
    observable: np.ndarray
    lam: float

    def __post_init__(self):
        _check_lambda(self.lam)

    @property
    def effects(self):
        return unsharp_effects(self.observable, self.lam)


def post_measurement_state(rho, bob_set: ObservableSet, lam: float, tol: float = 1e-10) -> np.ndarray:
    """State handed to the next Bob, averaged over the n settings and both outcomes.

    Computed both from the square roots of the effects and from the
    decomposition sqrt(1-lam^2) rho + (1-sqrt(1-lam^2))/n sum Pi rho Pi;
    a disagreement above ``tol`` raises ConsistencyError.
    """
    _check_lambda(lam)
    d = bob_set.dim
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d * d, d * d) or not is_density_matrix(rho):
        raise PreconditionError("rho must be a density matrix on C^d (x) C^d")
    n = len(bob_set)
    eye = np.eye(d)

    via_roots = np.zeros_like(rho)
    dephased = np.zeros_like(rho)
    for b in bob_set:
        for e in unsharp_effects(b, lam):
            k = np.kron(eye, psd_sqrt(e))
            via_roots += k @ rho @ k
        for proj in ((eye + b) / 2, (eye - b) / 2):
            k = np.kron(eye, proj)
            dephased += k @ rho @ k
    via_roots /= n
    root = math.sqrt(1 - lam * lam)
    via_projectors = root * rho + (1 - root) / n * dephased
    gap = np.max(np.abs(via_roots - via_projectors))
    if gap > tol:
        raise ConsistencyError(f"post-measurement forms differ by {gap:.3g}")
    return via_roots


def degradation_factor(lam: float, n: int) -> float:
    """Factor by which one unsharp Bob shrinks correlations seen by the next.

    A setting measured with sharpness lam leaves an anticommuting observable
    scaled by sqrt(1-lam^2) and its own observable intact; averaging over the
    n settings gives (1 + (n-1) sqrt(1-lam^2)) / n.
    """
    _check_lambda(lam)
    return (1 + (n - 1) * math.sqrt(1 - lam * lam)) / n


def degraded_value(base_value: float, n: int, lambdas) -> float:
    """Bell value seen by the k-th Bob: base * lam_k * prod_{j<k} g(lam_j)."""
    lambdas = list(lambdas)
    if not lambdas:
        raise ValueError("need at least one unsharpness value")
    for lam in lambdas:
        _check_lambda(lam)
    value = base_value * lambdas[-1]
    for lam in lambdas[:-1]:
        value *= degradation_factor(lam, n)
    return value


@dataclass(frozen=True)
class SharingTrace:
    n: int
    dim: int | None
    base_value: float
    thresholds: tuple
    normalization: str = "(1+(n-1)sqrt(1-lam^2))/n"

    @property
    def max_bobs(self) -> int:
        return len(self.thresholds)

    def rows(self):
        return [(k, lam) for k, lam in enumerate(self.thresholds, start=1)]


def thresholds(n: int, base_value: float, dim: int | None = None, max_bobs: int = 1000) -> SharingTrace:
    """Critical sharpness for each sequential Bob, every earlier Bob sitting at his own critical value.

    lam_1 = 2**(n-1) / base and lam_k = lam_{k-1} / g(lam_{k-1}); the
    sequence stops at the first value above 1.
    """
    bound = pnc_bound(n)
    lams = []
    lam = bound / base_value if base_value > 0 else math.inf
    while lam <= 1.0 and len(lams) < max_bobs:
        lams.append(lam)
        lam = lam / degradation_factor(lam, n)
    return SharingTrace(n=n, dim=dim, base_value=base_value, thresholds=tuple(lams))


def simulate_sequence(n: int, dim: int, bob_set: ObservableSet, alice_set: ObservableSet, lambdas) -> list[float]:
    """Bell value for each Bob in turn by explicit density-matrix evolution.

    The k-th Bob's correlations carry the factor lam_k of his own unsharp
    measurement; the state he receives has been updated by Bobs 1..k-1.
    """
    if bob_set.dim != dim or alice_set.dim != dim:
        raise ValueError(f"observable sets act on {bob_set.dim}/{alice_set.dim}, expected {dim}")
    lambdas = list(lambdas)
    op = build_operator(n, alice_set, bob_set).operator
    psi = max_entangled(dim)
    rho = np.outer(psi, psi.conj())
    values = []
    for k, lam in enumerate(lambdas):
        _check_lambda(lam)
        values.append(float(lam * np.trace(op @ rho).real))
        if k < len(lambdas) - 1:
            rho = post_measurement_state(rho, bob_set, lam)
    return values


def sharing_report(n: int, table: dict | None = None, config=None) -> list[SharingTrace]:
    """One threshold trace per local dimension 2**m, m = 1..floor(n/2).

    ``table`` maps m to the maximum Bell value at dimension 2**m; if absent
    it is computed by the seesaw optimizer with ``config``.
    """
    if table is None:
        from .seesaw import max_table

        table = max_table(n, config)
    return [thresholds(n, table[m], dim=2**m) for m in sorted(table)]
