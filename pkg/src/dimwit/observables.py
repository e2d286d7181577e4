"""Sets of dichotomic observables: generic anticommuting families and the explicit sets for n = 2..6."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import I2, anticomm, is_dichotomic, kron, kron_all, matrix_sign, pauli

__all__ = [
    "ObservableSet",
    "anticommuting_family",
    "paper_bob_set",
    "SUPPORTED_VARIANTS",
    "anticomm_table",
    "random_observable",
    "random_observable_set",
]

_SCALAR_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ObservableSet:
    """An ordered tuple of dim x dim dichotomic observables."""

    members: tuple
    label: str = ""

    def __post_init__(self):
        members = tuple(np.array(m, dtype=complex) for m in self.members)
        if not members:
            raise ValueError("an observable set needs at least one member")
        shapes = {m.shape for m in members}
        if len(shapes) != 1:
            raise ValueError(f"members have mixed shapes {sorted(shapes)}")
        for k, m in enumerate(members):
            if not is_dichotomic(m):
                raise ValueError(f"member {k + 1} is not a Hermitian involution")
            m.flags.writeable = False
        object.__setattr__(self, "members", members)

    @property
    def dim(self) -> int:
        return self.members[0].shape[0]

    @property
    def n_settings(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, k):
        return self.members[k]

    def __iter__(self):
        return iter(self.members)

    def stack(self) -> np.ndarray:
        """Members as one array of shape (n_settings, dim, dim)."""
        return np.stack(self.members)

    def conj(self) -> "ObservableSet":
        return ObservableSet(tuple(m.conj() for m in self.members), self.label)


def anticommuting_family(k: int) -> ObservableSet:
    """k pairwise anticommuting observables from the Jordan-Wigner operator chain.

    On m = max(1, k // 2) qubits the chain is Z..Z X I..I, Z..Z Y I..I for
    each site, closed by Z^(x)m; the first k are kept, so the dimension is
    the smallest power of two that can host k anticommuting involutions.
    """
    if not 1 <= k <= 13:
        raise ValueError(f"k must lie in [1, 13], got {k}")
    m = max(1, k // 2)
    x, y, z = pauli("x"), pauli("y"), pauli("z")
    chain = []
    for j in range(m):
        left = [z] * j
        right = [I2] * (m - j - 1)
        chain.append(kron_all(*left, x, *right))
        chain.append(kron_all(*left, y, *right))
    chain.append(kron_all(*[z] * m))
    return ObservableSet(tuple(chain[:k]), label=f"anticommuting family k={k}")


def _explicit_sets():
    x, y, z = pauli("x"), pauli("y"), pauli("z")
    r2 = np.sqrt(2.0)
    b5 = [kron(x, x), kron(x, y), kron(x, z), kron(y, I2), kron(z, I2)]
    return {
        (2, 2, "optimal"): [x, z],
        (3, 2, "optimal"): [x, y, z],
        (4, 4, "optimal"): b5[:4],
        (4, 2, "qubit_max"): [x, y, z, z],
        (5, 4, "optimal"): b5,
        # sigma_y is printed for both the second and third member; the stated anticommutation
        # relations force B3 = sigma_y and B2 = sigma_z, which reaches 8(sqrt(5+2sqrt2) + sqrt(5-2sqrt2))
        (5, 2, "qubit_max"): [x, z, y, (x + z) / r2, (x - z) / r2],
        (6, 8, "optimal"): [kron(x, b) for b in b5] + [kron_all(y, I2, I2)],
        (6, 4, "two_qubit_max"): b5 + [kron(z, I2)],
        (6, 2, "qubit_max"): [
            (y + x) / r2,
            (y - x) / r2,
            (x + z) / r2,
            (x - z) / r2,
            (z + y) / r2,
            (z - y) / r2,
        ],
    }


SUPPORTED_VARIANTS = tuple(_explicit_sets())


def paper_bob_set(n: int, dim: int, variant: str = "optimal") -> ObservableSet:
    """Bob's observables for (n, dim, variant) as written out in the worked examples.

    Supported combinations are listed in ``SUPPORTED_VARIANTS``.
    """
    sets = _explicit_sets()
    try:
        members = sets[(n, dim, variant)]
    except KeyError:
        supported = ", ".join(f"(n={a}, dim={b}, {c})" for a, b, c in SUPPORTED_VARIANTS)
        raise ValueError(
            f"no explicit set for (n={n}, dim={dim}, {variant}); supported: {supported}"
        ) from None
    return ObservableSet(tuple(members), label=f"n={n} dim={dim} {variant}")


def anticomm_table(obs: ObservableSet, tol: float = _SCALAR_TOL) -> np.ndarray:
    """Real matrix T with {B_y, B_y'} = T[y, y'] * I; NaN where the anticommutator is not scalar."""
    k = len(obs)
    eye = np.eye(obs.dim)
    table = np.full((k, k), np.nan)
    for a in range(k):
        for b in range(a, k):
            ac = anticomm(obs[a], obs[b])
            c = np.trace(ac).real / obs.dim
            if np.max(np.abs(ac - c * eye)) <= tol:
                table[a, b] = table[b, a] = c
    return table


def random_observable(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Sign of a random Hermitian matrix with standard complex Gaussian entries."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return matrix_sign(0.5 * (g + g.conj().T))


def random_observable_set(k: int, dim: int, rng: np.random.Generator) -> ObservableSet:
    return ObservableSet(tuple(random_observable(dim, rng) for _ in range(k)), label="random")
