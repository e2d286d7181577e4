"""Index structures of the n-bit parity-oblivious random access code.

Bit strings are stored as Python ints. Bit ``y`` (1-based) of an n-bit
string is the y-th character from the left, so ``0b011`` with n=3 reads
"011" and its second bit is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "MAX_BITS",
    "BitPair",
    "ParityElement",
    "bits",
    "popcount",
    "gen_domain",
    "parity_set",
    "sign",
    "parity_sign",
    "sign_table",
    "parity_sign_table",
]

MAX_BITS = 16
ORDERS = ("binary", "weight")


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int, n: int) -> str:
    """Render ``x`` as an n-character bit string."""
    return format(x, f"0{n}b")


def _check_n(n, low=2):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"n must be an integer, got {type(n).__name__}")
    if not low <= n <= MAX_BITS:
        raise ValueError(f"n must lie in [{low}, {MAX_BITS}], got {n}")


@dataclass(frozen=True)
class BitPair:
    """One element of the ordered domain: ``x_i`` and its complement ``x_j``."""

    n: int
    i: int
    x_i: int
    x_j: int

    @property
    def j(self) -> int:
        return 2**self.n + 1 - self.i

    def bit(self, y: int) -> int:
        if not 1 <= y <= self.n:
            raise ValueError(f"setting y must lie in [1, {self.n}], got {y}")
        return (self.x_i >> (self.n - y)) & 1

    def __str__(self):
        return f"x^{self.i}={bits(self.x_i, self.n)} | x^{self.j}={bits(self.x_j, self.n)}"


@dataclass(frozen=True)
class ParityElement:
    n: int
    s: int

    @property
    def weight(self) -> int:
        return popcount(self.s)

    @property
    def trivial(self) -> bool:
        # even-weight parities are fixed by the complement structure of the encoding
        return self.weight % 2 == 0

    def __str__(self):
        return bits(self.s, self.n)


def _representatives(n, order):
    full = 2**n - 1
    if order == "binary":
        return list(range(2 ** (n - 1)))
    if order == "weight":
        # lighter member of each complementary pair; ties go to the smaller integer
        reps = [
            x
            for x in range(2**n)
            if popcount(x) < n - popcount(x) or (2 * popcount(x) == n and x < full ^ x)
        ]
        return sorted(reps, key=lambda x: (popcount(x), x))
    raise ValueError(f"order must be one of {ORDERS}, got {order!r}")


@lru_cache(maxsize=None)
def _domain(n, order):
    full = 2**n - 1
    return tuple(
        BitPair(n=n, i=k + 1, x_i=x, x_j=full ^ x)
        for k, x in enumerate(_representatives(n, order))
    )


def gen_domain(n: int, order: str = "binary") -> list[BitPair]:
    """Ordered list of the 2**(n-1) complementary pairs.

    ``order="binary"`` labels pairs by binary counting (x^1 = 0...00,
    x^2 = 0...01, ...), so that i + j = 2**n + 1. ``order="weight"`` keeps
    the lighter string of each pair and sorts by Hamming weight, which is
    the labeling used when the Bell expressions are written out term by
    term for n = 3, 4, 5.
    """
    _check_n(n)
    return list(_domain(int(n), order))


def parity_set(n: int) -> list[ParityElement]:
    """All strings of weight >= 2, trivial (even weight) ones flagged."""
    _check_n(n)
    return [ParityElement(n=n, s=s) for s in range(2**n) if popcount(s) >= 2]


def sign(pair: BitPair, y: int) -> int:
    """(-1) raised to the y-th bit of ``pair.x_i``."""
    return 1 - 2 * pair.bit(y)


def parity_sign(s: ParityElement | int, pair: BitPair) -> int:
    """(-1) raised to the s-parity of ``pair.x_i``."""
    if isinstance(s, ParityElement):
        if s.n != pair.n:
            raise ValueError(f"parity element has n={s.n}, pair has n={pair.n}")
        s = s.s
    if not 0 <= s < 2**pair.n:
        raise ValueError(f"parity string {s} does not fit in {pair.n} bits")
    return 1 - 2 * (popcount(s & pair.x_i) % 2)


@lru_cache(maxsize=None)
def _sign_table(n, order):
    table = np.array([[sign(p, y) for y in range(1, n + 1)] for p in _domain(n, order)])
    table.flags.writeable = False
    return table


def sign_table(n: int, order: str = "binary") -> np.ndarray:
    """Array of shape (2**(n-1), n) holding sign(pair_i, y). Read-only."""
    _check_n(n)
    return _sign_table(int(n), order)


def parity_sign_table(n: int, order: str = "binary", nontrivial_only: bool = True):
    """Parity elements and the matching (len, 2**(n-1)) array of parity signs."""
    elements = [e for e in parity_set(n) if not (nontrivial_only and e.trivial)]
    domain = gen_domain(n, order)
    table = np.array([[parity_sign(e, p) for p in domain] for e in elements], dtype=int)
    return elements, table.reshape(len(elements), len(domain))
