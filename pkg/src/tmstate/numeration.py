"""Base-b digit words, the evil-number predicate and instance parameters.

Words are tuples of digits, most significant digit first. The empty word
denotes 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

Word = tuple[int, ...]


class Side(enum.IntEnum):
    """Component of a product state: ``T`` (evil) or ``B`` (odious)."""

    T = 0
    B = 1

    def flipped(self) -> "Side":
        return Side.B if self is Side.T else Side.T

    def __str__(self) -> str:
        return self.name


class StateLabel(NamedTuple):
    """Product state ``(i, X)``."""

    i: int
    side: Side

    def __str__(self) -> str:
        return f"{self.i}{self.side.name}"


def rep(n: int, b: int) -> Word:
    """Base-``b`` expansion of ``n`` without leading zeros; ``rep(0, b) == ()``."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if n < 0:
        raise ValueError(f"cannot expand negative integer {n}")
    if n == 0:
        return ()
    if b & (b - 1) == 0:
        # power-of-two base: group the binary expansion, linear in the length
        p = b.bit_length() - 1
        bits = format(n, "b")
        bits = "0" * (-len(bits) % p) + bits
        return tuple(int(bits[j : j + p], 2) for j in range(0, len(bits), p))
    digits = []
    while n:
        n, d = divmod(n, b)
        digits.append(d)
    return tuple(reversed(digits))


def rep_length(n: int, b: int) -> int:
    """``len(rep(n, b))``."""
    if b & (b - 1) == 0 and b >= 2:
        return ceil_div(n.bit_length(), b.bit_length() - 1)
    return len(rep(n, b))


def val(w: Sequence[int], b: int) -> int:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    n = 0
    for d in w:
        if not 0 <= d < b:
            raise ValueError(f"digit {d} out of range for base {b}")
        n = n * b + d
    return n


def padded(n: int, b: int, length: int) -> Word:
    """``rep(n, b)`` left-padded with zeros to ``length`` digits."""
    w = rep(n, b)
    if len(w) > length:
        raise ValueError(f"{n} needs {len(w)} digits in base {b}, more than {length}")
    return (0,) * (length - len(w)) + w


def rep_pair(a: int, c: int, b: int) -> tuple[tuple[int, int], ...]:
    """Expansion of the pair ``(a, c)``, the shorter component padded with zeros."""
    length = max(len(rep(a, b)), len(rep(c, b)))
    return tuple(zip(padded(a, b, length), padded(c, b, length)))


def encode_pair(d: int, e: int, b: int) -> int:
    """Single-symbol encoding of the pair digit ``(d, e)``."""
    return d * b + e


def decode_pair(symbol: int, b: int) -> tuple[int, int]:
    return divmod(symbol, b)


def is_evil(n: int) -> bool:
    """True iff the binary expansion of ``n`` has an even number of ones."""
    if n < 0:
        raise ValueError(f"negative integer {n}")
    return n.bit_count() % 2 == 0


def flip_if(side: Side, n: int) -> Side:
    """``side`` when ``n`` is evil, the opposite side otherwise."""
    return side if is_evil(n) else side.flipped()


def two_adic(m: int) -> tuple[int, int]:
    """Split ``m`` as ``k * 2**z`` with ``k`` odd; returns ``(k, z)``."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    z = (m & -m).bit_length() - 1
    return m >> z, z


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class Params:
    """Derived constants of an instance ``(m, r, p)``.

    ``K`` is ``None`` when ``k == 1``.
    """

    m: int
    r: int
    p: int
    b: int
    k: int
    z: int
    R: int
    N: int
    K: int | None

    @property
    def zp(self) -> int:
        """``ceil(z / p)``."""
        return ceil_div(self.z, self.p)

    @property
    def state_complexity(self) -> int:
        return 2 * self.k + self.zp


def derive_params(m: int, r: int, p: int) -> Params:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    if not 0 <= r < m:
        raise ValueError(f"r must lie in [0, {m - 1}], got {r}")
    b = 1 << p
    k, z = two_adic(m)
    R = rep_length(r, b)
    N = max(ceil_div(z, p), R)
    K = rep_length((k - 1) << z, b) if k > 1 else None
    return Params(m=m, r=r, p=p, b=b, k=k, z=z, R=R, N=N, K=K)
