"""The intermediate automata leading to the projected product automaton.

Pair alphabets encode ``(d, e)`` as ``d * b + e``. Product states ``(i, X)``
are numbered ``2 * i + X`` (``T = 0``, ``B = 1``) and labelled ``"iT"``/``"iB"``.
"""

from __future__ import annotations

import numpy as np

from tmstate.automata import UNDEFINED, Dfa
from tmstate.numeration import (
    Params,
    Side,
    StateLabel,
    Word,
    derive_params,
    encode_pair,
    flip_if,
    is_evil,
    padded,
)


def _check_instance(m: int, r: int, b: int) -> None:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if not 0 <= r < m:
        raise ValueError(f"r must lie in [0, {m - 1}], got {r}")
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")


def state_id(label: StateLabel) -> int:
    return 2 * label.i + int(label.side)


def state_label(state: int) -> StateLabel:
    return StateLabel(state // 2, Side(state % 2))


def build_a_t(p: int) -> Dfa:
    """Two-state automaton over pairs whose first component is evil."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    b = 1 << p
    table = np.empty((2, b * b), dtype=np.int32)
    for side in Side:
        for d in range(b):
            target = int(flip_if(side, d))
            for e in range(b):
                table[side, encode_pair(d, e, b)] = target
    return Dfa(table, int(Side.T), frozenset({int(Side.T)}), ("T", "B"))


def build_a_mrb(m: int, r: int, b: int) -> Dfa:
    """Pairs ``(n, m*n + r)`` in base ``b``; partial, one ``d`` per ``e`` from each state."""
    _check_instance(m, r, b)
    table = np.full((m, b * b), UNDEFINED, dtype=np.int32)
    for i in range(m):
        for e in range(b):
            d, j = divmod(b * i + e, m)
            table[i, encode_pair(d, e, b)] = j
    return Dfa(table, 0, frozenset({r}), tuple(str(i) for i in range(m)))


def build_pi_a_mrb(m: int, r: int, b: int) -> Dfa:
    """Residues modulo ``m`` read in base ``b``: ``i --e--> (b*i + e) % m``."""
    _check_instance(m, r, b)
    i = np.arange(m, dtype=np.int64)[:, None]
    e = np.arange(b, dtype=np.int64)[None, :]
    table = ((b * i + e) % m).astype(np.int32)
    return Dfa(table, 0, frozenset({r}), tuple(str(i) for i in range(m)))


def sigma(i: int, params: Params) -> int:
    """Permutation ``i -> -2**(pK - z) * i mod k`` of ``[0, k-1]``."""
    k = params.k
    if params.K is None:
        raise ValueError("sigma is undefined when k == 1")
    if not 0 <= i < k:
        raise ValueError(f"i must lie in [0, {k - 1}], got {i}")
    return (-pow(2, params.p * params.K - params.z, k) * i) % k


def witness_word(i: int, params: Params) -> Word:
    """Length-``K`` word leading from residue ``i`` to residue 0."""
    return padded(sigma(i, params) << params.z, params.b, params.K)


def _product_table(m: int, p: int) -> np.ndarray:
    b = 1 << p
    table = np.full((2 * m, b * b), UNDEFINED, dtype=np.int32)
    for i in range(m):
        for side in Side:
            src = 2 * i + int(side)
            for e in range(b):
                d, j = divmod(b * i + e, m)
                table[src, encode_pair(d, e, b)] = 2 * j + int(flip_if(side, d))
    return table


def _labels(m: int) -> tuple[str, ...]:
    return tuple(f"{i}{side.name}" for i in range(m) for side in Side)


def build_product(m: int, r: int, p: int) -> Dfa:
    """Product of ``A_{m,r,2^p}`` and ``A_{T,2^p}`` from the closed-form transition rule."""
    derive_params(m, r, p)
    table = _product_table(m, p)
    return Dfa(table, 0, frozenset({2 * r}), _labels(m))


def projected_table(m: int, p: int) -> np.ndarray:
    """``(i, X) --e--> ((2^p i + e) mod m, X flipped iff floor((2^p i + e)/m) is odious)``."""
    b = 1 << p
    n = 2 * m
    table = np.empty((n, b), dtype=np.int32)
    for i in range(m):
        for e in range(b):
            d, j = divmod(b * i + e, m)
            swap = 0 if is_evil(d) else 1
            table[2 * i, e] = 2 * j + swap
            table[2 * i + 1, e] = 2 * j + (1 - swap)
    return table


def build_projected(m: int, r: int, p: int) -> Dfa:
    """Complete ``2m``-state DFA of ``val^{-1}(m*T + r)`` in base ``2^p``."""
    derive_params(m, r, p)
    return Dfa(projected_table(m, p), 0, frozenset({2 * r}), _labels(m))
