"""Classes of indistinguishable states of the projected product automaton.

For ``L = val^{-1}(m*T + r)`` in base ``2^p`` the ``2m`` states ``(i, X)``
split into classes ``C_alpha`` (``0 <= alpha <= N``), the states from which a
suffix of the padded expansion of ``r`` leads to ``(r, T)``, and classes
``D_(j,X)`` collecting the remaining states by residue modulo ``k``. Gluing
each class into one state gives the minimal automaton, with ``2k + ceil(z/p)``
states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from tmstate.automata import Dfa, canonical
from tmstate.construction import build_projected, state_id, state_label
from tmstate.numeration import (
    Params,
    Side,
    StateLabel,
    ceil_div,
    derive_params,
    flip_if,
    rep,
    two_adic,
)

Labels = frozenset[StateLabel]


class QuotientIllDefined(AssertionError):
    """Members of one class disagree on the class of a successor."""


class PartitionError(AssertionError):
    pass


@dataclass(frozen=True)
class ClassId:
    """``C(alpha)`` when ``kind == "C"`` (``index = alpha``), else ``D(index, side)``."""

    kind: str
    index: int
    side: Side | None = None

    @classmethod
    def C(cls, alpha: int) -> "ClassId":
        return cls("C", alpha)

    @classmethod
    def D(cls, j: int, side: Side) -> "ClassId":
        if j == 0 and side is Side.T:
            raise ValueError("D_(0,T) is not defined")
        return cls("D", j, Side(side))

    def sort_key(self) -> tuple[int, int, int]:
        if self.kind == "C":
            return (0, self.index, 0)
        return (1, self.index, int(self.side))

    def __lt__(self, other: "ClassId") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind == "C":
            return f"C_{self.index}"
        return f"D_({self.index},{self.side.name})"


def _check_alpha(alpha: int, params: Params) -> None:
    if not 0 <= alpha <= params.N:
        raise ValueError(f"alpha must lie in [0, {params.N}], got {alpha}")


def _c_prime_low(alpha: int, params: Params) -> Labels:
    q = params.r >> (params.p * alpha)
    step = params.m >> (params.p * alpha)
    return frozenset(
        StateLabel(q + ell * step, flip_if(Side.T, ell)) for ell in range(1 << (params.p * alpha))
    )


def _c_prime_high(alpha: int, params: Params) -> Labels:
    q = params.r >> (params.p * alpha)
    return frozenset(
        StateLabel(q + ell * params.k, flip_if(Side.T, ell)) for ell in range(1 << params.z)
    )


def c_prime(alpha: int, params: Params) -> Labels:
    _check_alpha(alpha, params)
    pa = params.p * alpha
    if pa < params.z:
        return _c_prime_low(alpha, params)
    if pa > params.z:
        return _c_prime_high(alpha, params)
    low, high = _c_prime_low(alpha, params), _c_prime_high(alpha, params)
    if low != high:
        raise PartitionError(f"both descriptions of C'_{alpha} should agree")
    return low


def _c_classes(params: Params) -> list[Labels]:
    seen: set[StateLabel] = set()
    out = []
    for alpha in range(params.N + 1):
        cp = c_prime(alpha, params)
        out.append(frozenset(cp - seen))
        seen |= cp
    return out


def c_class(alpha: int, params: Params) -> Labels:
    _check_alpha(alpha, params)
    return _c_classes(params)[alpha]


def d_prime(j: int, side: Side, params: Params) -> Labels:
    return frozenset(
        StateLabel(j + ell * params.k, flip_if(side, ell)) for ell in range(1 << params.z)
    )


def d_class(j: int, side: Side, params: Params) -> Labels:
    ClassId.D(j, side)
    if not 0 <= j < params.k:
        raise ValueError(f"j must lie in [0, {params.k - 1}], got {j}")
    covered = frozenset().union(*_c_classes(params))
    return d_prime(j, side, params) - covered


def d_ids(params: Params) -> Iterator[ClassId]:
    for j in range(params.k):
        for side in Side:
            if (j, side) != (0, Side.T):
                yield ClassId.D(j, side)


def predicted_empty_d(params: Params) -> set[ClassId]:
    """``D_(floor(r / 2^(p*alpha)), T)`` for every ``alpha`` with ``p*alpha >= z``."""
    out = set()
    for alpha in range(params.N + 1):
        if params.p * alpha >= params.z:
            j = params.r >> (params.p * alpha)
            if j != 0:
                out.add(ClassId.D(j, Side.T))
    return out


@dataclass(frozen=True)
class ClassPartition:
    params: Params
    inventory: dict[ClassId, Labels]
    assignment: dict[StateLabel, ClassId]

    @property
    def nonempty(self) -> list[ClassId]:
        return sorted(c for c, members in self.inventory.items() if members)

    @property
    def empty(self) -> list[ClassId]:
        return sorted(c for c, members in self.inventory.items() if not members)

    def __getitem__(self, cid: ClassId) -> Labels:
        return self.inventory[cid]

    def check(self) -> None:
        """Raise ``PartitionError`` unless disjoint, covering, and with the expected empties."""
        pr = self.params
        total = sum(len(v) for v in self.inventory.values())
        union = frozenset().union(*self.inventory.values())
        everything = {StateLabel(i, s) for i in range(pr.m) for s in Side}
        if total != len(union) or union != everything:
            raise PartitionError("classes do not partition the states")
        for alpha in range(pr.N + 1):
            if not self.inventory[ClassId.C(alpha)]:
                raise PartitionError(f"C_{alpha} is empty")
        if set(self.empty) != predicted_empty_d(pr):
            raise PartitionError("empty D classes differ from the predicted ones")
        if len(self.nonempty) != pr.state_complexity:
            raise PartitionError("number of classes differs from 2k + ceil(z/p)")


def _from_inventory(params: Params, inventory: dict[ClassId, Labels]) -> ClassPartition:
    assignment: dict[StateLabel, ClassId] = {}
    for cid, members in inventory.items():
        for label in members:
            if label in assignment:
                raise PartitionError(f"{label} lies in {assignment[label]} and {cid}")
            assignment[label] = cid
    return ClassPartition(params, inventory, assignment)


def partition(params: Params) -> ClassPartition:
    cs = _c_classes(params)
    inventory: dict[ClassId, Labels] = {ClassId.C(a): c for a, c in enumerate(cs)}
    covered = frozenset().union(*cs)
    for cid in d_ids(params):
        inventory[cid] = d_prime(cid.index, cid.side, params) - covered
    result = _from_inventory(params, inventory)
    result.check()
    return result


def class_of(label: StateLabel, params: Params) -> ClassId:
    """Class of one state by arithmetic, without listing any class."""
    i, side = label
    m, k, z, p, r, R = params.m, params.k, params.z, params.p, params.r, params.R
    if not 0 <= i < m:
        raise ValueError(f"state index {i} out of range")
    for alpha in range(R):
        pa = p * alpha
        q = r >> pa
        step = m >> pa if pa <= z else k
        if i % step == q and side == flip_if(Side.T, (i - q) // step):
            return ClassId.C(alpha)
    # from alpha = R on, floor(r / 2^(p alpha)) = 0 and membership reduces to
    # 2-adic divisibility; later alphas only append zeros to l, keeping its parity
    ell, j = divmod(i, k)
    if j == 0:
        t = z if ell == 0 else min(z, (ell & -ell).bit_length() - 1)
        alpha = max(R, ceil_div(z - t, p))
        pa = p * alpha
        step = m >> pa if pa <= z else k
        if side == flip_if(Side.T, i // step):
            return ClassId.C(alpha)
    return ClassId.D(j, flip_if(side, ell))


def r0_classes(params: Params) -> ClassPartition:
    """Partition for ``r = 0`` built from closed-form class descriptions."""
    if params.r != 0:
        raise ValueError("closed-form classes need r == 0")
    k, z, p, N = params.k, params.z, params.p, params.N

    def band(lo: int, hi: int) -> Labels:
        return frozenset(
            StateLabel(k * (1 << (z - beta - 1)) + ell * k * (1 << (z - beta)), flip_if(Side.B, ell))
            for beta in range(lo, hi + 1)
            for ell in range(1 << beta)
        )

    inventory: dict[ClassId, Labels] = {ClassId.C(0): frozenset({StateLabel(0, Side.T)})}
    for alpha in range(1, N):
        inventory[ClassId.C(alpha)] = band((alpha - 1) * p, alpha * p - 1)
    if N >= 1:
        inventory[ClassId.C(N)] = band((N - 1) * p, z - 1)
    for cid in d_ids(params):
        inventory[cid] = d_prime(cid.index, cid.side, params)
    return _from_inventory(params, inventory)


def state_complexity(m: int, p: int) -> int:
    """``2k + ceil(z/p)`` where ``m = k * 2^z`` with ``k`` odd."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    k, z = two_adic(m)
    return 2 * k + ceil_div(z, p)


def quotient(projected: Dfa, part: ClassPartition) -> Dfa:
    """Glue the classes of ``part`` in ``projected``, checking the result is well defined."""
    order = part.nonempty
    index = {cid: n for n, cid in enumerate(order)}
    table = np.empty((len(order), projected.alphabet_size), dtype=np.int32)
    tab = projected.table
    for n, cid in enumerate(order):
        members = sorted(part[cid])
        for c in range(projected.alphabet_size):
            targets = {part.assignment[state_label(int(tab[state_id(lab), c]))] for lab in members}
            if len(targets) != 1:
                raise QuotientIllDefined(f"{cid} splits on symbol {c}: {sorted(map(str, targets))}")
            table[n, c] = index[targets.pop()]
    initial = index[part.assignment[state_label(projected.initial)]]
    finals = frozenset(index[part.assignment[state_label(q)]] for q in projected.finals)
    return Dfa(table, initial, finals, tuple(str(c) for c in order))


def build_minimal(m: int, r: int, p: int) -> Dfa:
    """Minimal DFA of ``val^{-1}(m*T + r)`` in base ``2^p``, states labelled by class."""
    params = derive_params(m, r, p)
    part = partition(params)
    glued = quotient(build_projected(m, r, p), part)
    if glued.label(glued.initial) != str(ClassId.C(params.R)):
        raise PartitionError("initial class should be C_R")
    return canonical(glued)


class ClassAutomaton:
    """The minimal automaton explored through class representatives.

    Nothing of size ``m`` is materialised, so ``m`` may be far beyond what
    ``build_minimal`` can enumerate.
    """

    def __init__(self, params: Params) -> None:
        self.params = params
        self._cache: dict[ClassId, tuple[ClassId, ...]] = {}
        self.initial = self.classify(StateLabel(0, Side.T))
        self.final = ClassId.C(0)

    def classify(self, label: StateLabel) -> ClassId:
        return class_of(label, self.params)

    def representative(self, cid: ClassId) -> StateLabel:
        """A member of a nonempty class."""
        pr = self.params
        if cid.kind == "C":
            pa = pr.p * cid.index
            if cid.index <= pr.R:
                return StateLabel(pr.r >> pa, Side.T)
            # (0, T) was taken by an earlier class; the l = 1 element is free
            return StateLabel(pr.m >> pa if pa <= pr.z else pr.k, Side.B)
        first = StateLabel(cid.index, cid.side)
        if cid.side is Side.B or self.classify(first) == cid:
            return first
        return StateLabel(cid.index + pr.k, Side.B)

    def successors(self, cid: ClassId) -> tuple[ClassId, ...]:
        hit = self._cache.get(cid)
        if hit is not None:
            return hit
        pr = self.params
        i, side = self.representative(cid)
        out = []
        for e in range(pr.b):
            d, j = divmod(pr.b * i + e, pr.m)
            out.append(self.classify(StateLabel(j, flip_if(side, d))))
        result = tuple(out)
        self._cache[cid] = result
        return result

    def read(self, word: Iterable[int], start: ClassId | None = None) -> ClassId:
        state = self.initial if start is None else start
        for e in word:
            state = self.successors(state)[e]
        return state

    def to_dfa(self, initial: ClassId | None = None) -> Dfa:
        """Canonically numbered DFA of the part reachable from ``initial``."""
        start = self.initial if initial is None else initial
        order = [start]
        index = {start: 0}
        rows = []
        n = 0
        while n < len(order):
            row = []
            for t in self.successors(order[n]):
                if t not in index:
                    index[t] = len(order)
                    order.append(t)
                row.append(index[t])
            rows.append(row)
            n += 1
        finals = frozenset({index[self.final]}) if self.final in index else frozenset()
        return Dfa(np.array(rows, dtype=np.int32), 0, finals, tuple(str(c) for c in order))


def minimal_by_representatives(m: int, r: int, p: int, complement: bool = False) -> Dfa:
    """Same automaton as ``build_minimal`` (or ``complement_minimal``), built class by class."""
    params = derive_params(m, r, p)
    auto = ClassAutomaton(params)
    start = auto.read(rep(m, params.b)) if complement else auto.initial
    return auto.to_dfa(start)


def complement_minimal(m: int, r: int, p: int) -> Dfa:
    """Minimal DFA of ``val^{-1}(m * odious + r)``: the initial state moves along ``rep(m)``."""
    base = build_minimal(m, r, p)
    return base.with_initial(base.run(rep(m, 1 << p)))
