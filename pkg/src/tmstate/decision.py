"""Decide whether a DFA over ``A_{2^p}`` recognizes ``m*T + r`` for some ``m, r``.

The minimal automaton of the input has ``M`` states; only multiples
``m = k * 2^z`` with ``2k + ceil(z/p) == M`` can match. For each such
candidate the remainder is read off the least accepted value, and the
candidate's minimal automaton is compared with the input through class
representatives, so huge ``m`` cost no more than small ones.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Any

from tmstate.automata import Dfa, equivalent, min_accepted_value, minimize
from tmstate.classes import ClassAutomaton, ClassId, minimal_by_representatives
from tmstate.numeration import derive_params, rep

log = logging.getLogger(__name__)


class Reason(str, enum.Enum):
    WRONG_COMPLEXITY_SHAPE = "WrongComplexityShape"
    NO_CANDIDATE_EQUIVALENT = "NoCandidateEquivalent"
    EMPTY_LANGUAGE = "EmptyLanguage"
    NOT_ZERO_CLOSED = "NotZeroClosed"


@dataclass(frozen=True)
class Verdict:
    match: bool
    m: int | None = None
    r: int | None = None
    complement: bool | None = None
    iso: dict[int, str] | None = field(default=None, compare=False)
    reason: Reason | None = None

    def to_json_obj(self) -> dict[str, Any]:
        if self.match:
            return {"match": True, "m": self.m, "r": self.r, "complement": self.complement}
        return {"match": False, "reason": self.reason.value}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def candidates(M: int, p: int) -> list[tuple[int, int]]:
    """All ``(k, z)``, ``k`` odd, with ``2k + ceil(z/p) == M``, ordered by ``m = k * 2^z``."""
    if M < 1 or p < 1:
        raise ValueError("state count and p must be positive")
    out = []
    for k in range(1, M // 2 + 1, 2):
        c = M - 2 * k
        # ceil(z/p) == c  <=>  z in [p(c-1)+1, pc], or z == 0 when c == 0
        zs = [0] if c == 0 else range(p * (c - 1) + 1, p * c + 1)
        out.extend((k, z) for z in zs)
    out.sort(key=lambda kz: kz[0] << kz[1])
    return out


def infer_r(a: Dfa, m: int, p: int, complement: bool = False) -> int | None:
    """Remainder implied by the least accepted value: 0 is evil, 1 the least odious number."""
    least = min_accepted_value(a, 1 << p)
    if least is None:
        return None
    r = least - m if complement else least
    return r if 0 <= r < m else None


def _pair_with_classes(a: Dfa, auto: ClassAutomaton, start: ClassId) -> dict[int, ClassId] | None:
    """Bijection between the states of minimal complete ``a`` and the classes reachable from ``start``."""
    fwd = {a.initial: start}
    bwd = {start: a.initial}
    stack = [a.initial]
    tab = a.table.tolist()
    while stack:
        q = stack.pop()
        cid = fwd[q]
        if (q in a.finals) != (cid == auto.final):
            return None
        for x, y in zip(tab[q], auto.successors(cid)):
            seen_x, seen_y = fwd.get(x), bwd.get(y)
            if seen_x is None and seen_y is None:
                if len(fwd) == a.state_count:
                    return None
                fwd[x] = y
                bwd[y] = x
                stack.append(x)
            elif seen_x != y or seen_y != x:
                return None
    return fwd if len(fwd) == a.state_count else None


def decide(a: Dfa, p: int, allow_complement: bool = False) -> Verdict:
    b = 1 << p
    if p < 1 or a.alphabet_size != b:
        raise ValueError(f"automaton alphabet {a.alphabet_size} is not 2^p for p={p}")
    minimal = minimize(a)
    if not minimal.finals:
        return Verdict(False, reason=Reason.EMPTY_LANGUAGE)
    if minimal.step(minimal.initial, 0) != minimal.initial:
        return Verdict(False, reason=Reason.NOT_ZERO_CLOSED)
    M = minimal.state_count
    least = min_accepted_value(minimal, b)
    flags = (False, True) if allow_complement else (False,)

    found: Verdict | None = None
    tried = 0
    for k, z in candidates(M, p):
        m = k << z
        for complement in flags:
            r = least - m if complement else least
            if not 0 <= r < m:
                continue
            tried += 1
            params = derive_params(m, r, p)
            auto = ClassAutomaton(params)
            start = auto.read(rep(m, b)) if complement else auto.initial
            pairing = _pair_with_classes(minimal, auto, start)
            if pairing is None:
                continue
            if found is not None:
                raise AssertionError(
                    f"two candidates match: (m={found.m}, r={found.r}) and (m={m}, r={r})"
                )
            found = Verdict(
                True, m=m, r=r, complement=complement,
                iso={q: str(c) for q, c in sorted(pairing.items())},
            )
    log.debug("%d states, %d candidates tried", M, tried)
    if found is None:
        reason = Reason.NO_CANDIDATE_EQUIVALENT if tried else Reason.WRONG_COMPLEXITY_SHAPE
        return Verdict(False, reason=reason)
    rebuilt = minimal_by_representatives(found.m, found.r, p, complement=found.complement)
    if not equivalent(a, rebuilt):
        raise AssertionError("matched candidate is not language-equivalent to the input")
    return found
