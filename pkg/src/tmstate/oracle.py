"""Ground truth by arithmetic, independent of every automaton construction."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from tmstate import kernels
from tmstate.automata import Dfa
from tmstate.numeration import derive_params, is_evil, padded

MAX_BITS = 62
NERODE_MAX_BITS = 30


class OverflowGuard(ValueError):
    pass


def member(n: int, m: int, r: int, complement: bool = False) -> bool:
    """``n`` in ``m*T + r`` (or ``m*odious + r`` when ``complement``)."""
    if m < 1 or not 0 <= r < m:
        raise ValueError(f"need m >= 1 and 0 <= r < m, got m={m}, r={r}")
    if n < r or (n - r) % m:
        return False
    return is_evil((n - r) // m) != complement


def member_by_scan(n: int, m: int, r: int, complement: bool = False) -> bool:
    """Same set as ``member``, by trying every quotient ``t <= n``."""
    for t in range(n + 1):
        if m * t + r == n:
            return (bin(t).count("1") % 2 == 0) != complement
        if m * t + r > n:
            break
    return False


@dataclass
class SweepReport:
    m: int
    r: int
    p: int
    max_len: int
    complement: bool
    words_checked: int = 0
    # (word, automaton verdict, oracle verdict)
    mismatches: list[tuple[tuple[int, ...], bool, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json_obj(self) -> dict[str, Any]:
        obj = asdict(self)
        obj["mismatches"] = [
            {"word": list(w), "dfa": got, "oracle": want} for w, got, want in self.mismatches
        ]
        obj["passed"] = self.passed
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def sweep_dfa(
    a: Dfa,
    m: int,
    r: int,
    p: int,
    max_len: int,
    complement: bool = False,
    max_report: int = 20,
) -> SweepReport:
    """Compare ``a`` with ``member`` on every word of length ``<= max_len``, leading zeros included."""
    if p * max_len > MAX_BITS:
        raise OverflowGuard(f"p * max_len = {p * max_len} exceeds {MAX_BITS} bits")
    derive_params(m, r, p)
    b = 1 << p
    if a.alphabet_size != b:
        raise ValueError(f"automaton alphabet {a.alphabet_size} is not base {b}")
    checked, raw = kernels.sweep(
        a.table, a.final_mask(), a.initial, b, max_len, m, r, complement, max_report
    )
    report = SweepReport(m, r, p, max_len, complement, words_checked=checked)
    for value, length, got in raw:
        report.mismatches.append((padded(value, b, length), got, not got))
    return report


def sweep(
    m: int, r: int, p: int, max_len: int, complement: bool = False, max_report: int = 20
) -> SweepReport:
    """Sweep the minimal automaton of ``m*T + r`` (or its complement variant)."""
    from tmstate.classes import build_minimal, complement_minimal

    if p * max_len > MAX_BITS:
        raise OverflowGuard(f"p * max_len = {p * max_len} exceeds {MAX_BITS} bits")
    a = complement_minimal(m, r, p) if complement else build_minimal(m, r, p)
    return sweep_dfa(a, m, r, p, max_len, complement, max_report)


def bounded_nerode(m: int, r: int, p: int, word_len: int, complement: bool = False) -> int:
    """Distinct residual rows, restricted to test words of length ``<= word_len``.

    Prefixes are explored breadth first up to length ``word_len``; a prefix
    whose row was already seen is not extended. Rows come from ``member``
    alone. The count never exceeds the state complexity and reaches it once
    ``word_len`` separates every pair of residuals.
    """
    if p * word_len > NERODE_MAX_BITS:
        raise OverflowGuard(f"p * word_len = {p * word_len} exceeds {NERODE_MAX_BITS} bits")
    derive_params(m, r, p)
    b = 1 << p
    seen: dict[bytes, int] = {}
    frontier = [0]
    for depth in range(word_len + 1):
        nxt = []
        for n in frontier:
            key = kernels.residual_row(n, b, word_len, m, r, complement).tobytes()
            if key in seen:
                continue
            seen[key] = n
            if depth < word_len:
                nxt.extend(n * b + d for d in range(b))
        frontier = nxt
    return len(seen)


def bounded_nerode_exhaustive(m: int, r: int, p: int, word_len: int) -> int:
    """Literal row count over every prefix of length ``<= word_len``; small sizes only."""
    if 2 * p * word_len > 24:
        raise OverflowGuard("exhaustive table too large")
    b = 1 << p
    rows = set()
    # prefixes with equal value share a row
    for n in range(b**word_len):
        rows.add(kernels.residual_row(n, b, word_len, m, r, False).tobytes())
    return len(rows)
