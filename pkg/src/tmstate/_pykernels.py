"""Pure-Python kernels. Same signatures and results as ``_ckernels``."""

from __future__ import annotations

import numpy as np

NAME = "python"


def hopcroft(table: np.ndarray, finals: np.ndarray) -> np.ndarray:
    """Coarsest stable partition of a complete DFA, as a block id per state.

    ``table`` is an ``(n, s)`` int array with every entry defined; ``finals``
    is a length-``n`` boolean mask.
    """
    n, s = table.shape
    preds: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(s)]
    for q in range(n):
        row = table[q]
        for c in range(s):
            preds[c][int(row[c])].append(q)

    finals = np.asarray(finals, dtype=bool)
    blocks: list[list[int]] = []
    block_of = [0] * n
    for members in ([q for q in range(n) if finals[q]], [q for q in range(n) if not finals[q]]):
        if members:
            for q in members:
                block_of[q] = len(blocks)
            blocks.append(members)

    work: list[tuple[int, int]] = []
    pending: set[tuple[int, int]] = set()
    if len(blocks) == 2:
        start = 0 if len(blocks[0]) <= len(blocks[1]) else 1
        for c in range(s):
            work.append((start, c))
            pending.add((start, c))

    while work:
        splitter, c = work.pop()
        pending.discard((splitter, c))
        marked: dict[int, list[int]] = {}
        for t in list(blocks[splitter]):
            for q in preds[c][t]:
                marked.setdefault(block_of[q], []).append(q)
        for y, hit in marked.items():
            if len(hit) == len(blocks[y]):
                continue
            hit_set = set(hit)
            rest = [q for q in blocks[y] if q not in hit_set]
            new_id = len(blocks)
            # new id always takes the smaller half: it is the one to enqueue
            # whether or not the old id is still pending
            small, large = (hit, rest) if len(hit) <= len(rest) else (rest, hit)
            blocks[y] = large
            blocks.append(small)
            for q in small:
                block_of[q] = new_id
            for d in range(s):
                pending.add((new_id, d))
                work.append((new_id, d))
    return np.asarray(block_of, dtype=np.int32)


def _member(x: int, m: int, r: int, complement: bool) -> bool:
    if x < r or (x - r) % m:
        return False
    evil = ((x - r) // m).bit_count() % 2 == 0
    return evil != complement


def sweep(
    table: np.ndarray,
    finals: np.ndarray,
    initial: int,
    base: int,
    max_len: int,
    m: int,
    r: int,
    complement: bool,
    max_report: int,
) -> tuple[int, list[tuple[int, int, bool]]]:
    """Run every word of length ``<= max_len`` and compare with arithmetic membership.

    Returns ``(words_checked, mismatches)`` where a mismatch is
    ``(value, length, dfa_verdict)``; at most ``max_report`` are listed.
    """
    finals = np.asarray(finals, dtype=bool)
    tab = table.tolist()
    fin = finals.tolist()
    checked = 0
    mismatches: list[tuple[int, int, bool]] = []
    stack = [(initial, 0, 0)]
    while stack:
        state, value, length = stack.pop()
        checked += 1
        got = state >= 0 and fin[state]
        if got != _member(value, m, r, complement) and len(mismatches) < max_report:
            mismatches.append((value, length, got))
        if length < max_len:
            row = tab[state] if state >= 0 else None
            for d in range(base - 1, -1, -1):
                nxt = row[d] if row is not None else -1
                stack.append((nxt, value * base + d, length + 1))
    return checked, mismatches


def residual_row(
    n: int, base: int, max_len: int, m: int, r: int, complement: bool
) -> np.ndarray:
    """Indices of the accepted test words after prefix value ``n``.

    Test words are ordered by length ``l = 0..max_len``, then by value ``v``;
    word ``(l, v)`` is accepted when ``n * base**l + v`` is a member.
    """
    parts = []
    offset = 0
    for length in range(max_len + 1):
        width = base**length
        x0 = n * width
        # accepted test words lie on the progression x0 + v = r + t*m
        v0 = (-(x0 - r)) % m if x0 >= r else r - x0
        if v0 < width:
            count = (width - 1 - v0) // m + 1
            t = np.arange(count, dtype=np.uint64) + np.uint64((x0 + v0 - r) // m)
            evil = (np.bitwise_count(t) & 1) == 0
            hits = np.flatnonzero(evil != complement).astype(np.int64)
            parts.append(offset + v0 + hits * m)
        offset += width
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
