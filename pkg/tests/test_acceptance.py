"""Acceptance gate: one check per criterion, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (the lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _util import accept_matrix, grid, label, load_golden  # noqa: E402

from tmstate.automata import equivalent, isomorphic, minimize  # noqa: E402
from tmstate.classes import (  # noqa: E402
    build_minimal,
    c_prime,
    complement_minimal,
    minimal_by_representatives,
    partition,
    r0_classes,
)
from tmstate.construction import build_projected, state_id, state_label  # noqa: E402
from tmstate.decision import decide  # noqa: E402
from tmstate.numeration import Side, StateLabel, derive_params, rep, rep_length  # noqa: E402
from tmstate.oracle import bounded_nerode, sweep, sweep_dfa  # noqa: E402

RESULTS: dict[int, str] = {}

# exhaustive sweep lengths per p: A_2 <= 8, A_4 <= 6, A_8 <= 6
SWEEP_LEN = {1: 8, 2: 6, 3: 6}


def record(n: int, title: str, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({detail})"
    RESULTS[n] = line
    print(line)
    return ok


def formula(m: int, p: int) -> int:
    return derive_params(m, 0, p).state_complexity


def distinguishing_bound(m: int, r: int, p: int) -> int:
    pr = derive_params(m, r, p)
    return (pr.K or 0) + rep_length(m, pr.b) + pr.R + pr.N


# --- criterion 1 ---------------------------------------------------------------

def criterion_1() -> bool:
    t0 = time.perf_counter()
    bad = []
    cases = grid(64, 3)
    for m, r, p in cases:
        built = build_minimal(m, r, p)
        hop = minimize(build_projected(m, r, p))
        want = formula(m, p)
        if not (built.state_count == hop.state_count == want) or isomorphic(built, hop) is None:
            bad.append((m, r, p, built.state_count, hop.state_count, want))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    return record(1, "formula = class quotient = Hopcroft", ok,
                  f"{len(cases)} instances, {len(bad)} disagreements, {elapsed:.1f}s (limit 60s)"
                  + (f", first {bad[0]}" if bad else ""))


# --- criterion 2 ---------------------------------------------------------------

def _golden_partition_ok(name: str) -> tuple[bool, str]:
    g = load_golden(name)
    pr = derive_params(g["m"], g["r"], g["p"])
    part = partition(pr)
    got = {str(c): sorted(map(str, v)) for c, v in part.inventory.items()}
    want = {c: sorted(str(label(x)) for x in v) for c, v in g["classes"].items()}
    ok = got == want and len(part.nonempty) == g["nonempty"]
    ok &= build_minimal(g["m"], g["r"], g["p"]).state_count == g["nonempty"]
    return ok, f"({g['m']},{g['r']},{g['p']}): {len(part.nonempty)} nonempty, empty {[str(c) for c in part.empty]}"


def criterion_2() -> bool:
    n6 = build_minimal(6, 2, 2).state_count
    ok1, d1 = _golden_partition_ok("classes_24_23_2.json")
    ok2, d2 = _golden_partition_ok("classes_24_0_2.json")
    ok = n6 == 7 and ok1 and ok2
    return record(2, "worked examples match goldens", ok, f"(6,2,2): {n6} states; {d1}; {d2}")


# --- criterion 3 ---------------------------------------------------------------

def criterion_3() -> bool:
    t0 = time.perf_counter()
    words = 0
    bad = []
    for m, r, p in grid(64, 3):
        rep_ = sweep(m, r, p, SWEEP_LEN[p])
        words += rep_.words_checked
        if not rep_.passed:
            bad.append((m, r, p, rep_.mismatches[0]))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    return record(3, "oracle sweep, zero mismatches", ok,
                  f"{words} words, {len(bad)} failing instances, {elapsed:.1f}s (limit 300s)")


# --- criterion 4 ---------------------------------------------------------------

def separation_lengths(table: np.ndarray, finals: np.ndarray, bound: int) -> np.ndarray:
    """``dist[p, q]``: length of a shortest word accepted from exactly one of ``p, q``; -1 beyond ``bound``."""
    sep = finals[:, None] != finals[None, :]
    dist = np.where(sep, 0, -1)
    for length in range(1, bound + 1):
        grown = sep.copy()
        for c in range(table.shape[1]):
            col = table[:, c]
            grown |= sep[np.ix_(col, col)]
        dist[grown & ~sep] = length
        if (grown == sep).all():
            break
        sep = grown
    return dist


def witness(table: np.ndarray, dist: np.ndarray, p: int, q: int) -> tuple[int, ...]:
    """Spell a separating word of length ``dist[p, q]`` by descending the lengths."""
    word = []
    while dist[p, q] > 0:
        for c in range(table.shape[1]):
            x, y = table[p, c], table[q, c]
            if dist[x, y] == dist[p, q] - 1:
                word.append(c)
                p, q = x, y
                break
        else:
            raise AssertionError("inconsistent separation lengths")
    return tuple(word)


def criterion_4() -> bool:
    t0 = time.perf_counter()
    counts = {"suffix": 0, "census": 0, "indist": 0, "dist": 0}
    failures: list[str] = []
    pairs_checked = 0
    for m, r, p in grid(40, 3):
        pr = derive_params(m, r, p)
        part = partition(pr)
        a = build_projected(m, r, p)
        table = np.asarray(a.table)
        everything = np.arange(2 * m)

        # suffix property
        word = (0,) * (pr.N - pr.R) + rep(r, pr.b)
        target = state_id(StateLabel(r, Side.T))
        for alpha in range(pr.N + 1):
            states = everything.copy()
            for c in word[len(word) - alpha :]:
                states = table[states, c]
            reach = {state_label(int(q)) for q in everything[states == target]}
            if reach != c_prime(alpha, pr):
                counts["suffix"] += 1
                failures.append(f"suffix {m},{r},{p},alpha={alpha}")

        # empty-class census
        if len(part.empty) != pr.N - pr.zp:
            counts["census"] += 1
            failures.append(f"census {m},{r},{p}")

        # indistinguishability to length 5
        acc = accept_matrix(a, 5)
        for cid in part.nonempty:
            rows = acc[[state_id(lab) for lab in part[cid]]]
            if not (rows == rows[0]).all():
                counts["indist"] += 1
                failures.append(f"indist {m},{r},{p},{cid}")

        # distinguishability within the bound, with an explicit checked witness
        bound = distinguishing_bound(m, r, p)
        dist = separation_lengths(table, a.final_mask(), bound)
        reps = [state_id(min(part[cid])) for cid in part.nonempty]
        for x in range(len(reps)):
            for y in range(x + 1, len(reps)):
                pairs_checked += 1
                qa, qb = reps[x], reps[y]
                if dist[qa, qb] < 0:
                    counts["dist"] += 1
                    failures.append(f"dist {m},{r},{p},{part.nonempty[x]}|{part.nonempty[y]}")
                    continue
                w = witness(table, dist, qa, qb)
                if len(w) > bound or a.accepts(w, start=qa) == a.accepts(w, start=qb):
                    counts["dist"] += 1
                    failures.append(f"witness {m},{r},{p}")
    elapsed = time.perf_counter() - t0
    ok = not failures
    detail = (f"{len(grid(40, 3))} instances, {pairs_checked} class pairs separated within the bound; "
              f"failures {counts}, {elapsed:.1f}s")
    if failures:
        detail += f", first {failures[0]}"
    return record(4, "suffix property, census, (in)distinguishability", ok, detail)


# --- criterion 5 ---------------------------------------------------------------

def _decide_seconds(a, p: int, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        decide(a, p)
        best = min(best, time.perf_counter() - t0)
    return best


def ladder(p: int, ks: tuple[int, ...]) -> tuple[float, list[tuple[int, float]]]:
    points = []
    for k in ks:
        a = build_minimal(k, k // 2, p)
        points.append((a.state_count, _decide_seconds(a, p)))
    x = np.log([n for n, _ in points])
    y = np.log([t for _, t in points])
    slope = float(np.polyfit(x, y, 1)[0])
    return slope, points


def criterion_5() -> bool:
    t0 = time.perf_counter()
    cases = grid(64, 3)
    round_trip_bad = [(m, r, p) for m, r, p in cases
                      if (lambda v: (v.match, v.m, v.r, v.complement))(decide(build_minimal(m, r, p), p))
                      != (True, m, r, False)]

    # perturbations: every state for m <= 20, three seeded random states otherwise
    rng = random.Random(20240611)
    toggles = no_match = genuine = 0
    perturb_bad = []
    for m, r, p in cases:
        a = build_minimal(m, r, p)
        states = range(a.state_count) if m <= 20 else rng.sample(range(a.state_count), 3)
        for q in states:
            bad = a.with_finals(a.finals ^ {q})
            if equivalent(a, bad):
                continue
            toggles += 1
            v = decide(bad, p, allow_complement=True)
            if not v.match:
                no_match += 1
                continue
            # a match must be a genuinely different m'T + r' language, confirmed by arithmetic alone
            confirmed = (v.m, v.r, v.complement) != (m, r, False) and sweep_dfa(
                bad, v.m, v.r, p, SWEEP_LEN[p], complement=v.complement
            ).passed
            if confirmed:
                genuine += 1
            else:
                perturb_bad.append((m, r, p, q, v.m, v.r, v.complement))

    slope1, pts1 = ladder(1, (125, 251, 501, 1001))
    slope2, pts2 = ladder(2, (125, 251, 501, 1001))
    worst = max(t for _, t in pts1 + pts2)
    shape_ok = slope1 <= 2.2 and slope2 <= 2.2 and worst < 10
    elapsed = time.perf_counter() - t0
    ok = not round_trip_bad and not perturb_bad and shape_ok
    detail = (
        f"round trip {len(cases) - len(round_trip_bad)}/{len(cases)}; "
        f"{toggles} language-changing toggles: {no_match} NoMatch, {genuine} verified m'T+r' languages, "
        f"{len(perturb_bad)} wrong; log-log slope p=1 {slope1:.2f}, p=2 {slope2:.2f} (limit 2.2), "
        f"ladder p=1 {[(n, round(t, 3)) for n, t in pts1]}, p=2 {[(n, round(t, 3)) for n, t in pts2]}; "
        f"{elapsed:.1f}s"
    )
    return record(5, "decision round trip, perturbation, quadratic shape", ok, detail)


# --- criterion 6 ---------------------------------------------------------------

def criterion_6() -> bool:
    t0 = time.perf_counter()
    bad = []
    cases = grid(64, 3)
    for m, r, p in cases:
        a, c = build_minimal(m, r, p), complement_minimal(m, r, p)
        same_rest = np.array_equal(a.table, c.table) and a.finals == c.finals and a.labels == c.labels
        sizes = minimize(c).state_count == a.state_count == formula(m, p)
        lazy = minimal_by_representatives(m, r, p, complement=True)
        rep_ok = sweep(m, r, p, SWEEP_LEN[p], complement=True).passed and equivalent(lazy, c)
        if not (same_rest and a.initial != c.initial and sizes and rep_ok):
            bad.append((m, r, p))
    elapsed = time.perf_counter() - t0
    return record(6, "complement moves only the initial state", not bad,
                  f"{len(cases)} instances, {len(bad)} failing, {elapsed:.1f}s")


# --- criterion 7 ---------------------------------------------------------------

def criterion_7() -> bool:
    bad = []
    total = 0
    for p in range(1, 4):
        for m in range(1, 65):
            pr = derive_params(m, 0, p)
            total += 1
            if r0_classes(pr).inventory != partition(pr).inventory:
                bad.append((m, p))
    return record(7, "closed-form r=0 classes equal the partition", not bad,
                  f"{total} instances, {len(bad)} differing" + (f", first {bad[0]}" if bad else ""))


# --- criterion 8 ---------------------------------------------------------------

def criterion_8() -> bool:
    t0 = time.perf_counter()
    bad = []
    cases = grid(24, 2)
    for m, r, p in cases:
        length = distinguishing_bound(m, r, p)
        got = bounded_nerode(m, r, p, length)
        if got != formula(m, p):
            bad.append((m, r, p, length, got))
    elapsed = time.perf_counter() - t0
    return record(8, "bounded Nerode count saturates", not bad,
                  f"{len(cases)} instances, {len(bad)} below 2k+ceil(z/p), {elapsed:.1f}s"
                  + (f", first {bad[0]}" if bad else ""))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    results = [check() for check in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
