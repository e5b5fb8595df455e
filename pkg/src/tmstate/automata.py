"""Deterministic finite automata over integer alphabets ``0..s-1``.

Transitions live in a dense ``(states, symbols)`` int32 table where ``-1``
marks an undefined (partial) cell. Values are immutable: the table is
flagged read-only and every operation returns a new ``Dfa``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from tmstate import kernels
from tmstate.numeration import decode_pair

UNDEFINED = -1


class AutomatonError(ValueError):
    pass


class AlphabetMismatch(AutomatonError):
    pass


class EmptyLanguage(AutomatonError):
    pass


class NondeterministicProjection(AutomatonError):
    pass


@dataclass(frozen=True, eq=False)
class Dfa:
    table: np.ndarray
    initial: int
    finals: frozenset[int]
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=np.int32, copy=True)
        if table.ndim != 2 or table.shape[0] < 1 or table.shape[1] < 1:
            raise AutomatonError(f"table must be a non-empty 2-d array, got shape {table.shape}")
        n = table.shape[0]
        if table.size and (table.min() < UNDEFINED or table.max() >= n):
            raise AutomatonError("transition target out of range")
        if not 0 <= self.initial < n:
            raise AutomatonError(f"initial state {self.initial} out of range")
        finals = frozenset(int(q) for q in self.finals)
        if any(not 0 <= q < n for q in finals):
            raise AutomatonError("final state out of range")
        labels = self.labels
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise AutomatonError(f"{len(labels)} labels for {n} states")
            if len(set(labels)) != n:
                raise AutomatonError("state labels must be distinct")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "finals", finals)
        object.__setattr__(self, "labels", labels)

    @property
    def state_count(self) -> int:
        return self.table.shape[0]

    @property
    def alphabet_size(self) -> int:
        return self.table.shape[1]

    @property
    def is_complete(self) -> bool:
        return bool((self.table != UNDEFINED).all())

    def final_mask(self) -> np.ndarray:
        mask = np.zeros(self.state_count, dtype=bool)
        mask[list(self.finals)] = True
        return mask

    def step(self, state: int, symbol: int) -> int:
        """Target of ``symbol`` from ``state``; ``-1`` if undefined."""
        return int(self.table[state, symbol])

    def run(self, word: Iterable[int], start: int | None = None) -> int:
        """State reached from ``start`` (default: initial), ``-1`` once a cell is undefined."""
        state = self.initial if start is None else start
        s = self.alphabet_size
        for symbol in word:
            if not 0 <= symbol < s:
                raise AutomatonError(f"symbol {symbol} out of range for alphabet of size {s}")
            if state == UNDEFINED:
                continue
            state = int(self.table[state, symbol])
        return state

    def accepts(self, word: Iterable[int], start: int | None = None) -> bool:
        return self.run(word, start) in self.finals

    def with_initial(self, initial: int) -> "Dfa":
        return Dfa(self.table, initial, self.finals, self.labels)

    def with_finals(self, finals: Iterable[int]) -> "Dfa":
        return Dfa(self.table, self.initial, frozenset(finals), self.labels)

    def label(self, state: int) -> str:
        return self.labels[state] if self.labels is not None else str(state)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self.initial == other.initial
            and self.finals == other.finals
            and self.labels == other.labels
            and np.array_equal(self.table, other.table)
        )

    def same_structure(self, other: "Dfa") -> bool:
        """Equality ignoring labels."""
        return (
            self.initial == other.initial
            and self.finals == other.finals
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.initial, self.finals, self.table.tobytes(), self.table.shape))

    def __repr__(self) -> str:
        return (
            f"Dfa(states={self.state_count}, symbols={self.alphabet_size}, "
            f"initial={self.initial}, finals={sorted(self.finals)})"
        )


def from_transitions(
    state_count: int,
    alphabet_size: int,
    initial: int,
    finals: Iterable[int],
    transitions: Iterable[tuple[int, int, int]],
    labels: Sequence[str] | None = None,
) -> Dfa:
    table = np.full((state_count, alphabet_size), UNDEFINED, dtype=np.int32)
    for src, symbol, dst in transitions:
        if not (0 <= src < state_count and 0 <= symbol < alphabet_size):
            raise AutomatonError(f"transition ({src}, {symbol}, {dst}) out of range")
        if table[src, symbol] != UNDEFINED and table[src, symbol] != dst:
            raise AutomatonError(f"two targets for ({src}, {symbol})")
        table[src, symbol] = dst
    return Dfa(table, initial, frozenset(finals), tuple(labels) if labels is not None else None)


def _check_alphabets(a: Dfa, b: Dfa) -> None:
    if a.alphabet_size != b.alphabet_size:
        raise AlphabetMismatch(f"alphabet sizes differ: {a.alphabet_size} vs {b.alphabet_size}")


def accessible_states(a: Dfa) -> list[int]:
    """States reachable from the initial state, in BFS order (symbols ascending)."""
    seen = [False] * a.state_count
    seen[a.initial] = True
    order = [a.initial]
    tab = a.table.tolist()
    i = 0
    while i < len(order):
        for t in tab[order[i]]:
            if t != UNDEFINED and not seen[t]:
                seen[t] = True
                order.append(t)
        i += 1
    return order


def coaccessible_states(a: Dfa) -> set[int]:
    preds: list[list[int]] = [[] for _ in range(a.state_count)]
    for q, row in enumerate(a.table.tolist()):
        for t in row:
            if t != UNDEFINED:
                preds[t].append(q)
    seen = set(a.finals)
    queue = deque(a.finals)
    while queue:
        t = queue.popleft()
        for q in preds[t]:
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def restrict(a: Dfa, keep: Sequence[int]) -> Dfa:
    """Sub-automaton on ``keep`` (renumbered in the given order); edges leaving it become undefined."""
    index = {q: i for i, q in enumerate(keep)}
    if a.initial not in index:
        raise AutomatonError("restriction must keep the initial state")
    old = a.table[list(keep)]
    table = np.full(old.shape, UNDEFINED, dtype=np.int32)
    for i, row in enumerate(old.tolist()):
        for c, t in enumerate(row):
            if t in index:
                table[i, c] = index[t]
    labels = tuple(a.labels[q] for q in keep) if a.labels is not None else None
    finals = frozenset(index[q] for q in a.finals if q in index)
    return Dfa(table, index[a.initial], finals, labels)


def trim(a: Dfa) -> Dfa:
    """Keep exactly the accessible and coaccessible states."""
    co = coaccessible_states(a)
    if a.initial not in co:
        raise EmptyLanguage("no final state is reachable")
    keep = [q for q in accessible_states(a) if q in co]
    return restrict(a, keep)


def complete_with_sink(a: Dfa) -> Dfa:
    """Total version of ``a``; adds one non-final absorbing sink if any cell is undefined."""
    if a.is_complete:
        return a
    n = a.state_count
    table = np.vstack([a.table, np.full((1, a.alphabet_size), n, dtype=np.int32)])
    table[table == UNDEFINED] = n
    labels = None
    if a.labels is not None:
        sink = "sink"
        while sink in a.labels:
            sink = "_" + sink
        labels = a.labels + (sink,)
    return Dfa(table, a.initial, a.finals, labels)


def canonical(a: Dfa) -> Dfa:
    """Accessible part renumbered by BFS from the initial state, symbols ascending."""
    return restrict(a, accessible_states(a))


def minimize(a: Dfa) -> Dfa:
    """Minimal complete DFA of the language of ``a``, canonically numbered."""
    total = canonical(complete_with_sink(canonical(a)))
    blocks = kernels.hopcroft(total.table, total.final_mask())
    # representative of each block: its first member in BFS order
    rep_of: dict[int, int] = {}
    for q in range(total.state_count):
        rep_of.setdefault(int(blocks[q]), q)
    reps = sorted(rep_of.values())
    index = {blk: i for i, blk in enumerate(int(blocks[q]) for q in reps)}
    table = np.empty((len(reps), total.alphabet_size), dtype=np.int32)
    for i, q in enumerate(reps):
        table[i] = [index[int(blocks[t])] for t in total.table[q]]
    finals = frozenset(index[int(blocks[q])] for q in total.finals)
    quotient = Dfa(table, index[int(blocks[total.initial])], finals)
    return canonical(quotient)


def product(a: Dfa, b: Dfa) -> Dfa:
    """Accessible part of the synchronous product; accepts the intersection."""
    _check_alphabets(a, b)
    ta, tb = a.table.tolist(), b.table.tolist()
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for c in range(a.alphabet_size):
            x, y = ta[p][c], tb[q][c]
            if x == UNDEFINED or y == UNDEFINED:
                row.append(UNDEFINED)
                continue
            key = (x, y)
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row.append(index[key])
        rows.append(row)
        i += 1
    finals = frozenset(i for i, (p, q) in enumerate(order) if p in a.finals and q in b.finals)
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = tuple(f"({a.labels[p]},{b.labels[q]})" for p, q in order)
    return Dfa(np.array(rows, dtype=np.int32), 0, finals, labels)


def project_second(a: Dfa) -> Dfa:
    """Keep the second component ``e`` of every pair symbol ``d * b + e``."""
    s = a.alphabet_size
    b = int(round(s**0.5))
    if b * b != s or b < 2:
        raise AutomatonError(f"alphabet size {s} is not a square pair alphabet")
    table = np.full((a.state_count, b), UNDEFINED, dtype=np.int32)
    for q, row in enumerate(a.table.tolist()):
        for symbol, t in enumerate(row):
            if t == UNDEFINED:
                continue
            _, e = decode_pair(symbol, b)
            if table[q, e] != UNDEFINED and table[q, e] != t:
                raise NondeterministicProjection(
                    f"state {a.label(q)} has two targets on second component {e}"
                )
            table[q, e] = t
    return Dfa(table, a.initial, a.finals, a.labels)


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality by union-find pairing from the initial states."""
    _check_alphabets(a, b)
    a, b = complete_with_sink(a), complete_with_sink(b)
    na = a.state_count
    parent = list(range(na + b.state_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    fa, fb = a.finals, b.finals
    ta, tb = a.table.tolist(), b.table.tolist()
    stack = [(a.initial, b.initial)]
    parent[find(a.initial)] = find(na + b.initial)
    while stack:
        p, q = stack.pop()
        if (p in fa) != (q in fb):
            return False
        for c in range(a.alphabet_size):
            x, y = ta[p][c], tb[q][c]
            rx, ry = find(x), find(na + y)
            if rx != ry:
                parent[rx] = ry
                stack.append((x, y))
    return True


def distinguishing_word(
    a: Dfa, p: int, q: int, max_len: int | None = None
) -> tuple[int, ...] | None:
    """Shortest word accepted from exactly one of states ``p`` and ``q``.

    ``None`` when the two states are equivalent, or when no separating word
    of length ``<= max_len`` exists.
    """
    a = complete_with_sink(a)
    tab = a.table.tolist()
    start = (p, q)
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        pair, depth = queue.popleft()
        x, y = pair
        if (x in a.finals) != (y in a.finals):
            word = []
            while parent[pair] is not None:
                pair, c = parent[pair]
                word.append(c)
            return tuple(reversed(word))
        if max_len is not None and depth >= max_len:
            continue
        for c in range(a.alphabet_size):
            nxt = (tab[x][c], tab[y][c])
            if nxt not in parent:
                parent[nxt] = (pair, c)
                queue.append((nxt, depth + 1))
    return None


def isomorphic(a: Dfa, b: Dfa) -> dict[int, int] | None:
    """State bijection from ``a`` to ``b`` preserving initial, finals and transitions.

    Both automata must be accessible; the pairing is then forced by BFS from
    the initial states.
    """
    if a.state_count != b.state_count or a.alphabet_size != b.alphabet_size:
        return None
    ta, tb = a.table.tolist(), b.table.tolist()
    fwd = {a.initial: b.initial}
    bwd = {b.initial: a.initial}
    queue = deque([a.initial])
    while queue:
        p = queue.popleft()
        q = fwd[p]
        if (p in a.finals) != (q in b.finals):
            return None
        for x, y in zip(ta[p], tb[q]):
            if (x == UNDEFINED) != (y == UNDEFINED):
                return None
            if x == UNDEFINED:
                continue
            if x in fwd or y in bwd:
                if fwd.get(x) != y or bwd.get(y) != x:
                    return None
                continue
            fwd[x] = y
            bwd[y] = x
            queue.append(x)
    if len(fwd) != a.state_count:
        return None
    return fwd


def shortest_accepted(a: Dfa, start: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically least among the shortest words accepted from ``start``."""
    start = a.initial if start is None else start
    preds: list[list[int]] = [[] for _ in range(a.state_count)]
    tab = a.table.tolist()
    for q, row in enumerate(tab):
        for t in row:
            if t != UNDEFINED:
                preds[t].append(q)
    dist = [-1] * a.state_count
    queue = deque()
    for f in a.finals:
        dist[f] = 0
        queue.append(f)
    while queue:
        t = queue.popleft()
        for q in preds[t]:
            if dist[q] < 0:
                dist[q] = dist[t] + 1
                queue.append(q)
    if dist[start] < 0:
        return None
    word = []
    state = start
    while dist[state] > 0:
        for c, t in enumerate(tab[state]):
            if t != UNDEFINED and dist[t] == dist[state] - 1:
                word.append(c)
                state = t
                break
    return tuple(word)


def min_accepted_value(a: Dfa, base: int, start: int | None = None) -> int | None:
    """Least value of an accepted word; assumes the language is closed under prepending 0."""
    if a.alphabet_size != base:
        raise AlphabetMismatch(f"automaton alphabet {a.alphabet_size} is not base {base}")
    word = shortest_accepted(a, start)
    if word is None:
        return None
    n = 0
    for d in word:
        n = n * base + d
    return n


def to_json_obj(a: Dfa) -> dict[str, Any]:
    transitions = [
        [q, c, t]
        for q, row in enumerate(a.table.tolist())
        for c, t in enumerate(row)
        if t != UNDEFINED
    ]
    obj: dict[str, Any] = {
        "alphabet_size": a.alphabet_size,
        "state_count": a.state_count,
        "initial": a.initial,
        "finals": sorted(a.finals),
        "transitions": transitions,
    }
    if a.labels is not None:
        obj["labels"] = {str(q): lab for q, lab in enumerate(a.labels)}
    return obj


def to_json(a: Dfa) -> str:
    return json.dumps(to_json_obj(a), sort_keys=True)


def from_json_obj(obj: Mapping[str, Any]) -> Dfa:
    try:
        n = int(obj["state_count"])
        s = int(obj["alphabet_size"])
        initial = int(obj["initial"])
        finals = [int(q) for q in obj["finals"]]
        transitions = [(int(x), int(y), int(z)) for x, y, z in obj["transitions"]]
        raw_labels = obj.get("labels")
    except (KeyError, TypeError, ValueError) as exc:
        raise AutomatonError(f"malformed automaton: {exc}") from exc
    if n < 1 or s < 1:
        raise AutomatonError("state_count and alphabet_size must be positive")
    labels = None
    if raw_labels is not None:
        if not isinstance(raw_labels, Mapping) or set(raw_labels) != {str(q) for q in range(n)}:
            raise AutomatonError("labels must map every state id to a string")
        labels = [str(raw_labels[str(q)]) for q in range(n)]
    return from_transitions(n, s, initial, finals, transitions, labels)


def from_json(text: str) -> Dfa:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AutomatonError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, Mapping):
        raise AutomatonError("automaton JSON must be an object")
    return from_json_obj(obj)


def _dot_quote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', '\\"'))


def to_dot(a: Dfa, pair_base: int | None = None, name: str = "dfa") -> str:
    """Graphviz source; parallel edges are merged into one comma-separated label."""
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(a.state_count):
        shape = "doublecircle" if q in a.finals else "circle"
        lines.append(f"  {q} [shape={shape}, label={_dot_quote(a.label(q))}];")
    lines.append(f"  __start -> {a.initial};")
    edges: dict[tuple[int, int], list[str]] = {}
    for q, row in enumerate(a.table.tolist()):
        for c, t in enumerate(row):
            if t == UNDEFINED:
                continue
            if pair_base is not None:
                d, e = decode_pair(c, pair_base)
                text = f"({d},{e})"
            else:
                text = str(c)
            edges.setdefault((q, t), []).append(text)
    for (q, t), texts in edges.items():
        lines.append(f"  {q} -> {t} [label={_dot_quote(','.join(texts))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
