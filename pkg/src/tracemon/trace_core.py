"""Mazurkiewicz trace algebra over a finite trace alphabet.

Words are plain Python strings when every letter is a single character, but
every function here accepts any sequence of letter names (tuples/lists of
strings), so multi-character action names work too.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

Word = Sequence[str]


class TraceError(ValueError):
    """Invalid alphabet, unknown letter, or exceeded enumeration bound."""


class BoundExceeded(TraceError):
    pass


@dataclass(frozen=True)
class TraceAlphabet:
    letters: tuple[str, ...]
    independence: frozenset[frozenset[str]] = frozenset()

    def __post_init__(self):
        if not self.letters:
            raise TraceError("alphabet must contain at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise TraceError("duplicate letter")
        known = set(self.letters)
        for pair in self.independence:
            if len(pair) != 2:
                raise TraceError("reflexive pair")
            if not pair <= known:
                raise TraceError(f"pair mentions unknown letter: {sorted(pair - known)}")

    @property
    def rank(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.letters)}

    def independent(self, x: str, y: str) -> bool:
        return frozenset((x, y)) in self.independence

    def render(self, w: Iterable[str]) -> Word:
        """Strings when every letter is one character, tuples otherwise."""
        w = tuple(w)
        return "".join(w) if all(len(x) == 1 for x in self.letters) else w

    def check_letter(self, x: str) -> None:
        if x not in self.letters:
            raise TraceError(f"unknown letter {x}")

    def check_word(self, w: Word) -> None:
        for x in w:
            self.check_letter(x)

    def pairs(self) -> list[tuple[str, str]]:
        """Independent pairs, each once, in letter order."""
        r = self.rank
        return sorted(
            (tuple(sorted(p, key=r.get)) for p in self.independence),
            key=lambda p: (r[p[0]], r[p[1]]),
        )

    def with_independence(self, pairs: Iterable[tuple[str, str]]) -> "TraceAlphabet":
        return make_alphabet(self.letters, pairs)

    def __str__(self):
        ind = ", ".join(f"{x}I{y}" for x, y in self.pairs())
        return f"({{{', '.join(self.letters)}}}, {{{ind}}})"


def make_alphabet(letters: Iterable[str], independent_pairs: Iterable[tuple[str, str]] = ()) -> TraceAlphabet:
    letters = tuple(letters)
    pairs = []
    for x, y in independent_pairs:
        if x == y:
            raise TraceError(f"reflexive pair ({x},{y})")
        pairs.append(frozenset((x, y)))
    return TraceAlphabet(letters, frozenset(pairs))


def parse_alphabet(text: str) -> TraceAlphabet:
    """Read the line-oriented alphabet format (`letters:` then `independent:` lines)."""
    letters = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise TraceError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        names = rest.split()
        if key == "letters":
            if letters is not None:
                raise TraceError(f"line {lineno}: letters declared twice")
            letters = names
        elif key == "independent":
            if letters is None:
                raise TraceError(f"line {lineno}: independent before letters")
            if len(names) != 2:
                raise TraceError(f"line {lineno}: independent needs exactly two letters")
            pairs.append((names[0], names[1]))
        else:
            raise TraceError(f"line {lineno}: unknown key {key!r}")
    if letters is None:
        raise TraceError("missing letters line")
    return make_alphabet(letters, pairs)


def load_alphabet(path: str | Path) -> TraceAlphabet:
    return parse_alphabet(Path(path).read_text(encoding="utf-8"))


def format_alphabet(alpha: TraceAlphabet) -> str:
    lines = ["letters: " + " ".join(alpha.letters)]
    lines += [f"independent: {x} {y}" for x, y in alpha.pairs()]
    return "\n".join(lines) + "\n"


def dependent(alpha: TraceAlphabet, x: str, y: str) -> bool:
    alpha.check_letter(x)
    alpha.check_letter(y)
    return not alpha.independent(x, y)


def maximal_d_cliques(alpha: TraceAlphabet) -> list[frozenset[str]]:
    """All maximal sets of pairwise dependent letters, in a deterministic order."""
    letters = alpha.letters
    cliques: list[frozenset[str]] = []

    # Bron-Kerbosch without pivoting; alphabets are tiny.
    def expand(r, p, x):
        if not p and not x:
            cliques.append(frozenset(r))
            return
        for v in list(p):
            nbrs = {y for y in letters if y != v and not alpha.independent(v, y)}
            expand(r | {v}, [y for y in p if y in nbrs], [y for y in x if y in nbrs])
            p = [y for y in p if y != v]
            x = x + [v]

    expand(set(), list(letters), [])
    rank = alpha.rank
    return sorted(cliques, key=lambda c: sorted(rank[x] for x in c))


def projection(word: Word, letter_set: Iterable[str]) -> Word:
    keep = set(letter_set)
    out = [x for x in word if x in keep]
    return "".join(out) if isinstance(word, str) else tuple(out)


def _as_tuple(w: Word) -> tuple[str, ...]:
    return tuple(w)


def equivalent(alpha: TraceAlphabet, u: Word, v: Word) -> bool:
    return projection_witness(alpha, u, v) is None


def projection_witness(alpha: TraceAlphabet, u: Word, v: Word):
    """First maximal D-clique on which the projections differ, or None."""
    alpha.check_word(u)
    alpha.check_word(v)
    for p in maximal_d_cliques(alpha):
        pu, pv = _as_tuple(projection(u, p)), _as_tuple(projection(v, p))
        if pu != pv:
            return p, pu, pv
    return None


@dataclass(frozen=True)
class FiniteTrace:
    """Labelled poset of a finite word.

    Events are identified by (letter, occurrence index), counted from 1.
    `word` is the linearization the trace was built from; `preds[i]` holds the
    indices (into `events`) strictly below event i.
    """

    alphabet: TraceAlphabet
    events: tuple[tuple[str, int], ...]
    preds: tuple[frozenset[int], ...]
    covering: frozenset[tuple[int, int]]
    word: tuple[str, ...] = field(compare=False)

    def __len__(self):
        return len(self.events)

    def index(self, event: tuple[str, int]) -> int:
        return self.events.index(event)

    def leq(self, i: int, j: int) -> bool:
        return i == j or i in self.preds[j]

    def down(self, i: int) -> frozenset[int]:
        return self.preds[i] | {i}

    def up(self, i: int) -> frozenset[int]:
        return frozenset(j for j in range(len(self.events)) if self.leq(i, j))

    def label(self, i: int) -> str:
        return self.events[i][0]

    def configuration(self, members: Iterable) -> "Configuration":
        """Build a configuration from event ids or indices, checking downward closure."""
        idx = set()
        for m in members:
            idx.add(self.index(m) if isinstance(m, tuple) else m)
        c = Configuration(frozenset(idx))
        if not self.is_configuration(c):
            raise TraceError("not downward closed")
        return c

    def is_configuration(self, c: "Configuration") -> bool:
        return all(self.preds[i] <= c.members for i in c.members)

    def event_ids(self, c: "Configuration") -> frozenset[tuple[str, int]]:
        return frozenset(self.events[i] for i in c.members)


@dataclass(frozen=True)
class Configuration:
    members: frozenset[int] = frozenset()

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        return i in self.members


def trace_of_word(alpha: TraceAlphabet, w: Word) -> FiniteTrace:
    alpha.check_word(w)
    w = tuple(w)
    n = len(w)
    counts: dict[str, int] = {}
    events = []
    for x in w:
        counts[x] = counts.get(x, 0) + 1
        events.append((x, counts[x]))
    preds: list[set[int]] = []
    for j in range(n):
        below = set()
        for i in range(j):
            if not alpha.independent(w[i], w[j]):
                below.add(i)
                below |= preds[i]
        preds.append(below)
    covering = set()
    for j in range(n):
        for i in preds[j]:
            # i covers-below j unless some k sits strictly between
            if not any(i in preds[k] for k in preds[j]):
                covering.add((i, j))
    return FiniteTrace(alpha, tuple(events), tuple(frozenset(p) for p in preds), frozenset(covering), w)


def step(t: FiniteTrace, c: Configuration, a: str) -> Configuration | None:
    if not t.is_configuration(c):
        raise TraceError("not downward closed")
    found = None
    for i, (x, _) in enumerate(t.events):
        if x == a and i not in c.members and t.preds[i] <= c.members:
            if found is not None:
                raise AssertionError("two enabled events with the same label")
            found = i
    if found is None:
        return None
    return Configuration(c.members | {found})


def run_map(t: FiniteTrace, w: Word) -> list[Configuration] | None:
    c = Configuration()
    run = [c]
    for x in w:
        if x not in t.alphabet.letters:
            return None
        c = step(t, c, x)
        if c is None:
            return None
        run.append(c)
    if len(c) != len(t):
        return None
    return run


def linearizations(t: FiniteTrace, bound: int = 10) -> set:
    if len(t) > bound:
        raise BoundExceeded(f"trace has {len(t)} events, bound is {bound}")
    out = set()
    n = len(t)

    def rec(done: frozenset[int], acc: list[str]):
        if len(done) == n:
            out.add(t.alphabet.render(acc))
            return
        for i in range(n):
            if i not in done and t.preds[i] <= done:
                acc.append(t.label(i))
                rec(done | {i}, acc)
                acc.pop()

    rec(frozenset(), [])
    return out


def equivalence_class(alpha: TraceAlphabet, u: Word, bound: int = 5000) -> set:
    """Closure of {u} under swapping adjacent independent letters."""
    alpha.check_word(u)
    start = tuple(u)
    seen = {start}
    todo = [start]
    while todo:
        w = todo.pop()
        for i in range(len(w) - 1):
            if w[i] != w[i + 1] and alpha.independent(w[i], w[i + 1]):
                s = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                if s not in seen:
                    seen.add(s)
                    if len(seen) > bound:
                        raise BoundExceeded(f"equivalence class exceeds bound {bound}")
                    todo.append(s)
    return {alpha.render(w) for w in seen}


def foata_normal_form(alpha: TraceAlphabet, u: Word) -> Word:
    """Lexicographically least member of [u] under the alphabet's letter order.

    Greedy: repeatedly emit the least letter whose first remaining occurrence
    has no dependent letter before it.
    """
    alpha.check_word(u)
    rank = alpha.rank
    rest = list(u)
    out = []
    while rest:
        best = None
        blocked: set[str] = set()
        for i, x in enumerate(rest):
            if x not in blocked and all(alpha.independent(x, y) for y in blocked):
                if best is None or rank[x] < rank[rest[best]]:
                    best = i
            blocked.add(x)
        out.append(rest.pop(best))
    return alpha.render(out)


def all_words(letters: Sequence[str], max_len: int, min_len: int = 0):
    """Every word over `letters` with length in [min_len, max_len], shortest first."""
    frontier: list[tuple[str, ...]] = [()]
    for n in range(max_len + 1):
        if n >= min_len:
            yield from frontier
        frontier = [w + (x,) for w in frontier for x in letters]


def pairs_independent(alpha: TraceAlphabet) -> list[tuple[str, str]]:
    return [(x, y) for x, y in combinations(alpha.letters, 2) if alpha.independent(x, y)]
