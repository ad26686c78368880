"""Automata kernel: Büchi, alternating Büchi, finite and Moore machines.

States are integers ``0..n-1``.  Transition tables are tuples (one entry per
state) of dicts keyed by letter; a missing letter means "no successor"
for the nondeterministic kinds.  Positive Boolean formulas over states are
kept in disjunctive normal form: a frozenset of minterms, each minterm a
frozenset of states.  ``DNF_TRUE`` is the single empty minterm and
``DNF_FALSE`` is the empty disjunction.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Sequence

DNF = frozenset  # frozenset[frozenset[Hashable]]
DNF_TRUE: DNF = frozenset([frozenset()])
DNF_FALSE: DNF = frozenset()


class BudgetExceeded(RuntimeError):
    """A construction would exceed its state budget."""


class PipelineIntegrityError(RuntimeError):
    """A structural invariant of the monitor pipeline was violated."""


class Verdict(enum.Enum):
    TOP = "top"
    UNKNOWN = "unknown"
    BOTTOM = "bottom"

    @property
    def token(self) -> str:
        return self.value

    @property
    def symbol(self) -> str:
        return {"top": "⊤", "unknown": "?", "bottom": "⊥"}[self.value]

    @classmethod
    def from_token(cls, token: str) -> "Verdict":
        return cls(token)

    def __str__(self):
        return self.value


# -- positive Boolean formulas in DNF -------------------------------------


def dnf_atom(q: Hashable) -> DNF:
    return frozenset([frozenset([q])])


def _absorb(terms: Iterable[frozenset]) -> DNF:
    terms = sorted(set(terms), key=len)
    kept: list[frozenset] = []
    for t in terms:
        if not any(k <= t for k in kept):
            kept.append(t)
    return frozenset(kept)


def dnf_or(*fs: DNF) -> DNF:
    return _absorb(t for f in fs for t in f)


def dnf_and(*fs: DNF) -> DNF:
    acc = DNF_TRUE
    for f in fs:
        if not f:
            return DNF_FALSE
        acc = _absorb(a | b for a in acc for b in f)
    return acc


def dnf_map(f: DNF, sub) -> DNF:
    """Replace every atom q by the DNF ``sub(q)``."""
    return dnf_or(*(dnf_and(*(sub(q) for q in term)) for term in f))


def dnf_dual(f: DNF, rename=lambda q: q) -> DNF:
    """Swap conjunction and disjunction (atoms passed through `rename`)."""
    return dnf_and(*(dnf_or(*(dnf_atom(rename(q)) for q in term)) for term in f))


def dnf_str(f: DNF, name=str) -> str:
    if f == DNF_TRUE:
        return "true"
    if not f:
        return "false"
    terms = sorted(" & ".join(sorted(name(q) for q in t)) for t in f)
    return " | ".join(f"({t})" if len(f) > 1 and " & " in t else t for t in terms)


# -- machine types --------------------------------------------------------


@dataclass
class Nba:
    letters: tuple[str, ...]
    n: int
    initial: frozenset[int]
    delta: tuple[dict[str, frozenset[int]], ...]
    accepting: frozenset[int]
    names: tuple[str, ...] | None = None

    def succ(self, q: int, a: str) -> frozenset[int]:
        return self.delta[q].get(a, frozenset())

    def post(self, qs: Iterable[int], a: str) -> frozenset[int]:
        out: set[int] = set()
        for q in qs:
            out |= self.succ(q, a)
        return frozenset(out)

    def run(self, word: Sequence[str], start: Iterable[int] | None = None) -> frozenset[int]:
        qs = frozenset(self.initial if start is None else start)
        for a in word:
            qs = self.post(qs, a)
        return qs

    def with_initial(self, q: int) -> "Nba":
        return Nba(self.letters, self.n, frozenset([q]), self.delta, self.accepting, self.names)

    def edges(self):
        for q in range(self.n):
            for a in self.letters:
                for r in sorted(self.succ(q, a)):
                    yield q, a, r


@dataclass
class Nfa(Nba):
    """Same shape as an Nba; `accepting` is read as a finite-word condition."""

    def accepts(self, word: Sequence[str]) -> bool:
        return bool(self.run(word) & self.accepting)


@dataclass
class Dfa:
    letters: tuple[str, ...]
    n: int
    initial: int
    delta: tuple[dict[str, int], ...]
    accepting: frozenset[int]
    subsets: tuple[frozenset[int], ...] | None = None

    def __post_init__(self):
        for q in range(self.n):
            if set(self.delta[q]) != set(self.letters):
                raise ValueError(f"dfa transition from {q} is not total")

    def run(self, word: Sequence[str], start: int | None = None) -> int:
        q = self.initial if start is None else start
        for a in word:
            q = self.delta[q][a]
        return q

    def accepts(self, word: Sequence[str]) -> bool:
        return self.run(word) in self.accepting


@dataclass
class Aba:
    """Alternating Büchi automaton; `initial` and transitions are DNFs over states."""

    letters: tuple[str, ...]
    n: int
    initial: DNF
    delta: tuple[dict[str, DNF], ...]
    accepting: frozenset[int]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        for f in [self.initial, *(g for row in self.delta for g in row.values())]:
            for term in f:
                if any(not 0 <= q < self.n for q in term):
                    raise ValueError("transition formula mentions an unknown state")

    def trans(self, q: int, a: str) -> DNF:
        return self.delta[q].get(a, DNF_FALSE)


@dataclass
class MooreMachine:
    letters: tuple[str, ...]
    n: int
    initial: int
    delta: tuple[dict[str, int], ...]
    output: tuple[Verdict, ...]

    def __post_init__(self):
        if len(self.output) != self.n:
            raise ValueError("every state needs an output")
        for q in range(self.n):
            if set(self.delta[q]) != set(self.letters):
                raise ValueError(f"moore transition from {q} is not total")

    def run(self, word: Sequence[str], start: int | None = None) -> int:
        q = self.initial if start is None else start
        for a in word:
            q = self.delta[q][a]
        return q

    def output_of(self, word: Sequence[str]) -> Verdict:
        return self.output[self.run(word)]


# -- graph helpers --------------------------------------------------------


def _sccs(nodes: Sequence[Hashable], succ) -> list[list[Hashable]]:
    """Tarjan's algorithm, iterative."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _good_cycle_nodes(nodes, succ, accepting) -> set:
    """Nodes lying in a non-trivial SCC that contains an accepting node."""
    good: set = set()
    for comp in _sccs(nodes, succ):
        cs = set(comp)
        nontrivial = len(comp) > 1 or any(w in cs for w in succ(comp[0]))
        if nontrivial and any(accepting(v) for v in comp):
            good |= cs
    return good


def _backward_reach(targets: set, nodes, succ) -> set:
    pred: dict = {v: [] for v in nodes}
    for v in nodes:
        for w in succ(v):
            pred.setdefault(w, []).append(v)
    seen = set(targets)
    todo = list(targets)
    while todo:
        w = todo.pop()
        for v in pred.get(w, ()):
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


# -- operations -----------------------------------------------------------


def per_state_nonempty(a: Nba) -> dict[int, bool]:
    """Map each state q to whether the automaton started in q accepts some word."""
    nodes = list(range(a.n))

    def succ(q):
        return sorted({r for x in a.letters for r in a.succ(q, x)})

    good = _good_cycle_nodes(nodes, succ, lambda q: q in a.accepting)
    live = _backward_reach(good, nodes, succ)
    return {q: q in live for q in nodes}


def to_finite_acceptor(a: Nba, nonempty: dict[int, bool]) -> Nfa:
    if set(nonempty) != set(range(a.n)):
        raise ValueError("nonemptiness map does not match the automaton's states")
    return Nfa(
        a.letters, a.n, a.initial, a.delta,
        frozenset(q for q, ok in nonempty.items() if ok), a.names,
    )


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction over reachable subsets; the empty set is the dead sink."""
    start = frozenset(nfa.initial)
    index = {start: 0}
    order = [start]
    delta: list[dict[str, int]] = []
    i = 0
    while i < len(order):
        s = order[i]
        row = {}
        for a in nfa.letters:
            t = nfa.post(s, a)
            if t not in index:
                index[t] = len(order)
                order.append(t)
            row[a] = index[t]
        delta.append(row)
        i += 1
    acc = frozenset(i for i, s in enumerate(order) if s & nfa.accepting)
    return Dfa(nfa.letters, len(order), 0, tuple(delta), acc, tuple(order))


def reduce_aba(a: Aba) -> Aba:
    """Quotient by the coarsest bisimulation that respects acceptance.

    Two states are merged when they agree on acceptance and, for every
    letter, their transition formulas coincide once states are replaced by
    their blocks.  Bisimilar states accept the same language.
    """
    block = [int(q in a.accepting) for q in range(a.n)]

    def sig_formula(f: DNF) -> DNF:
        return _absorb(frozenset(block[q] for q in t) for t in f)

    while True:
        sig = [
            (block[q], tuple(sig_formula(a.trans(q, x)) for x in a.letters))
            for q in range(a.n)
        ]
        ids: dict = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        if len(ids) == len(set(block)):
            break
        block = new
    # renumber blocks in order of first appearance so the result is deterministic
    first: dict[int, int] = {}
    for q in range(a.n):
        first.setdefault(block[q], len(first))
    rep = {}
    for q in range(a.n):
        rep.setdefault(first[block[q]], q)
    k = len(first)

    def lift(f: DNF) -> DNF:
        return _absorb(frozenset(first[block[q]] for q in t) for t in f)

    delta = tuple({x: lift(a.trans(rep[b], x)) for x in a.letters} for b in range(k))
    acc = frozenset(b for b in range(k) if rep[b] in a.accepting)
    names = tuple(a.names[rep[b]] for b in range(k)) if a.names else None
    return Aba(a.letters, k, lift(a.initial), delta, acc, names)


def miyano_hayashi(a: Aba, budget: int | None = None) -> Nba:
    """Breakpoint construction from an alternating to a nondeterministic Büchi automaton.

    States are pairs (S, O) with O ⊆ S the states still owing a visit to an
    accepting state; (S, O) is accepting when O is empty.
    """
    acc = a.accepting

    def make(s: frozenset, o: frozenset):
        return (s, o)

    init = []
    for term in sorted(a.initial, key=sorted):
        s = frozenset(term)
        init.append(make(s, s - acc))
    index: dict = {}
    order: list = []

    def intern(st):
        if st not in index:
            if budget is not None and len(order) >= budget:
                raise BudgetExceeded(f"breakpoint construction exceeded {budget} states")
            index[st] = len(order)
            order.append(st)
        return index[st]

    initial = frozenset(intern(st) for st in init)
    delta: list[dict[str, frozenset[int]]] = []
    i = 0
    while i < len(order):
        s, o = order[i]
        row = {}
        members = sorted(s)
        for x in a.letters:
            options = [sorted(a.trans(q, x), key=sorted) for q in members]
            succs = set()
            if all(options):
                for choice in product(*options):
                    pick = dict(zip(members, choice))
                    s2 = frozenset().union(*choice) if choice else frozenset()
                    if o:
                        o2 = frozenset().union(*(pick[q] for q in o)) - acc
                    else:
                        o2 = s2 - acc
                    succs.add(intern(make(s2, o2)))
            if succs:
                row[x] = frozenset(succs)
        delta.append(row)
        i += 1
    accepting = frozenset(j for j, (_, o) in enumerate(order) if not o)
    names = tuple(
        "{" + ",".join(map(str, sorted(s))) + "}/{" + ",".join(map(str, sorted(o))) + "}"
        for s, o in order
    )
    return Nba(a.letters, len(order), initial, tuple(delta), accepting, names)


def _output(pos_acc: bool, neg_acc: bool) -> Verdict:
    if not pos_acc and not neg_acc:
        raise PipelineIntegrityError("product state rejects both the formula and its negation")
    if not neg_acc:
        return Verdict.TOP
    if not pos_acc:
        return Verdict.BOTTOM
    return Verdict.UNKNOWN


def product_moore(pos: Dfa, neg: Dfa) -> MooreMachine:
    if pos.letters != neg.letters:
        raise ValueError("alphabet mismatch between the two automata")
    start = (pos.initial, neg.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = {}
        for a in pos.letters:
            t = (pos.delta[p][a], neg.delta[q][a])
            if t not in index:
                index[t] = len(order)
                order.append(t)
            row[a] = index[t]
        delta.append(row)
        i += 1
    out = tuple(_output(p in pos.accepting, q in neg.accepting) for p, q in order)
    return MooreMachine(pos.letters, len(order), 0, tuple(delta), out)


def _renumber(m: MooreMachine) -> MooreMachine:
    """Keep reachable states, numbered in BFS order (letters in alphabet order)."""
    index = {m.initial: 0}
    order = [m.initial]
    i = 0
    while i < len(order):
        q = order[i]
        for a in m.letters:
            r = m.delta[q][a]
            if r not in index:
                index[r] = len(order)
                order.append(r)
        i += 1
    delta = tuple({a: index[m.delta[q][a]] for a in m.letters} for q in order)
    return MooreMachine(m.letters, len(order), 0, delta, tuple(m.output[q] for q in order))


def moore_partition(m: MooreMachine) -> list[int]:
    """Coarsest output-respecting congruence, as a block id per state."""
    blocks = [m.output[q].value for q in range(m.n)]
    while True:
        sig = [(blocks[q], tuple(blocks[m.delta[q][a]] for a in m.letters)) for q in range(m.n)]
        ids: dict = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        if len(ids) == len(set(blocks)):
            return new
        blocks = new


def minimize_moore(m: MooreMachine) -> MooreMachine:
    m = _renumber(m)
    block = moore_partition(m)
    k = max(block) + 1 if m.n else 0
    rep = {}
    for q in range(m.n):
        rep.setdefault(block[q], q)
    delta = tuple({a: block[m.delta[rep[b]][a]] for a in m.letters} for b in range(k))
    out = tuple(m.output[rep[b]] for b in range(k))
    return _renumber(MooreMachine(m.letters, k, block[m.initial], delta, out))


def moore_isomorphic(m1: MooreMachine, m2: MooreMachine) -> bool:
    if m1.letters != m2.letters or m1.n != m2.n:
        return False
    iso = {m1.initial: m2.initial}
    todo = [m1.initial]
    while todo:
        q = todo.pop()
        r = iso[q]
        if m1.output[q] != m2.output[r]:
            return False
        for a in m1.letters:
            q2, r2 = m1.delta[q][a], m2.delta[r][a]
            if q2 in iso:
                if iso[q2] != r2:
                    return False
            else:
                iso[q2] = r2
                todo.append(q2)
    return len(set(iso.values())) == len(iso)


def lasso_member(a: Nba, u: Sequence[str], v: Sequence[str]) -> bool:
    """Whether u·v^ω is accepted, by searching the product with the lasso shape."""
    if not v:
        raise ValueError("lasso period must be non-empty")
    word = list(u) + list(v)
    n, loop = len(word), len(u)

    def succ(node):
        q, i = node
        j = i + 1 if i + 1 < n else loop
        return [(r, j) for r in sorted(a.succ(q, word[i]))]

    seen = set()
    todo = [(q, 0) for q in sorted(a.initial)]
    seen.update(todo)
    while todo:
        for w in succ(todo.pop()):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    nodes = sorted(seen)
    return bool(_good_cycle_nodes(nodes, succ, lambda node: node[0] in a.accepting))


def _dot_id(q: int) -> str:
    return f"q{q}"


def dot_export(machine, name: str = "machine") -> str:
    """Graphviz text; nodes and edges sorted by state index, then letter."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    n = machine.n
    if n or isinstance(machine, Aba):
        lines.append('  __start [shape=point, label=""];')
    if isinstance(machine, MooreMachine):
        for q in range(n):
            lines.append(f'  {_dot_id(q)} [shape=circle, label="{_dot_id(q)} / {machine.output[q].value}"];')
        if n:
            lines.append(f"  __start -> {_dot_id(machine.initial)};")
        for q in range(n):
            for a in machine.letters:
                lines.append(f'  {_dot_id(q)} -> {_dot_id(machine.delta[q][a])} [label="{a}"];')
    elif isinstance(machine, Dfa):
        for q in range(n):
            shape = "doublecircle" if q in machine.accepting else "circle"
            lines.append(f'  {_dot_id(q)} [shape={shape}, label="{_dot_id(q)}"];')
        if n:
            lines.append(f"  __start -> {_dot_id(machine.initial)};")
        for q in range(n):
            for a in machine.letters:
                lines.append(f'  {_dot_id(q)} -> {_dot_id(machine.delta[q][a])} [label="{a}"];')
    elif isinstance(machine, Aba):
        for q in range(n):
            shape = "doublecircle" if q in machine.accepting else "circle"
            lines.append(f'  {_dot_id(q)} [shape={shape}, label="{_dot_id(q)}"];')
        lines.append(f'  __init [shape=box, label="{dnf_str(machine.initial, _dot_id)}"];')
        lines.append("  __start -> __init;")
        for q in range(n):
            for a in machine.letters:
                f = machine.trans(q, a)
                box = f"__t{q}_{a}"
                lines.append(f'  {box} [shape=box, label="{dnf_str(f, _dot_id)}"];')
                lines.append(f'  {_dot_id(q)} -> {box} [label="{a}"];')
    else:
        for q in range(n):
            shape = "doublecircle" if q in machine.accepting else "circle"
            lines.append(f'  {_dot_id(q)} [shape={shape}, label="{_dot_id(q)}"];')
        for q in sorted(machine.initial):
            lines.append(f"  __start -> {_dot_id(q)};")
        for q, a, r in machine.edges():
            lines.append(f'  {_dot_id(q)} -> {_dot_id(r)} [label="{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
