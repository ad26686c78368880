"""Formula to Büchi automaton translation.

Two backends:

``word``
    Classic closure/tableau construction for LTL over words.  ``<a>phi``
    reads "the next letter is a and phi holds after it".  Independence is
    ignored, so the result is only faithful to the trace semantics when the
    independence relation is empty.

``trace``
    An alternating automaton over linearizations, then the breakpoint
    construction.  The alternating automaton evaluates each operator on the
    residue of the input that lies outside a configuration guessed on the fly.

    A configuration of the trace of an infinite word is a set of positions
    closed under "earlier and dependent".  Reading left to right it suffices
    to remember the set B of letters already left *outside* the
    configuration: a position may join the configuration iff its letter is
    independent of every letter in B.  The positions outside a configuration,
    in input order, linearize the residue trace, so a sub-automaton fed
    exactly those positions evaluates the subformula at that configuration.

    * ``<a>phi`` waits through letters independent of a (feeding them to the
      phi automaton), fails on a dependent letter other than a, and on the
      first a hands over the phi obligation without feeding it that a.
    * ``phi U psi`` guesses the witness configuration c' letter by letter.
      In parallel it keeps, for every class of sub-configurations c'' ⊆ c'
      (keyed by their own blocked-letter set and whether c'' ≠ c'), the
      conjunction of the phi obligations those c'' have accumulated.  When the
      guess is closed, psi must hold at c' and phi at every strict c''.  The
      closing happens before some letter is read, so c' is finite; the
      guessing states are rejecting, forcing the guess to close eventually.
      Tracking every c'' rather than one chain of prefixes is what makes this
      the configuration until and not the weaker chain until.
    * Negation dualizes transitions and flips acceptance.  Every state only
      reaches states of the same operator instance or of its subformulas, so
      the automaton is weak and dualization is sound.

    Obligations that are still pending inside an operator's state are DNFs
    over sub-automaton states that have already consumed part of the input.
    This nesting is where the non-elementary growth comes from.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .automata import (
    DNF, DNF_FALSE, DNF_TRUE, Aba, BudgetExceeded, Nba, Nfa,
    dnf_and, dnf_atom, dnf_dual, dnf_map, dnf_or, miyano_hayashi, reduce_aba,
)
from .formula import Formula, Next, Not, Or, TT, Until, subformulas, validate_letters
from .trace_core import TraceAlphabet, all_words

DEFAULT_BUDGET = 10**6
BACKENDS = ("trace", "word")


class TranslationError(ValueError):
    pass


def state_budget(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("TRACEMON_STATE_BUDGET")
    return int(raw) if raw else default


def _check(f: Formula, alpha: TraceAlphabet) -> None:
    unknown = validate_letters(f, alpha)
    if unknown:
        raise TranslationError("unknown letter " + ", ".join(unknown))


@dataclass(frozen=True)
class TranslationBackend:
    name: str
    alphabet: TraceAlphabet

    def __post_init__(self):
        if self.name not in BACKENDS:
            raise ValueError(f"unknown backend {self.name!r}")

    @property
    def faithful(self) -> bool:
        """Word semantics agree with trace semantics only without independence."""
        return self.name == "trace" or not self.alphabet.independence

    def translate(self, f: Formula, budget: int | None = None) -> Nba:
        if self.name == "word":
            return ltl_to_nba(f, self.alphabet, budget)
        return ltrl_to_nba(f, self.alphabet, budget)


# -- word backend ---------------------------------------------------------


def ltl_to_nba(f: Formula, alpha: TraceAlphabet, budget: int | None = None) -> Nba:
    _check(f, alpha)
    budget = state_budget() if budget is None else budget
    subs = list(dict.fromkeys(subformulas(f)))
    elementary = [g for g in subs if isinstance(g, (Next, Until))]
    untils = [g for g in subs if isinstance(g, Until)]
    if 2 ** len(elementary) > budget:
        raise BudgetExceeded(f"tableau needs up to {2 ** len(elementary)} atoms, budget {budget}")

    atoms = []
    for bits in product((False, True), repeat=len(elementary)):
        val = dict(zip(elementary, bits))
        ok = True
        for g in subs:
            if isinstance(g, TT):
                val[g] = True
            elif isinstance(g, Not):
                val[g] = not val[g.sub]
            elif isinstance(g, Or):
                val[g] = val[g.left] or val[g.right]
            elif isinstance(g, Until):
                if val[g.right] and not val[g]:
                    ok = False
                if val[g] and not (val[g.left] or val[g.right]):
                    ok = False
        if ok:
            atoms.append(val)

    def step_ok(src: dict, x: str, dst: dict) -> bool:
        for g in elementary:
            if isinstance(g, Next):
                if src[g] != (x == g.letter and dst[g.sub]):
                    return False
            elif src[g] != (src[g.right] or (src[g.left] and dst[g])):
                return False
        return True

    k = max(1, len(untils))

    def fair(atom: dict, i: int) -> bool:
        if not untils:
            return True
        u = untils[i]
        return atom[u.right] or not atom[u]

    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def intern(node):
        if node not in index:
            if len(order) >= budget:
                raise BudgetExceeded(f"tableau exceeded {budget} states")
            index[node] = len(order)
            order.append(node)
        return index[node]

    initial = frozenset(intern((i, 0)) for i, at in enumerate(atoms) if at[f])
    delta = []
    j = 0
    while j < len(order):
        i, c = order[j]
        src = atoms[i]
        nc = (c + 1) % k if fair(src, c) else c
        row = {}
        for x in alpha.letters:
            succ = frozenset(intern((t, nc)) for t, dst in enumerate(atoms) if step_ok(src, x, dst))
            if succ:
                row[x] = succ
        delta.append(row)
        j += 1
    accepting = frozenset(j for j, (i, c) in enumerate(order) if c == 0 and fair(atoms[i], 0))
    return Nba(alpha.letters, len(order), initial, tuple(delta), accepting)


# -- trace backend --------------------------------------------------------


def _skey(obj):
    """Structural sort key, independent of hash randomization."""
    if isinstance(obj, frozenset):
        return (2, tuple(sorted(_skey(x) for x in obj)))
    if isinstance(obj, tuple):
        return (1, tuple(_skey(x) for x in obj))
    if isinstance(obj, bool):
        return (0, int(obj))
    return (3, obj)


def _neg(q):
    return q[1] if q[0] == "neg" else ("neg", q)


class _TraceAutomaton:
    """Lazily explored alternating automaton over abstract, hashable states."""

    def __init__(self, alpha: TraceAlphabet):
        self.alpha = alpha
        self.letters = alpha.letters
        self.dep = {
            (x, y): not alpha.independent(x, y) for x in self.letters for y in self.letters
        }
        self._delta: dict = {}

    def initial(self, f: Formula) -> DNF:
        if isinstance(f, TT):
            return DNF_TRUE
        if isinstance(f, Not):
            return dnf_dual(self.initial(f.sub), _neg)
        if isinstance(f, Or):
            return dnf_or(self.initial(f.left), self.initial(f.right))
        if isinstance(f, Next):
            return dnf_atom(("next", f.letter, self.initial(f.sub)))
        if isinstance(f, Until):
            fams = frozenset([((frozenset(), False), self.initial(f.left))])
            return dnf_atom(("until", frozenset(), self.initial(f.right), fams))
        raise TypeError(f)

    def accepting(self, q) -> bool:
        return q[0] == "neg" and not self.accepting(q[1])

    def feed(self, f: DNF, x: str) -> DNF:
        return dnf_map(f, lambda q: self.delta(q, x))

    def delta(self, q, x: str) -> DNF:
        key = (q, x)
        hit = self._delta.get(key)
        if hit is None:
            hit = self._compute(q, x)
            self._delta[key] = hit
        return hit

    def _compute(self, q, x: str) -> DNF:
        kind = q[0]
        if kind == "neg":
            return dnf_dual(self.delta(q[1], x), _neg)
        if kind == "next":
            _, a, sub = q
            if x == a:
                return sub
            if self.dep[x, a]:
                return DNF_FALSE
            fed = self.feed(sub, x)
            return dnf_atom(("next", a, fed)) if fed else DNF_FALSE
        if kind == "until":
            return self._until(q, x)
        raise TypeError(q)

    def _blocked(self, x: str, blocked: frozenset) -> bool:
        return any(self.dep[x, y] for y in blocked)

    def _until(self, q, x: str) -> DNF:
        _, blocked, pending, fams = q
        options = []
        # close the witness configuration before reading x
        closing = dnf_and(pending, *(g for (_, strict), g in fams if strict))
        if closing:
            options.append(self.feed(closing, x))
        # x joins the witness configuration
        if not self._blocked(x, blocked):
            grown: dict = {}
            for (b2, strict), g in fams:
                if not self._blocked(x, b2):
                    _merge(grown, (b2, strict), g)
                _merge(grown, (b2 | {x}, True), self.feed(g, x))
            st = self._until_state(blocked, pending, grown)
            if st is not None:
                options.append(dnf_atom(st))
        # x stays outside the witness configuration
        left: dict = {}
        for (b2, strict), g in fams:
            _merge(left, (b2 | {x}, strict), self.feed(g, x))
        st = self._until_state(blocked | {x}, self.feed(pending, x), left)
        if st is not None:
            options.append(dnf_atom(st))
        return dnf_or(*options)

    @staticmethod
    def _until_state(blocked, pending, fams: dict):
        if not pending:
            return None
        if any(strict and not g for (_, strict), g in fams.items()):
            return None
        return ("until", frozenset(blocked), pending, frozenset(fams.items()))

    def explore(self, f: Formula, budget: int) -> Aba:
        init = self.initial(f)
        index: dict = {}
        order: list = []

        def intern_all(dnf: DNF):
            fresh = sorted({q for t in dnf for q in t if q not in index}, key=_skey)
            for q in fresh:
                if len(order) >= budget:
                    raise BudgetExceeded(f"alternating automaton exceeded {budget} states")
                index[q] = len(order)
                order.append(q)

        def renum(dnf: DNF) -> DNF:
            return frozenset(frozenset(index[q] for q in t) for t in dnf)

        intern_all(init)
        rows = []
        i = 0
        while i < len(order):
            q = order[i]
            row = {}
            for x in self.letters:
                d = self.delta(q, x)
                intern_all(d)
                row[x] = renum(d)
            rows.append(row)
            i += 1
        acc = frozenset(j for j, q in enumerate(order) if self.accepting(q))
        names = tuple(_describe(q) for q in order)
        return Aba(self.letters, len(order), renum(init), tuple(rows), acc, names)


def _merge(fams: dict, key, g: DNF) -> None:
    fams[key] = dnf_and(fams[key], g) if key in fams else g


def _describe(q) -> str:
    if q[0] == "neg":
        return "!" + _describe(q[1])
    if q[0] == "next":
        return f"<{q[1]}>[{len(q[2])}]"
    return "U{" + ",".join(sorted(q[1])) + f"}}[{len(q[3])}]"


def ltrl_to_aba(f: Formula, alpha: TraceAlphabet, budget: int | None = None) -> Aba:
    _check(f, alpha)
    budget = state_budget() if budget is None else budget
    return _TraceAutomaton(alpha).explore(f, budget)


def ltrl_to_nba(f: Formula, alpha: TraceAlphabet, budget: int | None = None) -> Nba:
    budget = state_budget() if budget is None else budget
    return miyano_hayashi(reduce_aba(ltrl_to_aba(f, alpha, budget)), budget)


def translate(f: Formula, alpha: TraceAlphabet, backend: str = "trace", budget: int | None = None) -> Nba:
    return TranslationBackend(backend, alpha).translate(f, budget)


# -- bounded trace-closure check -----------------------------------------


def check_trace_closed_bounded(a: Nfa, alpha: TraceAlphabet, max_len: int):
    """First pair (u, u') of words differing by one swap of adjacent independent
    letters on which membership differs, or None when none exists up to max_len."""
    if not alpha.independence:
        return None
    # membership of each word via one forward pass per prefix tree level
    reach = {(): frozenset(a.initial)}
    for w in all_words(alpha.letters, max_len, 1):
        reach[w] = a.post(reach[w[:-1]], w[-1])
    for w in all_words(alpha.letters, max_len, 2):
        inside = bool(reach[w] & a.accepting)
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            if x != y and alpha.independent(x, y):
                s = w[:i] + (y, x) + w[i + 2:]
                if bool(reach[s] & a.accepting) != inside:
                    return alpha.render(w), alpha.render(s)
    return None
