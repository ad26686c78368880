"""Construction-free semantic evaluation of formulas on lasso traces.

Nothing here touches the automata pipeline; only the trace algebra is
shared.  A lasso ``(u, v)`` denotes the infinite trace of ``u v^ω``.

Evaluation works on *residues*: evaluating at a configuration c of T is the
same as evaluating at the empty configuration of T minus c, and the residue of
a lasso trace is again a lasso ``(x, v)`` with the same period.  Residues are
identified up to trace equivalence by their projections onto the maximal
D-cliques; each projection is a suffix of an ultimately periodic word, so
there are finitely many residues and the memo tables stay finite.

The until clause is decided by a breadth-first sweep over the configurations
of the residue, level by level in size.  For each configuration c it tracks
whether phi holds at *every* configuration strictly below c (via the lower
covers of c, so all downsets are visited, not just one chain).  Negative
answers are only given when one of two arguments closes the search:

* some level has no configuration whose strict downsets all satisfy phi;
  every larger configuration contains one of them, so no witness exists;
* the set of reachable residues is exhausted and psi is false on all of them.

Anything else beyond the horizon is ``unknown``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .formula import Formula, Next, Not, Or, TT, Until
from .trace_core import TraceAlphabet, equivalent, maximal_d_cliques


class Bounded3(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value

    def __invert__(self):
        return {Bounded3.TRUE: Bounded3.FALSE, Bounded3.FALSE: Bounded3.TRUE}.get(self, self)

    def __or__(self, other):
        if Bounded3.TRUE in (self, other):
            return Bounded3.TRUE
        if self is other is Bounded3.FALSE:
            return Bounded3.FALSE
        return Bounded3.UNKNOWN

    def __and__(self, other):
        return ~(~self | ~other)

    @property
    def conclusive(self) -> bool:
        return self is not Bounded3.UNKNOWN


T, F, U = Bounded3.TRUE, Bounded3.FALSE, Bounded3.UNKNOWN


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class LassoTrace:
    prefix: tuple[str, ...]
    period: tuple[str, ...]
    alphabet: TraceAlphabet

    def __post_init__(self):
        if not self.period:
            raise OracleError("lasso period must be non-empty")
        self.alphabet.check_word(self.prefix)
        self.alphabet.check_word(self.period)


def lasso(alpha: TraceAlphabet, u: Sequence[str], v: Sequence[str]) -> LassoTrace:
    return LassoTrace(tuple(u), tuple(v), alpha)


def _primitive_root(w: tuple) -> tuple:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


def _canonical_up(x: tuple, v: tuple) -> tuple:
    """Canonical (prefix, period) of x·v^ω, or (x, ()) for a finite word."""
    if not v:
        return (x, ())
    v = _primitive_root(v)
    while x and x[-1] == v[-1]:
        x = x[:-1]
        v = (v[-1],) + v[:-1]
    return (x, v)


class _Evaluator:
    def __init__(self, alpha: TraceAlphabet, period: tuple, horizon: int):
        self.alpha = alpha
        self.period = period
        self.horizon = horizon
        self.cliques = [frozenset(p) for p in maximal_d_cliques(alpha)]
        self.dep = {
            (x, y): not alpha.independent(x, y) for x in alpha.letters for y in alpha.letters
        }
        self.memo: dict = {}
        self.succ_memo: dict = {}

    # residues ------------------------------------------------------------

    def key(self, x: tuple) -> tuple:
        v = self.period
        return tuple(
            _canonical_up(tuple(y for y in x if y in p), tuple(y for y in v if y in p))
            for p in self.cliques
        )

    def _drop_period_suffix(self, x: tuple) -> tuple:
        """Shorten x while x ≈ x'·v (then x·v^ω ≈ x'·v^ω)."""
        while len(x) >= len(self.period):
            r = list(reversed(x))
            ok = True
            for y in reversed(self.period):
                for j, z in enumerate(r):
                    if self.dep[z, y]:
                        break
                else:
                    ok = False
                    break
                if r[j] != y:
                    ok = False
                    break
                del r[j]
            if not ok:
                return x
            x = tuple(reversed(r))
        return x

    def enabled(self, x: tuple, a: str):
        """Index in x·v of the minimal a-event, or None when a is not enabled."""
        for i, y in enumerate(x + self.period):
            if self.dep[y, a]:
                return i if y == a else None
        return None

    def step(self, x: tuple, a: str):
        i = self.enabled(x, a)
        if i is None:
            return None
        w = x + self.period if i >= len(x) else x
        return self._drop_period_suffix(w[:i] + w[i + 1:])

    def successors(self, x: tuple):
        hit = self.succ_memo.get(x)
        if hit is None:
            hit = []
            for a in self.alpha.letters:
                y = self.step(x, a)
                if y is not None:
                    hit.append((a, y))
            self.succ_memo[x] = hit
        return hit

    # semantics -----------------------------------------------------------

    def eval(self, f: Formula, x: tuple) -> Bounded3:
        k = (f, self.key(x))
        hit = self.memo.get(k)
        if hit is None:
            hit = self._eval(f, x)
            self.memo[k] = hit
        return hit

    def _eval(self, f: Formula, x: tuple) -> Bounded3:
        if isinstance(f, TT):
            return T
        if isinstance(f, Not):
            return ~self.eval(f.sub, x)
        if isinstance(f, Or):
            left = self.eval(f.left, x)
            return T if left is T else left | self.eval(f.right, x)
        if isinstance(f, Next):
            y = self.step(x, f.letter)
            return F if y is None else self.eval(f.sub, y)
        if isinstance(f, Until):
            return self._until(f.left, f.right, x)
        raise TypeError(f)

    def _until(self, phi: Formula, psi: Formula, x: tuple) -> Bounded3:
        letters = self.alpha.letters
        zero = tuple(0 for _ in letters)
        # level: counts -> (residue, all strictly-below satisfy phi)
        level = {zero: (x, T)}
        result = F
        for _ in range(self.horizon + 1):
            down = {}
            any_alive = False
            for counts, (res, below) in level.items():
                if below is not F:
                    any_alive = True
                    result = result | (self.eval(psi, res) & below)
                    if result is T:
                        return T
                    down[counts] = self.eval(phi, res) & below
                else:
                    down[counts] = F
            if not any_alive:
                return result
            nxt: dict = {}
            for counts, (res, _) in level.items():
                for a, y in self.successors(res):
                    i = letters.index(a)
                    c2 = counts[:i] + (counts[i] + 1,) + counts[i + 1:]
                    if c2 not in nxt:
                        nxt[c2] = [y, T]
                    nxt[c2][1] = nxt[c2][1] & down[counts]
            level = {c: (y, b) for c, (y, b) in nxt.items()}
        if result is F and self._psi_false_everywhere(psi, x):
            return F
        return U

    def _psi_false_everywhere(self, psi: Formula, x: tuple) -> bool:
        seen = {self.key(x)}
        frontier = [x]
        for _ in range(self.horizon + 1):
            nxt = []
            for y in frontier:
                if self.eval(psi, y) is not F:
                    return False
                for _, z in self.successors(y):
                    k = self.key(z)
                    if k not in seen:
                        seen.add(k)
                        nxt.append(z)
            if not nxt:
                return True
            frontier = nxt
        return False


def eval_bounded(l: LassoTrace, f: Formula, horizon: int = 12) -> Bounded3:
    if horizon < len(l.prefix) + len(l.period):
        raise OracleError(
            f"horizon {horizon} is smaller than one prefix plus period ({len(l.prefix) + len(l.period)})"
        )
    ev = _Evaluator(l.alphabet, l.period, horizon)
    return ev.eval(f, ev._drop_period_suffix(l.prefix))


# -- checks against a monitor --------------------------------------------


@dataclass
class FalsifyResult:
    status: str  # ok | confirmed | inconclusive-test | counterexample
    verdict: object
    witnesses: dict = field(default_factory=dict)
    counterexample: tuple | None = None

    @property
    def failed(self) -> bool:
        return self.status == "counterexample"


def _periods(letters, bound: int):
    for n in range(1, bound + 1):
        yield from product(letters, repeat=n)


def falsify_verdict(m, f: Formula, alpha: TraceAlphabet, u, period_bound: int = 3,
                    horizon: int = 12) -> FalsifyResult:
    """Try to refute the monitor's verdict after u with lassos u·v^ω.

    `m` is anything with a ``verdict_at(word)`` method whose result has a
    ``token`` of ``top``, ``unknown`` or ``bottom``.
    """
    u = tuple(u)
    verdict = m.verdict_at(u)
    token = verdict.token
    seen = {T: None, F: None}
    for v in _periods(alpha.letters, period_bound):
        r = eval_bounded(lasso(alpha, u, v), f, max(horizon, len(u) + len(v)))
        if not r.conclusive:
            continue
        if seen[r] is None:
            seen[r] = v
        if token == "top" and r is F:
            return FalsifyResult("counterexample", verdict, counterexample=(u, v))
        if token == "bottom" and r is T:
            return FalsifyResult("counterexample", verdict, counterexample=(u, v))
        if token == "unknown" and seen[T] and seen[F]:
            return FalsifyResult("confirmed", verdict, {"true": seen[T], "false": seen[F]})
    if token == "unknown":
        return FalsifyResult("inconclusive-test", verdict, {"true": seen[T], "false": seen[F]})
    return FalsifyResult("ok", verdict, {"true": seen[T], "false": seen[F]})


def lasso_class_invariance(f: Formula, alpha: TraceAlphabet, u, v, horizon: int = 12,
                           period_bound: int = 2):
    """None when the evaluator agrees on (u, p) and (v, p) for all small p,
    else the first disagreeing (p, result_u, result_v)."""
    if not equivalent(alpha, u, v):
        raise OracleError("inputs are not trace equivalent")
    for p in _periods(alpha.letters, period_bound):
        h = max(horizon, len(u) + len(p), len(v) + len(p))
        ru = eval_bounded(lasso(alpha, u, p), f, h)
        rv = eval_bounded(lasso(alpha, v, p), f, h)
        if ru.conclusive and rv.conclusive and ru is not rv:
            return p, ru, rv
    return None
