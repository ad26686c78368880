"""Three-valued monitors: formula -> NBA -> per-state emptiness -> NFA -> DFA,
for the formula and its negation, then the minimized product Moore machine.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .automata import (
    Aba, Dfa, MooreMachine, Nba, Nfa, PipelineIntegrityError, Verdict,
    determinize, minimize_moore, per_state_nonempty, product_moore, to_finite_acceptor,
)
from .formula import Formula, Not, parse, render, until_nesting_depth
from .trace_core import BoundExceeded, TraceAlphabet, TraceError, equivalence_class
from .translate import TranslationBackend, TranslationError, ltrl_to_aba, state_budget
from .automata import miyano_hayashi, reduce_aba


@dataclass
class Stages:
    """Intermediate automata for one polarity (the formula or its negation)."""

    nba: Nba
    nonempty: dict[int, bool]
    nfa: Nfa
    dfa: Dfa
    aba: Aba | None = None
    aba_raw_states: int | None = None

    def counts(self) -> dict[str, int]:
        out = {"nba": self.nba.n, "nfa_accepting": len(self.nfa.accepting), "dfa": self.dfa.n}
        if self.aba is not None:
            out = {"aba_raw": self.aba_raw_states, "aba": self.aba.n, **out}
        return out


def build_stages(f: Formula, alpha: TraceAlphabet, backend: str = "trace",
                 budget: int | None = None) -> Stages:
    budget = state_budget() if budget is None else budget
    aba = raw = None
    if backend == "trace":
        raw = ltrl_to_aba(f, alpha, budget)
        aba = reduce_aba(raw)
        nba = miyano_hayashi(aba, budget)
    else:
        nba = TranslationBackend(backend, alpha).translate(f, budget)
    nonempty = per_state_nonempty(nba)
    nfa = to_finite_acceptor(nba, nonempty)
    dfa = determinize(nfa)
    return Stages(nba, nonempty, nfa, dfa, aba, raw.n if aba is not None else None)


def check_sinks(m: MooreMachine) -> tuple[int, str] | None:
    """First (state, letter) where a top/bottom state leaves its verdict, else None."""
    for q in range(m.n):
        if m.output[q] is Verdict.UNKNOWN:
            continue
        for a in m.letters:
            if m.output[m.delta[q][a]] is not m.output[q]:
                return q, a
    return None


@dataclass
class Monitor:
    machine: MooreMachine
    formula: str = ""
    alphabet: TraceAlphabet | None = None
    backend: str = "trace"
    pos: Stages | None = field(default=None, repr=False)
    neg: Stages | None = field(default=None, repr=False)
    stats: dict = field(default_factory=dict)

    @property
    def letters(self) -> tuple[str, ...]:
        return self.machine.letters

    def _check_word(self, u: Iterable[str]) -> list[str]:
        u = list(u)
        for x in u:
            if x not in self.machine.letters:
                raise TraceError(f"unknown letter {x}")
        return u

    def verdict_at(self, u: Sequence[str]) -> Verdict:
        return self.machine.output_of(self._check_word(u))

    def session(self) -> "Session":
        return Session(self)

    def nfa_verdict(self, u: Sequence[str]) -> Verdict:
        """Verdict straight from the two NFAs, bypassing determinization and product."""
        if self.pos is None or self.neg is None:
            raise ValueError("monitor has no pipeline stages (loaded from file?)")
        u = self._check_word(u)
        if not self.neg.nfa.accepts(u):
            return Verdict.TOP
        if not self.pos.nfa.accepts(u):
            return Verdict.BOTTOM
        return Verdict.UNKNOWN


@dataclass
class Session:
    """One monitored event stream; advance with `step`."""

    monitor: Monitor
    state: int = -1
    consumed: int = 0

    def __post_init__(self):
        if self.state < 0:
            self.state = self.monitor.machine.initial

    @property
    def verdict(self) -> Verdict:
        return self.monitor.machine.output[self.state]

    def step(self, event: str) -> Verdict:
        m = self.monitor.machine
        if event not in m.letters:
            raise TraceError(f"unknown letter {event}")
        self.state = m.delta[self.state][event]
        self.consumed += 1
        return self.verdict


def stream_step(session: Session, event: str) -> Verdict:
    return session.step(event)


def build_monitor(f: Formula | str, alpha: TraceAlphabet, backend: str = "trace",
                  budget: int | None = None) -> Monitor:
    if isinstance(f, str):
        f = parse(f)
    budget = state_budget() if budget is None else budget
    pos = build_stages(f, alpha, backend, budget)
    neg = build_stages(Not(f), alpha, backend, budget)
    product = product_moore(pos.dfa, neg.dfa)
    machine = minimize_moore(product)
    bad = check_sinks(machine)
    if bad is not None:
        raise PipelineIntegrityError(f"final verdict state {bad[0]} changes on letter {bad[1]}")
    stats = {"until_depth": until_nesting_depth(f)}
    for tag, st in (("pos", pos), ("neg", neg)):
        for k, v in st.counts().items():
            stats[f"{k}_{tag}"] = v
    stats["product"] = product.n
    stats["fsm"] = machine.n
    return Monitor(machine, render(f), alpha, backend, pos, neg, stats)


def verdict_at(m: Monitor, u: Sequence[str]) -> Verdict:
    return m.verdict_at(u)


def verdict_invariance_check(m: Monitor, alpha: TraceAlphabet, u: Sequence[str], bound: int = 5000):
    """None if every word equivalent to u gets the same verdict, else the first one that doesn't."""
    expected = m.verdict_at(u)
    for v in sorted(equivalence_class(alpha, u, bound)):
        if m.verdict_at(v) is not expected:
            return v
    return None


def dfa_classes(d: Dfa) -> list[int]:
    """Myhill-Nerode class of every DFA state (coarsest acceptance-respecting congruence)."""
    blocks = [int(q in d.accepting) for q in range(d.n)]
    while True:
        sig = [(blocks[q], tuple(blocks[d.delta[q][a]] for a in d.letters)) for q in range(d.n)]
        ids: dict = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        if len(ids) == len(set(blocks)):
            return new
        blocks = new


def forgettable_past_check(m: Monitor, alpha: TraceAlphabet, u: Sequence[str], bound: int = 5000):
    """None when every v ≈ u reaches, in both determinized automata, a state with
    the same residual language as u does; else the first offending v."""
    if m.pos is None or m.neg is None:
        raise ValueError("monitor has no pipeline stages")
    checks = []
    for st in (m.pos, m.neg):
        cls = dfa_classes(st.dfa)
        checks.append((st.dfa, cls, cls[st.dfa.run(u)]))
    for v in sorted(equivalence_class(alpha, u, bound)):
        for dfa, cls, want in checks:
            if cls[dfa.run(v)] != want:
                return v
    return None


# -- serialization ---------------------------------------------------------


class MonitorFormatError(ValueError):
    pass


def dumps(m: Monitor | MooreMachine) -> str:
    machine = m.machine if isinstance(m, Monitor) else m
    out = io.StringIO()
    out.write("monitor v1\n")
    out.write("letters: " + " ".join(machine.letters) + "\n")
    out.write(f"states: {machine.n}\n")
    out.write(f"initial: {machine.initial}\n")
    for q in range(machine.n):
        out.write(f"state {q} output {machine.output[q].token}\n")
    for q in range(machine.n):
        for a in machine.letters:
            out.write(f"trans {q} {a} {machine.delta[q][a]}\n")
    return out.getvalue()


def loads(text: str) -> Monitor:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "monitor v1":
        raise MonitorFormatError("missing 'monitor v1' header")
    letters = None
    n = initial = None
    outputs: dict[int, Verdict] = {}
    delta: dict[int, dict[str, int]] = {}
    for lineno, raw in enumerate(lines[1:], 2):
        parts = raw.split()
        try:
            if parts[0] == "letters:":
                letters = tuple(parts[1:])
            elif parts[0] == "states:":
                n = int(parts[1])
            elif parts[0] == "initial:":
                initial = int(parts[1])
            elif parts[0] == "state" and parts[2] == "output":
                outputs[int(parts[1])] = Verdict.from_token(parts[3])
            elif parts[0] == "trans":
                delta.setdefault(int(parts[1]), {})[parts[2]] = int(parts[3])
            else:
                raise MonitorFormatError(f"line {lineno}: unrecognized {raw!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, MonitorFormatError):
                raise
            raise MonitorFormatError(f"line {lineno}: malformed {raw!r}") from exc
    if letters is None or n is None or initial is None:
        raise MonitorFormatError("missing letters, states or initial line")
    try:
        machine = MooreMachine(
            letters, n, initial,
            tuple(delta.get(q, {}) for q in range(n)),
            tuple(outputs[q] for q in range(n)),
        )
    except (KeyError, ValueError) as exc:
        raise MonitorFormatError(f"incomplete machine: {exc}") from exc
    if not 0 <= initial < n or any(not 0 <= r < n for row in machine.delta for r in row.values()):
        raise MonitorFormatError("state index out of range")
    return Monitor(machine)


def save(m: Monitor, path: str | Path) -> None:
    Path(path).write_text(dumps(m), encoding="utf-8", newline="\n")


def load(path: str | Path) -> Monitor:
    return loads(Path(path).read_text(encoding="utf-8"))
