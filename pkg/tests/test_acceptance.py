"""Acceptance criteria, one check per criterion.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion is
printed in the terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""
import random
import subprocess
import sys
import time
from collections import Counter
from functools import lru_cache
from pathlib import Path

import pytest

from tracemon.automata import minimize_moore, moore_isomorphic, dot_export
from tracemon.corpus import ABD, AB_IND, AB_SEQ, CORPUS
from tracemon.formula import Next, Not, Or, TT, Until, parse, size
from tracemon.monitor import build_monitor, check_sinks, dumps, verdict_invariance_check
from tracemon.oracle import falsify_verdict
from tracemon.trace_core import all_words, equivalent, run_map, trace_of_word
from tracemon.translate import check_trace_closed_bounded

ROOT = Path(__file__).resolve().parent.parent
ALPHABETS = {"ab|aIb": AB_IND, "abd|aIb": ABD}
RESULTS: list[str] = []


@lru_cache(maxsize=None)
def monitor(text, alpha, backend="trace"):
    return build_monitor(text, alpha, backend)


def report(number, name, ok, detail, seconds):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({name}): {detail} [{seconds:.1f}s]"
    RESULTS.append(line)
    print(line)
    return ok


def random_formula(rng, letters, budget):
    """Random formula with at most `budget` nodes."""
    if budget <= 2:
        return Next(rng.choice(letters), TT()) if budget == 2 and rng.random() < 0.8 else TT()
    kind = rng.choice(["not", "next", "or", "until", "until"])
    if kind == "not":
        return Not(random_formula(rng, letters, budget - 1))
    if kind == "next":
        return Next(rng.choice(letters), random_formula(rng, letters, budget - 1))
    k = rng.randint(1, budget - 2)
    left, right = random_formula(rng, letters, k), random_formula(rng, letters, budget - 1 - k)
    return Or(left, right) if kind == "or" else Until(left, right)


# -- criteria ----------------------------------------------------------------


def criterion_1(pairs_per_alphabet=120, seed=2024):
    t0 = time.perf_counter()
    rng = random.Random(seed)
    checked, failures = 0, []
    for name, alpha in ALPHABETS.items():
        for _ in range(pairs_per_alphabet):
            f = random_formula(rng, alpha.letters, rng.randint(2, 6))
            assert size(f) <= 6
            u = tuple(rng.choice(alpha.letters) for _ in range(rng.randint(0, 7)))
            bad = verdict_invariance_check(monitor(str(f), alpha), alpha, u)
            checked += 1
            if bad is not None:
                failures.append((name, str(f), u, bad))
    ok = checked >= 200 and not failures
    return report(1, "verdict invariance", ok, f"{checked} random pairs, {len(failures)} violations {failures[:3]}",
                  time.perf_counter() - t0)


def criterion_2():
    t0 = time.perf_counter()
    bad = [f for f in CORPUS
           if not moore_isomorphic(monitor(f, AB_SEQ).machine, monitor(f, AB_SEQ, "word").machine)]
    return report(2, "coincidence with word monitors at I=0", not bad,
                  f"{len(CORPUS) - len(bad)}/{len(CORPUS)} isomorphic {bad}", time.perf_counter() - t0)


def criterion_3(max_len=6):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for alpha in (AB_SEQ, *ALPHABETS.values()):
        for f in CORPUS:
            m = monitor(f, alpha)
            for u in all_words(alpha.letters, max_len):
                checked += 1
                if m.verdict_at(u) is not m.nfa_verdict(u):
                    bad.append((f, u))
    return report(3, "machine output equals NFA rule", not bad, f"{checked} (formula, word) checks, {len(bad)} mismatches",
                  time.perf_counter() - t0)


def criterion_4(max_len=5, period_bound=3, horizon=12):
    t0 = time.perf_counter()
    stats = Counter()
    failures = []
    for alpha in (AB_SEQ, *ALPHABETS.values()):
        for f in CORPUS:
            m, tree = monitor(f, alpha), parse(f)
            for u in all_words(alpha.letters, max_len):
                r = falsify_verdict(m, tree, alpha, u, period_bound, horizon)
                stats[r.status] += 1
                if r.failed:
                    failures.append((f, u, r.counterexample))
    unknown = stats["confirmed"] + stats["inconclusive-test"]
    rate = stats["confirmed"] / unknown if unknown else 1.0
    ok = not failures and rate >= 0.8
    return report(4, "soundness against lasso evaluator", ok,
                  f"{sum(stats.values())} verdicts, {len(failures)} refuted, "
                  f"{stats['confirmed']}/{unknown} ? confirmed ({rate:.0%}), "
                  f"{stats['inconclusive-test']} inconclusive", time.perf_counter() - t0)


def criterion_5(max_len=6):
    t0 = time.perf_counter()
    bad = []
    for alpha in ALPHABETS.values():
        for f in CORPUS:
            w = check_trace_closed_bounded(monitor(f, alpha).pos.nfa, alpha, max_len)
            if w is not None:
                bad.append((f, str(alpha), w))
    return report(5, "trace closure of the prefix automaton", not bad,
                  f"{len(CORPUS) * len(ALPHABETS)} automata up to length {max_len}, {len(bad)} violations {bad[:3]}",
                  time.perf_counter() - t0)


def criterion_6():
    t0 = time.perf_counter()
    built = [monitor(f, a) for a in (AB_SEQ, *ALPHABETS.values()) for f in CORPUS]
    built += [monitor(f, AB_SEQ, "word") for f in CORPUS]
    bad = [m.formula for m in built if check_sinks(m.machine) is not None]
    return report(6, "final verdicts are sinks", not bad, f"{len(built)} monitors, {len(bad)} leaks",
                  time.perf_counter() - t0)


def criterion_7():
    t0 = time.perf_counter()
    t = trace_of_word(ABD, "abdbabd")
    facts = {
        "abdbabd in lin(T)": run_map(t, "abdbabd") is not None,
        "adabbbd not in lin(T)": run_map(t, "adabbbd") is None,
        "abdab ~ badab": equivalent(ABD, "abdab", "badab"),
    }
    return report(7, "abd trace regression", all(facts.values()),
                  ", ".join(f"{k}: {v}" for k, v in facts.items()), time.perf_counter() - t0)


def criterion_8():
    t0 = time.perf_counter()
    bad = []
    for alpha in (AB_SEQ, *ALPHABETS.values()):
        for f in CORPUS:
            m = monitor(f, alpha)
            if not moore_isomorphic(minimize_moore(m.machine), m.machine):
                bad.append(("reminimize", f))
            again = build_monitor(f, alpha)
            if dumps(again) != dumps(m) or dot_export(again.machine) != dot_export(m.machine):
                bad.append(("bytes", f))
    return report(8, "minimality and deterministic output", not bad, f"{3 * len(CORPUS)} monitors, {len(bad)} problems {bad[:3]}",
                  time.perf_counter() - t0)


def criterion_9():
    t0 = time.perf_counter()
    r = subprocess.run([sys.executable, str(ROOT / "scripts" / "size_growth.py"), "--max-depth", "3"],
                       capture_output=True, text=True, timeout=300)
    rows = [ln for ln in r.stdout.splitlines()[2:] if ln.strip()]
    ok = r.returncode in (0, 2) and bool(rows)
    for ln in r.stdout.splitlines():
        print("    " + ln)
    return report(9, "size growth report (observation)", ok,
                  f"exit {r.returncode}, {len(rows)} rows", time.perf_counter() - t0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
