import pytest
from hypothesis import assume, given, settings
import hypothesis.strategies as st

from tracemon.corpus import ABD, AB_IND, AB_SEQ
from tracemon.formula import parse
from tracemon.monitor import build_monitor
from tracemon.oracle import (
    Bounded3, LassoTrace, OracleError, eval_bounded, falsify_verdict, lasso, lasso_class_invariance,
)
from tracemon.trace_core import equivalence_class
from strategies import formulas, words

T, F, U = Bounded3.TRUE, Bounded3.FALSE, Bounded3.UNKNOWN

# (alphabet, prefix, period, formula, truth), each worked out by hand on the poset
SOUNDNESS = [
    (AB_IND, "", "a", "<a>tt", T),
    (AB_IND, "b", "a", "<a>tt", T),            # a1 is minimal although b comes first in the word
    (AB_SEQ, "b", "a", "<a>tt", F),            # same word, no independence
    (AB_IND, "", "b", "<a>tt", F),
    (AB_IND, "", "ab", "<a><b>tt", T),
    (AB_IND, "", "ab", "<b><a>tt", T),
    (AB_IND, "", "b", "F <a>tt", F),
    (AB_IND, "b", "a", "G <a>tt", T),
    (AB_IND, "", "b", "G !<a>tt", T),
    (AB_IND, "", "ab", "G F <b>tt", T),
    (AB_IND, "b", "a", "F G <b>tt", F),
    (AB_IND, "", "a", "tt U <b>tt", F),
    (AB_SEQ, "a", "a", "tt U <b>tt", F),
    (ABD, "", "abd", "<d>tt", F),
    (ABD, "ab", "d", "<d>tt", F),
    (ABD, "ab", "d", "<a><b><d>tt", T),
    # configuration until: {b1} lies below {a1,b1} and has no enabled b, so this is false
    # even though the chain through {a1} would satisfy it
    (ABD, "ab", "d", "<b>tt U <d>tt", F),
    (ABD, "ab", "d", "(<a>tt | <b>tt) U <d>tt", T),
    (ABD, "ab", "d", "F <d>tt", T),
    (ABD, "", "d", "<a>tt", F),
    (ABD, "ab", "d", "G (<a>tt | <b>tt | <d>tt)", T),
    (ABD, "", "abd", "G F <d>tt", T),
    (ABD, "", "abd", "F G !<d>tt", F),
    (ABD, "d", "ab", "<a>tt", F),
    (ABD, "d", "ab", "<d><a><b>tt", T),
    (ABD, "a", "b", "<a>tt U <d>tt", F),
]


@pytest.mark.parametrize("alpha, u, v, text, truth", SOUNDNESS)
def test_soundness_suite(alpha, u, v, text, truth):
    assert eval_bounded(lasso(alpha, u, v), parse(text), 12) is truth


def test_suite_size():
    assert len(SOUNDNESS) >= 25


def test_equivalent_prefixes_same_residue():
    f = parse("<b>tt U <d>tt")
    assert eval_bounded(lasso(ABD, "ba", "d"), f) is F


def test_lasso_validation():
    with pytest.raises(OracleError):
        lasso(AB_IND, "a", "")
    with pytest.raises(OracleError):
        eval_bounded(lasso(AB_IND, "abab", "ab"), parse("tt"), 5)


def test_kleene_ops():
    assert (T | U) is T and (F | U) is U and (F & U) is F and (T & U) is U
    assert ~U is U and ~T is F


@given(formulas("ab", 5), words("ab", 3), words("ab", 2, 1))
@settings(max_examples=120, deadline=None)
def test_horizon_monotone(f, u, v):
    l = lasso(AB_IND, u, v)
    base = len(u) + len(v)
    small, big = eval_bounded(l, f, base), eval_bounded(l, f, base + 6)
    if small.conclusive:
        assert big is small


@given(formulas("abd", 4), words("abd", 4), words("abd", 2, 1))
@settings(max_examples=120, deadline=None)
def test_evaluator_trace_invariant(f, u, v):
    for u2 in sorted(equivalence_class(ABD, u))[:3]:
        a, b = eval_bounded(lasso(ABD, u, v), f), eval_bounded(lasso(ABD, u2, v), f)
        if a.conclusive and b.conclusive:
            assert a is b


@pytest.mark.parametrize("alpha, u, v, text, p", [
    (AB_IND, "ab", "ba", "<a><b>tt", "a"),
    (AB_IND, "ab", "ab", "<a>tt", "b"),
    (ABD, "abd", "bad", "F <d>tt", "d"),
])
def test_lasso_class_invariance(alpha, u, v, text, p):
    assert lasso_class_invariance(parse(text), alpha, u, v) is None
    f = parse(text)
    assert eval_bounded(lasso(alpha, u, p), f) is eval_bounded(lasso(alpha, v, p), f)


def test_lasso_class_invariance_rejects_inequivalent():
    with pytest.raises(OracleError):
        lasso_class_invariance(parse("tt"), ABD, "ad", "da")


def test_falsify_examples():
    m = build_monitor("F <b>tt", AB_SEQ)
    assert falsify_verdict(m, parse("F <b>tt"), AB_SEQ, "b", 2).status == "ok"
    m = build_monitor("G !<a>tt", AB_SEQ)
    assert falsify_verdict(m, parse("G !<a>tt"), AB_SEQ, "a", 2).status == "ok"
    m = build_monitor("<a>tt", AB_IND)
    r = falsify_verdict(m, parse("<a>tt"), AB_IND, "b", 1)
    assert r.status == "confirmed"
    assert r.witnesses == {"true": ("a",), "false": ("b",)}


def test_falsify_catches_wrong_monitor():
    # a word-semantics monitor says bottom after b, but b·a^ω satisfies <a>tt over traces
    m = build_monitor("<a>tt", AB_IND, backend="word")
    r = falsify_verdict(m, parse("<a>tt"), AB_IND, "b", 1)
    assert r.failed and r.counterexample == (("b",), ("a",))
