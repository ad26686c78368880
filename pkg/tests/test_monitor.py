import pytest
from hypothesis import given, settings

from tracemon.automata import Verdict, minimize_moore, moore_isomorphic
from tracemon.corpus import ABD, AB_IND, AB_SEQ, CORPUS
from tracemon.monitor import (
    MonitorFormatError, build_monitor, check_sinks, dumps, forgettable_past_check, load, loads,
    save, stream_step, verdict_at, verdict_invariance_check,
)
from tracemon.trace_core import all_words
from strategies import formulas, words

TOP, UNK, BOT = Verdict.TOP, Verdict.UNKNOWN, Verdict.BOTTOM


def outputs(m, ws):
    return [verdict_at(m, w) for w in ws]


def test_eventually_b():
    m = build_monitor("F <b>tt", AB_SEQ)
    assert m.machine.n == 2
    assert outputs(m, ["", "a", "aa", "b", "aab", "aaba"]) == [UNK, UNK, UNK, TOP, TOP, TOP]


def test_never_a():
    m = build_monitor("G !<a>tt", AB_SEQ)
    assert m.machine.n == 2
    assert outputs(m, ["", "b", "a", "ba", "bab"]) == [UNK, UNK, BOT, BOT, BOT]


def test_next_with_independence():
    m = build_monitor("<a>tt", AB_IND)
    assert outputs(m, ["", "b", "a", "bbb", "ba", "bbab"]) == [UNK, UNK, TOP, UNK, TOP, TOP]


def test_next_without_independence():
    m = build_monitor("<a>tt", AB_SEQ)
    assert outputs(m, ["b", "a"]) == [BOT, TOP]


def test_session():
    m = build_monitor("<a>tt", AB_IND)
    s = m.session()
    assert s.verdict is UNK
    assert [s.step("b"), stream_step(s, "a")] == [UNK, TOP]
    assert s.consumed == 2
    s = build_monitor("F <b>tt", AB_SEQ).session()
    assert [s.step("a") for _ in range(3)] == [UNK] * 3
    s = build_monitor("G !<a>tt", AB_SEQ).session()
    assert [s.step(x) for x in "abab"] == [BOT] * 4


def test_unknown_letter():
    m = build_monitor("F <b>tt", AB_SEQ)
    with pytest.raises(ValueError):
        m.verdict_at("c")
    with pytest.raises(ValueError):
        m.session().step("c")


def test_invariance_examples():
    m = build_monitor("<a><b>tt", AB_IND)
    assert verdict_invariance_check(m, AB_IND, "ab") is None
    w = build_monitor("<a>tt", AB_IND, backend="word")
    assert verdict_invariance_check(w, AB_IND, "ab") == "ba"
    s = build_monitor("<a>tt", AB_SEQ)
    assert all(verdict_invariance_check(s, AB_SEQ, u) is None for u in all_words("ab", 4))


def test_nfa_rule_matches_machine():
    m = build_monitor("(<a>tt U <b>tt) U <a><a>tt", ABD)
    for u in all_words(ABD.letters, 4):
        assert m.verdict_at(u) is m.nfa_verdict(u)


@pytest.mark.parametrize("text", CORPUS)
def test_corpus_sinks_and_forgettable_past(text):
    m = build_monitor(text, AB_IND)
    assert check_sinks(m.machine) is None
    assert all(forgettable_past_check(m, AB_IND, u) is None for u in all_words("ab", 4))


@given(formulas("ab", 4), words("ab", 6))
@settings(max_examples=100, deadline=None)
def test_random_invariance(f, u):
    m = build_monitor(f, AB_IND)
    assert verdict_invariance_check(m, AB_IND, u) is None


@given(formulas("ab", 4))
@settings(max_examples=60, deadline=None)
def test_impartial_and_minimal(f):
    m = build_monitor(f, AB_IND)
    assert check_sinks(m.machine) is None
    assert moore_isomorphic(minimize_moore(m.machine), m.machine)


def test_serialization_roundtrip(tmp_path):
    m = build_monitor("F (<a>tt & F <b>tt)", ABD)
    path = tmp_path / "m.mon"
    save(m, path)
    back = load(path)
    for u in all_words(ABD.letters, 6):
        assert back.verdict_at(u) is m.verdict_at(u)
    assert dumps(back) == dumps(m)
    assert dumps(build_monitor("F (<a>tt & F <b>tt)", ABD)) == dumps(m)


@pytest.mark.parametrize("text", [
    "",
    "monitor v2\n",
    "monitor v1\nletters: a\nstates: 1\ninitial: 0\n",
    "monitor v1\nletters: a\nstates: 1\ninitial: 0\nstate 0 output maybe\ntrans 0 a 0\n",
    "monitor v1\nletters: a\nstates: 1\ninitial: 0\nstate 0 output top\ntrans 0 a 4\n",
    "monitor v1\nletters: a\nstates: 1\ninitial: 3\nstate 0 output top\ntrans 0 a 0\n",
    "monitor v1\nbogus line\n",
])
def test_bad_monitor_files(text):
    with pytest.raises(MonitorFormatError):
        loads(text)


def test_stats_keys():
    m = build_monitor("F <b>tt", AB_SEQ)
    for k in ["until_depth", "nba_pos", "nba_neg", "nfa_accepting_pos", "dfa_pos", "dfa_neg", "fsm"]:
        assert k in m.stats
    assert m.stats["until_depth"] == 1 and m.stats["fsm"] == 2
