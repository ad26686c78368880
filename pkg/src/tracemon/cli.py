"""Command-line front end.

Exit codes: 0 ok, 1 input error, 2 translation budget exhausted, 3 stopped on
a final verdict (``run --stop-on-final``), 4 words inequivalent (``equiv``).
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from .automata import BudgetExceeded, PipelineIntegrityError, Verdict, dot_export
from .formula import Formula, FormulaSyntaxError, Not, parse, until_nesting_depth, validate_letters
from .monitor import (
    MonitorFormatError, build_monitor, build_stages, dumps,
    forgettable_past_check, load, verdict_invariance_check,
)
from .oracle import OracleError, eval_bounded, falsify_verdict, lasso
from .trace_core import (
    TraceAlphabet, TraceError, all_words, load_alphabet, projection_witness,
)
from .translate import TranslationError, check_trace_closed_bounded

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_FINAL, EXIT_INEQUIVALENT = 0, 1, 2, 3, 4
STAGES = ("nba-pos", "nba-neg", "nfa-pos", "nfa-neg", "dfa-pos", "dfa-neg", "fsm")


class InputError(Exception):
    pass


@dataclass
class CliConfig:
    alphabet: TraceAlphabet | None
    formula: Formula | None
    backend: str = "trace"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def parse_word(alpha: TraceAlphabet, text: str) -> tuple[str, ...]:
    """Whitespace/comma separated letters, or a compact string when letters are single characters."""
    text = text.strip()
    if text in ("", "-", "ε", "eps"):
        return ()
    if any(c in text for c in " ,"):
        word = tuple(t for t in text.replace(",", " ").split() if t)
    elif all(len(x) == 1 for x in alpha.letters):
        word = tuple(text)
    else:
        word = (text,)
    alpha.check_word(word)
    return word


def _config(args, need_formula=True) -> CliConfig:
    alpha = load_alphabet(args.alphabet)
    formula = None
    if need_formula:
        text = getattr(args, "formula", None)
        path = getattr(args, "formula_file", None)
        if (text is None) == (path is None):
            raise InputError("give exactly one of FORMULA or --formula-file")
        if path is not None:
            lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
            if len(lines) != 1:
                raise InputError("formula file must contain exactly one non-empty line")
            text = lines[0]
        formula = parse(text)
        unknown = validate_letters(formula, alpha)
        if unknown:
            raise InputError("unknown letter " + ", ".join(unknown))
    return CliConfig(alpha, formula, getattr(args, "backend", "trace"))


def _stats(monitor, out: TextIO) -> None:
    for k, v in monitor.stats.items():
        print(f"{k}={v}", file=out)


def cmd_compile(args) -> int:
    cfg = _config(args)
    m = build_monitor(cfg.formula, cfg.alphabet, cfg.backend)
    text = dumps(m)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    _stats(m, sys.stderr)
    return EXIT_OK


def cmd_run(args) -> int:
    m = load(args.monitor)
    session = m.session()
    out = sys.stdout
    print(session.verdict.token, file=out, flush=True)
    if args.stop_on_final and session.verdict is not Verdict.UNKNOWN:
        return EXIT_FINAL
    src = open(args.events, encoding="utf-8") if args.events not in (None, "-") else sys.stdin
    try:
        for lineno, raw in enumerate(src, 1):
            event = raw.strip()
            if not event:
                continue
            if event not in m.letters:
                print(f"line {lineno}: unknown letter {event!r}", file=sys.stderr)
                return EXIT_INPUT
            verdict = session.step(event)
            print(verdict.token, file=out, flush=True)
            if args.stop_on_final and verdict is not Verdict.UNKNOWN:
                return EXIT_FINAL
    finally:
        if src is not sys.stdin:
            src.close()
    return EXIT_OK


def cmd_equiv(args) -> int:
    alpha = load_alphabet(args.alphabet)
    u, v = parse_word(alpha, args.u), parse_word(alpha, args.v)
    wit = projection_witness(alpha, u, v)
    if wit is None:
        print("equivalent")
        return EXIT_OK
    clique, pu, pv = wit
    names = ",".join(x for x in alpha.letters if x in clique)
    print(f"inequivalent clique={{{names}}} u={alpha.render(pu) or 'ε'} v={alpha.render(pv) or 'ε'}")
    return EXIT_INEQUIVALENT


def cmd_check(args) -> int:
    cfg = _config(args)
    alpha, f = cfg.alphabet, cfg.formula
    m = build_monitor(f, alpha, cfg.backend)
    rows = {name: [0, 0, 0, 0] for name in ("invariance", "forgettable-past", "falsify", "trace-closure")}
    failures = []
    for w in all_words(alpha.letters, args.max_len):
        r = rows["invariance"]
        r[0] += 1
        bad = verdict_invariance_check(m, alpha, w)
        if bad is None:
            r[1] += 1
        else:
            r[3] += 1
            failures.append(f"invariance: {alpha.render(w) or 'ε'} vs {bad} "
                            f"({m.verdict_at(w).token} vs {m.verdict_at(bad).token})")
        r = rows["forgettable-past"]
        r[0] += 1
        bad = forgettable_past_check(m, alpha, w)
        if bad is None:
            r[1] += 1
        else:
            r[3] += 1
            failures.append(f"forgettable-past: {alpha.render(w) or 'ε'} vs {bad}")
        r = rows["falsify"]
        r[0] += 1
        res = falsify_verdict(m, f, alpha, w, args.period_bound, args.horizon)
        if res.failed:
            r[3] += 1
            u, v = res.counterexample
            failures.append(f"falsify: verdict {res.verdict.token} after {alpha.render(u) or 'ε'}, "
                            f"lasso period {alpha.render(v)}")
        elif res.status == "inconclusive-test":
            r[2] += 1
        else:
            r[1] += 1
    r = rows["trace-closure"]
    r[0] += 1
    bad = check_trace_closed_bounded(m.pos.nfa, alpha, args.max_len)
    if bad is None:
        r[1] += 1
    else:
        r[3] += 1
        failures.append(f"trace-closure: {bad[0]} vs {bad[1]}")
    print(f"{'check':<18}{'run':>6}{'confirmed':>11}{'inconclusive':>14}{'failed':>8}")
    for name, (run, ok, inc, fail) in rows.items():
        print(f"{name:<18}{run:>6}{ok:>11}{inc:>14}{fail:>8}")
    for line in failures[: args.show]:
        print(line)
    return EXIT_OK if not failures else EXIT_INPUT


def cmd_export(args) -> int:
    stage = args.stage
    if stage not in STAGES:
        raise InputError(f"invalid stage {stage!r}; choose from {', '.join(STAGES)}")
    if args.monitor:
        if stage != "fsm":
            raise InputError("a monitor file only carries the fsm stage")
        machine = load(args.monitor).machine
    else:
        if not args.alphabet:
            raise InputError("need --monitor or an alphabet file and formula")
        cfg = _config(args)
        if stage == "fsm":
            machine = build_monitor(cfg.formula, cfg.alphabet, cfg.backend).machine
        else:
            kind, polarity = stage.split("-")
            f = cfg.formula if polarity == "pos" else Not(cfg.formula)
            st = build_stages(f, cfg.alphabet, cfg.backend)
            machine = getattr(st, kind)
    text = dot_export(machine, stage.replace("-", "_"))
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    return EXIT_OK


def cmd_eval(args) -> int:
    cfg = _config(args)
    u = parse_word(cfg.alphabet, args.prefix)
    v = parse_word(cfg.alphabet, args.period)
    horizon = max(args.horizon, len(u) + len(v)) if args.grow_horizon else args.horizon
    result = eval_bounded(lasso(cfg.alphabet, u, v), cfg.formula, horizon)
    print(f"{result.value} horizon={horizon}")
    return EXIT_OK


def _formula_args(p):
    p.add_argument("alphabet", help="alphabet file")
    p.add_argument("formula", nargs="?", help="formula text")
    p.add_argument("--formula-file", help="file holding the formula on one line")
    p.add_argument("--backend", choices=("trace", "word"), default="trace")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tracemon", description="Three-valued monitors for LTL over Mazurkiewicz traces")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="build a monitor file")
    _formula_args(p)
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("run", help="stream events through a monitor")
    p.add_argument("monitor")
    p.add_argument("--events", help="event file (default stdin)")
    p.add_argument("--stop-on-final", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("equiv", help="decide trace equivalence of two words")
    p.add_argument("alphabet")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("check", help="validate a monitor against independent checks")
    _formula_args(p)
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--period-bound", type=int, default=2)
    p.add_argument("--horizon", type=int, default=12)
    p.add_argument("--show", type=int, default=10, help="failure lines to print")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", help="write a pipeline stage as Graphviz DOT")
    p.add_argument("alphabet", nargs="?")
    p.add_argument("formula", nargs="?")
    p.add_argument("--formula-file")
    p.add_argument("--backend", choices=("trace", "word"), default="trace")
    p.add_argument("--monitor", help="monitor file (fsm stage only)")
    p.add_argument("--stage", default="fsm")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("eval", help="evaluate a formula on the lasso trace prefix·period^ω")
    _formula_args(p)
    p.add_argument("--prefix", default="")
    p.add_argument("--period", required=True)
    p.add_argument("--horizon", type=int, default=12)
    p.add_argument("--grow-horizon", action="store_true",
                   help="raise the horizon to |prefix|+|period| when smaller")
    p.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        f = getattr(args, "formula", None)
        depth = ""
        try:
            depth = f" until_depth={until_nesting_depth(parse(f))}" if f else ""
        except FormulaSyntaxError:
            pass
        print(f"budget exceeded: {exc}{depth}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, TraceError, FormulaSyntaxError, TranslationError, MonitorFormatError,
            OracleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PipelineIntegrityError as exc:
        print(f"pipeline integrity error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
