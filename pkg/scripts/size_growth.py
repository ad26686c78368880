"""Per-stage state counts against until nesting depth for a few formula families.

    python3 scripts/size_growth.py [--alphabet data/abd.alpha] [--max-depth 3]

Prints one row per (family, depth).  Exits 2 if the translation budget
(TRACEMON_STATE_BUDGET or --budget) runs out; rows finished so far are kept.
"""
import argparse
import sys
import time

from tracemon.automata import BudgetExceeded
from tracemon.corpus import ABD, f_nested
from tracemon.monitor import build_monitor
from tracemon.trace_core import load_alphabet


def f_chain(depth, letters="abd"):
    """F (<x0>tt & F (<x1>tt & ... F <x_{depth-1}>tt))."""
    text = f"F <{letters[(depth - 1) % len(letters)]}>tt"
    for i in reversed(range(depth - 1)):
        text = f"F (<{letters[i % len(letters)]}>tt & {text})"
    return text


def u_nest(depth, letters="abd"):
    text = f"<{letters[-1]}>tt"
    for i in reversed(range(depth)):
        text = f"<{letters[i % (len(letters) - 1)]}>tt U ({text})"
    return text


FAMILIES = {"F-nest": f_nested, "F-chain": f_chain, "U-nest": u_nest}
COLUMNS = ["aba_raw_pos", "aba_pos", "nba_pos", "dfa_pos", "aba_raw_neg", "nba_neg", "dfa_neg", "product", "fsm"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphabet")
    ap.add_argument("--max-depth", type=int, default=3)
    ap.add_argument("--budget", type=int)
    args = ap.parse_args(argv)
    alpha = load_alphabet(args.alphabet) if args.alphabet else ABD
    print(f"alphabet {alpha}")
    print(f"{'family':<8} {'depth':>5} {'U':>3} " + " ".join(f"{c:>11}" for c in COLUMNS) + f" {'secs':>6}  formula")
    for name, family in FAMILIES.items():
        for depth in range(1, args.max_depth + 1):
            text = family(depth)
            t0 = time.perf_counter()
            try:
                m = build_monitor(text, alpha, budget=args.budget)
            except BudgetExceeded as exc:
                print(f"{name:<8} {depth:>5} budget exceeded ({exc})  {text}")
                return 2
            s = m.stats
            cells = " ".join(f"{s[c]:>11}" for c in COLUMNS)
            print(f"{name:<8} {depth:>5} {s['until_depth']:>3} {cells} {time.perf_counter() - t0:>6.2f}  {text}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
