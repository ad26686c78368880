"""Random formulas: trace-backend Büchi automaton vs the lasso evaluator.

    python3 scripts/fuzz_oracle.py --seed 0 --count 200 --lasso-len 2

Also compares the word and trace backends on alphabets without independence.
Exit status 1 if any mismatch was found.
"""
import argparse
import random
import sys
import time
from dataclasses import dataclass

from tracemon.automata import lasso_member
from tracemon.corpus import ABD, AB_IND, AB_SEQ
from tracemon.formula import Next, Not, Or, TT, Until, render
from tracemon.oracle import eval_bounded, lasso
from tracemon.trace_core import all_words
from tracemon.translate import ltl_to_nba, ltrl_to_nba


@dataclass
class FuzzConfig:
    seed: int = 0
    count: int = 200
    lasso_len: int = 2
    min_size: int = 4
    max_size: int = 10
    horizon: int = 10


def random_formula(rng, letters, n):
    if n <= 2:
        return Next(rng.choice(letters), TT()) if n == 2 or rng.random() < 0.7 else TT()
    kind = rng.choice(["not", "or", "next", "until", "until"])
    if kind == "not":
        return Not(random_formula(rng, letters, n - 1))
    if kind == "next":
        return Next(rng.choice(letters), random_formula(rng, letters, n - 1))
    k = rng.randint(1, n - 2)
    left, right = random_formula(rng, letters, k), random_formula(rng, letters, n - 1 - k)
    return Or(left, right) if kind == "or" else Until(left, right)


def run(cfg: FuzzConfig):
    rng = random.Random(cfg.seed)
    counts = {"checked": 0, "unknown": 0, "mismatch": 0}
    slowest = 0.0
    for _ in range(cfg.count):
        alpha = rng.choice([AB_IND, ABD, AB_SEQ])
        f = random_formula(rng, alpha.letters, rng.randint(cfg.min_size, cfg.max_size))
        t0 = time.perf_counter()
        nba = ltrl_to_nba(f, alpha)
        slowest = max(slowest, time.perf_counter() - t0)
        word_nba = None if alpha.independence else ltl_to_nba(f, alpha)
        for u in all_words(alpha.letters, cfg.lasso_len):
            for v in all_words(alpha.letters, cfg.lasso_len, 1):
                got = lasso_member(nba, u, v)
                counts["checked"] += 1
                if word_nba is not None and lasso_member(word_nba, u, v) != got:
                    counts["mismatch"] += 1
                    print(f"backend mismatch {render(f)} {alpha} u={u} v={v}")
                r = eval_bounded(lasso(alpha, u, v), f, max(cfg.horizon, len(u) + len(v)))
                if not r.conclusive:
                    counts["unknown"] += 1
                elif (r.value == "true") != got:
                    counts["mismatch"] += 1
                    print(f"oracle mismatch {render(f)} {alpha} u={u} v={v} oracle={r} automaton={got}")
    print(" ".join(f"{k}={v}" for k, v in counts.items()), f"slowest_translation={slowest:.2f}s")
    return counts


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--lasso-len", type=int, default=2)
    args = ap.parse_args(argv)
    counts = run(FuzzConfig(args.seed, args.count, args.lasso_len))
    return 1 if counts["mismatch"] else 0


if __name__ == "__main__":
    sys.exit(main())
