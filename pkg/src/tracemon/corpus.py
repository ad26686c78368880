"""Formula corpus and reference alphabets used by the acceptance suite and scripts."""
from .trace_core import make_alphabet

# over letters a, b; covers <x>, negation, disjunction and until nested to depth 2
CORPUS = [
    "<a>tt",
    "<b>tt",
    "<a><b>tt",
    "!<a>tt",
    "<a>tt | <b>tt",
    "F <b>tt",
    "G !<a>tt",
    "<a>tt U <b>tt",
    "!<b>tt U <a>tt",
    "F G <a>tt",
    "G F <b>tt",
    "F (<a>tt & F <b>tt)",
    "(<a>tt U <b>tt) U <a><a>tt",
    "<a>(<b>tt U <a>tt)",
    "!(<a>tt U (<b>tt U <a>tt))",
    "<b>tt | F <a><a>tt",
    "G (<a>tt | <b>tt)",
    "<a>tt U (!<a>tt & <b>tt)",
    "F (<a>tt & <b>tt)",
    "G (!<a>tt | F <b>tt)",
]

AB_SEQ = make_alphabet("ab")
AB_IND = make_alphabet("ab", [("a", "b")])
ABD = make_alphabet("abd", [("a", "b")])


def f_nested(depth: int, letter: str = "b") -> str:
    """F (F (... <letter>tt)) with `depth` until operators."""
    text = f"<{letter}>tt"
    for _ in range(depth):
        text = f"F ({text})"
    return text
