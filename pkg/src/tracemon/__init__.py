"""Three-valued runtime monitors for LTL over Mazurkiewicz traces."""
from .automata import BudgetExceeded, MooreMachine, PipelineIntegrityError, Verdict
from .formula import FormulaSyntaxError, parse, render
from .monitor import Monitor, Session, build_monitor, load, loads, save, dumps
from .oracle import Bounded3, eval_bounded, falsify_verdict, lasso
from .trace_core import (
    TraceAlphabet, TraceError, equivalent, foata_normal_form, load_alphabet,
    make_alphabet, maximal_d_cliques, parse_alphabet,
)
from .translate import translate

__all__ = [
    "BudgetExceeded", "MooreMachine", "PipelineIntegrityError", "Verdict",
    "FormulaSyntaxError", "parse", "render",
    "Monitor", "Session", "build_monitor", "load", "loads", "save", "dumps",
    "Bounded3", "eval_bounded", "falsify_verdict", "lasso",
    "TraceAlphabet", "TraceError", "equivalent", "foata_normal_form", "load_alphabet",
    "make_alphabet", "maximal_d_cliques", "parse_alphabet", "translate",
]
