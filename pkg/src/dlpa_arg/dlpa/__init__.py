"""Star-free DL-PA with converse: syntax, builders, evaluator and surface syntax."""

from .checker import ModelChecker, evaluate, successors
from .parser import parse_formula, parse_program, parse_var, print_formula, print_program
from .syntax import (
    BOT, TOP, And, AssignFalse, AssignTrue, Atom, Bot, Box, Choice, Converse, Diamond, Formula,
    Iff, Implies, Not, Or, Program, Seq, Test, Top, Universe, Var, assigned_vars, att, aux, aw,
    conj, converse_pushdown, disj, in_, in_prime,
)

__all__ = [
    "ModelChecker",
    "evaluate",
    "successors",
    "parse_formula",
    "parse_program",
    "parse_var",
    "print_formula",
    "print_program",
    "BOT",
    "TOP",
    "And",
    "AssignFalse",
    "AssignTrue",
    "Atom",
    "Bot",
    "Box",
    "Choice",
    "Converse",
    "Diamond",
    "Formula",
    "Iff",
    "Implies",
    "Not",
    "Or",
    "Program",
    "Seq",
    "Test",
    "Top",
    "Universe",
    "Var",
    "assigned_vars",
    "att",
    "aux",
    "aw",
    "conj",
    "converse_pushdown",
    "disj",
    "in_",
    "in_prime",
]
