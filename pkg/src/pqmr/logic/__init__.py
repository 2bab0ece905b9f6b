from .catalog import PAIR_THEORIES, THEORIES, Axiom, axiom_catalog, named_axioms
from .parser import ParseError, parse, parse_term, to_text
from .semantics import EvaluationError, counterexample, evaluate
from .syntax import (
    And, Eq, Exists, Forall, Formula, Implies, InS, InSum, Mul, Neg, Not, One, Or, Term, Var,
    Zero, free_vars, is_horn_geometric, is_pp, is_sentence,
)

__all__ = [
    "And", "Axiom", "Eq", "EvaluationError", "Exists", "Forall", "Formula", "Implies", "InS",
    "InSum", "Mul", "Neg", "Not", "One", "Or", "PAIR_THEORIES", "ParseError", "THEORIES", "Term",
    "Var", "Zero", "axiom_catalog", "counterexample", "evaluate", "free_vars", "is_horn_geometric",
    "is_pp", "is_sentence", "named_axioms", "parse", "parse_term", "to_text",
]
