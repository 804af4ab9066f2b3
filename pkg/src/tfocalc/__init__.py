"""Sequent calculi for first-order logic with generic term-forming operators."""

from .syntax import (
    BoundVar, Param, Tfo, Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists,
    Signature, ParseError, parse_formula, parse_term, print_formula, print_term,
    well_formed,
)
from .binding import substitute, substitute_multiset, alpha_eq, fresh_param, free_params
from .proof import Sequent, ProofTree, ProofScript, height, parse_sequent, script_to_tree
from .calculi import get_system, check_inference, check_proof, RuleError
from .stratify import stratify, is_stratified
from .search import SearchBudget, prove_bounded, find_refutation_absence
from .cutelim import eliminate_cuts, reduce_one, trace

__version__ = "0.1.0"

__all__ = [
    "BoundVar", "Param", "Tfo", "Pred", "Eq", "In", "Ex", "Not", "And", "Or", "Imp", "Iff",
    "Forall", "Exists", "Signature", "ParseError", "parse_formula", "parse_term",
    "print_formula", "print_term", "well_formed", "substitute", "substitute_multiset",
    "alpha_eq", "fresh_param", "free_params", "Sequent", "ProofTree", "ProofScript", "height",
    "parse_sequent", "script_to_tree", "get_system", "check_inference", "check_proof",
    "RuleError", "stratify", "is_stratified", "SearchBudget", "prove_bounded",
    "find_refutation_absence", "eliminate_cuts", "reduce_one", "trace",
]
