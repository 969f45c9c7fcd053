"""The lambda calculus with constructors: rewriting, case-completion and the PER model."""

from .completion import complete, defined, is_defined, is_hereditarily_defined
from .equivalence import (
    EquivQuery,
    check_completeness_pair,
    check_soundness,
    convertible,
)
from .match import MatchProgram, compile_match, parse_match
from .per_model import Diagram, MorphismRep, ModelConstants, check_diagram, interpret, interpret_figure3
from .rewrite import ALL, CC_ONLY, LCM, Rule, Step, measure, normalize_cc, reduce
from .syntax import parse, parse_source, show
from .terms import (
    App,
    Binding,
    Case,
    Cons,
    Lam,
    Signature,
    SignatureError,
    Term,
    Var,
    alpha_eq,
    substitute,
)
from .verdict import Outcome, Verdict

__all__ = [
    "ALL", "App", "Binding", "CC_ONLY", "Case", "Cons", "Diagram", "EquivQuery", "LCM", "Lam",
    "MatchProgram", "ModelConstants", "MorphismRep", "Outcome", "Rule", "Signature",
    "SignatureError", "Step", "Term", "Var", "Verdict", "alpha_eq", "check_completeness_pair",
    "check_diagram", "check_soundness", "compile_match", "complete", "convertible", "defined",
    "interpret", "interpret_figure3", "is_defined", "is_hereditarily_defined", "measure",
    "normalize_cc", "parse", "parse_match", "parse_source", "reduce", "show", "substitute",
]
