"""Constraint-verified planning workbench.

Users state rules in natural language and type them hard or soft.  Hard
rules become temporal-logic properties checked deterministically against
each candidate plan's execution model; soft rules are scored by an LLM
judge with a five-star rating.  Plans are ranked by hard-violation count
and refined through a feedback loop.
"""

from .errors import PlanCheckError
from .ltl import (
    And,
    Atom,
    Finally,
    Formula,
    Globally,
    Implies,
    Not,
    Or,
    Trace,
    Until,
    Valuation,
    atoms,
    eval_at,
    format_ltl,
    holds,
    parse_ltl,
)
from .pipeline import Workbench
from .prism import (
    Command,
    PrismModel,
    PrismProperty,
    assemble_model,
    emit_model,
    emit_property,
    model_to_trace,
    parse_model,
    parse_property,
)
from .session import Constraint, Plan, PlanStep, Session, load, persist
from .verification import (
    HardResult,
    PlanVerification,
    SoftResult,
    build_report,
    rank_plans,
    verify_hard,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "Command",
    "Constraint",
    "Finally",
    "Formula",
    "Globally",
    "HardResult",
    "Implies",
    "Not",
    "Or",
    "Plan",
    "PlanCheckError",
    "PlanStep",
    "PlanVerification",
    "PrismModel",
    "PrismProperty",
    "Session",
    "SoftResult",
    "Trace",
    "Until",
    "Valuation",
    "Workbench",
    "assemble_model",
    "atoms",
    "build_report",
    "emit_model",
    "emit_property",
    "eval_at",
    "format_ltl",
    "holds",
    "load",
    "model_to_trace",
    "parse_ltl",
    "parse_model",
    "parse_property",
    "persist",
    "rank_plans",
    "verify_hard",
]
