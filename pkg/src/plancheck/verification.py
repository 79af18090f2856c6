"""Hard-constraint model checking, result aggregation and plan ranking.

Every confirmed hard constraint is evaluated over the plan's execution
trace.  A plan with any violation is marked invalid but stays visible and
ranked; plans are ordered purely by violation count (soft ratings never
influence the order).
"""

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DuplicatePlanId, NotFound, VocabularyMismatch
from .ltl import Globally, atoms, eval_at, holds
from .prism import PrismModel, model_to_trace


@dataclass(frozen=True)
class HardResult:
    """Outcome of one hard constraint against one plan."""

    constraint_id: str
    satisfied: bool
    # earliest refuting trace index, when the constraint is a top-level
    # "always" rule; other shapes carry no witness
    witness_index: int | None = None

    def __post_init__(self):
        if self.satisfied and self.witness_index is not None:
            raise ValueError("a satisfied result cannot carry a witness")


@dataclass(frozen=True)
class SoftResult:
    """Star rating and explanation from the judge."""

    rating: int
    explanation: str

    def __post_init__(self):
        if not 1 <= self.rating <= 5:
            raise ValueError(f"rating must be within 1..5, got {self.rating}")


@dataclass
class PlanVerification:
    plan_id: str
    hard_results: list[HardResult] = field(default_factory=list)
    soft: SoftResult | None = None

    @property
    def violation_count(self) -> int:
        return sum(1 for r in self.hard_results if not r.satisfied)


def verify_hard(model: PrismModel, constraints: Sequence) -> list[HardResult]:
    """Check each confirmed hard constraint against the model's trace.

    ``constraints`` are session constraints carrying ``id`` and a
    ``translation`` formula; result order matches input order.
    """
    vocabulary = model.vocabulary()
    missing = {}
    for c in constraints:
        if c.translation is None:
            raise ValueError(f"constraint {c.id} has no translation")
        unknown = atoms(c.translation) - vocabulary
        if unknown:
            missing[c.id] = unknown
    if missing:
        raise VocabularyMismatch(missing)

    trace = model_to_trace(model)
    results = []
    for c in constraints:
        satisfied = holds(c.translation, trace)
        witness = None
        if not satisfied and isinstance(c.translation, Globally):
            body = c.translation.child
            witness = next(i for i in range(len(trace)) if not eval_at(body, trace, i))
        results.append(HardResult(c.id, satisfied, witness))
    return results


def rank_plans(verifications: Sequence[PlanVerification]) -> list[str]:
    """Plan ids ordered by ascending violation count; ties keep input order."""
    seen = set()
    for v in verifications:
        if v.plan_id in seen:
            raise DuplicatePlanId(f"duplicate verification for plan {v.plan_id}")
        seen.add(v.plan_id)
    return [v.plan_id for v in sorted(verifications, key=lambda v: v.violation_count)]


def build_report(v: PlanVerification, constraints: Sequence) -> dict:
    """Structured verification report for one plan.

    Violated and satisfied rules are listed in constraint-declaration
    order.  The shape matches the wire format used by the service and CLI.
    """
    by_id = {c.id: c for c in constraints}
    results = {}
    for r in v.hard_results:
        if r.constraint_id not in by_id:
            raise NotFound(f"constraint {r.constraint_id} not found")
        results[r.constraint_id] = r
    violations = []
    satisfied = []
    for c in constraints:
        r = results.get(c.id)
        if r is None:
            continue
        if r.satisfied:
            satisfied.append(c.id)
        else:
            violations.append(
                {
                    "constraint_id": c.id,
                    "nl_text": c.nl_text,
                    "witness_index": r.witness_index,
                }
            )
    return {
        "plan_id": v.plan_id,
        "valid": v.violation_count == 0,
        "violations": violations,
        "satisfied": satisfied,
        "soft": None
        if v.soft is None
        else {"rating": v.soft.rating, "explanation": v.soft.explanation},
    }
