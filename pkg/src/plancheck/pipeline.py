"""Orchestration of the three planning stages over one session.

The workbench wires the stages together: defining constraints (with
translation and user confirmation for hard ones), generating candidate
plans and converting them to checkable models, verifying and ranking, and
the feedback loop that regenerates a revised plan with the verification
history in context.  Both the CLI and the HTTP service drive this same
code path.
"""

import time

from .errors import UntranslatableConstraint
from .llm.ops import (
    back_translate,
    build_feedback_prompt,
    convert_plan,
    generate_from_prompt,
    generate_plans,
    judge_plan,
    translate_constraint,
    wrap_property,
)
from .llm.provider import Provider
from .ltl import atoms
from .session import Clock, Constraint, Session
from .verification import PlanVerification, build_report, rank_plans, verify_hard


class Workbench:
    def __init__(self, session: Session, provider: Provider, clock: Clock = time.time):
        self.session = session
        self.provider = provider
        self.clock = clock

    # -- definition stage -----------------------------------------------------

    def define_constraint(self, nl_text: str, kind: str) -> Constraint:
        """Add a constraint; hard ones get translated for user review.

        A hard constraint whose translation fails twice is removed again
        (the user re-enters it), mirroring the delete-and-re-enter flow.
        """
        constraint = self.session.add_constraint(nl_text, kind, at=self.clock())
        if kind == "hard":
            try:
                formula, _raw = translate_constraint(nl_text, self.provider)
            except UntranslatableConstraint:
                self.session.remove_constraint(constraint.id, at=self.clock())
                raise
            constraint.translation = formula
            constraint.prism_property = wrap_property(constraint.id, formula)
            constraint.back_translation = back_translate(formula, self.provider)
        return constraint

    def confirm_constraint(self, cid: str, accept: bool) -> Constraint | None:
        return self.session.confirm_translation(cid, accept, at=self.clock())

    def remove_constraint(self, cid: str) -> None:
        self.session.remove_constraint(cid, at=self.clock())

    # -- verification stage -----------------------------------------------------

    def vocabulary(self) -> list[str]:
        vocab: set[str] = set()
        for c in self.session.confirmed_hard():
            vocab |= atoms(c.translation)
        return sorted(vocab)

    def generate(self, task_prompt: str, n: int = 3) -> list[dict]:
        """Generate candidate plans, verify and rank them."""
        plans = generate_plans(task_prompt, self.session.constraints, self.provider, n)
        self.session.register_plans(plans, task_prompt, at=self.clock())
        return self._verify_and_rank()

    def _verify_and_rank(self) -> list[dict]:
        vocab = self.vocabulary()
        hard = self.session.confirmed_hard()
        soft = self.session.soft_constraints()
        for plan in self.session.plans:
            if plan.model is None:
                plan.model = convert_plan(plan, vocab, self.provider)
            results = verify_hard(plan.model, hard)
            rating = judge_plan(plan, soft, self.provider)
            self.session.verifications.append(PlanVerification(plan.id, results, rating))
        return self.ranked_reports()

    def ranked_reports(self) -> list[dict]:
        """Reports for the latest verification of every plan, best first."""
        latest = self.session.latest_verifications()
        order = rank_plans(latest)
        by_plan = {v.plan_id: v for v in latest}
        return [build_report(by_plan[pid], self.session.constraints) for pid in order]

    # -- feedback stage -------------------------------------------------------------

    def apply_feedback(self, plan_id: str, text: str) -> list[dict]:
        """One feedback cycle: regenerate, re-verify everything, re-rank."""
        plan = self.session.plan(plan_id)
        self.session.add_feedback(plan_id, text, at=self.clock())
        prompt = build_feedback_prompt(self.session, plan)
        revised = generate_from_prompt(prompt, self.provider, n=1)
        self.session.register_revision(plan_id, revised, at=self.clock())
        return self._verify_and_rank()
