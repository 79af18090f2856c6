"""LLM-backed pipeline operations.

Each operation renders a prompt template, calls the provider once, parses
the structured reply, and allows exactly one corrective retry before
surfacing an error.  Temperatures: 0 for translation, conversion and
judging; 0.7 for plan generation so candidate plans differ.
"""

import json
import re
from functools import lru_cache
from importlib.resources import files
from string import Template
from typing import Sequence

from ..errors import (
    ConversionError,
    EmptyText,
    JudgeParseError,
    NotVerified,
    ParseError,
    PlanParseError,
    UntranslatableConstraint,
)
from ..ltl import And, Atom, Finally, Formula, Globally, Implies, Not, Or, Until, format_ltl, parse_ltl
from ..prism import PrismModel, PrismProperty, assemble_model
from ..session import Plan, PlanStep, Session
from ..verification import SoftResult
from .provider import Provider, user_request

PLAN_TEMPERATURE = 0.7


@lru_cache(maxsize=None)
def _template(name: str) -> Template:
    text = files("plancheck.llm").joinpath(f"prompts/{name}.txt").read_text(encoding="utf-8")
    return Template(text)


def _render(name: str, **values: str) -> str:
    return _template(name).substitute(**values)


def constraint_lines(constraints: Sequence) -> str:
    lines = [f"- [{c.kind}] {c.nl_text}" for c in constraints]
    return "\n".join(lines) if lines else "(none)"


# --- rule translation -------------------------------------------------------


def translate_constraint(nl_text: str, provider: Provider) -> tuple[Formula, str]:
    """Translate one rule to a formula; returns (formula, raw provider text)."""
    if not nl_text.strip():
        raise EmptyText("constraint text must not be empty")
    first = provider.complete(user_request("translate", _render("translate", NL_TEXT=nl_text)))
    try:
        return parse_ltl(first.text.strip()), first.text
    except ParseError as exc:
        retry_prompt = _render(
            "translate_retry", NL_TEXT=nl_text, PREVIOUS=first.text.strip(), ERROR=str(exc)
        )
        second = provider.complete(user_request("translate", retry_prompt))
        try:
            return parse_ltl(second.text.strip()), second.text
        except ParseError as exc2:
            raise UntranslatableConstraint(
                f"translation failed twice for {nl_text!r}: {exc2}"
            ) from exc2


def wrap_property(constraint_id: str, formula: Formula) -> PrismProperty:
    """Wrap a formula as the checker property labeled with the constraint id."""
    return PrismProperty(constraint_id, formula)


# --- back-translation ----------------------------------------------------------


def _despace(name: str) -> str:
    return name.replace("_", " ")


def _phrase(f: Formula) -> str:
    if isinstance(f, Atom):
        return _despace(f.name)
    if isinstance(f, Not):
        return f"not {_phrase(f.child)}"
    if isinstance(f, And):
        return f"{_phrase(f.left)} and {_phrase(f.right)}"
    if isinstance(f, Or):
        return f"{_phrase(f.left)} or {_phrase(f.right)}"
    if isinstance(f, Implies):
        return f"if {_phrase(f.left)} then {_phrase(f.right)}"
    if isinstance(f, Globally):
        return f"at every step, {_phrase(f.child)}"
    if isinstance(f, Finally):
        return f"eventually, {_phrase(f.child)}"
    if isinstance(f, Until):
        return f"{_phrase(f.left)} until {_phrase(f.right)}"
    raise TypeError(f"not a formula node: {f!r}")


def back_translate(formula: Formula, provider: Provider | None = None) -> str:
    """Render a formula back to English for user validation.

    With a provider the model's sentence is returned verbatim; without one
    a deterministic template rendering is used.
    """
    if provider is not None:
        prompt = _render("back_translate", FORMULA=format_ltl(formula))
        return provider.complete(user_request("back_translate", prompt)).text
    if isinstance(formula, Atom):
        return f"{_despace(formula.name)} holds."
    sentence = _phrase(formula)
    return sentence[0].upper() + sentence[1:] + "."


# --- plan generation ---------------------------------------------------------------

_PLAN_HEADER_RE = re.compile(r"^Plan (\d+): (.+)$", re.MULTILINE)
_STEP_RE = re.compile(r"^(\d+)\.\s+(.+)$")


def parse_plan_blocks(text: str, n: int) -> list[Plan]:
    """Parse ``Plan <k>: <title>`` blocks with numbered steps into plans.

    The returned plans have empty ids; the session assigns them on
    registration.
    """
    headers = list(_PLAN_HEADER_RE.finditer(text))
    if len(headers) != n:
        raise PlanParseError(f"expected {n} plan block(s), found {len(headers)}")
    plans = []
    for pos, header in enumerate(headers):
        end = headers[pos + 1].start() if pos + 1 < len(headers) else len(text)
        block = text[header.start():end].rstrip()
        steps = []
        for line in block.splitlines()[1:]:
            line = line.strip()
            if not line:
                continue
            m = _STEP_RE.match(line)
            if m is None:
                raise PlanParseError(f"unnumbered line in plan block: {line!r}")
            number = int(m.group(1))
            if number != len(steps) + 1:
                raise PlanParseError(f"step numbering must be 1,2,...; got {number}")
            steps.append(PlanStep(index=len(steps), description=m.group(2).strip()))
        if not steps:
            raise PlanParseError(f"plan {header.group(2)!r} has no steps")
        plans.append(Plan(id="", title=header.group(2).strip(), raw_text=block, steps=steps))
    return plans


def generate_plans(
    task_prompt: str, constraints: Sequence, provider: Provider, n: int = 3
) -> list[Plan]:
    """Ask the planner for ``n`` candidate plans honoring the constraints."""
    if n < 1:
        raise ValueError("n must be at least 1")
    prompt = _render("plan", N=str(n), TASK=task_prompt, CONSTRAINTS=constraint_lines(constraints))
    response = provider.complete(user_request("plan", prompt, temperature=PLAN_TEMPERATURE))
    return parse_plan_blocks(response.text, n)


def generate_from_prompt(prompt: str, provider: Provider, n: int = 1) -> list[Plan]:
    """Plan generation against an already-assembled prompt (feedback loop)."""
    response = provider.complete(user_request("plan", prompt, temperature=PLAN_TEMPERATURE))
    return parse_plan_blocks(response.text, n)


# --- plan conversion ------------------------------------------------------------------


def _steps_block(plan: Plan) -> str:
    return "\n".join(f"{s.index}. {s.description}" for s in plan.steps)


def _parse_assignments(text: str, plan: Plan, vocabulary: set[str]) -> list[dict[str, bool]]:
    try:
        doc = json.loads(text.strip())
    except json.JSONDecodeError as exc:
        raise ConversionError(f"conversion output is not JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConversionError("conversion output must be a JSON object")
    expected = {str(i) for i in range(len(plan.steps))}
    if set(doc) != expected:
        raise ConversionError(
            f"conversion output must cover step indices 0..{len(plan.steps) - 1} exactly"
        )
    per_step = []
    for i in range(len(plan.steps)):
        assignments = doc[str(i)]
        if not isinstance(assignments, dict) or not all(
            isinstance(v, bool) for v in assignments.values()
        ):
            raise ConversionError(f"step {i} assignments must map predicates to booleans")
        unknown = set(assignments) - vocabulary
        if unknown:
            raise ConversionError(
                "assignments outside the vocabulary: " + ", ".join(sorted(unknown))
            )
        per_step.append(dict(assignments))
    return per_step


def convert_plan(plan: Plan, vocabulary: Sequence[str], provider: Provider) -> PrismModel:
    """Convert plan steps into the checkable step-chain model."""
    if not plan.steps:
        raise ConversionError("plan has no steps to convert")
    vocab = set(vocabulary)
    vocab_line = ", ".join(sorted(vocab))
    prompt = _render(
        "convert", VOCABULARY=vocab_line, LAST=str(len(plan.steps) - 1), STEPS=_steps_block(plan)
    )
    first = provider.complete(user_request("convert", prompt))
    try:
        per_step = _parse_assignments(first.text, plan, vocab)
    except ConversionError as exc:
        retry_prompt = _render(
            "convert_retry",
            VOCABULARY=vocab_line,
            LAST=str(len(plan.steps) - 1),
            STEPS=_steps_block(plan),
            PREVIOUS=first.text.strip(),
            ERROR=str(exc),
        )
        second = provider.complete(user_request("convert", retry_prompt))
        try:
            per_step = _parse_assignments(second.text, plan, vocab)
        except ConversionError as exc2:
            raise ConversionError(f"conversion failed twice for plan {plan.title!r}: {exc2}") from exc2
    for step, assignments in zip(plan.steps, per_step):
        step.assignments = assignments
    return assemble_model([(s.description, s.assignments) for s in plan.steps], vocab)


# --- judging -------------------------------------------------------------------------


def _parse_judge(text: str) -> SoftResult:
    try:
        doc = json.loads(text.strip())
    except json.JSONDecodeError as exc:
        raise JudgeParseError(f"judge output is not JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"rating", "explanation"}:
        raise JudgeParseError('judge output must be {"rating": ..., "explanation": ...}')
    rating, explanation = doc["rating"], doc["explanation"]
    if not isinstance(rating, int) or isinstance(rating, bool) or not 1 <= rating <= 5:
        raise JudgeParseError(f"rating must be an integer within 1..5, got {rating!r}")
    if not isinstance(explanation, str):
        raise JudgeParseError("explanation must be a string")
    return SoftResult(rating, explanation)


def judge_plan(plan: Plan, soft_constraints: Sequence, provider: Provider) -> SoftResult | None:
    """Five-star adherence rating for the soft constraints, or None when
    there are no soft constraints (the judge is not consulted)."""
    if not soft_constraints:
        return None
    constraints_block = "\n".join(f"- {c.nl_text}" for c in soft_constraints)
    prompt = _render("judge", CONSTRAINTS=constraints_block, PLAN=plan.raw_text)
    first = provider.complete(user_request("judge", prompt))
    try:
        return _parse_judge(first.text)
    except JudgeParseError as exc:
        retry_prompt = _render(
            "judge_retry",
            CONSTRAINTS=constraints_block,
            PLAN=plan.raw_text,
            PREVIOUS=first.text.strip(),
            ERROR=str(exc),
        )
        second = provider.complete(user_request("judge", retry_prompt))
        try:
            return _parse_judge(second.text)
        except JudgeParseError as exc2:
            raise JudgeParseError(f"judge output unusable after retry: {exc2}") from exc2


# --- feedback loop ----------------------------------------------------------------------

ALL_SATISFIED_MARKER = "all hard rules satisfied"


def build_feedback_prompt(session: Session, plan: Plan) -> str:
    """Prompt for the next planning iteration.

    Contains, verbatim: the selected plan's raw text, the NL text of every
    violated hard rule (one line each), the user's latest feedback on the
    plan, and the current constraint list.
    """
    verification = session.latest_verification(plan.id)
    if verification is None:
        raise NotVerified(f"plan {plan.id} has not been verified yet")
    violated_ids = {r.constraint_id for r in verification.hard_results if not r.satisfied}
    if violated_ids:
        lines = [
            f"- violated: {c.nl_text}" for c in session.constraints if c.id in violated_ids
        ]
        violations_block = "\n".join(lines)
    else:
        violations_block = ALL_SATISFIED_MARKER
    feedback_text = ""
    for entry in session.feedback_history:
        if entry.plan_id == plan.id:
            feedback_text = entry.text
    current = session.confirmed_hard() + session.soft_constraints()
    return _render(
        "feedback",
        PLAN_RAW=plan.raw_text,
        VIOLATIONS=violations_block,
        FEEDBACK=feedback_text,
        CONSTRAINTS=constraint_lines(current),
    )
