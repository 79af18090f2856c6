"""Constraint and plan bookkeeping with JSON persistence.

A session is the single mutable aggregate of the workbench: user
constraints (hard constraints carry their translation artifacts), the
generated plans with their models, the verification history, feedback
entries, and an append-only event log.  Distinct sessions are independent;
callers serialize access to any one session.
"""

import json
import re
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import (
    EmptyText,
    MalformedJson,
    NoTranslation,
    NotFound,
    NotHard,
    SchemaVersionMismatch,
)
from .ltl import Formula, format_ltl, parse_ltl
from .prism import PrismModel, PrismProperty, emit_model, format_property, parse_model, parse_property_line
from .verification import HardResult, PlanVerification, SoftResult

SCHEMA_VERSION = 1

#: returns the current time as unix seconds
Clock = Callable[[], float]


class CounterClock:
    """Deterministic clock: successive calls return 1.0, 2.0, ..."""

    def __init__(self, start: float = 0.0, step: float = 1.0):
        self._now = start
        self._step = step

    def __call__(self) -> float:
        self._now += self._step
        return self._now


@dataclass
class Constraint:
    id: str
    kind: str  # "hard" | "soft"
    nl_text: str
    translation: Formula | None = None
    prism_property: PrismProperty | None = None
    back_translation: str | None = None
    status: str = "pending"  # pending | confirmed | rejected


@dataclass
class PlanStep:
    index: int
    description: str
    assignments: dict[str, bool] = field(default_factory=dict)


@dataclass
class Plan:
    id: str
    title: str
    raw_text: str
    steps: list[PlanStep] = field(default_factory=list)
    model: PrismModel | None = None


@dataclass
class FeedbackEntry:
    timestamp: float
    text: str
    plan_id: str


@dataclass
class Event:
    timestamp: float
    kind: str  # add | confirm | remove | generate | feedback
    payload: dict


@dataclass
class Session:
    constraints: list[Constraint] = field(default_factory=list)
    plans: list[Plan] = field(default_factory=list)
    verifications: list[PlanVerification] = field(default_factory=list)
    feedback_history: list[FeedbackEntry] = field(default_factory=list)
    events: list[Event] = field(default_factory=list)

    # -- lookups ------------------------------------------------------------

    def constraint(self, cid: str) -> Constraint:
        for c in self.constraints:
            if c.id == cid:
                return c
        raise NotFound(f"constraint {cid} not found")

    def plan(self, pid: str) -> Plan:
        for p in self.plans:
            if p.id == pid:
                return p
        raise NotFound(f"plan {pid} not found")

    def confirmed_hard(self) -> list[Constraint]:
        return [c for c in self.constraints if c.kind == "hard" and c.status == "confirmed"]

    def soft_constraints(self) -> list[Constraint]:
        return [c for c in self.constraints if c.kind == "soft"]

    def latest_verifications(self) -> list[PlanVerification]:
        """Most recent verification per plan, in plan-generation order."""
        latest = {}
        for v in self.verifications:
            latest[v.plan_id] = v
        return [latest[p.id] for p in self.plans if p.id in latest]

    def latest_verification(self, pid: str) -> PlanVerification | None:
        found = None
        for v in self.verifications:
            if v.plan_id == pid:
                found = v
        return found

    @property
    def iteration_count(self) -> int:
        return sum(1 for e in self.events if e.kind in ("generate", "feedback"))

    # -- id allocation --------------------------------------------------------

    def _used_ids(self, prefix: str) -> set[str]:
        # The event log preserves every id ever issued, so removed
        # constraints never get their ids reused.
        used = set()
        for e in self.events:
            cid = e.payload.get("constraint_id")
            if isinstance(cid, str):
                used.add(cid)
            for key in ("plan_ids", "new_plan_ids"):
                for pid in e.payload.get(key, ()):
                    used.add(pid)
        used.update(c.id for c in self.constraints)
        used.update(p.id for p in self.plans)
        return {u for u in used if u.startswith(prefix)}

    def _fresh_id(self, prefix: str) -> str:
        highest = 0
        for used in self._used_ids(prefix):
            m = re.fullmatch(re.escape(prefix) + r"(\d+)", used)
            if m:
                highest = max(highest, int(m.group(1)))
        return f"{prefix}{highest + 1}"

    # -- mutations --------------------------------------------------------------

    def _log(self, kind: str, payload: dict, at: float | None) -> None:
        self.events.append(Event(time.time() if at is None else at, kind, payload))

    def add_constraint(self, nl_text: str, kind: str, at: float | None = None) -> Constraint:
        if not nl_text.strip():
            raise EmptyText("constraint text must not be empty")
        if kind not in ("hard", "soft"):
            raise ValueError(f"constraint kind must be 'hard' or 'soft', got {kind!r}")
        constraint = Constraint(id=self._fresh_id("c"), kind=kind, nl_text=nl_text)
        self.constraints.append(constraint)
        self._log("add", {"constraint_id": constraint.id, "kind": kind}, at)
        return constraint

    def confirm_translation(self, cid: str, accept: bool, at: float | None = None) -> Constraint | None:
        """Accept keeps the rule; reject deletes it so the user re-enters it."""
        constraint = self.constraint(cid)
        if constraint.kind != "hard":
            raise NotHard(f"constraint {cid} is soft; only hard constraints are confirmed")
        if constraint.translation is None:
            raise NoTranslation(f"constraint {cid} has no translation to confirm")
        self._log("confirm", {"constraint_id": cid, "accepted": accept}, at)
        if accept:
            constraint.status = "confirmed"
            return constraint
        self.constraints.remove(constraint)
        return None

    def remove_constraint(self, cid: str, at: float | None = None) -> None:
        constraint = self.constraint(cid)
        self.constraints.remove(constraint)
        self._log("remove", {"constraint_id": cid}, at)

    def register_plans(self, plans: Sequence[Plan], task_prompt: str, at: float | None = None) -> None:
        """Attach freshly generated plans, assigning ids in generation order."""
        for plan in plans:
            plan.id = self._fresh_id("p")
            self.plans.append(plan)
        self._log("generate", {"task_prompt": task_prompt, "plan_ids": [p.id for p in plans]}, at)

    def add_feedback(self, plan_id: str, text: str, at: float | None = None) -> None:
        """Record one user feedback entry for an existing plan."""
        self.plan(plan_id)
        self.feedback_history.append(
            FeedbackEntry(time.time() if at is None else at, text, plan_id)
        )

    def register_revision(
        self, plan_id: str, new_plans: Sequence[Plan], at: float | None = None
    ) -> None:
        """Attach plans regenerated from feedback on ``plan_id``."""
        self.plan(plan_id)
        for plan in new_plans:
            plan.id = self._fresh_id("p")
            self.plans.append(plan)
        self._log(
            "feedback",
            {"plan_id": plan_id, "new_plan_ids": [p.id for p in new_plans]},
            at,
        )


# --- persistence -----------------------------------------------------------------


def _constraint_doc(c: Constraint) -> dict:
    return {
        "id": c.id,
        "kind": c.kind,
        "nl_text": c.nl_text,
        "ltl": None if c.translation is None else format_ltl(c.translation),
        "property": None if c.prism_property is None else format_property(c.prism_property),
        "back_translation": c.back_translation,
        "status": c.status,
    }


def _plan_doc(p: Plan) -> dict:
    return {
        "id": p.id,
        "title": p.title,
        "raw_text": p.raw_text,
        "steps": [
            {
                "index": s.index,
                "description": s.description,
                "assignments": {k: s.assignments[k] for k in sorted(s.assignments)},
            }
            for s in p.steps
        ],
        "model": None if p.model is None else emit_model(p.model),
    }


def _verification_doc(v: PlanVerification) -> dict:
    return {
        "plan_id": v.plan_id,
        "hard_results": [
            {
                "constraint_id": r.constraint_id,
                "satisfied": r.satisfied,
                "witness_index": r.witness_index,
            }
            for r in v.hard_results
        ],
        "violation_count": v.violation_count,
        "soft": None if v.soft is None else {"rating": v.soft.rating, "explanation": v.soft.explanation},
    }


def session_document(session: Session) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "constraints": [_constraint_doc(c) for c in session.constraints],
        "plans": [_plan_doc(p) for p in session.plans],
        "verifications": [_verification_doc(v) for v in session.verifications],
        "feedback": [
            {"timestamp": f.timestamp, "text": f.text, "plan_id": f.plan_id}
            for f in session.feedback_history
        ],
        "events": [
            {"timestamp": e.timestamp, "kind": e.kind, "payload": e.payload} for e in session.events
        ],
    }


def persist(session: Session) -> bytes:
    """Serialize to the versioned JSON schema; inverse of :func:`load`."""
    return (json.dumps(session_document(session), indent=2) + "\n").encode("utf-8")


def _load_constraint(doc: dict) -> Constraint:
    return Constraint(
        id=doc["id"],
        kind=doc["kind"],
        nl_text=doc["nl_text"],
        translation=None if doc["ltl"] is None else parse_ltl(doc["ltl"]),
        prism_property=None if doc["property"] is None else parse_property_line(doc["property"]),
        back_translation=doc["back_translation"],
        status=doc["status"],
    )


def _load_plan(doc: dict) -> Plan:
    return Plan(
        id=doc["id"],
        title=doc["title"],
        raw_text=doc["raw_text"],
        steps=[
            PlanStep(s["index"], s["description"], dict(s["assignments"])) for s in doc["steps"]
        ],
        model=None if doc["model"] is None else parse_model(doc["model"]),
    )


def _load_verification(doc: dict) -> PlanVerification:
    return PlanVerification(
        plan_id=doc["plan_id"],
        hard_results=[
            HardResult(r["constraint_id"], r["satisfied"], r["witness_index"])
            for r in doc["hard_results"]
        ],
        soft=None if doc["soft"] is None else SoftResult(doc["soft"]["rating"], doc["soft"]["explanation"]),
    )


def load(data: bytes) -> Session:
    """Rebuild a session from :func:`persist` output."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedJson(f"not valid session JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedJson("session JSON must be an object")
    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f"unsupported schema version: {version!r}")
    try:
        return Session(
            constraints=[_load_constraint(c) for c in doc["constraints"]],
            plans=[_load_plan(p) for p in doc["plans"]],
            verifications=[_load_verification(v) for v in doc["verifications"]],
            feedback_history=[
                FeedbackEntry(f["timestamp"], f["text"], f["plan_id"]) for f in doc["feedback"]
            ],
            events=[Event(e["timestamp"], e["kind"], e["payload"]) for e in doc["events"]],
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedJson(f"session JSON misses required fields: {exc!r}") from exc
