import json

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from plancheck.errors import (
    EmptyText,
    MalformedJson,
    NoTranslation,
    NotFound,
    NotHard,
    SchemaVersionMismatch,
)
from plancheck.ltl import parse_ltl
from plancheck.prism import PrismProperty, assemble_model
from plancheck.session import (
    CounterClock,
    Plan,
    PlanStep,
    Session,
    load,
    persist,
)
from plancheck.verification import HardResult, PlanVerification, SoftResult

from conftest import formula_strategy


def make_plan(title: str, assignments_per_step, vocabulary) -> Plan:
    steps = [
        PlanStep(i, f"step {i} of {title}", dict(assignments))
        for i, assignments in enumerate(assignments_per_step)
    ]
    raw = f"Plan 1: {title}\n" + "\n".join(f"{s.index + 1}. {s.description}" for s in steps)
    plan = Plan(id="", title=title, raw_text=raw, steps=steps)
    plan.model = assemble_model([(s.description, s.assignments) for s in steps], vocabulary)
    return plan


class TestConstraintOps:
    def test_add_hard(self):
        session = Session()
        c = session.add_constraint("include vegetarian options", "hard", at=1.0)
        assert c.kind == "hard" and c.status == "pending"
        assert session.events[-1].kind == "add"

    def test_add_soft(self):
        session = Session()
        c = session.add_constraint("keep a relaxing pace", "soft", at=1.0)
        assert c.kind == "soft" and c.status == "pending"
        assert c.translation is None and c.prism_property is None and c.back_translation is None

    def test_add_empty(self):
        with pytest.raises(EmptyText):
            Session().add_constraint("", "hard", at=1.0)

    def test_confirm_accept(self):
        session = Session()
        c = session.add_constraint("rule", "hard", at=1.0)
        c.translation = parse_ltl("F p")
        c.back_translation = "Eventually, p."
        kept = session.confirm_translation(c.id, True, at=2.0)
        assert kept is c and c.status == "confirmed"

    def test_confirm_reject_removes(self):
        session = Session()
        c = session.add_constraint("rule", "hard", at=1.0)
        c.translation = parse_ltl("F p")
        assert session.confirm_translation(c.id, False, at=2.0) is None
        with pytest.raises(NotFound):
            session.constraint(c.id)

    def test_confirm_soft_rejected(self):
        session = Session()
        c = session.add_constraint("pace", "soft", at=1.0)
        with pytest.raises(NotHard):
            session.confirm_translation(c.id, True, at=2.0)

    def test_confirm_without_translation(self):
        session = Session()
        c = session.add_constraint("rule", "hard", at=1.0)
        with pytest.raises(NoTranslation):
            session.confirm_translation(c.id, True, at=2.0)

    def test_remove(self):
        session = Session()
        c = session.add_constraint("rule", "hard", at=1.0)
        session.remove_constraint(c.id, at=2.0)
        with pytest.raises(NotFound):
            session.remove_constraint(c.id, at=3.0)

    def test_remove_keeps_verification_history(self):
        session = Session()
        c = session.add_constraint("rule", "hard", at=1.0)
        plan = make_plan("alpha", [{"a": True}], {"a"})
        session.register_plans([plan], "task", at=2.0)
        session.verifications.append(PlanVerification(plan.id, [HardResult(c.id, False, None)]))
        session.remove_constraint(c.id, at=3.0)
        assert len(session.verifications) == 1
        assert session.verifications[0].hard_results[0].constraint_id == c.id

    def test_removed_id_is_never_reused(self):
        session = Session()
        first = session.add_constraint("rule", "hard", at=1.0)
        session.remove_constraint(first.id, at=2.0)
        second = session.add_constraint("rule", "hard", at=3.0)
        assert second.id != first.id

    def test_iteration_count_counts_generate_and_feedback(self):
        session = Session()
        plan = make_plan("alpha", [{"a": True}], {"a"})
        session.register_plans([plan], "task", at=1.0)
        session.add_feedback(plan.id, "tweak it", at=2.0)
        session.register_revision(plan.id, [make_plan("beta", [{}], {"a"})], at=3.0)
        assert session.iteration_count == 2


class TestPersistence:
    def test_empty_round_trip(self):
        assert load(persist(Session())) == Session()

    def test_schema_shape(self):
        doc = json.loads(persist(Session()))
        assert list(doc) == ["version", "constraints", "plans", "verifications", "feedback", "events"]
        assert doc["version"] == 1

    def test_constraint_json_fields(self):
        session = Session()
        c = session.add_constraint("rule text", "hard", at=1.0)
        c.translation = parse_ltl("G(a -> b)")
        c.prism_property = PrismProperty(c.id, c.translation)
        c.back_translation = "At every step, if a then b."
        session.confirm_translation(c.id, True, at=2.0)
        doc = json.loads(persist(session))["constraints"][0]
        assert list(doc) == ["id", "kind", "nl_text", "ltl", "property", "back_translation", "status"]
        assert doc["ltl"] == "G(a -> b)"
        assert doc["property"] == f'"{c.id}": P>=1 [ G(a -> b) ];'
        assert doc["status"] == "confirmed"

    def test_full_session_round_trip(self):
        session = Session()
        for kind, text in (("hard", "first rule"), ("hard", "second rule"), ("soft", "a preference")):
            c = session.add_constraint(text, kind, at=1.0)
            if kind == "hard":
                c.translation = parse_ltl("F a")
                c.prism_property = PrismProperty(c.id, c.translation)
                c.back_translation = "Eventually, a."
                session.confirm_translation(c.id, True, at=2.0)
        plans = [
            make_plan("alpha", [{"a": True}], {"a", "b"}),
            make_plan("beta", [{}, {"b": True}], {"a", "b"}),
            make_plan("gamma", [], {"a", "b"}),
        ]
        session.register_plans(plans, "the task", at=3.0)
        session.verifications.append(
            PlanVerification(plans[0].id, [HardResult("c1", False, 1)], SoftResult(4, "nice"))
        )
        session.add_feedback(plans[0].id, "more downtime", at=4.0)
        session.register_revision(plans[0].id, [make_plan("delta", [{}], {"a", "b"})], at=5.0)
        assert load(persist(session)) == session

    def test_malformed_bytes(self):
        with pytest.raises(MalformedJson):
            load(persist(Session())[:10])

    def test_wrong_version(self):
        doc = json.loads(persist(Session()))
        doc["version"] = 2
        with pytest.raises(SchemaVersionMismatch):
            load(json.dumps(doc).encode())

    def test_missing_field(self):
        doc = json.loads(persist(Session()))
        del doc["plans"]
        with pytest.raises(MalformedJson):
            load(json.dumps(doc).encode())


@st.composite
def session_strategy(draw):
    session = Session()
    clock = CounterClock()
    for i in range(draw(st.integers(0, 4))):
        kind = draw(st.sampled_from(["hard", "soft"]))
        c = session.add_constraint(f"rule number {i}", kind, at=clock())
        if kind == "hard" and draw(st.booleans()):
            c.translation = draw(formula_strategy(max_leaves=4))
            c.prism_property = PrismProperty(c.id, c.translation)
            c.back_translation = "a readable sentence."
            if draw(st.booleans()):
                session.confirm_translation(c.id, True, at=clock())
    vocabulary = {"a", "b"}
    plans = []
    for i in range(draw(st.integers(0, 3))):
        n_steps = draw(st.integers(0, 3))
        assignments = [
            draw(
                st.dictionaries(st.sampled_from(sorted(vocabulary)), st.booleans(), max_size=2)
            )
            for _ in range(n_steps)
        ]
        plans.append(make_plan(f"plan {i}", assignments, vocabulary))
    if plans:
        session.register_plans(plans, "the task", at=clock())
        for plan in plans:
            if draw(st.booleans()):
                session.verifications.append(
                    PlanVerification(
                        plan.id,
                        [HardResult("c1", True, None)] if draw(st.booleans()) else [],
                        SoftResult(draw(st.integers(1, 5)), "why") if draw(st.booleans()) else None,
                    )
                )
        if draw(st.booleans()):
            session.add_feedback(plans[0].id, "please adjust", at=clock())
    return session


class TestProperties:
    @given(session_strategy())
    @settings(max_examples=60)
    def test_persistence_round_trip(self, session):
        assert load(persist(session)) == session

    @given(session_strategy())
    @settings(max_examples=30)
    def test_soft_constraints_never_carry_artifacts(self, session):
        for c in session.constraints:
            if c.kind == "soft":
                assert c.translation is None
                assert c.prism_property is None
                assert c.back_translation is None

    def test_event_log_is_append_only(self):
        session = Session()
        snapshots = []
        c = session.add_constraint("rule", "hard", at=1.0)
        snapshots.append(list(session.events))
        c.translation = parse_ltl("F a")
        c.back_translation = "Eventually, a."
        session.confirm_translation(c.id, True, at=2.0)
        snapshots.append(list(session.events))
        session.register_plans([make_plan("alpha", [{"a": True}], {"a"})], "task", at=3.0)
        snapshots.append(list(session.events))
        session.remove_constraint(c.id, at=4.0)
        snapshots.append(list(session.events))
        for before, after in zip(snapshots, snapshots[1:]):
            assert after[: len(before)] == before
            assert len(after) == len(before) + 1
