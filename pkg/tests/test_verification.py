import pytest

from plancheck.errors import DuplicatePlanId, NotFound, VocabularyMismatch
from plancheck.ltl import parse_ltl
from plancheck.prism import assemble_model
from plancheck.session import Constraint
from plancheck.verification import (
    HardResult,
    PlanVerification,
    SoftResult,
    build_report,
    rank_plans,
    verify_hard,
)

from oracles import ltl_oracle
from plancheck.prism import model_to_trace


def hard(cid: str, formula_text: str, nl_text: str = "") -> Constraint:
    return Constraint(
        id=cid,
        kind="hard",
        nl_text=nl_text or f"rule {cid}",
        translation=parse_ltl(formula_text),
        status="confirmed",
    )


VOCAB = {"swimming", "flotation_on", "snack_given", "cooking_active"}


def make_model(assignments_per_step):
    return assemble_model([("", a) for a in assignments_per_step], VOCAB)


class TestVerifyHard:
    def test_satisfied_eventuality(self):
        model = make_model([{"cooking_active": True}, {"snack_given": True}])
        results = verify_hard(model, [hard("c1", "F(snack_given & cooking_active)")])
        assert results == [HardResult("c1", True, None)]
        assert ltl_oracle(parse_ltl("F(snack_given & cooking_active)"), model_to_trace(model), 0)

    def test_violated_always_rule_with_witness(self):
        # swimming starts at state 2 with no flotation device in sight
        model = make_model([{"cooking_active": True}, {"swimming": True}])
        constraint = hard("c1", "G(swimming -> flotation_on)")
        results = verify_hard(model, [constraint])
        assert results == [HardResult("c1", False, 2)]
        assert not ltl_oracle(constraint.translation, model_to_trace(model), 0)

    def test_empty_constraints(self):
        assert verify_hard(make_model([]), []) == []

    def test_order_preserved(self):
        model = make_model([{"snack_given": True}])
        constraints = [hard("c2", "F snack_given"), hard("c1", "F swimming")]
        results = verify_hard(model, constraints)
        assert [r.constraint_id for r in results] == ["c2", "c1"]
        assert [r.satisfied for r in results] == [True, False]

    def test_no_witness_for_non_always_shapes(self):
        model = make_model([{}])
        results = verify_hard(model, [hard("c1", "F snack_given")])
        assert results == [HardResult("c1", False, None)]

    def test_vocabulary_mismatch(self):
        model = make_model([])
        with pytest.raises(VocabularyMismatch) as exc:
            verify_hard(model, [hard("c9", "F(unknown_pred & snack_given)")])
        assert exc.value.missing == {"c9": ("unknown_pred",)}

    def test_removing_violated_constraint_never_increases_count(self, rng):
        for _ in range(50):
            n_steps = rng.randint(0, 3)
            model = make_model(
                [
                    {name: rng.random() < 0.5 for name in rng.sample(sorted(VOCAB), k=2)}
                    for _ in range(n_steps)
                ]
            )
            constraints = [
                hard(f"c{i}", rng.choice(["F swimming", "G(swimming -> flotation_on)", "F snack_given"]))
                for i in range(3)
            ]
            results = verify_hard(model, constraints)
            count = sum(1 for r in results if not r.satisfied)
            violated = [r.constraint_id for r in results if not r.satisfied]
            if not violated:
                continue
            keep = [c for c in constraints if c.id != violated[0]]
            new_count = sum(1 for r in verify_hard(model, keep) if not r.satisfied)
            assert new_count <= count


def verification(pid: str, violations: int, rating: int | None = None) -> PlanVerification:
    results = [HardResult(f"c{i + 1}", False, None) for i in range(violations)]
    soft = None if rating is None else SoftResult(rating, "because")
    return PlanVerification(pid, results, soft)


class TestRankPlans:
    def test_sorts_by_violations(self):
        order = rank_plans([verification("A", 2), verification("B", 0), verification("C", 1)])
        assert order == ["B", "C", "A"]

    def test_stable_on_ties(self):
        order = rank_plans([verification("A", 1), verification("B", 1), verification("C", 1)])
        assert order == ["A", "B", "C"]

    def test_rating_never_affects_order(self):
        order = rank_plans([verification("A", 0, rating=2), verification("B", 0, rating=5)])
        assert order == ["A", "B"]

    def test_duplicate_plan_id(self):
        with pytest.raises(DuplicatePlanId):
            rank_plans([verification("A", 0), verification("A", 1)])

    def test_permutation_and_monotone_counts(self, rng):
        for _ in range(100):
            ids = [f"p{i}" for i in range(rng.randint(1, 8))]
            vs = [verification(pid, rng.randint(0, 4)) for pid in ids]
            order = rank_plans(vs)
            assert sorted(order) == sorted(ids)
            counts = {v.plan_id: v.violation_count for v in vs}
            ordered = [counts[pid] for pid in order]
            assert ordered == sorted(ordered)


class TestBuildReport:
    CONSTRAINTS = [
        hard("c1", "G(swimming -> flotation_on)", "Children must wear flotation devices."),
        hard("c2", "F snack_given", "Give the cook a snack."),
    ]

    def test_no_violations(self):
        v = PlanVerification("p1", [HardResult("c1", True), HardResult("c2", True)])
        report = build_report(v, self.CONSTRAINTS)
        assert report["valid"] is True
        assert report["violations"] == []
        assert report["satisfied"] == ["c1", "c2"]

    def test_violation_carries_nl_text_verbatim(self):
        v = PlanVerification("p1", [HardResult("c1", False, 2), HardResult("c2", True)])
        report = build_report(v, self.CONSTRAINTS)
        assert report["violations"] == [
            {
                "constraint_id": "c1",
                "nl_text": "Children must wear flotation devices.",
                "witness_index": 2,
            }
        ]
        assert report["satisfied"] == ["c2"]

    def test_report_shape(self):
        v = PlanVerification("p1", [HardResult("c1", True)], SoftResult(4, "calm enough"))
        report = build_report(v, self.CONSTRAINTS)
        assert list(report) == ["plan_id", "valid", "violations", "satisfied", "soft"]
        assert report["soft"] == {"rating": 4, "explanation": "calm enough"}

    def test_declaration_order_wins(self):
        v = PlanVerification("p1", [HardResult("c2", False), HardResult("c1", False)])
        report = build_report(v, self.CONSTRAINTS)
        assert [item["constraint_id"] for item in report["violations"]] == ["c1", "c2"]

    def test_unknown_constraint(self):
        v = PlanVerification("p1", [HardResult("missing", True)])
        with pytest.raises(NotFound):
            build_report(v, self.CONSTRAINTS)
