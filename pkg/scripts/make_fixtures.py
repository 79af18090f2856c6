"""Regenerate the bundled provider fixtures and the frozen golden files.

Run from the repository root after changing prompt templates or demo
content:

    python scripts/make_fixtures.py

The demo cycle runs against scripted responses; every exchange is written
to src/plancheck/data/fixtures/ keyed by request hash, and the resulting
session, reports and exported checker inputs are frozen under
tests/golden/.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from plancheck.llm.ops import back_translate, build_feedback_prompt, translate_constraint
from plancheck.llm.provider import ProviderRequest, RecordingProvider, ScriptedProvider
from plancheck.prism import emit_model, emit_property
from plancheck.scenario import FEEDBACK_PLAN_TITLE, run_demo
from plancheck.session import CounterClock, persist

FIXTURE_DIR = ROOT / "src" / "plancheck" / "data" / "fixtures"
GOLDEN_DIR = ROOT / "tests" / "golden"

PLAN_BLOCKS = """\
Plan 1: Classic Venice Highlights
1. Arrive in Venice and enjoy a vegetarian lunch near the hotel.
2. Afternoon swim at the Lido beach with the kids.
3. Take the diabetes medication during a quiet espresso break.
4. Evening gondola ride along the Grand Canal.

Plan 2: Relaxed Lagoon Escape
1. Slow morning walk to a campo cafe for a vegetarian brunch.
2. Take the diabetes medication back at the hotel.
3. Fit the kids with flotation vests at the hotel pool.
4. Gentle swim in the shallow pool before dinner.

Plan 3: Packed Adventure Day
1. Sunrise swim across the hotel lagoon before breakfast.
2. Quick seafood breakfast on the go.
3. Take the diabetes medication on the vaporetto.
4. Speed tour of San Marco, Rialto, and Murano glass shops.
"""

REVISED_PLAN_BLOCK = """\
Plan 1: Classic Highlights with Safe Swimming
1. Arrive in Venice and enjoy a vegetarian lunch near the hotel.
2. Fit the kids with flotation vests at the beach cabana.
3. Afternoon swim at the Lido beach with the kids.
4. Take the diabetes medication during a quiet espresso break.
5. Evening gondola ride along the Grand Canal.
"""

DEMO_SCRIPTS = {
    "translate": [
        "G(swimming -> flotation_on)",
        "G(meal_time -> F medication_taken)",
        "F vegetarian_meal_included",
    ],
    "back_translate": [
        "At every step of the plan, the children wear flotation devices whenever they are swimming.",
        "Whenever a meal happens, the diabetes medication is eventually taken afterwards.",
        "At some point the plan includes a vegetarian meal option.",
    ],
    "plan": [PLAN_BLOCKS, REVISED_PLAN_BLOCK],
    "convert": [
        json.dumps(
            {
                "0": {"meal_time": True, "vegetarian_meal_included": True},
                "1": {"swimming": True},
                "2": {"medication_taken": True},
                "3": {},
            }
        ),
        json.dumps(
            {
                "0": {"meal_time": True, "vegetarian_meal_included": True},
                "1": {"medication_taken": True},
                "2": {"flotation_on": True},
                "3": {"swimming": True},
            }
        ),
        json.dumps(
            {
                "0": {"swimming": True},
                "1": {"meal_time": True},
                "2": {"medication_taken": True},
                "3": {},
            }
        ),
        json.dumps(
            {
                "0": {"meal_time": True, "vegetarian_meal_included": True},
                "1": {"flotation_on": True},
                "2": {"swimming": True},
                "3": {"medication_taken": True},
                "4": {},
            }
        ),
    ],
    "judge": [
        json.dumps(
            {
                "rating": 3,
                "explanation": "The beach afternoon is pleasant, but squeezing the medication break and a gondola ride into one day feels rushed.",
            }
        ),
        json.dumps(
            {
                "rating": 5,
                "explanation": "Slow mornings, pool time and no fixed schedule match the relaxed pace the family asked for.",
            }
        ),
        json.dumps(
            {
                "rating": 1,
                "explanation": "A sunrise-to-night itinerary with a speed tour leaves no downtime at all.",
            }
        ),
        json.dumps(
            {
                "rating": 4,
                "explanation": "Keeps the classic highlights while the cabana stop restores a calmer rhythm.",
            }
        ),
    ],
}

# extra example rules exposed through the CLI out of the box
EXTRA_RULES = [
    (
        "At least one snack must be given to the cook during the cooking process",
        "F(cooking_active & snack_given)",
        "At some point while cooking is active, the cook is given a snack.",
    ),
    (
        "Before outdoor activities, both mom and dad must take external battery chargers for their phones.",
        "!outdoor_activities U (mom_takes_battery_charger & dad_takes_battery_charger)",
        "No outdoor activities happen until both mom and dad have taken their battery chargers.",
    ),
]


class _CachingProvider:
    """Replays the first response for a repeated request instead of
    consuming another scripted entry."""

    def __init__(self, inner):
        self.inner = inner
        self.seen = {}

    def complete(self, request: ProviderRequest):
        key = (request.purpose, request.sha256())
        if key not in self.seen:
            self.seen[key] = self.inner.complete(request)
        return self.seen[key]


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for stale in FIXTURE_DIR.glob("*.json"):
        stale.unlink()

    provider = RecordingProvider(_CachingProvider(ScriptedProvider(DEMO_SCRIPTS)), FIXTURE_DIR)
    run = run_demo(provider=provider, clock=CounterClock())

    extra = RecordingProvider(
        ScriptedProvider(
            {
                "translate": [formula for _, formula, _ in EXTRA_RULES],
                "back_translate": [sentence for _, _, sentence in EXTRA_RULES],
            }
        ),
        FIXTURE_DIR,
    )
    for nl_text, _, _ in EXTRA_RULES:
        formula, _ = translate_constraint(nl_text, extra)
        back_translate(formula, extra)

    (GOLDEN_DIR / "venice_session.json").write_bytes(persist(run.session))
    (GOLDEN_DIR / "venice_plan_reports.json").write_text(
        json.dumps(run.plan_reports, indent=2) + "\n", encoding="utf-8"
    )
    (GOLDEN_DIR / "venice_feedback_reports.json").write_text(
        json.dumps(run.feedback_reports, indent=2) + "\n", encoding="utf-8"
    )

    selected = next(p for p in run.session.plans if p.title == FEEDBACK_PLAN_TITLE)
    (GOLDEN_DIR / "feedback_prompt.txt").write_text(
        build_feedback_prompt(run.session, selected), encoding="utf-8"
    )

    for plan in run.session.plans:
        (GOLDEN_DIR / f"{plan.id}.prism").write_text(emit_model(plan.model), encoding="utf-8")
    props = [c.prism_property for c in run.session.confirmed_hard()]
    (GOLDEN_DIR / "constraints.props").write_text(emit_property(props), encoding="utf-8")

    print(f"wrote {len(list(FIXTURE_DIR.glob('*.json')))} fixtures to {FIXTURE_DIR}")
    print(f"froze golden files in {GOLDEN_DIR}")


if __name__ == "__main__":
    main()
