"""Bundled family-vacation demo scenario.

Runs the full workflow against the recorded fixtures shipped with the
package: define four constraints, confirm the hard ones, generate three
candidate plans, convert, verify, judge and rank them, then apply one
round of feedback on the plan that broke the flotation rule.  With the
recorded provider and a counter clock the resulting session JSON is
byte-identical on every run.
"""

from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from .llm.provider import FixtureProvider, FixtureStore, Provider
from .pipeline import Workbench
from .session import Clock, CounterClock, Session

TASK_PROMPT = "Help me create a two-day family trip to Venice, Italy."

HARD_CONSTRAINTS = (
    "Children must wear flotation devices during water activities.",
    "Take the diabetes medication after every meal.",
    "Include vegetarian meal options for the family.",
)

SOFT_CONSTRAINTS = ("Keep a relaxing pace with plenty of downtime.",)

#: title of the generated plan the demo user selects for feedback
FEEDBACK_PLAN_TITLE = "Classic Venice Highlights"

FEEDBACK_TEXT = (
    "Keep the Lido beach afternoon but get the kids into flotation vests before swimming."
)


def default_fixture_dir() -> Path:
    return Path(str(files("plancheck").joinpath("data/fixtures")))


def bundled_provider(fixture_dir=None) -> FixtureProvider:
    directory = default_fixture_dir() if fixture_dir is None else Path(fixture_dir)
    return FixtureProvider(FixtureStore.from_dir(directory))


@dataclass
class DemoRun:
    session: Session
    plan_reports: list[dict]  # ranking after the initial generation
    feedback_reports: list[dict]  # ranking after the feedback cycle


def run_demo(provider: Provider | None = None, clock: Clock | None = None) -> DemoRun:
    """Execute the scripted demo cycle and return the session plus reports."""
    provider = provider if provider is not None else bundled_provider()
    clock = clock if clock is not None else CounterClock()
    workbench = Workbench(Session(), provider, clock)

    hard_ids = [workbench.define_constraint(text, "hard").id for text in HARD_CONSTRAINTS]
    for text in SOFT_CONSTRAINTS:
        workbench.define_constraint(text, "soft")
    for cid in hard_ids:
        workbench.confirm_constraint(cid, accept=True)

    plan_reports = workbench.generate(TASK_PROMPT, n=3)

    selected = next(p for p in workbench.session.plans if p.title == FEEDBACK_PLAN_TITLE)
    feedback_reports = workbench.apply_feedback(selected.id, FEEDBACK_TEXT)

    return DemoRun(workbench.session, plan_reports, feedback_reports)
