"""Command-line entry points.

Thin adapters over the library: translation, standalone verification of a
model/property pair, corpus evaluation, the bundled demo cycle, and the
HTTP service.  Exit codes are script-friendly: 0 ok, 1 verification found
violations, 2 translation failure, 3 recorded-fixture miss, 64 usage
error, 65 unreadable or malformed data.
"""

import json
import sys
from pathlib import Path

import click

from .errors import (
    DuplicateLabel,
    EmptyCorpus,
    FixtureMiss,
    ParseError,
    PlanCheckError,
    StructureError,
    UntranslatableConstraint,
)
from .evaluation import evaluate_corpus, load_corpus, render_table, report_document
from .llm.ops import back_translate, translate_constraint
from .llm.provider import FixtureProvider, FixtureStore, LiveProvider
from .ltl import format_ltl
from .prism import parse_model, parse_property
from .scenario import default_fixture_dir, run_demo
from .session import Constraint, CounterClock, load, persist
from .verification import PlanVerification, build_report, verify_hard

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_UNTRANSLATABLE = 2
EXIT_FIXTURE_MISS = 3
EXIT_USAGE = 64
EXIT_DATA = 65


def _provider(fixtures: str | None, live: bool):
    if live:
        return LiveProvider()
    directory = Path(fixtures) if fixtures else default_fixture_dir()
    return FixtureProvider(FixtureStore.from_dir(directory))


@click.group()
def cli():
    """Constraint-verified planning workbench."""


@cli.command()
@click.argument("nl_text")
@click.option("--fixtures", type=click.Path(), help="Fixture directory for the recorded provider.")
@click.option("--live", is_flag=True, help="Use the live provider from the environment.")
def translate(nl_text: str, fixtures: str | None, live: bool) -> int:
    """Translate one natural-language rule; prints the formula and its
    English back-translation."""
    if not nl_text.strip():
        raise click.UsageError("NL_TEXT must not be empty")
    provider = _provider(fixtures, live)
    try:
        formula, _ = translate_constraint(nl_text, provider)
        sentence = back_translate(formula, provider)
    except FixtureMiss as exc:
        click.echo(f"fixture miss: purpose={exc.purpose} request_sha256={exc.request_sha256}", err=True)
        return EXIT_FIXTURE_MISS
    except UntranslatableConstraint as exc:
        click.echo(f"translation failed: {exc}", err=True)
        return EXIT_UNTRANSLATABLE
    click.echo(format_ltl(formula))
    click.echo(sentence)
    return EXIT_OK


@cli.command()
@click.argument("model_file", type=click.Path())
@click.argument("properties_file", type=click.Path())
@click.option("--session", "session_file", type=click.Path(), help="Session JSON to resolve rule texts and the recorded soft rating.")
@click.option("--plan-id", default="plan", show_default=True, help="Plan id to report under.")
@click.option("--json", "json_only", is_flag=True, help="(kept for symmetry; output is always JSON)")
def verify(model_file: str, properties_file: str, session_file: str | None, plan_id: str, json_only: bool) -> int:
    """Check a plan model against a property file and print the report."""
    del json_only
    try:
        model = parse_model(Path(model_file).read_text(encoding="utf-8"))
        properties = parse_property(Path(properties_file).read_text(encoding="utf-8"))
    except (OSError, ParseError, StructureError, DuplicateLabel) as exc:
        click.echo(f"cannot load inputs: {exc}", err=True)
        return EXIT_DATA

    nl_texts: dict[str, str] = {}
    soft = None
    if session_file:
        try:
            session = load(Path(session_file).read_bytes())
        except (OSError, PlanCheckError) as exc:
            click.echo(f"cannot load session: {exc}", err=True)
            return EXIT_DATA
        nl_texts = {c.id: c.nl_text for c in session.constraints}
        recorded = session.latest_verification(plan_id)
        soft = recorded.soft if recorded is not None else None

    constraints = [
        Constraint(
            id=p.label,
            kind="hard",
            nl_text=nl_texts.get(p.label, p.label),
            translation=p.formula,
            prism_property=p,
            status="confirmed",
        )
        for p in properties
    ]
    try:
        results = verify_hard(model, constraints)
    except PlanCheckError as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return EXIT_DATA
    report = build_report(PlanVerification(plan_id, results, soft), constraints=constraints)
    click.echo(json.dumps(report, indent=2))
    return EXIT_OK if report["valid"] else EXIT_VIOLATIONS


@cli.command("eval")
@click.argument("corpus_file", type=click.Path())
@click.option("--token-map", "token_map_file", type=click.Path(), help="JSON map of predicted to reference atom names for the adjusted score.")
@click.option("--json", "json_only", is_flag=True, help="Emit the JSON report only, no table.")
def eval_command(corpus_file: str, token_map_file: str | None, json_only: bool) -> int:
    """Score a JSON-lines corpus of translator outputs."""
    try:
        cases = load_corpus(corpus_file)
        token_map = None
        if token_map_file:
            token_map = json.loads(Path(token_map_file).read_text(encoding="utf-8"))
        report = evaluate_corpus(cases, token_map)
    except (OSError, ValueError, EmptyCorpus, json.JSONDecodeError) as exc:
        click.echo(f"cannot evaluate corpus: {exc}", err=True)
        return EXIT_DATA
    if not json_only:
        click.echo(render_table(cases, report), nl=False)
    click.echo(json.dumps(report_document(report), indent=2))
    return EXIT_OK


@cli.command()
@click.option("--fixtures", type=click.Path(), help="Fixture directory for the recorded provider.")
@click.option("--session", "session_file", type=click.Path(), help="Also write the final session JSON to this file.")
def demo(fixtures: str | None, session_file: str | None) -> int:
    """Run the bundled two-day-Venice cycle and print the final ranking."""
    try:
        run = run_demo(provider=_provider(fixtures, live=False), clock=CounterClock())
    except FixtureMiss as exc:
        click.echo(f"fixture miss: purpose={exc.purpose} request_sha256={exc.request_sha256}", err=True)
        return EXIT_FIXTURE_MISS
    if session_file:
        Path(session_file).write_bytes(persist(run.session))
    click.echo(json.dumps(run.feedback_reports, indent=2))
    return EXIT_OK


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--fixtures", type=click.Path(), help="Fixture directory for the recorded provider.")
@click.option("--live", is_flag=True, help="Use the live provider from the environment.")
@click.option("--sessions", "sessions_dir", default="sessions", show_default=True, type=click.Path(), help="Directory for session files.")
@click.option("--static", "static_dir", type=click.Path(), help="Directory with the built web UI, served at /.")
def serve(host: str, port: int, fixtures: str | None, live: bool, sessions_dir: str, static_dir: str | None) -> int:
    """Run the HTTP/JSON service."""
    import uvicorn

    from .service.app import ServiceConfig, create_app

    config = ServiceConfig(
        host=host,
        port=port,
        provider_mode="live" if live else "recorded",
        fixture_dir=Path(fixtures) if fixtures else None,
        sessions_dir=Path(sessions_dir),
        static_dir=Path(static_dir) if static_dir else None,
    )
    try:
        app = create_app(config)
    except ValueError as exc:
        click.echo(f"bad configuration: {exc}", err=True)
        return EXIT_USAGE
    uvicorn.run(app, host=host, port=port)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return 130
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
