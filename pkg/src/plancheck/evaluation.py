"""Translator evaluation: edit-distance similarity and error taxonomy.

Predicted translations are compared with human-written references.  Scores
are normalized Levenshtein similarities over canonical strings; rule pairs
that parse are additionally classified by walking both formula trees in
lockstep, splitting mismatches into operator, predicate and symbol errors.
"""

import json
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from .errors import BothEmpty, EmptyCorpus, ParseError
from .ltl import And, Atom, Finally, Formula, Globally, Not, Or, Until, atoms, children, format_ltl, parse_ltl


class ErrorKind(str, Enum):
    OPERATOR = "operator"  # temporal operator mistranslated
    PREDICATE = "predicate"  # wrong or distorted predicate token
    SYMBOL = "symbol"  # boolean connective mistranslated or dropped

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class EvalCase:
    id: str
    kind: str  # "rule" | "plan_step"
    input_nl: str
    predicted: str
    ground_truth: str

    def __post_init__(self):
        if not self.predicted or not self.ground_truth:
            raise ValueError(f"case {self.id}: predicted and ground_truth must be non-empty")
        if self.kind not in ("rule", "plan_step"):
            raise ValueError(f"case {self.id}: unknown kind {self.kind!r}")


@dataclass(frozen=True)
class CaseResult:
    id: str
    similarity: float
    errors: tuple[ErrorKind, ...]


@dataclass(frozen=True)
class EvalReport:
    cases: tuple[CaseResult, ...]
    mean: float
    error_counts: dict
    adjusted_mean: float | None = None


def levenshtein(a: str, b: str) -> int:
    """Minimum number of single-character inserts, deletes and substitutes."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb))
            )
        previous = current
    return previous[-1]


def similarity(a: str, b: str) -> float:
    """Normalized similarity: 1 - distance / max length, in [0, 1]."""
    if not a and not b:
        raise BothEmpty("similarity of two empty strings is undefined")
    return 1.0 - levenshtein(a, b) / max(len(a), len(b))


# --- error taxonomy -----------------------------------------------------------

_TEMPORAL = (Globally, Finally, Until)
_CONNECTIVE = (And, Or)


def _as_formula(value, side: str) -> Formula:
    if isinstance(value, Formula):
        return value
    try:
        return parse_ltl(value)
    except ParseError as exc:
        raise ParseError(f"{side} formula does not parse: {exc}", exc.offset, tuple(exc.expected)) from exc


def classify_error(predicted, truth) -> set[ErrorKind]:
    """Categories of disagreement between two rule translations.

    Arguments may be formulas or concrete-syntax strings.  Structurally
    equal inputs yield the empty set; several categories can co-occur.
    """
    p = _as_formula(predicted, "predicted")
    t = _as_formula(truth, "ground-truth")
    out: set[ErrorKind] = set()
    _walk(p, t, out)
    return out


def _walk(p: Formula, t: Formula, out: set[ErrorKind]) -> None:
    if p == t:
        return
    if type(p) is type(t):
        if isinstance(p, Atom):
            out.add(ErrorKind.PREDICATE)
            return
        for cp, ct in zip(children(p), children(t)):
            _walk(cp, ct, out)
        return
    p_conn = isinstance(p, _CONNECTIVE)
    t_conn = isinstance(t, _CONNECTIVE)
    if p_conn and t_conn:  # & against |
        out.add(ErrorKind.SYMBOL)
        for cp, ct in zip(children(p), children(t)):
            _walk(cp, ct, out)
        return
    if p_conn or t_conn:  # connective present on one side only
        out.add(ErrorKind.SYMBOL)
        conn, lone, conn_is_predicted = (p, t, True) if p_conn else (t, p, False)
        kids = children(conn)
        if any(k == lone for k in kids):
            return  # pure omission or addition of a conjunct/disjunct
        best = max(kids, key=lambda k: len(atoms(k) & atoms(lone)))
        if conn_is_predicted:
            _walk(best, lone, out)
        else:
            _walk(lone, best, out)
        return
    if isinstance(p, Atom) or isinstance(t, Atom):  # atom against a compound
        out.add(ErrorKind.PREDICATE)
        return
    p_temp = isinstance(p, _TEMPORAL)
    t_temp = isinstance(t, _TEMPORAL)
    if p_temp or t_temp:  # differing temporal shape (G/F/U mixed or vs !/->)
        out.add(ErrorKind.OPERATOR)
    else:  # ! against ->
        out.add(ErrorKind.SYMBOL)
    p_kids, t_kids = children(p), children(t)
    if len(p_kids) != len(t_kids):
        # an until against a unary shape: line the lone child up with the
        # operand it best overlaps, as in the connective case
        wide, lone, wide_is_predicted = (
            (p, t_kids[0], True) if len(p_kids) > len(t_kids) else (t, p_kids[0], False)
        )
        kids = children(wide)
        if any(k == lone for k in kids):
            return
        best = max(kids, key=lambda k: len(atoms(k) & atoms(lone)))
        if wide_is_predicted:
            _walk(best, lone, out)
        else:
            _walk(lone, best, out)
        return
    for cp, ct in zip(p_kids, t_kids):
        _walk(cp, ct, out)


# --- canonicalization -----------------------------------------------------------

_UPDATE_RE = re.compile(r"\(\s*([a-z][a-z0-9_]*)\s*'\s*=\s*(true|false)\s*\)")


def step_assignments(text: str) -> list[tuple[str, bool]] | None:
    """Predicate assignments in a plan-step update string, or None."""
    found = [(m.group(1), m.group(2) == "true") for m in _UPDATE_RE.finditer(text)]
    return found or None


def canonical_rule(text: str) -> str:
    """Canonical formula string, or the stripped input when it cannot parse."""
    try:
        return format_ltl(parse_ltl(text))
    except ParseError:
        return text.strip()


def canonical_step(text: str) -> str:
    """Canonical update text ``(a'=true) & (b'=false);`` for a plan step."""
    assignments = step_assignments(text)
    if assignments is None:
        return text.strip()
    parts = [f"({name}'={'true' if value else 'false'})" for name, value in assignments]
    return " & ".join(parts) + ";"


def _canonical(case: EvalCase, text: str) -> str:
    return canonical_rule(text) if case.kind == "rule" else canonical_step(text)


def _rename_atoms(f: Formula, token_map: Mapping[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(token_map.get(f.name, f.name))
    if isinstance(f, Not):
        return Not(_rename_atoms(f.child, token_map))
    if isinstance(f, Globally):
        return Globally(_rename_atoms(f.child, token_map))
    if isinstance(f, Finally):
        return Finally(_rename_atoms(f.child, token_map))
    ctor = type(f)
    return ctor(_rename_atoms(f.left, token_map), _rename_atoms(f.right, token_map))  # type: ignore[union-attr]


def _rewrite_predicted(case: EvalCase, token_map: Mapping[str, str]) -> str:
    if case.kind == "rule":
        try:
            return format_ltl(_rename_atoms(parse_ltl(case.predicted), token_map))
        except ParseError:
            pass
    elif (assignments := step_assignments(case.predicted)) is not None:
        renamed = [(token_map.get(name, name), value) for name, value in assignments]
        return " & ".join(f"({n}'={'true' if v else 'false'})" for n, v in renamed) + ";"
    text = _canonical(case, case.predicted)
    for old, new in token_map.items():
        text = re.sub(rf"\b{re.escape(old)}\b", new, text)
    return text


def _case_similarity(case: EvalCase, predicted_text: str) -> float:
    return similarity(predicted_text, _canonical(case, case.ground_truth))


def adjusted_similarity(cases: Sequence[EvalCase], token_map: Mapping[str, str]) -> float:
    """Mean similarity after rewriting predicted atoms through ``token_map``.

    Unmapped atoms pass through unchanged, so an empty map reproduces the
    unadjusted mean.
    """
    if not cases:
        raise EmptyCorpus("no cases to evaluate")
    total = sum(_case_similarity(c, _rewrite_predicted(c, token_map)) for c in cases)
    return total / len(cases)


def evaluate_corpus(
    cases: Sequence[EvalCase], token_map: Mapping[str, str] | None = None
) -> EvalReport:
    """Score a corpus and aggregate the error taxonomy.

    Error classification applies to rule cases whose two sides both parse;
    report cases are ordered by case id.
    """
    if not cases:
        raise EmptyCorpus("no cases to evaluate")
    results = []
    counts = {kind: 0 for kind in ErrorKind}
    for case in sorted(cases, key=lambda c: c.id):
        sim = _case_similarity(case, _canonical(case, case.predicted))
        errors: tuple[ErrorKind, ...] = ()
        if case.kind == "rule":
            try:
                found = classify_error(case.predicted, case.ground_truth)
            except ParseError:
                found = set()
            errors = tuple(sorted(found, key=lambda e: e.value))
            for kind in found:
                counts[kind] += 1
        results.append(CaseResult(case.id, sim, errors))
    mean = sum(r.similarity for r in results) / len(results)
    adjusted = None if token_map is None else adjusted_similarity(cases, token_map)
    return EvalReport(
        cases=tuple(results),
        mean=mean,
        error_counts={kind.value: counts[kind] for kind in ErrorKind},
        adjusted_mean=adjusted,
    )


def report_document(report: EvalReport) -> dict:
    return {
        "mean": report.mean,
        "adjusted_mean": report.adjusted_mean,
        "cases": [
            {"id": r.id, "similarity": r.similarity, "errors": [e.value for e in r.errors]}
            for r in report.cases
        ],
        "error_counts": dict(report.error_counts),
    }


def _describe_errors(counts: Mapping[str, int]) -> str:
    parts = [
        f"{n} {kind} error{'s' if n != 1 else ''}"
        for kind, n in counts.items()
        if n > 0
    ]
    return ", ".join(parts) if parts else "no errors"


def render_table(cases: Sequence[EvalCase], report: EvalReport) -> str:
    """Plain-text accuracy table with one row per translation kind."""
    by_id = {r.id: r for r in report.cases}
    rows = []
    for kind, label in (("rule", "Rule translation"), ("plan_step", "Plan-step conversion")):
        subset = [by_id[c.id] for c in cases if c.kind == kind]
        if not subset:
            continue
        accuracy = sum(r.similarity for r in subset) / len(subset)
        if kind == "rule":
            counts = {k.value: 0 for k in ErrorKind}
            for r in subset:
                for e in r.errors:
                    counts[e.value] += 1
            description = _describe_errors(counts)
        else:
            description = "not classified"
        rows.append((label, f"{accuracy * 100:.2f}%", description))
    header = ("Translation", "Accuracy", "Error Description")
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(3)]
    lines = [
        "  ".join(header[i].ljust(widths[i]) for i in range(3)).rstrip(),
        "  ".join("-" * widths[i] for i in range(3)),
    ]
    for row in rows:
        lines.append("  ".join(row[i].ljust(widths[i]) for i in range(3)).rstrip())
    return "\n".join(lines) + "\n"


# --- corpus files ------------------------------------------------------------------


def load_corpus(path) -> list[EvalCase]:
    """Read a JSON-lines corpus file (one case per line)."""
    return parse_corpus(Path(path).read_text(encoding="utf-8"))


def parse_corpus(text: str) -> list[EvalCase]:
    cases = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
            cases.append(
                EvalCase(
                    id=doc["id"],
                    kind=doc["kind"],
                    input_nl=doc["input_nl"],
                    predicted=doc["predicted"],
                    ground_truth=doc["ground_truth"],
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad corpus line {lineno}: {exc}") from exc
    return cases
