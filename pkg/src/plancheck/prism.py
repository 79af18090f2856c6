"""Deterministic step-chain plan models in a PRISM-language subset.

A plan is modeled as a single-module dtmc whose only integer variable is a
step counter: command ``i`` is guarded by ``step=i`` and advances to
``step=i+1`` while flipping boolean predicates.  Predicates latch, so a
value persists until a later command reassigns it.  The chain structure
makes the model deterministic, and its single execution path is the trace
the checker evaluates formulas over.

Canonical text form::

    dtmc
    module plan
      step : [0..N] init 0;
      <pred> : bool init <true|false>;
      [] step=0 -> (step'=1) & (<pred>'=<bool>) ;
      ...
    endmodule

with predicate declarations and per-command assignments sorted by name.
``parse_model`` accepts any whitespace between tokens; ``emit_model``
always produces the canonical form above.
"""

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DuplicateLabel, ParseError, StructureError, UnknownPredicate
from .ltl import Formula, Trace, format_ltl, parse_ltl


@dataclass(frozen=True)
class Command:
    """One plan step: guard ``step=index``, plus boolean reassignments."""

    index: int
    assignments: tuple[tuple[str, bool], ...]  # sorted by predicate name


@dataclass(frozen=True)
class PrismModel:
    module_name: str
    step_bound: int  # the N of step : [0..N]
    variables: tuple[tuple[str, bool], ...]  # (name, init), sorted by name
    commands: tuple[Command, ...]  # one per step index, ascending

    def vocabulary(self) -> set[str]:
        return {name for name, _ in self.variables}


@dataclass(frozen=True)
class PrismProperty:
    label: str
    formula: Formula


# --- structural validation ---------------------------------------------------


def validate_model(m: PrismModel) -> None:
    """Raise StructureError unless ``m`` is a well-formed step chain."""
    names = [name for name, _ in m.variables]
    if len(set(names)) != len(names):
        raise StructureError("duplicate variable declaration")
    if "step" in names:
        raise StructureError("'step' is reserved for the step counter")
    if sorted(names) != names:
        raise StructureError("variable declarations must be sorted by name")
    if m.step_bound != len(m.commands):
        raise StructureError(
            f"step bound {m.step_bound} does not match command count {len(m.commands)}"
        )
    seen = set()
    for pos, cmd in enumerate(m.commands):
        if cmd.index != pos:
            raise StructureError(f"command guards must cover step 0..{m.step_bound - 1} in order")
        if cmd.index in seen:
            raise StructureError(f"duplicate command for step {cmd.index}")
        seen.add(cmd.index)
        assigned = [name for name, _ in cmd.assignments]
        if len(set(assigned)) != len(assigned):
            raise StructureError(f"predicate assigned twice in command {cmd.index}")
        if sorted(assigned) != assigned:
            raise StructureError(f"assignments in command {cmd.index} must be sorted by name")
        undeclared = set(assigned) - set(names)
        if undeclared:
            raise StructureError(
                f"undeclared variable(s) in command {cmd.index}: " + ", ".join(sorted(undeclared))
            )


# --- parsing ------------------------------------------------------------------

_MODEL_TOKEN_RE = re.compile(
    r"(?P<ident>[a-z][a-z0-9_]*)|(?P<num>\d+)|(?P<op>\.\.|->|[\[\]():;&'=])"
)


def _model_tokens(text: str):
    pos = 0
    n = len(text)
    out = []
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _MODEL_TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup if m.lastgroup != "op" else m.group()
        out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _ModelParser:
    def __init__(self, text: str):
        self.tokens = _model_tokens(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (text is not None and tok[1] != text):
            want = text if text is not None else kind
            raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], (want,))
        return self.advance()

    def keyword(self, word: str):
        tok = self.peek()
        if tok[0] != "ident" or tok[1] != word:
            raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], (word,))
        return self.advance()

    def parse(self) -> PrismModel:
        self.keyword("dtmc")
        self.keyword("module")
        module_name = self.expect("ident")[1]
        step_decl = None  # (low, high, init, offset)
        variables: list[tuple[str, bool]] = []
        declared = set()
        while self.peek()[0] == "ident" and self.peek()[1] != "endmodule":
            name_tok = self.advance()
            self.expect(":")
            if self.peek()[0] == "[":
                self.advance()
                low = int(self.expect("num")[1])
                self.expect("..")
                high = int(self.expect("num")[1])
                self.expect("]")
                self.keyword("init")
                init = int(self.expect("num")[1])
                self.expect(";")
                if step_decl is not None:
                    raise StructureError("exactly one step counter is allowed")
                if name_tok[1] != "step":
                    raise StructureError("the step counter must be named 'step'")
                if low != 0 or init != 0:
                    raise StructureError("the step counter must range from 0 and start at 0")
                step_decl = (low, high, init, name_tok[2])
            else:
                self.keyword("bool")
                self.keyword("init")
                val_tok = self.expect("ident")
                if val_tok[1] not in ("true", "false"):
                    raise ParseError(f"unexpected {val_tok[1]!r}", val_tok[2], ("true", "false"))
                self.expect(";")
                if name_tok[1] == "step":
                    raise StructureError("'step' is reserved for the step counter")
                if name_tok[1] in declared:
                    raise StructureError(f"duplicate variable declaration: {name_tok[1]}")
                declared.add(name_tok[1])
                variables.append((name_tok[1], val_tok[1] == "true"))
        if step_decl is None:
            raise StructureError("missing step counter declaration")
        commands = []
        while self.peek()[0] == "[":
            commands.append(self._command(declared))
        self.keyword("endmodule")
        tail = self.peek()
        if tail[0] != "end":
            raise ParseError(f"trailing input {tail[1]!r}", tail[2], ("end of input",))

        by_index: dict[int, Command] = {}
        for idx, assignments in commands:
            if idx in by_index:
                raise StructureError(f"duplicate command for step {idx}")
            by_index[idx] = Command(idx, tuple(sorted(assignments)))
        bound = step_decl[1]
        if sorted(by_index) != list(range(len(by_index))) or bound != len(by_index):
            raise StructureError("command guards must cover steps 0..N-1 exactly once")
        model = PrismModel(
            module_name=module_name,
            step_bound=bound,
            variables=tuple(sorted(variables)),
            commands=tuple(by_index[i] for i in range(len(by_index))),
        )
        validate_model(model)
        return model

    def _command(self, declared: set[str]):
        self.expect("[")
        self.expect("]")
        guard_tok = self.keyword("step")
        self.expect("=")
        idx = int(self.expect("num")[1])
        self.expect("->")
        assignments: list[tuple[str, bool]] = []
        step_target = None
        while True:
            self.expect("(")
            name_tok = self.expect("ident")
            self.expect("'")
            self.expect("=")
            if name_tok[1] == "step":
                target = int(self.expect("num")[1])
                if step_target is not None:
                    raise StructureError(f"step advanced twice in command {idx}")
                step_target = target
            else:
                val_tok = self.expect("ident")
                if val_tok[1] not in ("true", "false"):
                    raise ParseError(f"unexpected {val_tok[1]!r}", val_tok[2], ("true", "false"))
                if name_tok[1] not in declared:
                    raise StructureError(f"undeclared variable in update: {name_tok[1]}")
                if name_tok[1] in (n for n, _ in assignments):
                    raise StructureError(f"predicate assigned twice in command {idx}: {name_tok[1]}")
                assignments.append((name_tok[1], val_tok[1] == "true"))
            self.expect(")")
            if self.peek()[0] == "&":
                self.advance()
                continue
            break
        self.expect(";")
        if step_target is None:
            raise StructureError(f"command {idx} does not advance the step counter")
        if step_target != idx + 1:
            raise StructureError(f"command {idx} must advance step to {idx + 1}")
        del guard_tok
        return idx, assignments


def parse_model(text: str) -> PrismModel:
    """Parse model text, checking both syntax and chain structure."""
    return _ModelParser(text).parse()


def emit_model(m: PrismModel) -> str:
    """Canonical text for ``m``; inverse of :func:`parse_model`."""
    lines = ["dtmc", f"module {m.module_name}", f"  step : [0..{m.step_bound}] init 0;"]
    for name, init in m.variables:
        lines.append(f"  {name} : bool init {'true' if init else 'false'};")
    for cmd in m.commands:
        updates = [f"(step'={cmd.index + 1})"]
        updates += [f"({name}'={'true' if value else 'false'})" for name, value in cmd.assignments]
        lines.append(f"  [] step={cmd.index} -> {' & '.join(updates)} ;")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


# --- trace extraction and assembly --------------------------------------------


def model_to_trace(m: PrismModel) -> Trace:
    """Fold the command chain into the single execution trace.

    State 0 holds the declared init values; each command overrides its
    assigned predicates and every other predicate keeps its prior value.
    """
    state = {name: init for name, init in m.variables}
    trace = [dict(state)]
    for cmd in m.commands:
        for name, value in cmd.assignments:
            state[name] = value
        trace.append(dict(state))
    return trace


def assemble_model(
    steps: Sequence[tuple[str, Mapping[str, bool]]],
    vocabulary: Iterable[str],
    module_name: str = "plan",
) -> PrismModel:
    """Build the step-chain model for per-step predicate assignments.

    ``steps`` pairs a human-readable step description (not stored in the
    model) with that step's assignments.  All vocabulary predicates are
    declared with init false.
    """
    vocab = set(vocabulary)
    unknown = set()
    for _, assignments in steps:
        unknown |= set(assignments) - vocab
    if unknown:
        raise UnknownPredicate(unknown)
    commands = tuple(
        Command(i, tuple(sorted(assignments.items()))) for i, (_, assignments) in enumerate(steps)
    )
    model = PrismModel(
        module_name=module_name,
        step_bound=len(commands),
        variables=tuple(sorted((name, False) for name in vocab)),
        commands=commands,
    )
    validate_model(model)
    return model


def model_assignments(m: PrismModel) -> list[dict[str, bool]]:
    """Per-command assignment maps, in step order."""
    return [dict(cmd.assignments) for cmd in m.commands]


# --- property files -------------------------------------------------------------

_PROPERTY_RE = re.compile(r'\s*"(?P<label>[A-Za-z0-9_.-]+)"\s*:\s*P>=1\s*\[(?P<formula>.*)\]\s*;\s*\Z')


def format_property(p: PrismProperty) -> str:
    """Canonical single-line text for one property."""
    return f'"{p.label}": P>=1 [ {format_ltl(p.formula)} ];'


def parse_property_line(line: str, base_offset: int = 0) -> PrismProperty:
    m = _PROPERTY_RE.match(line)
    if m is None:
        raise ParseError("malformed property line", base_offset, ('"<label>": P>=1 [ <formula> ];',))
    inner = m.group("formula")
    try:
        formula = parse_ltl(inner)
    except ParseError as exc:
        raise ParseError(
            f"bad formula in property {m.group('label')!r}: {exc}",
            base_offset + m.start("formula") + exc.offset,
            tuple(exc.expected),
        ) from exc
    return PrismProperty(m.group("label"), formula)


def parse_property(text: str) -> list[PrismProperty]:
    """Parse a property file: one ``"label": P>=1 [ formula ];`` per line."""
    props: list[PrismProperty] = []
    seen = set()
    offset = 0
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped:
            prop = parse_property_line(line.rstrip("\n"), base_offset=offset)
            if prop.label in seen:
                raise DuplicateLabel(f"duplicate property label: {prop.label}")
            seen.add(prop.label)
            props.append(prop)
        offset += len(line)
    return props


def emit_property(props: Sequence[PrismProperty]) -> str:
    """Canonical property-file text; inverse of :func:`parse_property`."""
    if not props:
        return ""
    return "\n".join(format_property(p) for p in props) + "\n"
