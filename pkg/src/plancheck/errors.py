"""Exception types shared across the package."""


class PlanCheckError(Exception):
    """Base class for every error raised by this package."""


class ParseError(PlanCheckError):
    """Malformed concrete syntax.

    Carries the byte offset of the failure and the set of tokens that
    would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        detail = f"{message} at offset {offset}"
        if expected:
            detail += " (expected " + ", ".join(sorted(expected)) + ")"
        super().__init__(detail)
        self.offset = offset
        self.expected = frozenset(expected)


class UnknownPredicate(PlanCheckError):
    """A predicate name outside the known vocabulary was used."""

    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__("unknown predicate(s): " + ", ".join(self.names))


class StructureError(PlanCheckError):
    """A model parses but violates a structural rule of the subset."""


class DuplicateLabel(PlanCheckError):
    """Two properties in one file share a label."""


class EmptyText(PlanCheckError):
    """An operation requiring non-empty text received an empty string."""


class NotFound(PlanCheckError):
    """Lookup by id failed."""


class NotHard(PlanCheckError):
    """A hard-constraint-only operation was applied to a soft constraint."""


class NoTranslation(PlanCheckError):
    """The constraint has no translation to act on."""


class SchemaVersionMismatch(PlanCheckError):
    """Persisted session data uses an unsupported schema version."""


class MalformedJson(PlanCheckError):
    """Persisted session data is not valid JSON or misses required fields."""


class VocabularyMismatch(PlanCheckError):
    """Constraint formulas use atoms the plan model does not declare."""

    def __init__(self, missing: dict):
        # constraint id -> tuple of missing atom names
        self.missing = {cid: tuple(sorted(names)) for cid, names in missing.items()}
        parts = [f"{cid}: {', '.join(names)}" for cid, names in sorted(self.missing.items())]
        super().__init__("atoms missing from model vocabulary: " + "; ".join(parts))


class DuplicatePlanId(PlanCheckError):
    """Two verification records reference the same plan."""


class ProviderError(PlanCheckError):
    """The language-model provider failed to produce a response."""


class FixtureMiss(ProviderError):
    """The recorded provider has no fixture for the request."""

    def __init__(self, purpose: str, request_sha256: str):
        self.purpose = purpose
        self.request_sha256 = request_sha256
        super().__init__(f"no recorded fixture for purpose={purpose} request_sha256={request_sha256}")


class UntranslatableConstraint(PlanCheckError):
    """Translation of a constraint failed even after the corrective retry."""


class PlanParseError(PlanCheckError):
    """Provider output did not follow the numbered-plan format."""


class ConversionError(PlanCheckError):
    """Plan-to-model conversion failed even after the corrective retry."""


class JudgeParseError(PlanCheckError):
    """Judge output was not a valid rating object."""


class NotVerified(PlanCheckError):
    """The plan has no verification record yet."""


class EmptyCorpus(PlanCheckError):
    """The evaluation corpus contains no cases."""


class BothEmpty(PlanCheckError):
    """Similarity of two empty strings is undefined."""
