"""Independent reference implementations used to cross-check the package.

The evaluator here transcribes the quantifier definitions directly (the
package evaluates backwards over the trace instead); the edit-distance
oracle is the full-matrix textbook recurrence (the package keeps two
rows).  Keeping the routes separate is the point: tests compare them.
"""

import random

from plancheck.errors import UnknownPredicate
from plancheck.ltl import And, Atom, Finally, Formula, Globally, Implies, Not, Or, Until

UNARY_OPS = (Not, Globally, Finally)
BINARY_OPS = (And, Or, Implies, Until)


def ltl_oracle(f: Formula, trace, i: int) -> bool:
    """Straight-from-the-definition finite-trace evaluation."""
    if isinstance(f, Atom):
        if f.name not in trace[i]:
            raise UnknownPredicate([f.name])
        return trace[i][f.name]
    if isinstance(f, Not):
        return not ltl_oracle(f.child, trace, i)
    if isinstance(f, And):
        return ltl_oracle(f.left, trace, i) and ltl_oracle(f.right, trace, i)
    if isinstance(f, Or):
        return ltl_oracle(f.left, trace, i) or ltl_oracle(f.right, trace, i)
    if isinstance(f, Implies):
        return (not ltl_oracle(f.left, trace, i)) or ltl_oracle(f.right, trace, i)
    if isinstance(f, Globally):
        return all(ltl_oracle(f.child, trace, j) for j in range(i, len(trace)))
    if isinstance(f, Finally):
        return any(ltl_oracle(f.child, trace, j) for j in range(i, len(trace)))
    if isinstance(f, Until):
        return any(
            ltl_oracle(f.right, trace, j)
            and all(ltl_oracle(f.left, trace, k) for k in range(i, j))
            for j in range(i, len(trace))
        )
    raise TypeError(f"not a formula node: {f!r}")


def enumerate_formulas(atom_names, max_depth: int) -> list[Formula]:
    """Every formula over the atoms with depth up to ``max_depth``
    (an atom alone has depth 1)."""
    level: set[Formula] = {Atom(name) for name in atom_names}
    for _ in range(max_depth - 1):
        new = set(level)
        for child in level:
            for op in UNARY_OPS:
                new.add(op(child))
        for left in level:
            for right in level:
                for op in BINARY_OPS:
                    new.add(op(left, right))
        level = new
    return sorted(level, key=str)


def all_traces(vocabulary, length: int):
    """Every trace of exactly ``length`` states over the vocabulary."""
    vocabulary = tuple(vocabulary)
    states = []

    def build_states(prefix):
        if len(prefix) == len(vocabulary):
            states.append(dict(zip(vocabulary, prefix)))
            return
        for value in (False, True):
            build_states(prefix + (value,))

    build_states(())

    def build_traces(trace):
        if len(trace) == length:
            yield list(trace)
            return
        for state in states:
            yield from build_traces(trace + [state])

    yield from build_traces([])


def random_formula(rng: random.Random, max_depth: int, atom_names) -> Formula:
    if max_depth <= 1 or rng.random() < 0.25:
        return Atom(rng.choice(atom_names))
    op = rng.choice(UNARY_OPS + BINARY_OPS)
    if op in UNARY_OPS:
        return op(random_formula(rng, max_depth - 1, atom_names))
    return op(
        random_formula(rng, max_depth - 1, atom_names),
        random_formula(rng, max_depth - 1, atom_names),
    )


def levenshtein_oracle(a: str, b: str) -> int:
    """Full-matrix dynamic program for the edit distance."""
    rows, cols = len(a) + 1, len(b) + 1
    table = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        table[i][0] = i
    for j in range(cols):
        table[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            table[i][j] = min(
                table[i - 1][j] + 1,
                table[i][j - 1] + 1,
                table[i - 1][j - 1] + cost,
            )
    return table[-1][-1]
