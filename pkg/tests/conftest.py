import random

import hypothesis.strategies as st
import pytest

from plancheck.ltl import And, Atom, Finally, Globally, Implies, Not, Or, Until
from plancheck.prism import Command, PrismModel

ATOM_NAMES = ("a", "b", "c", "d")


def formula_strategy(atom_names=ATOM_NAMES, max_leaves=8):
    atoms_st = st.sampled_from(atom_names).map(Atom)
    return st.recursive(
        atoms_st,
        lambda inner: st.one_of(
            st.builds(Not, inner),
            st.builds(Globally, inner),
            st.builds(Finally, inner),
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Implies, inner, inner),
            st.builds(Until, inner, inner),
        ),
        max_leaves=max_leaves,
    )


def trace_strategy(vocabulary=ATOM_NAMES, max_length=5):
    state = st.fixed_dictionaries({name: st.booleans() for name in vocabulary})
    return st.lists(state, min_size=1, max_size=max_length)


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_model(rng: random.Random, max_steps: int = 5, max_vocab: int = 4) -> PrismModel:
    vocab = sorted(
        rng.sample(["alpha", "beta", "gamma", "delta", "epsilon"], k=rng.randint(1, max_vocab))
    )
    variables = tuple((name, rng.random() < 0.5) for name in vocab)
    commands = []
    for index in range(rng.randint(0, max_steps)):
        assigned = rng.sample(vocab, k=rng.randint(0, len(vocab)))
        commands.append(
            Command(index, tuple(sorted((name, rng.random() < 0.5) for name in assigned)))
        )
    return PrismModel(
        module_name="plan",
        step_bound=len(commands),
        variables=variables,
        commands=tuple(commands),
    )
