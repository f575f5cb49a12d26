from __future__ import annotations

import random

import pytest

from copyposet.atoms import AtomRegistry
from copyposet.terms import (
    OrdinalTerm, canon_exp, check_canonical, cmp_exp, nat,
)


@pytest.fixture
def registry() -> AtomRegistry:
    return AtomRegistry()


def make_atoms(registry: AtomRegistry, count: int = 3):
    return [registry.builtin(k + 1) for k in range(count)]


def random_term(rng: random.Random, atoms, depth: int = 4) -> OrdinalTerm:
    """Random canonical term: depth-bounded exponents, coefficients <= 5."""
    if depth == 0 or rng.random() < 0.25:
        return nat(rng.randrange(6))
    exponents = []
    for _ in range(rng.randint(1, 3)):
        if atoms and rng.random() < 0.4:
            exponents.append(rng.choice(atoms))
        else:
            e = random_term(rng, atoms, depth - 1)
            if not e.is_zero():
                exponents.append(canon_exp(e))
    ordered = []
    for e in exponents:
        for i, seen in enumerate(ordered):
            k = cmp_exp(e, seen)
            if k == 0:
                break
            if k > 0:
                ordered.insert(i, e)
                break
        else:
            ordered.append(e)
    summands = tuple((e, rng.randint(1, 5)) for e in ordered)
    tail = rng.randrange(6) if rng.random() < 0.7 else 0
    term = OrdinalTerm(summands, tail)
    check_canonical(term)
    return term


def random_positive_term(rng: random.Random, atoms, depth: int = 4) -> OrdinalTerm:
    while True:
        t = random_term(rng, atoms, depth)
        if not t.is_zero():
            return t
