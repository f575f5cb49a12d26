import random

import pytest
from hypothesis import given, settings, strategies as st

from copyposet.atoms import AtomRegistry
from copyposet.parser import ParseError, parse_term
from copyposet.terms import OMEGA, ONE, add, from_atom, mul, nat, power, pretty
from conftest import make_atoms, random_term


def test_simple_normal_form(registry):
    t = parse_term("w^3*2 + 5", registry)
    assert t.summands == ((nat(3), 2),)
    assert t.tail == 5


def test_atom_product_normalizes(registry):
    t = parse_term("w_2*w + w_2", registry)
    w2 = from_atom(registry.builtin(2))
    assert t == add(mul(w2, OMEGA), w2)
    assert t.summands[0][0] == add(w2, ONE)


def test_syntax_error_position(registry):
    with pytest.raises(ParseError) as exc:
        parse_term("w^", registry)
    assert exc.value.position == 2


def test_undeclared_atom(registry):
    with pytest.raises(ParseError, match="undeclared"):
        parse_term("w^zeta", registry)


def test_precedence_and_associativity(registry):
    assert parse_term("w+w*2", registry) == add(OMEGA, mul(OMEGA, nat(2)))
    assert parse_term("w^w^2", registry) == power(OMEGA, power(OMEGA, nat(2)))
    assert parse_term("(w+1)*2", registry) == mul(add(OMEGA, ONE), nat(2))


def test_preamble_declares_atoms(registry):
    t = parse_term("card mu rank 9 singular cf w; w^mu + mu", registry)
    mu = registry.lookup("mu")
    assert mu is not None and mu.singular
    assert t == mul(from_atom(mu), nat(2))  # w^mu = mu, so the sum is mu*2


def test_preamble_regular_atom(registry):
    parse_term("card theta rank 11; theta", registry)
    assert registry.lookup("theta").regular


def test_variable_environment(registry):
    env = {"i": nat(3)}
    assert parse_term("w_2*(i+1)", registry, env=env) == mul(
        from_atom(registry.builtin(2)), nat(4))


def test_trailing_input(registry):
    with pytest.raises(ParseError, match="trailing"):
        parse_term("w 3", registry)


def test_w0_rejected(registry):
    with pytest.raises(ParseError, match="undeclared"):
        parse_term("w_0", registry)


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_pretty_parse_roundtrip(seed):
    rng = random.Random(seed)
    registry = AtomRegistry()
    t = random_term(rng, make_atoms(registry), 4)
    assert parse_term(pretty(t), registry) == t
