import random

import pytest

from dqm.algebra import KElem, get_field
from dqm.forms import QMForm, sequence
from dqm.parser import ParseError, parse, parse_form, parse_kelem, print_tree

LEAVES = [("T",), ("gen", "E"), ("gen", "g"), ("gen", "h"), ("gen", "Delta"), ("w",)]
FAMS = ("x", "g", "h", "y", "xi", "eta")


def random_tree(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.3:
            return ("num", rng.randint(0, 40))
        if r < 0.5:
            return ("fam", rng.choice(FAMS), rng.randint(0, 5))
        return rng.choice(LEAVES)
    kind = rng.choice(["add", "sub", "mul", "div", "neg", "pow"])
    if kind == "neg":
        return ("neg", random_tree(rng, depth - 1))
    if kind == "pow":
        return ("pow", random_tree(rng, depth - 1), rng.randint(-3, 6))
    return (kind, random_tree(rng, depth - 1), random_tree(rng, depth - 1))


def test_print_then_parse_is_identity_on_random_trees():
    rng = random.Random(1234)
    for _ in range(1000):
        tree = random_tree(rng, 5)
        text = print_tree(tree)
        assert parse(text) == tree, text


def test_canonical_printing_uses_minimal_parentheses():
    assert print_tree(parse("(E*g)+((h))")) == "E*g+h"
    assert print_tree(parse("E-(g-h)")) == "E-(g-h)"
    assert print_tree(parse("(-E)^2")) == "(-E)^2"
    assert print_tree(parse("-E^2")) == "-E^2"
    assert print_tree(parse("x[ 2 ] * xi[0]")) == "x[2]*xi[0]"


@pytest.mark.parametrize("text,pos", [("E*+g", 2), ("x[", 2), ("(E", 2), ("E g", 2), ("foo", 0), ("E^", 2)])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.pos == pos
    assert "^" in str(exc.value).splitlines()[-1]


def test_form_evaluation():
    F = get_field(3)
    E, g, h = (QMForm.gen(F, c) for c in "Egh")
    assert parse_form(F, "E*g + h") == -sequence(F, "x", 1)
    assert parse_form(F, "x[2] - g^3*x[1] + (T^3-T)*y[1]") == QMForm.zero(F)
    assert parse_form(F, "Delta^2/(T+1)") == (h ** 4).scale(KElem.parse(F, "1/(T+1)"))
    assert parse_form(F, "3*E") == QMForm.zero(F)


@pytest.mark.parametrize("text", ["E/g", "E^-1", "1/(E+g)"])
def test_forms_reject_nonpolynomial_operations(text):
    with pytest.raises((ParseError, ValueError)):
        parse_form(get_field(3), text)


def test_kelem_parsing():
    F = get_field(3)
    assert parse_kelem(F, "(T^3-T)/(T^2+1)") == KElem.parse(F, "(T^3-T)/(T^2+1)")
    assert parse_kelem(F, "T^-2") == KElem.theta(F) ** -2
    with pytest.raises((ParseError, ValueError)):
        parse_kelem(F, "E")
    F4 = get_field(2, 2)
    w = parse_kelem(F4, "w")
    assert w * w == w + 1
